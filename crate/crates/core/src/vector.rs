//! Exact non-negative integer vectors over the places of a net.
//!
//! A [`Semiflow`] is a vector of naturals indexed by place declaration order.
//! The type itself only guarantees non-negativity; the flow equations are
//! checked against a net with [`is_semiflow`] or [`Semiflow::for_net`].

use std::cmp::Ordering;
use std::fmt;

use fixedbitset::FixedBitSet;
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{check_dim, Error, Result};
use crate::net::PetriNet;

/// Non-negative integer vector, one coordinate per place.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Semiflow(Vec<BigUint>);

impl Semiflow {
    pub fn new(coords: Vec<BigUint>) -> Self {
        Semiflow(coords)
    }

    pub fn from_u64s(coords: &[u64]) -> Self {
        Semiflow(coords.iter().map(|&c| BigUint::from(c)).collect())
    }

    /// Builds a vector and checks the flow equations of `net`.
    pub fn for_net(net: &PetriNet, coords: Vec<BigUint>) -> Result<Self> {
        let v = Semiflow(coords);
        if satisfies_flow_equations(net, &v)? {
            Ok(v)
        } else {
            Err(Error::NotSemiflow(v.to_string()))
        }
    }

    pub fn zero(dim: usize) -> Self {
        Semiflow(vec![BigUint::zero(); dim])
    }

    pub fn unit(dim: usize, index: usize) -> Self {
        let mut coords = vec![BigUint::zero(); dim];
        coords[index] = BigUint::from(1u32);
        Semiflow(coords)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[BigUint] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigUint> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn support(&self) -> Support {
        Support::from_indices(
            self.0.len(),
            self.0.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i),
        )
    }

    /// Gcd of the non-zero coordinates; `None` for the zero vector.
    pub fn gcd(&self) -> Option<BigUint> {
        let g = self
            .0
            .iter()
            .fold(BigUint::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            None
        } else {
            Some(g)
        }
    }

    /// Splits the vector into its canonical form and the scaling factor.
    pub fn canonicalize(&self) -> Result<(Semiflow, BigUint)> {
        let g = self.gcd().ok_or(Error::ZeroVector)?;
        let reduced = self.0.iter().map(|c| c / &g).collect();
        Ok((Semiflow(reduced), g))
    }

    pub fn is_canonical(&self) -> Result<bool> {
        let g = self.gcd().ok_or(Error::ZeroVector)?;
        Ok(g == BigUint::from(1u32))
    }

    /// Componentwise `self <= other`.
    pub fn leq(&self, other: &Semiflow) -> Result<bool> {
        check_dim(self.len(), other.len())?;
        Ok(self.0.iter().zip(&other.0).all(|(a, b)| a <= b))
    }

    pub fn add(&self, other: &Semiflow) -> Result<Semiflow> {
        check_dim(self.len(), other.len())?;
        Ok(Semiflow(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn scale(&self, k: &BigUint) -> Semiflow {
        Semiflow(self.0.iter().map(|c| c * k).collect())
    }

    /// `self - other` when the result stays non-negative.
    pub fn checked_sub(&self, other: &Semiflow) -> Result<Option<Semiflow>> {
        check_dim(self.len(), other.len())?;
        if !other.leq(self)? {
            return Ok(None);
        }
        Ok(Some(Semiflow(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        )))
    }

    pub fn dot(&self, other: &[BigUint]) -> Result<BigUint> {
        check_dim(self.len(), other.len())?;
        Ok(self.0.iter().zip(other).map(|(a, b)| a * b).sum())
    }

    pub fn max_coord(&self) -> BigUint {
        self.0.iter().max().cloned().unwrap_or_default()
    }

    pub fn to_bigints(&self) -> Vec<BigInt> {
        self.0.iter().map(|c| BigInt::from(c.clone())).collect()
    }

    /// Converts a signed vector, rejecting negative entries.
    pub fn try_from_bigints(v: &[BigInt]) -> Result<Semiflow> {
        v.iter()
            .map(|c| {
                c.to_biguint()
                    .ok_or_else(|| Error::InvalidArgument(format!("negative coordinate {c}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Semiflow)
    }
}

impl fmt::Display for Semiflow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Set of place indices, stored as a bitset over the place count.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Support(FixedBitSet);

impl Support {
    pub fn empty(dim: usize) -> Self {
        Support(FixedBitSet::with_capacity(dim))
    }

    pub fn from_indices(dim: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut bits = FixedBitSet::with_capacity(dim);
        for i in indices {
            bits.insert(i);
        }
        Support(bits)
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    /// Number of places in the support.
    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.0.contains(index)
    }

    pub fn insert(&mut self, index: usize) {
        self.0.insert(index);
    }

    pub fn is_subset(&self, other: &Support) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_strict_subset(&self, other: &Support) -> bool {
        self.0.is_subset(&other.0) && self.0 != other.0
    }

    pub fn union(&self, other: &Support) -> Support {
        let mut bits = self.0.clone();
        bits.union_with(&other.0);
        Support(bits)
    }

    pub fn indices(&self) -> Vec<usize> {
        self.0.ones().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    /// Place names of the support in declaration order.
    pub fn names<'a>(&self, net: &'a PetriNet) -> Vec<&'a str> {
        self.iter().map(|i| net.places()[i].as_str()).collect()
    }
}

impl Ord for Support {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.ones().cmp(other.0.ones())
    }
}

impl PartialOrd for Support {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.0.ones().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

pub fn support(v: &Semiflow) -> Support {
    v.support()
}

pub fn canonicalize(v: &Semiflow) -> Result<(Semiflow, BigUint)> {
    v.canonicalize()
}

pub fn leq(u: &Semiflow, v: &Semiflow) -> Result<bool> {
    u.leq(v)
}

/// True iff `v` is non-negative and `v^T Post(.,t) = v^T Pre(.,t)` for every transition.
pub fn is_semiflow(net: &PetriNet, v: &[BigInt]) -> Result<bool> {
    check_dim(net.place_count(), v.len())?;
    if let Some(neg) = v.iter().find(|c| c.sign() == Sign::Minus) {
        return Err(Error::InvalidArgument(format!("negative coordinate {neg}")));
    }
    let incidence = net.incidence();
    Ok((0..net.transition_count()).all(|t| {
        v.iter()
            .zip(&incidence)
            .map(|(x, row)| x * &row[t])
            .sum::<BigInt>()
            .is_zero()
    }))
}

pub(crate) fn satisfies_flow_equations(net: &PetriNet, v: &Semiflow) -> Result<bool> {
    is_semiflow(net, &v.to_bigints())
}

pub(crate) fn gcd_of(values: &[BigInt]) -> BigInt {
    values.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    fn sf(c: &[u64]) -> Semiflow {
        Semiflow::from_u64s(c)
    }

    fn ints(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn semiflow_predicate_on_pairs() {
        let (net, _) = fixtures::pairs();
        assert!(is_semiflow(&net, &ints(&[0, 1, 1, 0])).unwrap());
        assert!(is_semiflow(&net, &ints(&[0, 0, 0, 0])).unwrap());
        assert!(!is_semiflow(&net, &ints(&[1, 0, 0, 0])).unwrap());
        assert!(matches!(
            is_semiflow(&net, &ints(&[1, 0, 0])),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            is_semiflow(&net, &ints(&[1, -1, 0, 0])),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn supports() {
        assert_eq!(sf(&[3, 3, 2, 0, 1]).support().indices(), vec![0, 1, 2, 4]);
        assert!(sf(&[0, 0, 0]).support().is_empty());
        assert_eq!(sf(&[0, 1, 0, 1]).support().indices(), vec![1, 3]);
    }

    #[test]
    fn canonical_forms() {
        let (c, g) = sf(&[2, 2, 4, 0]).canonicalize().unwrap();
        assert_eq!(c, sf(&[1, 1, 2, 0]));
        assert_eq!(g, BigUint::from(2u32));
        for v in [sf(&[3, 3, 2, 0, 1]), sf(&[5, 5, 0, 0, 3])] {
            let (c, g) = v.canonicalize().unwrap();
            assert_eq!(c, v);
            assert_eq!(g, BigUint::from(1u32));
        }
        assert_eq!(sf(&[0, 0]).canonicalize(), Err(Error::ZeroVector));
    }

    #[test]
    fn componentwise_order() {
        assert!(sf(&[0, 1, 1, 0]).leq(&sf(&[1, 1, 1, 1])).unwrap());
        assert!(!sf(&[3, 3, 2, 0, 1]).leq(&sf(&[4, 4, 1, 0, 2])).unwrap());
        let v = sf(&[2, 0, 7]);
        assert!(v.leq(&v).unwrap());
        assert!(sf(&[1]).leq(&sf(&[1, 2])).is_err());
    }

    #[test]
    fn for_net_rejects_non_semiflows() {
        let (net, _) = fixtures::pairs();
        assert!(Semiflow::for_net(&net, sf(&[1, 0, 0, 1]).into_coords()).is_ok());
        assert!(matches!(
            Semiflow::for_net(&net, sf(&[1, 0, 0, 0]).into_coords()),
            Err(Error::NotSemiflow(_))
        ));
    }

    fn small_vec(dim: usize) -> impl Strategy<Value = Vec<u64>> {
        proptest::collection::vec(0u64..20, dim)
    }

    proptest! {
        #[test]
        fn canonicalize_is_scale_invariant(v in small_vec(5), k in 1u64..9) {
            let v = sf(&v);
            prop_assume!(!v.is_zero());
            let (c, _) = v.canonicalize().unwrap();
            let (cc, g) = c.canonicalize().unwrap();
            prop_assert_eq!(&cc, &c);
            prop_assert_eq!(g, BigUint::from(1u32));
            let (ck, _) = v.scale(&BigUint::from(k)).canonicalize().unwrap();
            prop_assert_eq!(ck, c);
        }

        #[test]
        fn support_laws(u in small_vec(6), v in small_vec(6), k in 1u64..9) {
            let (u, v) = (sf(&u), sf(&v));
            prop_assert_eq!(u.scale(&BigUint::from(k)).support(), u.support());
            prop_assert_eq!(u.add(&v).unwrap().support(), u.support().union(&v.support()));
        }

        #[test]
        fn leq_is_a_partial_order(a in small_vec(3), b in small_vec(3), c in small_vec(3)) {
            let (a, b, c) = (sf(&a), sf(&b), sf(&c));
            prop_assert!(a.leq(&a).unwrap());
            if a.leq(&b).unwrap() && b.leq(&a).unwrap() {
                prop_assert_eq!(&a, &b);
            }
            if a.leq(&b).unwrap() && b.leq(&c).unwrap() {
                prop_assert!(a.leq(&c).unwrap());
            }
        }
    }
}
