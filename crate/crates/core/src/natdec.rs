//! Decomposition of semiflows over the naturals.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{check_dim, Error, Result};
use crate::vector::{Semiflow, Support};

pub const DEFAULT_NODE_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyDecomposition {
    pub coeffs: Vec<BigUint>,
    pub remainder: Semiflow,
}

/// Largest `k` with `k * g <= r` componentwise. `g` must be non-zero.
fn max_multiple(r: &Semiflow, g: &Semiflow) -> BigUint {
    r.coords()
        .iter()
        .zip(g.coords())
        .filter(|(_, gp)| !gp.is_zero())
        .map(|(rp, gp)| rp / gp)
        .min()
        .expect("generator is non-zero")
}

/// Subtracts each generator, in the given order, as many times as the
/// remainder stays non-negative.
///
/// Non-negativity is the only test needed: the flow equations are linear, so
/// the difference of two semiflows that stays non-negative is a semiflow.
pub fn greedy_decompose(f: &Semiflow, order: &[Semiflow]) -> Result<GreedyDecomposition> {
    for e in order {
        check_dim(f.len(), e.len())?;
        if e.is_zero() {
            return Err(Error::ZeroVector);
        }
    }
    let mut remainder = f.clone();
    let mut coeffs = Vec::with_capacity(order.len());
    for e in order {
        let k = max_multiple(&remainder, e);
        if !k.is_zero() {
            remainder = remainder
                .checked_sub(&e.scale(&k))?
                .expect("k is bounded by the remainder");
        }
        coeffs.push(k);
    }
    Ok(GreedyDecomposition { coeffs, remainder })
}

/// Coefficients in the naturals with `f = sum_i k_i gens[i]`, or `None`.
pub fn nat_decomposable(f: &Semiflow, gens: &[Semiflow]) -> Result<Option<Vec<BigUint>>> {
    nat_decomposable_with_cap(f, gens, DEFAULT_NODE_CAP)
}

/// Depth-first search over generators ordered by decreasing support size,
/// then by coordinates. Each coefficient is tried from its upper bound
/// downwards; a branch dies as soon as some positive remainder coordinate
/// is not covered by any generator still to be assigned.
pub fn nat_decomposable_with_cap(
    f: &Semiflow,
    gens: &[Semiflow],
    node_cap: u64,
) -> Result<Option<Vec<BigUint>>> {
    for g in gens {
        check_dim(f.len(), g.len())?;
    }
    let mut order: Vec<usize> = (0..gens.len()).filter(|&i| !gens[i].is_zero()).collect();
    order.sort_by(|&a, &b| {
        gens[b]
            .support()
            .len()
            .cmp(&gens[a].support().len())
            .then_with(|| gens[a].cmp(&gens[b]))
    });

    // reach[k]: union of the supports of order[k..].
    let mut reach = vec![Support::empty(f.len()); order.len() + 1];
    for k in (0..order.len()).rev() {
        reach[k] = reach[k + 1].union(&gens[order[k]].support());
    }

    let mut search = Search {
        gens,
        order: &order,
        reach: &reach,
        chosen: vec![BigUint::zero(); order.len()],
        nodes: 0,
        cap: node_cap,
    };
    if !search.descend(0, f.clone())? {
        return Ok(None);
    }
    let mut coeffs = vec![BigUint::zero(); gens.len()];
    for (k, &i) in order.iter().enumerate() {
        coeffs[i] = search.chosen[k].clone();
    }
    Ok(Some(coeffs))
}

struct Search<'a> {
    gens: &'a [Semiflow],
    order: &'a [usize],
    reach: &'a [Support],
    chosen: Vec<BigUint>,
    nodes: u64,
    cap: u64,
}

impl Search<'_> {
    fn descend(&mut self, depth: usize, remainder: Semiflow) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(Error::NodeCapExceeded { cap: self.cap });
        }
        if remainder.is_zero() {
            for c in &mut self.chosen[depth..] {
                *c = BigUint::zero();
            }
            return Ok(true);
        }
        if !remainder.support().is_subset(&self.reach[depth]) {
            return Ok(false);
        }
        let g = &self.gens[self.order[depth]];
        let mut k = max_multiple(&remainder, g);
        loop {
            let next = remainder
                .checked_sub(&g.scale(&k))?
                .expect("k is bounded by the remainder");
            self.chosen[depth] = k.clone();
            if self.descend(depth + 1, next)? {
                return Ok(true);
            }
            if k.is_zero() {
                return Ok(false);
            }
            k -= 1u32;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn nats(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn greedy_depends_on_order() {
        let v = fixtures::pairs_vectors();
        let a = greedy_decompose(&v.f, &[v.g1.clone(), v.g2.clone(), v.g3.clone(), v.g4.clone()])
            .unwrap();
        assert_eq!(a.coeffs, nats(&[1, 0, 0, 1]));
        assert!(a.remainder.is_zero());

        let b = greedy_decompose(&v.f, &[v.g2, v.g3, v.g1, v.g4]).unwrap();
        assert_eq!(b.coeffs, nats(&[1, 1, 0, 0]));
        assert!(b.remainder.is_zero());
    }

    #[test]
    fn greedy_over_fundamental_set_can_get_stuck() {
        let v = fixtures::ratio_vectors();
        let r = greedy_decompose(&v.f1, &[v.g1, v.g2, v.g3]).unwrap();
        assert_eq!(r.coeffs, nats(&[0, 0, 0]));
        assert_eq!(r.remainder, v.f1);
    }

    #[test]
    fn greedy_rejects_bad_generators() {
        let v = fixtures::pairs_vectors();
        assert_eq!(
            greedy_decompose(&v.f, &[Semiflow::zero(4)]),
            Err(Error::ZeroVector)
        );
        assert!(greedy_decompose(&v.f, &[Semiflow::from_u64s(&[1])]).is_err());
    }

    #[test]
    fn exact_nat_decisions() {
        let v = fixtures::ratio_vectors();
        let fs = [v.g1.clone(), v.g2.clone(), v.g3.clone()];
        assert_eq!(nat_decomposable(&v.f1, &fs).unwrap(), None);

        let with_f1 = [v.f1.clone(), v.g1.clone(), v.g2.clone(), v.g3.clone()];
        assert_eq!(
            nat_decomposable(&v.f1, &with_f1).unwrap(),
            Some(nats(&[1, 0, 0, 0]))
        );

        let combo = v
            .g1
            .scale(&BigUint::from(3u32))
            .add(&v.g2.scale(&BigUint::from(2u32)))
            .unwrap();
        assert_eq!(
            nat_decomposable(&combo, &[v.g1, v.g2]).unwrap(),
            Some(nats(&[3, 2]))
        );
    }

    #[test]
    fn zero_is_always_decomposable() {
        assert_eq!(
            nat_decomposable(&Semiflow::zero(2), &[Semiflow::from_u64s(&[1, 1])]).unwrap(),
            Some(nats(&[0]))
        );
    }

    #[test]
    fn node_cap_is_reported() {
        let v = fixtures::ratio_vectors();
        let big = v.f1.scale(&BigUint::from(40u32));
        let gens = [v.g1, v.g2, v.g3];
        assert_eq!(
            nat_decomposable_with_cap(&big, &gens, 3),
            Err(Error::NodeCapExceeded { cap: 3 })
        );
    }
}
