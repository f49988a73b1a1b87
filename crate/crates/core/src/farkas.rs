//! Fundamental set by Farkas column elimination.
//!
//! Rows carry a place vector `x` and its image `x^T C` under the incidence
//! matrix. Each elimination step zeroes one column of the image by keeping
//! the rows already zero there and combining every pair of rows of opposite
//! sign. Rows are gcd-reduced, deduplicated, and dropped when their support
//! strictly contains another row's support. Once every column is eliminated
//! the surviving rows are exactly the canonical semiflows of minimal support.

use std::collections::HashSet;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

use crate::net::PetriNet;
use crate::vector::{gcd_of, Semiflow, Support};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FarkasOptions {
    /// Eliminate the column with the fewest sign pairs first instead of
    /// declaration order. Affects running time only.
    pub fewest_pairs_first: bool,
}

/// Canonical semiflows of minimal support, sorted by coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalSet {
    members: Vec<Semiflow>,
    supports: Vec<Support>,
}

impl FundamentalSet {
    pub fn members(&self) -> &[Semiflow] {
        &self.members
    }

    /// Supports parallel to [`members`](Self::members).
    pub fn supports(&self) -> &[Support] {
        &self.supports
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: &Semiflow) -> bool {
        self.members.binary_search(v).is_ok()
    }

    /// Member whose support is exactly `support`, if that support is minimal.
    pub fn member_with_support(&self, support: &Support) -> Option<&Semiflow> {
        self.supports
            .iter()
            .position(|s| s == support)
            .map(|i| &self.members[i])
    }

    /// True iff some member's support equals `support`.
    pub fn is_minimal_support(&self, support: &Support) -> bool {
        self.supports.iter().any(|s| s == support)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Row {
    coeffs: Vec<BigInt>,
    image: Vec<BigInt>,
}

impl Row {
    fn support(&self) -> Support {
        Support::from_indices(
            self.coeffs.len(),
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, _)| i),
        )
    }

    /// `a * self + b * other` for positive multipliers.
    fn combine(&self, a: &BigInt, other: &Row, b: &BigInt) -> Row {
        let mix = |x: &[BigInt], y: &[BigInt]| -> Vec<BigInt> {
            x.iter().zip(y).map(|(u, v)| a * u + b * v).collect()
        };
        Row {
            coeffs: mix(&self.coeffs, &other.coeffs),
            image: mix(&self.image, &other.image),
        }
    }

    fn reduce(&mut self) {
        let g = gcd_of(&self.coeffs);
        if !g.is_zero() && !g.is_one() {
            for c in self.coeffs.iter_mut().chain(self.image.iter_mut()) {
                *c /= &g;
            }
        }
    }
}

pub fn fundamental_set(net: &PetriNet) -> FundamentalSet {
    fundamental_set_with(net, FarkasOptions::default())
}

pub fn fundamental_set_with(net: &PetriNet, options: FarkasOptions) -> FundamentalSet {
    let d = net.place_count();
    let incidence = net.incidence();
    let mut rows: Vec<Row> = (0..d)
        .map(|i| {
            let mut coeffs = vec![BigInt::zero(); d];
            coeffs[i] = BigInt::one();
            Row {
                coeffs,
                image: incidence[i].clone(),
            }
        })
        .collect();

    let mut remaining: Vec<usize> = (0..net.transition_count()).collect();
    while !remaining.is_empty() {
        let pick = if options.fewest_pairs_first {
            remaining
                .iter()
                .enumerate()
                .min_by_key(|(_, &j)| sign_pairs(&rows, j))
                .map(|(k, _)| k)
                .unwrap_or(0)
        } else {
            0
        };
        let column = remaining.remove(pick);
        rows = eliminate(rows, column);
    }

    let mut members: Vec<Semiflow> = rows
        .into_iter()
        .map(|r| Semiflow::try_from_bigints(&r.coeffs).expect("rows stay non-negative"))
        .collect();
    members.sort();
    members.dedup();
    let supports = members.iter().map(Semiflow::support).collect();
    FundamentalSet { members, supports }
}

/// Sorted supports of the fundamental set.
pub fn minimal_supports(net: &PetriNet) -> Vec<Support> {
    let mut supports = fundamental_set(net).supports;
    supports.sort();
    supports
}

fn sign_pairs(rows: &[Row], column: usize) -> usize {
    let pos = rows
        .iter()
        .filter(|r| r.image[column].sign() == Sign::Plus)
        .count();
    let neg = rows
        .iter()
        .filter(|r| r.image[column].sign() == Sign::Minus)
        .count();
    pos * neg
}

fn eliminate(rows: Vec<Row>, column: usize) -> Vec<Row> {
    let mut next = Vec::new();
    let mut positive = Vec::new();
    let mut negative = Vec::new();
    for row in rows {
        match row.image[column].sign() {
            Sign::NoSign => next.push(row),
            Sign::Plus => positive.push(row),
            Sign::Minus => negative.push(row),
        }
    }
    for p in &positive {
        for n in &negative {
            let mut row = p.combine(&n.image[column].abs(), n, &p.image[column]);
            debug_assert!(row.image[column].is_zero());
            row.reduce();
            next.push(row);
        }
    }
    prune(next)
}

fn prune(rows: Vec<Row>) -> Vec<Row> {
    let mut seen = HashSet::new();
    let unique: Vec<Row> = rows
        .into_iter()
        .filter(|r| seen.insert(r.coeffs.clone()))
        .collect();
    let supports: Vec<Support> = unique.iter().map(Row::support).collect();
    unique
        .into_iter()
        .enumerate()
        .filter(|(i, _)| {
            !supports
                .iter()
                .any(|other| other.is_strict_subset(&supports[*i]))
        })
        .map(|(_, r)| r)
        .collect()
}
