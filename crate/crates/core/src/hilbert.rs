//! Minimal semiflows (the Hilbert basis of the semiflow cone) by completion search.
//!
//! The search walks vectors by increasing coordinate sum, starting from the
//! unit vectors. A vector `x` with non-zero image `x^T C` is only extended by
//! `e_i` when `<x^T C, e_i^T C> < 0`, i.e. when the step moves the image
//! towards zero. Vectors with zero image are recorded; anything that
//! dominates a recorded vector is discarded.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::net::PetriNet;
use crate::vector::Semiflow;

pub const DEFAULT_FRONTIER_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HilbertOptions {
    /// Largest frontier allowed before the search fails.
    pub frontier_cap: usize,
}

impl Default for HilbertOptions {
    fn default() -> Self {
        HilbertOptions {
            frontier_cap: DEFAULT_FRONTIER_CAP,
        }
    }
}

/// All minimal semiflows, sorted by coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertBasis {
    members: Vec<Semiflow>,
}

impl HilbertBasis {
    pub fn members(&self) -> &[Semiflow] {
        &self.members
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
}

pub fn minimal_semiflows(net: &PetriNet) -> Result<HilbertBasis> {
    minimal_semiflows_with(net, HilbertOptions::default())
}

struct Node {
    x: Vec<BigInt>,
    image: Vec<BigInt>,
}

fn dominates(x: &[BigInt], s: &[BigInt]) -> bool {
    x.iter().zip(s).all(|(a, b)| a >= b)
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(u, v)| u * v).sum()
}

pub fn minimal_semiflows_with(net: &PetriNet, options: HilbertOptions) -> Result<HilbertBasis> {
    let d = net.place_count();
    let rows = net.incidence();
    let mut solutions: Vec<Vec<BigInt>> = Vec::new();
    let mut frontier: Vec<Node> = (0..d)
        .map(|i| {
            let mut x = vec![BigInt::zero(); d];
            x[i] = BigInt::one();
            Node {
                x,
                image: rows[i].clone(),
            }
        })
        .collect();

    while !frontier.is_empty() {
        let (done, open): (Vec<Node>, Vec<Node>) = frontier
            .into_iter()
            .partition(|n| n.image.iter().all(Zero::is_zero));
        // Vectors at one level share a coordinate sum, so none of them can
        // dominate another: every zero-image vector here is minimal.
        solutions.extend(done.into_iter().map(|n| n.x));

        let mut seen: HashSet<Vec<BigInt>> = HashSet::new();
        let mut next = Vec::new();
        for node in &open {
            for (i, row) in rows.iter().enumerate() {
                if dot(&node.image, row).sign() != num_bigint::Sign::Minus {
                    continue;
                }
                let mut x = node.x.clone();
                x[i] += 1;
                if solutions.iter().any(|s| dominates(&x, s)) || !seen.insert(x.clone()) {
                    continue;
                }
                let image = node.image.iter().zip(row).map(|(a, b)| a + b).collect();
                next.push(Node { x, image });
                if next.len() > options.frontier_cap {
                    return Err(Error::FrontierCapExceeded {
                        cap: options.frontier_cap,
                    });
                }
            }
        }
        frontier = next;
    }

    let mut members: Vec<Semiflow> = solutions
        .iter()
        .map(|x| Semiflow::try_from_bigints(x).expect("search stays non-negative"))
        .collect();
    members.sort();
    Ok(HilbertBasis { members })
}
