//! Upper bounds on the number of minimal supports.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;
use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::net::PetriNet;

/// `C(d, floor(d/2))`: the largest Sperner family over `d` places.
pub fn sperner_bound(d: usize) -> Result<BigUint> {
    if d == 0 {
        return Err(Error::InvalidArgument("place count must be positive".into()));
    }
    let k = d / 2;
    // C(d, k) = prod_{i=1..k} (d - k + i) / i; every prefix is itself a binomial.
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc = acc * BigUint::from(d - k + i) / BigUint::from(i);
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinedBound {
    /// Places that are either all in or all out of any support, sorted.
    pub classes: Vec<Vec<usize>>,
    pub bound: BigUint,
}

/// Merges the input and output place of every transition with exactly one
/// of each, then bounds by the Sperner number of the resulting classes.
///
/// For such a transition the flow equation reads `f(p) Pre(p,t) = f(q) Post(q,t)`
/// with positive weights, so `f(p) != 0` iff `f(q) != 0`.
pub fn refined_bound(net: &PetriNet) -> Result<RefinedBound> {
    let d = net.place_count();
    let mut uf = UnionFind::<usize>::new(d);
    for t in 0..net.transition_count() {
        if let ([(p, _)], [(q, _)]) = (net.inputs(t).as_slice(), net.outputs(t).as_slice()) {
            uf.union(*p, *q);
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for p in 0..d {
        groups.entry(uf.find(p)).or_default().push(p);
    }
    let mut classes: Vec<Vec<usize>> = groups.into_values().collect();
    classes.sort();
    let bound = sperner_bound(classes.len())?;
    Ok(RefinedBound { classes, bound })
}
