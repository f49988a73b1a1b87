//! Brute-force reference answers by enumerating every vector of a bounded box.
//!
//! Slow by design and meant for small nets: the rest of the crate is checked
//! against these functions.

use std::collections::BTreeSet;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::net::PetriNet;
use crate::vector::{Semiflow, Support};

/// Largest number of box points the oracle agrees to enumerate.
pub const MAX_BOX_POINTS: u128 = 100_000_000;

/// Minimal semiflows found inside the box.
///
/// Minimality is exact for every listed member, since anything below a
/// member also lies in the box. Members touching the bound are flagged:
/// they hint that the full set may extend beyond the box.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedMinimal {
    pub members: Vec<Semiflow>,
    pub on_boundary: Vec<bool>,
}

fn small_incidence(net: &PetriNet) -> Result<Vec<Vec<i128>>> {
    net.incidence()
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| {
                    c.to_i64().map(i128::from).ok_or_else(|| {
                        Error::InvalidArgument("arc weight too large for enumeration".into())
                    })
                })
                .collect()
        })
        .collect()
}

/// All non-zero semiflows with every coordinate in `0..=bound`, in
/// lexicographic order.
pub fn brute_semiflows(net: &PetriNet, bound: u64) -> Result<Vec<Semiflow>> {
    if bound == 0 {
        return Err(Error::InvalidArgument("bound must be at least 1".into()));
    }
    let d = net.place_count();
    let size = (0..d).try_fold(1u128, |acc, _| acc.checked_mul(u128::from(bound) + 1));
    match size {
        Some(size) if size <= MAX_BOX_POINTS => {}
        _ => {
            return Err(Error::BoxTooLarge {
                size: size.unwrap_or(u128::MAX),
                limit: MAX_BOX_POINTS,
            })
        }
    }
    let c = small_incidence(net)?;
    let nt = net.transition_count();
    let b = i128::from(bound);

    let mut x = vec![0u64; d];
    let mut image = vec![0i128; nt];
    let mut out = Vec::new();
    // Odometer with the last coordinate running fastest.
    loop {
        let mut i = d;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if x[i] < bound {
                break;
            }
            x[i] = 0;
            for (v, w) in image.iter_mut().zip(&c[i]) {
                *v -= b * w;
            }
        }
        x[i] += 1;
        for (v, w) in image.iter_mut().zip(&c[i]) {
            *v += w;
        }
        if image.iter().all(|&v| v == 0) {
            out.push(Semiflow::from_u64s(&x));
        }
    }
}

pub fn brute_minimal_semiflows(net: &PetriNet, bound: u64) -> Result<BoundedMinimal> {
    let mut all = brute_semiflows(net, bound)?;
    let weight = |v: &Semiflow| v.coords().iter().sum::<num_bigint::BigUint>();
    all.sort_by_cached_key(|v| (weight(v), v.clone()));
    // Any vector below a candidate has a strictly smaller coordinate sum, so
    // comparing against the minimal vectors kept so far is enough.
    let mut members: Vec<Semiflow> = Vec::new();
    for v in all {
        if !members.iter().any(|m| m.leq(&v).unwrap_or(false)) {
            members.push(v);
        }
    }
    members.sort();
    let on_boundary = members
        .iter()
        .map(|m| m.coords().iter().any(|c| *c == bound.into()))
        .collect();
    Ok(BoundedMinimal {
        members,
        on_boundary,
    })
}

/// Inclusion-minimal supports among the semiflows of the box, sorted.
pub fn brute_minimal_supports(net: &PetriNet, bound: u64) -> Result<Vec<Support>> {
    let supports: BTreeSet<Support> = brute_semiflows(net, bound)?
        .iter()
        .map(Semiflow::support)
        .collect();
    Ok(supports
        .iter()
        .filter(|s| !supports.iter().any(|o| o.is_strict_subset(s)))
        .cloned()
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::hilbert::minimal_semiflows;
    use crate::net::parse_net;

    #[test]
    fn pairs_box_of_ones() {
        let (net, _) = fixtures::pairs();
        let v = fixtures::pairs_vectors();
        let mut expected = vec![v.f, v.g1, v.g2, v.g3, v.g4];
        expected.sort();
        assert_eq!(brute_semiflows(&net, 1).unwrap(), expected);
    }

    #[test]
    fn sink_net_has_no_semiflows() {
        let (net, _) = parse_net("place p\ntrans t in p").unwrap();
        assert!(brute_semiflows(&net, 5).unwrap().is_empty());
        assert!(brute_minimal_semiflows(&net, 5).unwrap().members.is_empty());
        assert!(brute_minimal_supports(&net, 5).unwrap().is_empty());
    }

    #[test]
    fn ratio_box_contains_published_vectors() {
        let (net, _) = fixtures::ratio();
        let v = fixtures::ratio_vectors();
        let all = brute_semiflows(&net, 6).unwrap();
        for f in [v.f1, v.f2, v.g1, v.g2, v.g3] {
            assert!(all.contains(&f), "{f}");
        }
    }

    #[test]
    fn minimal_semiflows_agree_with_completion_search() {
        let (net2, _) = fixtures::pairs();
        let v = fixtures::pairs_vectors();
        let mut expected = vec![v.g1, v.g2, v.g3, v.g4];
        expected.sort();
        let m = brute_minimal_semiflows(&net2, 2).unwrap();
        assert_eq!(m.members, expected);
        assert!(m.on_boundary.iter().all(|b| !b));

        let (net1, _) = fixtures::ratio();
        let m = brute_minimal_semiflows(&net1, 6).unwrap();
        assert_eq!(m.members, minimal_semiflows(&net1).unwrap().members());
        assert!(m.on_boundary.iter().all(|b| !b));
    }

    #[test]
    fn boundary_members_are_flagged() {
        let (net, _) = fixtures::ratio();
        let m = brute_minimal_semiflows(&net, 5).unwrap();
        let flagged: Vec<String> = m
            .members
            .iter()
            .zip(&m.on_boundary)
            .filter(|(_, &b)| b)
            .map(|(v, _)| v.to_string())
            .collect();
        assert_eq!(flagged, vec!["(5,5,0,0,3)"]);
    }

    #[test]
    fn minimal_supports() {
        let (net, _) = fixtures::pairs();
        assert_eq!(brute_minimal_supports(&net, 1).unwrap().len(), 4);
        let (tel, _) = fixtures::telephone();
        assert_eq!(brute_minimal_supports(&tel, 1).unwrap().len(), 3);
        let (lp, _) = parse_net("place p\ntrans t in p out p").unwrap();
        assert_eq!(
            brute_minimal_supports(&lp, 1).unwrap(),
            vec![Support::from_indices(1, [0])]
        );
    }

    #[test]
    fn guards() {
        let (net, _) = fixtures::telephone();
        assert!(matches!(brute_semiflows(&net, 9), Err(Error::BoxTooLarge { .. })));
        assert!(brute_semiflows(&net, 0).is_err());
    }
}
