//! Invariants derived from semiflows and exhaustive reachability checks.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigUint;
use num_traits::Zero;
use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use crate::error::{check_dim, Error, Result};
use crate::farkas::fundamental_set;
use crate::net::{enabled, fire, Marking, PetriNet};
use crate::vector::{satisfies_flow_equations, Semiflow};

pub const DEFAULT_STATE_CAP: usize = 1_000_000;

/// Equations `f_i^T M = rhs_i` satisfied by every reachable marking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantSystem {
    pub generators: Vec<Semiflow>,
    pub rhs: Vec<BigUint>,
}

impl InvariantSystem {
    pub fn holds(&self, m: &Marking) -> Result<bool> {
        for (f, r) in self.generators.iter().zip(&self.rhs) {
            if &f.dot(m.coords())? != r {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn invariant_report(net: &PetriNet, m0: &Marking, gens: &[Semiflow]) -> Result<InvariantSystem> {
    check_dim(net.place_count(), m0.len())?;
    let mut rhs = Vec::with_capacity(gens.len());
    for f in gens {
        check_dim(net.place_count(), f.len())?;
        if !satisfies_flow_equations(net, f)? {
            return Err(Error::NotSemiflow(f.to_string()));
        }
        rhs.push(f.dot(m0.coords())?);
    }
    Ok(InvariantSystem {
        generators: gens.to_vec(),
        rhs,
    })
}

/// Every non-negative marking satisfying all equations of `sys`.
///
/// Requires the generator supports to cover every place, which bounds each
/// coordinate by `min_i rhs_i / f_i(p)`.
pub fn consistent_markings(net: &PetriNet, sys: &InvariantSystem) -> Result<Vec<Marking>> {
    let d = net.place_count();
    check_dim(sys.generators.len(), sys.rhs.len())?;
    for f in &sys.generators {
        check_dim(d, f.len())?;
    }
    let mut caps: Vec<Option<BigUint>> = vec![None; d];
    for (f, r) in sys.generators.iter().zip(&sys.rhs) {
        for (p, w) in f.coords().iter().enumerate() {
            if !w.is_zero() {
                let c = r / w;
                caps[p] = Some(match caps[p].take() {
                    Some(prev) if prev <= c => prev,
                    _ => c,
                });
            }
        }
    }
    let uncovered: Vec<String> = caps
        .iter()
        .enumerate()
        .filter(|(_, c)| c.is_none())
        .map(|(p, _)| net.places()[p].clone())
        .collect();
    if !uncovered.is_empty() {
        return Err(Error::UnboundedEnumeration(uncovered));
    }
    let caps: Vec<BigUint> = caps.into_iter().map(Option::unwrap).collect();

    let mut out = Vec::new();
    let mut current = vec![BigUint::zero(); d];
    let mut partial = vec![BigUint::zero(); sys.generators.len()];
    enumerate(sys, &caps, 0, &mut current, &mut partial, &mut out);
    Ok(out)
}

fn enumerate(
    sys: &InvariantSystem,
    caps: &[BigUint],
    place: usize,
    current: &mut Vec<BigUint>,
    partial: &mut Vec<BigUint>,
    out: &mut Vec<Marking>,
) {
    if place == caps.len() {
        if partial == &sys.rhs {
            out.push(Marking::new(current.clone()));
        }
        return;
    }
    let mut k = BigUint::zero();
    while k <= caps[place] {
        let over = sys
            .generators
            .iter()
            .zip(partial.iter())
            .zip(&sys.rhs)
            .any(|((f, s), r)| s + &f.coords()[place] * &k > *r);
        if over {
            break;
        }
        for (f, s) in sys.generators.iter().zip(partial.iter_mut()) {
            *s += &f.coords()[place] * &k;
        }
        current[place] = k.clone();
        enumerate(sys, caps, place + 1, current, partial, out);
        for (f, s) in sys.generators.iter().zip(partial.iter_mut()) {
            *s -= &f.coords()[place] * &k;
        }
        k += 1u32;
    }
    current[place] = BigUint::zero();
}

/// Outcome of exhaustive exploration. Verdicts are `None` when the state cap
/// stopped the exploration early.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachabilityReport {
    pub states: usize,
    pub edges: usize,
    pub is_home_state: Option<bool>,
    pub is_live: Option<bool>,
    /// Transitions that some reachable marking disables forever.
    pub dead_transitions: Vec<usize>,
    pub bound_hit: bool,
}

/// Explores the reachability graph breadth-first from `m0`.
///
/// `m0` is a home state iff the graph has a single bottom strongly connected
/// component and it contains `m0`. The net is live iff every transition
/// labels an edge inside every bottom component. Each discovered marking is
/// checked against the invariants of the fundamental set.
pub fn reach_report(net: &PetriNet, m0: &Marking, state_cap: usize) -> Result<ReachabilityReport> {
    check_dim(net.place_count(), m0.len())?;
    if state_cap == 0 {
        return Err(Error::InvalidArgument("state cap must be at least 1".into()));
    }
    let fs = fundamental_set(net);
    let invariants = invariant_report(net, m0, fs.members())?;

    let mut graph: DiGraph<(), usize> = DiGraph::new();
    let mut index: HashMap<Marking, NodeIndex> = HashMap::new();
    let mut queue = VecDeque::new();
    let start = graph.add_node(());
    index.insert(m0.clone(), start);
    queue.push_back((m0.clone(), start));
    let mut bound_hit = false;

    'explore: while let Some((m, node)) = queue.pop_front() {
        for t in enabled(net, &m)? {
            let next = fire(net, &m, t)?;
            let target = match index.get(&next) {
                Some(&n) => n,
                None => {
                    if index.len() >= state_cap {
                        bound_hit = true;
                        break 'explore;
                    }
                    if !invariants.holds(&next)? {
                        return Err(Error::Internal(format!(
                            "reachable marking {:?} violates a semiflow invariant",
                            next.coords()
                        )));
                    }
                    let n = graph.add_node(());
                    index.insert(next.clone(), n);
                    queue.push_back((next, n));
                    n
                }
            };
            graph.add_edge(node, target, t);
        }
    }

    let states = graph.node_count();
    let edges = graph.edge_count();
    if bound_hit {
        return Ok(ReachabilityReport {
            states,
            edges,
            is_home_state: None,
            is_live: None,
            dead_transitions: Vec::new(),
            bound_hit,
        });
    }

    let sccs = tarjan_scc(&graph);
    let mut component = vec![0usize; states];
    for (c, nodes) in sccs.iter().enumerate() {
        for n in nodes {
            component[n.index()] = c;
        }
    }
    let mut is_bottom = vec![true; sccs.len()];
    let mut fired_inside = vec![vec![false; net.transition_count()]; sccs.len()];
    for e in graph.edge_indices() {
        let (a, b) = graph.edge_endpoints(e).expect("edge exists");
        let (ca, cb) = (component[a.index()], component[b.index()]);
        if ca == cb {
            fired_inside[ca][graph[e]] = true;
        } else {
            is_bottom[ca] = false;
        }
    }
    let bottoms: Vec<usize> = (0..sccs.len()).filter(|&c| is_bottom[c]).collect();
    let is_home_state = bottoms.len() == 1 && bottoms[0] == component[start.index()];
    let dead_transitions: Vec<usize> = (0..net.transition_count())
        .filter(|&t| bottoms.iter().any(|&c| !fired_inside[c][t]))
        .collect();

    Ok(ReachabilityReport {
        states,
        edges,
        is_home_state: Some(is_home_state),
        is_live: Some(dead_transitions.is_empty()),
        dead_transitions,
        bound_hit,
    })
}

/// All markings reachable from `m0`, sorted; fails when more than `state_cap` exist.
pub fn reachable_markings(net: &PetriNet, m0: &Marking, state_cap: usize) -> Result<Vec<Marking>> {
    check_dim(net.place_count(), m0.len())?;
    let mut seen = std::collections::BTreeSet::new();
    let mut queue = VecDeque::from([m0.clone()]);
    seen.insert(m0.clone());
    while let Some(m) = queue.pop_front() {
        for t in enabled(net, &m)? {
            let next = fire(net, &m, t)?;
            if seen.insert(next.clone()) {
                if seen.len() > state_cap {
                    return Err(Error::InvalidArgument(format!(
                        "more than {state_cap} reachable markings"
                    )));
                }
                queue.push_back(next);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::net::parse_net;

    fn rhs(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn telephone_invariants() {
        let (net, m0) = fixtures::telephone();
        let sys = invariant_report(&net, &m0, &fixtures::telephone_semiflows()).unwrap();
        assert_eq!(sys.rhs, rhs(&[1, 1, 1]));
        assert!(invariant_report(&net, &m0, &[]).unwrap().rhs.is_empty());
    }

    #[test]
    fn pairs_scalar_invariant() {
        let (net, _) = fixtures::pairs();
        let sys = invariant_report(
            &net,
            &Marking::from_u64s(&[1, 0, 1, 0]),
            &[fixtures::pairs_vectors().g3],
        )
        .unwrap();
        assert_eq!(sys.rhs, rhs(&[2]));
    }

    #[test]
    fn invariant_report_rejects_non_semiflows() {
        let (net, m0) = fixtures::pairs();
        assert!(matches!(
            invariant_report(&net, &m0, &[Semiflow::from_u64s(&[1, 0, 0, 0])]),
            Err(Error::NotSemiflow(_))
        ));
        assert!(invariant_report(&net, &Marking::from_u64s(&[1]), &[]).is_err());
    }

    fn brute_markings(sys: &InvariantSystem, d: usize, bound: u64) -> Vec<Marking> {
        let mut out = Vec::new();
        let total = (bound + 1).pow(d as u32);
        for code in 0..total {
            let mut c = code;
            let mut coords = vec![0u64; d];
            for p in (0..d).rev() {
                coords[p] = c % (bound + 1);
                c /= bound + 1;
            }
            let m = Marking::from_u64s(&coords);
            if sys.holds(&m).unwrap() {
                out.push(m);
            }
        }
        out
    }

    #[test]
    fn pairs_consistent_markings_match_brute_force() {
        let (net, _) = fixtures::pairs();
        let v = fixtures::pairs_vectors();
        let sys = InvariantSystem {
            generators: vec![v.g1, v.g2, v.g3, v.g4],
            rhs: rhs(&[1, 1, 1, 1]),
        };
        let got = consistent_markings(&net, &sys).unwrap();
        assert_eq!(got, brute_markings(&sys, 4, 3));
        assert_eq!(
            got,
            vec![Marking::from_u64s(&[0, 0, 1, 1]), Marking::from_u64s(&[1, 1, 0, 0])]
        );
    }

    #[test]
    fn zero_rhs_gives_zero_marking() {
        let (net, _) = fixtures::telephone();
        let sys = InvariantSystem {
            generators: fixtures::telephone_semiflows().to_vec(),
            rhs: rhs(&[0, 0, 0]),
        };
        assert_eq!(consistent_markings(&net, &sys).unwrap(), vec![Marking::zero(9)]);
    }

    #[test]
    fn telephone_consistent_markings_match_brute_force() {
        let (net, m0) = fixtures::telephone();
        let sys = invariant_report(&net, &m0, &fixtures::telephone_semiflows()).unwrap();
        let got = consistent_markings(&net, &sys).unwrap();
        assert_eq!(got, brute_markings(&sys, 9, 1));
        let reachable = reachable_markings(&net, &m0, 1000).unwrap();
        for m in &reachable {
            assert!(got.binary_search(m).is_ok());
        }
    }

    #[test]
    fn uncovered_places_are_reported() {
        let (net, m0) = fixtures::pairs();
        let sys = invariant_report(&net, &m0, &[fixtures::pairs_vectors().g1]).unwrap();
        assert_eq!(
            consistent_markings(&net, &sys),
            Err(Error::UnboundedEnumeration(vec!["p1".into(), "p4".into()]))
        );
    }

    #[test]
    fn telephone_is_live_with_home_state() {
        let (net, m0) = fixtures::telephone();
        let r = reach_report(&net, &m0, DEFAULT_STATE_CAP).unwrap();
        assert_eq!(r.is_home_state, Some(true));
        assert_eq!(r.is_live, Some(true));
        assert!(r.dead_transitions.is_empty());
        assert!(!r.bound_hit);
        assert!(r.states < 100);
    }

    #[test]
    fn sink_transition_is_not_live() {
        let (net, m0) = parse_net("place p 1\ntrans t in p").unwrap();
        let r = reach_report(&net, &m0, 10).unwrap();
        assert_eq!(r.states, 2);
        assert_eq!(r.is_home_state, Some(false));
        assert_eq!(r.is_live, Some(false));
        assert_eq!(r.dead_transitions, vec![0]);
    }

    #[test]
    fn self_loop_is_live() {
        let (net, m0) = parse_net("place p 1\ntrans t in p out p").unwrap();
        let r = reach_report(&net, &m0, 10).unwrap();
        assert_eq!(r.states, 1);
        assert_eq!(r.is_home_state, Some(true));
        assert_eq!(r.is_live, Some(true));
    }

    #[test]
    fn unbounded_net_hits_the_cap() {
        let (net, m0) = parse_net("place p 1\nplace q\ntrans t in p out p q").unwrap();
        let r = reach_report(&net, &m0, 50).unwrap();
        assert!(r.bound_hit);
        assert_eq!(r.states, 50);
        assert_eq!(r.is_home_state, None);
        assert_eq!(r.is_live, None);
    }

    #[test]
    fn reachable_markings_fit_both_generating_sets() {
        // {f1, f2, f3} over Q+ and {f1, f2+f3, f1+f3} over Q.
        let (net, m0) = fixtures::telephone();
        let [f1, f2, f3] = fixtures::telephone_semiflows();
        let gb2 = vec![f1.clone(), f2.add(&f3).unwrap(), f1.add(&f3).unwrap()];
        let reachable = reachable_markings(&net, &m0, 1000).unwrap();
        for gens in [vec![f1, f2, f3], gb2] {
            let sys = invariant_report(&net, &m0, &gens).unwrap();
            let consistent = consistent_markings(&net, &sys).unwrap();
            for m in &reachable {
                assert!(consistent.binary_search(m).is_ok());
            }
        }
    }
}
