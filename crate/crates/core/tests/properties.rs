mod common;

use std::collections::BTreeSet;

use num_bigint::BigUint;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};

use semiflows::behavior::{consistent_markings, invariant_report, reachable_markings};
use semiflows::bounds::{refined_bound, sperner_bound};
use semiflows::farkas::{fundamental_set_with, FarkasOptions};
use semiflows::net::{enabled, fire};
use semiflows::rational::{extract_q_basis, in_cone, q_basis_indices, rank, solve_q};
use semiflows::{fundamental_set, minimal_semiflows, Marking, PetriNet, Semiflow};

fn net_for(seed: u64) -> (PetriNet, StdRng) {
    let mut rng = StdRng::seed_from_u64(seed);
    let net = common::random_net(&mut rng, 6, 5, 2);
    (net, rng)
}

fn random_marking(rng: &mut StdRng, d: usize, max: u64) -> Marking {
    Marking::from_u64s(&(0..d).map(|_| rng.random_range(0..=max)).collect::<Vec<_>>())
}

fn permuted(net: &PetriNet, places: &[usize], transitions: &[usize]) -> PetriNet {
    let pick = |w: fn(&PetriNet, usize, usize) -> &BigUint| -> Vec<Vec<BigUint>> {
        places
            .iter()
            .map(|&p| transitions.iter().map(|&t| w(net, p, t).clone()).collect())
            .collect()
    };
    PetriNet::new(
        places.iter().map(|&p| net.places()[p].clone()).collect(),
        transitions.iter().map(|&t| net.transitions()[t].clone()).collect(),
        pick(PetriNet::pre),
        pick(PetriNet::post),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn firing_preserves_fundamental_invariants(seed in any::<u64>()) {
        let (net, mut rng) = net_for(seed);
        let fs = fundamental_set(&net);
        let mut m = random_marking(&mut rng, net.place_count(), 4);
        let weights: Vec<BigUint> = fs.members().iter().map(|g| g.dot(m.coords()).unwrap()).collect();
        for _ in 0..20 {
            let Some(&t) = enabled(&net, &m).unwrap().choose(&mut rng) else { break };
            m = fire(&net, &m, t).unwrap();
            for (g, w) in fs.members().iter().zip(&weights) {
                prop_assert_eq!(&g.dot(m.coords()).unwrap(), w);
            }
        }
    }

    #[test]
    fn fundamental_set_ignores_order(seed in any::<u64>()) {
        let (net, mut rng) = net_for(seed);
        let fs = fundamental_set(&net);
        let heuristic = fundamental_set_with(&net, FarkasOptions { fewest_pairs_first: true });
        prop_assert_eq!(fs.members(), heuristic.members());

        let mut places: Vec<usize> = (0..net.place_count()).collect();
        let mut transitions: Vec<usize> = (0..net.transition_count()).collect();
        places.shuffle(&mut rng);
        transitions.shuffle(&mut rng);
        let other = fundamental_set(&permuted(&net, &places, &transitions));
        let restored: BTreeSet<Semiflow> = other
            .members()
            .iter()
            .map(|g| {
                let mut coords = vec![BigUint::default(); places.len()];
                for (i, &p) in places.iter().enumerate() {
                    coords[p] = g.coords()[i].clone();
                }
                Semiflow::new(coords)
            })
            .collect();
        let original: BTreeSet<Semiflow> = fs.members().iter().cloned().collect();
        prop_assert_eq!(original, restored);
    }

    #[test]
    fn cone_membership_implies_span_membership(seed in any::<u64>()) {
        let (net, mut rng) = net_for(seed);
        let d = net.place_count();
        let h = minimal_semiflows(&net).unwrap();
        let gens = h.members();
        for _ in 0..5 {
            let f = Semiflow::from_u64s(&(0..d).map(|_| rng.random_range(0..=3)).collect::<Vec<_>>());
            if f.is_zero() {
                continue;
            }
            if let Some(c) = in_cone(&f, gens).unwrap() {
                prop_assert!(c.is_non_negative() && c.reconstructs(&f, gens));
                let s = solve_q(&f, gens).unwrap();
                prop_assert!(s.is_some_and(|s| s.reconstructs(&f, gens)));
            }
        }
        for g in gens {
            prop_assert!(in_cone(g, gens).unwrap().is_some());
        }
    }

    #[test]
    fn basis_is_independent_and_spanning(seed in any::<u64>()) {
        let (net, _) = net_for(seed);
        let h = minimal_semiflows(&net).unwrap();
        let basis = extract_q_basis(h.members());
        prop_assert_eq!(basis.len(), rank(h.members()));
        prop_assert_eq!(rank(&basis), basis.len());
        prop_assert_eq!(q_basis_indices(h.members()).len(), basis.len());
        for g in h.members() {
            let c = solve_q(g, &basis).unwrap();
            prop_assert!(c.is_some_and(|c| c.reconstructs(g, &basis)));
        }
    }

    #[test]
    fn support_count_respects_bounds(seed in any::<u64>()) {
        let (net, _) = net_for(seed);
        let m = BigUint::from(fundamental_set(&net).len());
        let refined = refined_bound(&net).unwrap();
        let sperner = sperner_bound(net.place_count()).unwrap();
        prop_assert!(m <= refined.bound);
        prop_assert!(refined.bound <= sperner);
        let covered: usize = refined.classes.iter().map(Vec::len).sum();
        prop_assert_eq!(covered, net.place_count());
    }

    #[test]
    fn reachable_markings_are_consistent(seed in any::<u64>()) {
        let (net, mut rng) = net_for(seed);
        let fs = fundamental_set(&net);
        let m0 = random_marking(&mut rng, net.place_count(), 2);
        let sys = invariant_report(&net, &m0, fs.members()).unwrap();
        // Consistent markings are finite only when every place is covered.
        let Ok(consistent) = consistent_markings(&net, &sys) else { return Ok(()) };
        let consistent: BTreeSet<Marking> = consistent.into_iter().collect();
        let reachable = reachable_markings(&net, &m0, 10_000).unwrap();
        for m in &reachable {
            prop_assert!(consistent.contains(m), "reachable marking outside the invariant set");
        }
    }
}
