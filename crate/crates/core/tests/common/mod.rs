#![allow(dead_code)]

use num_bigint::BigUint;
use rand::rngs::StdRng;
use rand::Rng;
use semiflows::{PetriNet, Semiflow};

/// Random net with `1..=max_places` places, `0..=max_transitions`
/// transitions, and arc weights in `0..=max_weight`.
pub fn random_net(
    rng: &mut StdRng,
    max_places: usize,
    max_transitions: usize,
    max_weight: u32,
) -> PetriNet {
    let d = rng.random_range(1..=max_places);
    let nt = rng.random_range(0..=max_transitions);
    let mut weights = || -> Vec<Vec<BigUint>> {
        (0..d)
            .map(|_| {
                (0..nt)
                    .map(|_| {
                        if rng.random_bool(0.4) {
                            BigUint::from(rng.random_range(1..=max_weight))
                        } else {
                            BigUint::default()
                        }
                    })
                    .collect()
            })
            .collect()
    };
    let pre = weights();
    let post = weights();
    PetriNet::new(
        (0..d).map(|i| format!("p{i}")).collect(),
        (0..nt).map(|i| format!("t{i}")).collect(),
        pre,
        post,
    )
    .expect("generated net is valid")
}

/// Random non-negative integer combination of `gens`.
pub fn random_combination(rng: &mut StdRng, gens: &[Semiflow], dim: usize, max_coeff: u32) -> Semiflow {
    gens.iter().fold(Semiflow::zero(dim), |acc, g| {
        let k = rng.random_range(0..=max_coeff);
        acc.add(&g.scale(&BigUint::from(k))).unwrap()
    })
}
