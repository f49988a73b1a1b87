//! Reference nets shipped with the crate, together with the semiflow vectors
//! they are known to admit.

use crate::net::{parse_net, Marking, PetriNet};
use crate::vector::Semiflow;

pub const RATIO_NET: &str = include_str!("../fixtures/ratio.pn");
pub const PAIRS_NET: &str = include_str!("../fixtures/pairs.pn");
pub const TELEPHONE_NET: &str = include_str!("../fixtures/telephone.pn");

fn load(text: &str) -> (PetriNet, Marking) {
    parse_net(text).expect("bundled fixture parses")
}

/// Five places with one ratio constraint; three minimal supports, five minimal semiflows.
pub fn ratio() -> (PetriNet, Marking) {
    load(RATIO_NET)
}

/// Four places, one transition; four minimal semiflows of minimal support.
pub fn pairs() -> (PetriNet, Marking) {
    load(PAIRS_NET)
}

/// Two-subscriber telephone protocol with nine places and nine transitions.
pub fn telephone() -> (PetriNet, Marking) {
    load(TELEPHONE_NET)
}

#[derive(Debug, Clone)]
pub struct RatioVectors {
    pub f1: Semiflow,
    pub f2: Semiflow,
    pub g1: Semiflow,
    pub g2: Semiflow,
    pub g3: Semiflow,
}

pub fn ratio_vectors() -> RatioVectors {
    RatioVectors {
        f1: Semiflow::from_u64s(&[3, 3, 2, 0, 1]),
        f2: Semiflow::from_u64s(&[4, 4, 1, 0, 2]),
        g1: Semiflow::from_u64s(&[2, 2, 3, 0, 0]),
        g2: Semiflow::from_u64s(&[1, 1, 0, 1, 0]),
        g3: Semiflow::from_u64s(&[5, 5, 0, 0, 3]),
    }
}

#[derive(Debug, Clone)]
pub struct PairsVectors {
    pub f: Semiflow,
    pub g1: Semiflow,
    pub g2: Semiflow,
    pub g3: Semiflow,
    pub g4: Semiflow,
}

pub fn pairs_vectors() -> PairsVectors {
    PairsVectors {
        f: Semiflow::from_u64s(&[1, 1, 1, 1]),
        g1: Semiflow::from_u64s(&[0, 1, 1, 0]),
        g2: Semiflow::from_u64s(&[0, 1, 0, 1]),
        g3: Semiflow::from_u64s(&[1, 0, 1, 0]),
        g4: Semiflow::from_u64s(&[1, 0, 0, 1]),
    }
}

/// The three minimal-support semiflows of the telephone net, in the place
/// order LA, CLA, W, PU, S, F, CA, R, A.
pub fn telephone_semiflows() -> [Semiflow; 3] {
    [
        // LA CLA W PU S
        Semiflow::from_u64s(&[1, 1, 1, 1, 1, 0, 0, 0, 0]),
        // LA PU F CA
        Semiflow::from_u64s(&[1, 0, 0, 1, 0, 1, 1, 0, 0]),
        // CLA S R A
        Semiflow::from_u64s(&[0, 1, 0, 0, 1, 0, 0, 1, 1]),
    ]
}
