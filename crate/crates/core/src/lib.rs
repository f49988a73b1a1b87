//! Exact computation, classification, and use of the non-negative semiflows
//! (place invariants) of place/transition nets.
//!
//! * [`farkas`]: the fundamental set, i.e. canonical semiflows of minimal support;
//! * [`hilbert`]: all minimal semiflows, the unique minimal generating set over ℕ;
//! * [`rational`] and [`natdec`]: decompositions over ℚ, ℚ⁺ and ℕ;
//! * [`classify`]: per-vector predicates and generating-set verdicts;
//! * [`bounds`]: bounds on the number of minimal supports;
//! * [`behavior`]: invariants, marking enumeration, reachability verdicts;
//! * [`oracle`]: brute-force references for small nets.
//!
//! All arithmetic is exact.

pub mod behavior;
pub mod bounds;
pub mod classify;
pub mod error;
pub mod farkas;
pub mod fixtures;
pub mod hilbert;
pub mod natdec;
pub mod net;
pub mod oracle;
pub mod rational;
pub mod vector;

pub use classify::{Analysis, Domain, GeneratingSetReport, Witness};
pub use error::{Error, Result};
pub use farkas::{fundamental_set, minimal_supports, FundamentalSet};
pub use hilbert::{minimal_semiflows, HilbertBasis};
pub use net::{parse_net, Marking, PetriNet};
pub use rational::RationalCoeffs;
pub use vector::{Semiflow, Support};
