//! Exact classical simulation of phase kick-back algorithms over finite
//! Abelian groups.
//!
//! The crate covers group arithmetic on products of cyclic groups, exact
//! character theory (with vanishing sums of roots of unity decided by
//! cyclotomic divisibility), a state-vector simulator for the generalised
//! phase kick-back circuit, hidden subgroup recovery, and the marker
//! selection solver for functions with fully balanced images.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub mod catalog;
pub mod character;
pub mod cli;
pub mod cyclo;
pub mod error;
pub mod fbi;
pub mod fourier;
pub mod group;
pub mod hsp;
pub mod multiset;
pub mod qsim;
pub mod verify;

pub use character::{
    annihilator, char_eval, char_exponent, char_sum_over, conjugate_char, Character,
};
pub use cyclo::{is_zero_sum, CycloSum, RootExponent};
pub use error::{Error, Result};
pub use fbi::{
    call_bound, fbi_gpk_probe, image_description, is_fbi_spectral, is_fbi_structural,
    make_fbi_instance, marker_selection, CandidateOrder, FbiInstance, MarkerLedger,
    MarkerSelection, ProbeOutcome,
};
pub use group::{
    cosets_of, enumerate_subgroups, make_group, subgroup_closure, Coset, GroupElement, GroupSpec,
    Subgroup,
};
pub use multiset::{classify_multiset, is_fully_balanced, Classification, Multiset};
pub use qsim::{
    eigen_check, fourier_gate, gpk_closed_form, gpk_run, measure, oracle_gate, GpkOutcome,
    JointState, Oracle, StateVector,
};

/// Absolute tolerance for every floating-point comparison in the crate.
pub const TOLERANCE: f64 = 1e-9;

/// Deterministic generator for independent trial `stream` under `seed`.
pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
