//! Exact-arithmetic toolkit for periodic continued fractions of `√D`, Pell and
//! Pellian equations, and the divisor-sum problem
//!
//! ```text
//!     d1 | (n^2 + 1)/2,   d2 | (n^2 + 1)/2,   d1 + d2 = δ·n + ε
//! ```
//!
//! for even `δ` and `ε`. The constructive families live in [`families`]; every
//! witness they produce can be re-derived from scratch by the brute-force
//! [`oracle`], which knows nothing about Pell equations.
//!
//! All arithmetic is on arbitrary-precision integers; no floating point is
//! used anywhere.

pub mod cf;
mod error;
pub mod families;
pub mod oracle;
pub mod pell;
mod util;

pub use cf::{convergents, sqrt_cf, Convergent, PqaStep, SurdExpansion, MAX_PERIOD};
pub use error::{Error, Result};
pub use families::{
    derive_params, generate, orbit_family_witnesses, orbit_start, pell_family_witnesses,
    prop1_witnesses, theorem1_witnesses, theorem2_witnesses, theorem3_check, theorem3_check_with,
    verify_family_against_oracle, verify_family_with, FamilyCase, FamilyParams, FamilyRun,
    NonexistenceReport, NonexistenceRow, OracleCheck, SkipReason, SkippedIndex, VerificationEntry,
    VerificationReport,
};
pub use oracle::{
    divisor_set, find_pairs, search_range, DivisorOracle, DivisorSet, Violation, WitnessTriple,
    DEFAULT_RHO_SEED,
};
pub use pell::{
    fundamental_solution, grelak_solvable, iterate_pell, pellian_brute, pellian_orbit,
    GrelakInstance, PellSolution, PellianSolution,
};
pub use util::{exact_sqrt, is_perfect_square};
