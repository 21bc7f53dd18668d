//! Brute-force oracles and claim-by-claim checks for coordinate-deletion
//! shadows.
//!
//! [`engine`] searches families of words with bitmask tables, visiting every
//! family of a small universe, every family of one size, or seeded random
//! samples. [`checks`] uses it, together with the constructions of
//! `delshadow-core`, to confirm the extremal results at desk scale and to
//! probe the open `B_{r,t}` question. Every check returns a
//! [`VerificationReport`]; the report is identical for identical budgets
//! whatever the number of worker threads.

mod budget;
pub mod checks;
pub mod engine;
mod error;
mod par;
mod report;

pub use budget::{Execution, SearchBudget, SearchMode};
pub use checks::{
    check_a_t, check_canonicalize, check_conjecture1, check_corollary11, check_degree_identity, check_lemma3,
    check_lemma4, check_lemma6, check_lemma7, check_lemma8, check_lemma9, check_prop10, check_theorem1,
    check_theorem2, run_check, run_suite, CheckName, SuiteConfig,
};
pub use engine::{brute_force_min_shadow, MinShadow};
pub use error::{Result, VerifyError};
pub use par::{configure_threads, current_workers, with_workers};
pub use report::{VerificationReport, Violation};
