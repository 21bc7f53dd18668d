//! Coordinate-deletion shadows on words over `{0,…,k}`.
//!
//! For a family `A ⊆ {0,…,k}^n` the δ_r-shadow is the set of words of length
//! `n − 1` obtained by deleting a single coordinate whose value is at most
//! `r`. With `r = 0` this is the δ-shadow (delete a zero) and with `r = k` it
//! is the plain coordinate-deletion shadow Δ.
//!
//! The crate provides
//!
//! * [`seq`]: sequences, reduced words, position sets, families and the
//!   decomposition of a level into components sharing a reduced word;
//! * [`order`]: colex, simplicial, `≤_c` and the `≤` order together with
//!   streaming initial-segment generation;
//! * [`shadow`]: the δ_r operators and deletion multidegrees;
//! * [`extremal`]: compressions, canonicalisation, the closed-form minimum
//!   δ-shadow, canonical families and the averaging lower bound;
//! * [`io`]: the plain-text family format.

pub mod count;
mod error;
pub mod extremal;
pub mod io;
pub mod order;
mod par;
pub mod seq;
pub mod shadow;

pub use error::{Error, Result};
pub use extremal::{
    canonical_family, canonicalize, canonicalize_traced, complement_system, compress,
    level_union_shadow_size, min_delta_shadow_size, ones_count, ones_count_colex,
    prop10_lower_bound, segment_realize, CanonStep, CanonStepKind, CanonicalKind, CanonTrace,
    PotentialValue, SegmentDescriptor, SetSystem,
};
pub use order::{
    c_cmp, c_less, colex_cmp, colex_initial_positions, colex_less, initial_segment_leq, leq_cmp,
    leq_less, simplicial_cmp, simplicial_initial_segment, simplicial_less, ColexSubsets,
    LeqOrder, OrderKind, ReducedWords,
};
pub use seq::{Component, Family, PositionSet, ReducedWord, Sequence, SequenceStats};
pub use shadow::{delta, delta_r, deletion_multidegree, full_deletion, ShadowRadius};
