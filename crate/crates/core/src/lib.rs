//! Exact computational calculus for the inverse semigroups generated by the
//! integer linear fractional transformations `A`, `B`, and `C_n` (n = 2, 3)
//! on the unit interval, together with the ray translation `T`.
//!
//! The crate provides:
//!
//! - [`projective`]: arbitrary-precision projective matrices, extended
//!   rationals, half-open intervals, and partial increasing maps;
//! - [`words`]: words over the generator alphabet and their semantics;
//! - [`rewrite`]: the four complete-presentation rewrite systems, normal
//!   forms, critical pairs, C-tracks, and completion to positive form;
//! - [`trees`]: integer-labeled subdivision trees, their partitions of
//!   `[0,1)`, elementary moves, and the root-label range `N(T)`;
//! - [`cutset`]: the cut-set discovery search with exact step accounting;
//! - [`complex`]: pair classes, vertices, the expansion partial order,
//!   push-through of maps across generating domains, expansion schemes, and
//!   ascending links;
//! - [`element`]: tree-pair group elements with twists (F/T/V flavors) and
//!   their evaluation, composition, and inversion;
//! - [`rng`]: a small deterministic generator for seedable property drivers.

pub mod complex;
pub mod cutset;
pub mod element;
pub mod error;
pub mod projective;
pub mod rewrite;
pub mod rng;
pub mod trees;
pub mod words;

pub use error::{ComplexError, ParseError, ProjectiveError, RewriteError, TreeError};
pub use projective::{
    detect_c_power, detect_power_of, make_generator, ExtRational, GeneratorName, Interval,
    PartialLft, ProjMatrix, Variant,
};
pub use rewrite::{
    c_tracks, classify_normal_form, complete_to_positive, critical_pair_report, has_npc,
    verify_rule_soundness, RewriteSystem, SystemName,
};
pub use words::{word_semantics, GenWord, Letter};
