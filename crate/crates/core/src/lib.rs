//! Decomposed interval type-2 fuzzy logic.
//!
//! An interval type-2 system is evaluated as two ordinary type-1 Mamdani
//! systems running side by side: one fuzzifies with the upper membership
//! functions, the other with the lower ones. The two aggregated output sets
//! bound a footprint of uncertainty whose geometric centroid is the crisp
//! output, so no iterative type-reduction is needed.
//!
//! The crate also carries the iterative Karnik-Mendel centroid and a brute
//! force planar centroid as reference oracles, plus a closed-loop inverted
//! pendulum simulator used to compare type-1 and decomposed type-2
//! controllers.

pub mod cli;
pub mod config;
mod error;
pub mod experiment;
pub mod fuzzy;
pub mod it2;
pub mod oracle;
pub mod pendulum;
pub mod verify;

pub use error::{Error, Result};
pub use fuzzy::{
    make_triangle, Centroid, LinguisticVariable, PiecewiseLinearMF, Rule, RuleBase, SampledMF,
    T1System, Universe, DEFAULT_GRID_SIZE,
};
pub use it2::{
    blur_variable, combine_centroid, decompose, CombinerResult, DecomposedSystem, IT2Set,
    IT2Variable,
};
pub use pendulum::Controller;
