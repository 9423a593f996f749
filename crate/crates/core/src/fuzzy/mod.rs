//! Type-1 fuzzy machinery: membership functions, linguistic variables,
//! Mamdani inference (min AND, min implication, max aggregation) and
//! centroid defuzzification on a uniform grid.

mod mf;
mod rules;
mod sampled;
mod system;
mod variable;

pub use mf::{make_triangle, PiecewiseLinearMF};
pub use rules::{Rule, RuleBase};
pub use sampled::{Centroid, SampledMF};
pub use system::T1System;
pub use variable::{LinguisticVariable, Universe};

/// Output grid resolution used when a system does not specify one.
pub const DEFAULT_GRID_SIZE: usize = 1001;
