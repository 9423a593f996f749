//! Interval type-2 sets and the decomposed evaluation scheme.
//!
//! A decomposed system is a pair of type-1 systems sharing rules and output
//! terms. The upper path fuzzifies with the upper membership functions, the
//! lower path with the lower ones. Their aggregates bound the output
//! footprint of uncertainty (FOU), and the crisp output is the centroid of
//! that region:
//!
//! ```text
//! y = (c_U * A_U - c_L * A_L) / (A_U - A_L)
//! ```
//!
//! i.e. the lower area is treated as a negative area.

mod blur;
mod combine;
mod set;
mod system;

pub use blur::{blur_mf, blur_variable};
pub(crate) use combine::DEGENERATE_FOU;
pub use combine::{combine_centroid, CombinerResult};
pub use set::{IT2Set, IT2Variable};
pub use system::{count_fou_violations, decompose, decompose_with_output, DecomposedSystem};
