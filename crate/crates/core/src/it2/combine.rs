use crate::{Error, Result, SampledMF};

/// Below this fraction of the universe span, `A_U - A_L` counts as zero and
/// the output falls back to the upper centroid.
pub(crate) const DEGENERATE_FOU: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CombinerResult {
    pub c_upper: f64,
    /// `None` when the lower aggregate is empty.
    pub c_lower: Option<f64>,
    pub a_upper: f64,
    pub a_lower: f64,
    pub y: f64,
}

/// Geometric centroid of the region between the two aggregates:
/// `y = (c_U A_U - c_L A_L) / (A_U - A_L)`.
pub fn combine_centroid(upper: &SampledMF, lower: &SampledMF) -> Result<CombinerResult> {
    if !upper.same_grid(lower) {
        return Err(Error::GridMismatch);
    }
    let cu = match upper.centroid() {
        Ok(c) => c,
        Err(Error::UndefinedCentroid) => return Err(Error::UndefinedOutput),
        Err(e) => return Err(e),
    };
    let (c_lower, a_lower) = match lower.centroid() {
        Ok(c) => (Some(c.value), c.area),
        Err(Error::UndefinedCentroid) => (None, 0.0),
        Err(e) => return Err(e),
    };
    let fou_area = cu.area - a_lower;
    let y = match c_lower {
        _ if fou_area < DEGENERATE_FOU * upper.universe().span() => cu.value,
        None => cu.value,
        Some(cl) => (cu.value * cu.area - cl * a_lower) / fou_area,
    };
    Ok(CombinerResult {
        c_upper: cu.value,
        c_lower,
        a_upper: cu.area,
        a_lower,
        y,
    })
}
