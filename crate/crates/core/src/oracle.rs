//! Reference computations for checking the closed-form FOU centroid.
//!
//! Nothing in the control path depends on this module. It provides a brute
//! force planar centroid of the footprint and the iterative Karnik-Mendel
//! centroid interval, which is what conventional type-reduction would use.

use crate::it2::DEGENERATE_FOU;
use crate::{Error, Result, SampledMF};

/// Type-reduced centroid interval `[c_l, c_r]` plus the number of
/// Karnik-Mendel iterations spent on each endpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentroidInterval {
    pub c_l: f64,
    pub c_r: f64,
    pub iterations_l: usize,
    pub iterations_r: usize,
}

impl CentroidInterval {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.c_l + self.c_r)
    }

    pub fn iterations(&self) -> usize {
        self.iterations_l + self.iterations_r
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.c_l && x <= self.c_r
    }
}

fn check_pair(upper: &SampledMF, lower: &SampledMF) -> Result<()> {
    if !upper.same_grid(lower) {
        return Err(Error::GridMismatch);
    }
    if let Some(i) = (0..upper.grid_size()).find(|&i| lower.mu()[i] > upper.mu()[i]) {
        return Err(Error::FouViolation(format!(
            "grid node {i}: lower {} > upper {}",
            lower.mu()[i],
            upper.mu()[i]
        )));
    }
    Ok(())
}

// linear interpolation of the grid samples at x
fn interp(s: &SampledMF, x: f64) -> f64 {
    let n = s.grid_size();
    let pos = (x - s.universe().lo()) / s.step();
    let i = (pos.floor().max(0.0) as usize).min(n - 2);
    let t = pos - i as f64;
    let mu = s.mu();
    mu[i] + (mu[i + 1] - mu[i]) * t
}

/// Horizontal centroid of the planar region `{(x, z) : lower(x) <= z <=
/// upper(x)}`, by midpoint summation over `resolution` vertical strips of
/// the linearly interpolated aggregates.
///
/// A footprint with (numerically) zero area but a non-empty upper set
/// returns the upper set's centroid.
pub fn fou_centroid_bruteforce(
    upper: &SampledMF,
    lower: &SampledMF,
    resolution: usize,
) -> Result<f64> {
    check_pair(upper, lower)?;
    if resolution < 100 {
        return Err(Error::InvalidParameter(format!(
            "resolution must be at least 100, got {resolution}"
        )));
    }
    let u = upper.universe();
    let dx = u.span() / resolution as f64;
    let (mut fou_area, mut fou_moment) = (0.0, 0.0);
    let (mut up_area, mut up_moment) = (0.0, 0.0);
    for k in 0..resolution {
        let x = u.lo() + (k as f64 + 0.5) * dx;
        let hu = interp(upper, x);
        let h = hu - interp(lower, x);
        fou_area += h * dx;
        fou_moment += x * h * dx;
        up_area += hu * dx;
        up_moment += x * hu * dx;
    }
    if up_area <= 0.0 {
        return Err(Error::UndefinedOutput);
    }
    if fou_area < DEGENERATE_FOU * u.span() {
        return Ok(up_moment / up_area);
    }
    Ok(fou_moment / fou_area)
}

/// Karnik-Mendel centroid interval of the interval set bounded by `lower`
/// and `upper`, using trapezoidal quadrature weights on the shared grid.
///
/// Both endpoints start from the centroid of `(lower + upper) / 2`. A grid
/// point lying exactly on the switch point belongs to the left segment.
pub fn km_centroid(upper: &SampledMF, lower: &SampledMF) -> Result<CentroidInterval> {
    check_pair(upper, lower)?;
    if upper.area() <= 0.0 {
        return Err(Error::UndefinedOutput);
    }
    let (c_l, iterations_l) = km_endpoint(upper, lower, Endpoint::Left)?;
    let (c_r, iterations_r) = km_endpoint(upper, lower, Endpoint::Right)?;
    Ok(CentroidInterval {
        c_l,
        c_r,
        iterations_l,
        iterations_r,
    })
}

/// Midpoint of the Karnik-Mendel interval.
pub fn km_defuzz(upper: &SampledMF, lower: &SampledMF) -> Result<f64> {
    Ok(km_centroid(upper, lower)?.midpoint())
}

#[derive(Clone, Copy, PartialEq)]
enum Endpoint {
    Left,
    Right,
}

fn km_endpoint(upper: &SampledMF, lower: &SampledMF, end: Endpoint) -> Result<(f64, usize)> {
    let n = upper.grid_size();
    let (lo, step) = (upper.universe().lo(), upper.step());
    let (u, l) = (upper.mu(), lower.mu());
    let weight = |i: usize| if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
    let centroid = |theta: &dyn Fn(usize) -> f64| -> Result<f64> {
        let (mut mass, mut moment) = (0.0, 0.0);
        for i in 0..n {
            let m = weight(i) * theta(i);
            mass += m;
            moment += m * i as f64;
        }
        if mass <= 0.0 {
            return Err(Error::UndefinedOutput);
        }
        Ok(lo + step * (moment / mass))
    };

    let mut c = centroid(&|i| 0.5 * (u[i] + l[i]))?;
    let mut switch: Option<usize> = None;
    // each update strictly moves the switch point; n + 1 bounds the loop
    for iter in 1..=n + 1 {
        // number of grid points in the left segment (x_i <= c)
        let k = ((c - lo) / step).floor().clamp(-1.0, (n - 1) as f64) as isize + 1;
        let k = k as usize;
        if switch == Some(k) {
            return Ok((c, iter - 1));
        }
        switch = Some(k);
        let next = match end {
            Endpoint::Left => centroid(&|i| if i < k { u[i] } else { l[i] }),
            Endpoint::Right => centroid(&|i| if i < k { l[i] } else { u[i] }),
        };
        c = match next {
            Ok(v) => v,
            // c sits on the outermost node with upper mass and the lower set is
            // empty beyond it: no embedded set reaches further out
            Err(Error::UndefinedOutput) => return Ok((c, iter)),
            Err(e) => return Err(e),
        };
    }
    Ok((c, n + 1))
}
