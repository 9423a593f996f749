use super::{IT2Set, IT2Variable};
use crate::{Error, LinguisticVariable, PiecewiseLinearMF, Result, Universe};

/// Turns every term of `var` into an interval type-2 set by moving the feet
/// of its support `delta` outward (upper bound) and inward (lower bound).
/// The peak stays where it is.
pub fn blur_variable(var: &LinguisticVariable, delta: f64) -> Result<IT2Variable> {
    let universe = var.universe();
    let terms = var
        .terms()
        .iter()
        .map(|(label, mf)| {
            let (lower, upper) = blur_mf(mf, delta, universe)?;
            IT2Set::new(label.clone(), lower, upper)
        })
        .collect::<Result<Vec<_>>>()?;
    IT2Variable::new(var.name(), universe, terms)
}

/// Returns `(lower, upper)` for a single membership function.
///
/// The vertices left of the first peak vertex form the left flank, those
/// right of the last peak vertex the right flank. Widening shifts the flanks
/// away from the peak by `delta`, narrowing shifts them toward it, and both
/// results are truncated to the universe. A shoulder has its peak on the
/// universe edge, so only its interior foot moves. If narrowing pushes a
/// flank onto or past the peak the lower bound degenerates to the zero
/// function.
pub fn blur_mf(
    mf: &PiecewiseLinearMF,
    delta: f64,
    universe: Universe,
) -> Result<(PiecewiseLinearMF, PiecewiseLinearMF)> {
    if !(delta.is_finite() && delta >= 0.0) {
        return Err(Error::NegativeDelta(delta));
    }
    if delta == 0.0 || mf.is_zero() {
        return Ok((mf.clone(), mf.clone()));
    }
    let v = mf.vertices();
    let peak = mf.height();
    let first_peak = v.iter().position(|p| p.1 == peak).unwrap();
    let last_peak = v.iter().rposition(|p| p.1 == peak).unwrap();
    let shifted = |outward: f64| -> Vec<(f64, f64)> {
        v.iter()
            .enumerate()
            .map(|(i, &(x, mu))| {
                if i < first_peak {
                    (x - outward, mu)
                } else if i > last_peak {
                    (x + outward, mu)
                } else {
                    (x, mu)
                }
            })
            .collect()
    };

    let upper = PiecewiseLinearMF::new(truncate(&shifted(delta), universe))?;

    let narrowed = shifted(-delta);
    let collapsed = (first_peak > 0 && narrowed[first_peak - 1].0 >= v[first_peak].0)
        || (last_peak + 1 < v.len() && narrowed[last_peak + 1].0 <= v[last_peak].0);
    let lower = if collapsed {
        PiecewiseLinearMF::zero(universe.lo(), universe.hi())?
    } else {
        PiecewiseLinearMF::new(truncate(&narrowed, universe))?
    };
    Ok((lower, upper))
}

/// Clips a polyline to `[lo, hi]`, inserting interpolated vertices where a
/// segment crosses an edge. Falls back to the zero function when nothing
/// of it remains inside.
fn truncate(pts: &[(f64, f64)], universe: Universe) -> Vec<(f64, f64)> {
    let (lo, hi) = (universe.lo(), universe.hi());
    let lerp = |a: (f64, f64), b: (f64, f64), x: f64| a.1 + (b.1 - a.1) * (x - a.0) / (b.0 - a.0);
    let mut out = Vec::with_capacity(pts.len() + 2);
    for (i, &p) in pts.iter().enumerate() {
        if i > 0 {
            let q = pts[i - 1];
            if q.0 < lo && p.0 > lo {
                out.push((lo, lerp(q, p, lo)));
            }
            if q.0 < hi && p.0 > hi {
                out.push((hi, lerp(q, p, hi)));
            }
        }
        if p.0 >= lo && p.0 <= hi {
            out.push(p);
        }
    }
    if out.len() < 2 {
        return vec![(lo, 0.0), (hi, 0.0)];
    }
    out
}
