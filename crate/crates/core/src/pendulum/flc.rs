//! The reference pendulum controllers: two inputs (error and its
//! derivative) and one output (force), three terms N/Z/P each.

use std::f64::consts::{FRAC_PI_4, PI};

use crate::{
    blur_variable, decompose, make_triangle, DecomposedSystem, LinguisticVariable, RuleBase,
    T1System, Universe,
};

/// Half-width of both input universes, rad and rad/s.
pub const ERROR_RANGE: f64 = FRAC_PI_4;
/// Half-width of the force universe, N.
pub const FORCE_RANGE: f64 = 50.0;
/// Feet of the force Z term, as a fraction of [`FORCE_RANGE`].
pub const FORCE_Z_FOOT: f64 = 0.5;
/// Support uncertainty applied to every input term of the type-2 controller.
pub const BLUR_DELTA: f64 = PI / 16.0;

/// Error and error-derivative variables.
pub fn pendulum_inputs() -> [LinguisticVariable; 2] {
    let u = Universe::new(-ERROR_RANGE, ERROR_RANGE).expect("static universe");
    [
        LinguisticVariable::symmetric_nzp("error", u).expect("static partition"),
        LinguisticVariable::symmetric_nzp("error_derivative", u).expect("static partition"),
    ]
}

/// Force variable. N and P are shoulders reaching from 0 to the universe
/// edge; Z is a narrower triangle so that a weakly firing N or P rule
/// still moves the centroid linearly in its strength.
pub fn pendulum_output() -> LinguisticVariable {
    let f = FORCE_RANGE;
    let z = FORCE_Z_FOOT * f;
    let terms = vec![
        (
            "N".to_string(),
            make_triangle(-f, -f, 0.0).expect("static term"),
        ),
        (
            "Z".to_string(),
            make_triangle(-z, 0.0, z).expect("static term"),
        ),
        (
            "P".to_string(),
            make_triangle(0.0, f, f).expect("static term"),
        ),
    ];
    let u = Universe::new(-f, f).expect("static universe");
    LinguisticVariable::new("force", u, terms).expect("static partition")
}

/// Rows: error N/Z/P. Columns: error derivative N/Z/P.
pub fn pendulum_rules() -> RuleBase {
    let labels = ["N", "Z", "P"];
    let table = vec![
        vec!["P", "P", "Z"],
        vec!["P", "Z", "N"],
        vec!["Z", "N", "N"],
    ];
    RuleBase::from_table(&labels, &labels, &table).expect("static rule table")
}

pub fn pendulum_t1(grid_size: usize) -> T1System {
    T1System::new(
        pendulum_inputs().to_vec(),
        pendulum_output(),
        pendulum_rules(),
        grid_size,
    )
    .expect("static pendulum system")
}

/// Decomposed type-2 controller with every input term blurred by `delta`.
pub fn pendulum_it2(delta: f64, grid_size: usize) -> crate::Result<DecomposedSystem> {
    let inputs = pendulum_inputs()
        .iter()
        .map(|v| blur_variable(v, delta))
        .collect::<crate::Result<Vec<_>>>()?;
    decompose(&inputs, &pendulum_output(), &pendulum_rules(), grid_size)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_GRID_SIZE;

    #[test]
    fn t1_is_zero_at_origin_and_antisymmetric() {
        let c = pendulum_t1(DEFAULT_GRID_SIZE);
        assert!(c.output_value(&[0.0, 0.0]).unwrap().abs() < 1e-6);
        for (e, de) in [(0.1, 0.0), (-0.3, 0.2), (0.7, -0.78)] {
            let a = c.output_value(&[e, de]).unwrap();
            let b = c.output_value(&[-e, -de]).unwrap();
            assert!((a + b).abs() < 1e-6, "{a} {b}");
        }
    }

    #[test]
    fn corner_fires_only_positive_force() {
        // (N, N) -> P alone: centroid of the right shoulder on [0, F]
        let c = pendulum_t1(DEFAULT_GRID_SIZE);
        let y = c.output_value(&[-ERROR_RANGE, -ERROR_RANGE]).unwrap();
        assert!((y - 2.0 * FORCE_RANGE / 3.0).abs() < 1e-3, "y = {y}");
    }

    #[test]
    fn t1_has_linear_gain_near_zero() {
        // the force must beat gravity (1.5 g y) for small angles
        let c = pendulum_t1(DEFAULT_GRID_SIZE);
        for e in [-0.001, -0.01, -0.05] {
            let f = c.output_value(&[e, 0.0]).unwrap();
            assert!(f > 1.5 * 9.8 * -e, "e = {e}, f = {f}");
        }
    }

    #[test]
    fn it2_is_zero_at_origin() {
        let c = pendulum_it2(BLUR_DELTA, DEFAULT_GRID_SIZE).unwrap();
        assert!(c.output_value(&[0.0, 0.0]).unwrap().abs() < 1e-6);
    }
}
