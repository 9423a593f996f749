use crate::{Error, Result};

/// A type-1 membership function given by its vertices.
///
/// Between vertices the degree is interpolated linearly. Outside
/// `[first x, last x]` the degree is zero; a boundary vertex with a
/// non-zero degree only holds at the exact endpoint.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseLinearMF {
    vertices: Vec<(f64, f64)>,
}

impl PiecewiseLinearMF {
    pub fn new(vertices: Vec<(f64, f64)>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::InvalidMembership(format!(
                "need at least 2 vertices, got {}",
                vertices.len()
            )));
        }
        for &(x, mu) in &vertices {
            if !x.is_finite() || !mu.is_finite() {
                return Err(Error::InvalidMembership(format!(
                    "non-finite vertex ({x}, {mu})"
                )));
            }
            if !(0.0..=1.0).contains(&mu) {
                return Err(Error::InvalidMembership(format!(
                    "degree {mu} at x = {x} outside [0, 1]"
                )));
            }
        }
        if let Some(w) = vertices.windows(2).find(|w| w[0].0 >= w[1].0) {
            return Err(Error::InvalidMembership(format!(
                "vertex abscissae not strictly increasing: {} then {}",
                w[0].0, w[1].0
            )));
        }
        Ok(Self { vertices })
    }

    /// Triangle with feet at `a`, `c` and apex at `b`. A coincident foot and
    /// apex collapses into a shoulder at height 1.
    pub fn triangle(a: f64, b: f64, c: f64) -> Result<Self> {
        if a > b || b > c || a == c {
            return Err(Error::InvalidMembership(format!(
                "triangle needs a <= b <= c with a < c, got ({a}, {b}, {c})"
            )));
        }
        let vertices = if a == b {
            vec![(a, 1.0), (c, 0.0)]
        } else if b == c {
            vec![(a, 0.0), (b, 1.0)]
        } else {
            vec![(a, 0.0), (b, 1.0), (c, 0.0)]
        };
        Self::new(vertices)
    }

    /// The identically zero function, spanning `[lo, hi]`.
    pub fn zero(lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![(lo, 0.0), (hi, 0.0)])
    }

    pub fn vertices(&self) -> &[(f64, f64)] {
        &self.vertices
    }

    pub fn first_x(&self) -> f64 {
        self.vertices[0].0
    }

    pub fn last_x(&self) -> f64 {
        self.vertices[self.vertices.len() - 1].0
    }

    pub fn height(&self) -> f64 {
        self.vertices.iter().fold(0.0, |h, v| h.max(v.1))
    }

    pub fn is_zero(&self) -> bool {
        self.height() == 0.0
    }

    pub fn eval(&self, x: f64) -> f64 {
        let v = &self.vertices;
        if !(x >= self.first_x() && x <= self.last_x()) {
            return 0.0;
        }
        // first vertex strictly right of x
        let idx = v.partition_point(|p| p.0 <= x);
        if idx == v.len() {
            return v[idx - 1].1;
        }
        let (x0, y0) = v[idx - 1];
        let (x1, y1) = v[idx];
        if x == x0 {
            return y0;
        }
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }
}

/// Builds the triangle `(a, 0), (b, 1), (c, 0)`.
pub fn make_triangle(a: f64, b: f64, c: f64) -> Result<PiecewiseLinearMF> {
    PiecewiseLinearMF::triangle(a, b, c)
}
