use super::{PiecewiseLinearMF, Universe};
use crate::{Error, Result};

/// A membership function sampled on `grid_size` uniform points spanning the
/// universe, endpoints included. Inference results live in this form.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledMF {
    universe: Universe,
    mu: Vec<f64>,
}

/// Centroid and area of a sampled set with non-zero area.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Centroid {
    pub value: f64,
    pub area: f64,
}

impl SampledMF {
    pub fn new(universe: Universe, mu: Vec<f64>) -> Result<Self> {
        if mu.len() < 2 {
            return Err(Error::InvalidParameter(format!(
                "grid_size must be at least 2, got {}",
                mu.len()
            )));
        }
        if let Some((i, m)) = mu
            .iter()
            .enumerate()
            .find(|(_, m)| !(0.0..=1.0).contains(*m))
        {
            return Err(Error::InvalidMembership(format!(
                "sample {i} has degree {m} outside [0, 1]"
            )));
        }
        Ok(Self { universe, mu })
    }

    pub fn zeros(universe: Universe, grid_size: usize) -> Result<Self> {
        Self::new(universe, vec![0.0; grid_size])
    }

    pub fn sample(mf: &PiecewiseLinearMF, universe: Universe, grid_size: usize) -> Result<Self> {
        if grid_size < 2 {
            return Err(Error::InvalidParameter(format!(
                "grid_size must be at least 2, got {grid_size}"
            )));
        }
        let mu = (0..grid_size)
            .map(|i| mf.eval(grid_point(universe, grid_size, i)))
            .collect();
        Self::new(universe, mu)
    }

    pub(crate) fn from_raw(universe: Universe, mu: Vec<f64>) -> Self {
        debug_assert!(mu.len() >= 2);
        Self { universe, mu }
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn grid_size(&self) -> usize {
        self.mu.len()
    }

    pub fn mu(&self) -> &[f64] {
        &self.mu
    }

    pub fn step(&self) -> f64 {
        self.universe.span() / (self.mu.len() - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        grid_point(self.universe, self.mu.len(), i)
    }

    pub fn same_grid(&self, other: &SampledMF) -> bool {
        self.universe == other.universe && self.mu.len() == other.mu.len()
    }

    /// Trapezoidal integral of the membership over the universe.
    pub fn area(&self) -> f64 {
        let n = self.mu.len();
        let inner: f64 = self.mu.iter().sum();
        self.step() * (inner - 0.5 * (self.mu[0] + self.mu[n - 1]))
    }

    /// Trapezoidal centroid. Zero area yields [`Error::UndefinedCentroid`].
    pub fn centroid(&self) -> Result<Centroid> {
        let n = self.mu.len();
        let mut mass = 0.0;
        let mut moment = 0.0;
        for (i, &m) in self.mu.iter().enumerate() {
            let w = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
            mass += w * m;
            moment += w * i as f64 * m;
        }
        if mass <= 0.0 {
            return Err(Error::UndefinedCentroid);
        }
        let step = self.step();
        Ok(Centroid {
            value: self.universe.lo() + step * (moment / mass),
            area: step * mass,
        })
    }
}

pub(crate) fn grid_point(universe: Universe, n: usize, i: usize) -> f64 {
    if i + 1 == n {
        universe.hi()
    } else {
        universe.lo() + i as f64 * (universe.span() / (n - 1) as f64)
    }
}
