use std::collections::HashSet;

use super::PiecewiseLinearMF;
use crate::{Error, Result};

/// Closed interval `[lo, hi]` with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Universe {
    lo: f64,
    hi: f64,
}

impl Universe {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidUniverse { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn span(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }

    pub fn clamp(&self, x: f64) -> f64 {
        x.clamp(self.lo, self.hi)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinguisticVariable {
    name: String,
    universe: Universe,
    terms: Vec<(String, PiecewiseLinearMF)>,
}

impl LinguisticVariable {
    pub fn new(
        name: impl Into<String>,
        universe: Universe,
        terms: Vec<(String, PiecewiseLinearMF)>,
    ) -> Result<Self> {
        let name = name.into();
        let invalid = |reason: String| Error::InvalidVariable {
            name: name.clone(),
            reason,
        };
        if terms.is_empty() {
            return Err(invalid("no terms".into()));
        }
        let mut seen = HashSet::new();
        for (label, mf) in &terms {
            if !seen.insert(label.as_str()) {
                return Err(invalid(format!("duplicate term label `{label}`")));
            }
            if !universe.contains(mf.first_x()) || !universe.contains(mf.last_x()) {
                return Err(invalid(format!(
                    "term `{label}` has vertices outside [{}, {}]",
                    universe.lo(),
                    universe.hi()
                )));
            }
        }
        Ok(Self {
            name,
            universe,
            terms,
        })
    }

    /// Three-term N/Z/P partition with full overlap: left shoulder at `lo`,
    /// a triangle peaking at 0, right shoulder at `hi`. Requires `lo < 0 < hi`.
    pub fn symmetric_nzp(name: impl Into<String>, universe: Universe) -> Result<Self> {
        let (lo, hi) = (universe.lo(), universe.hi());
        if !(lo < 0.0 && hi > 0.0) {
            return Err(Error::InvalidUniverse { lo, hi });
        }
        let terms = vec![
            ("N".to_string(), PiecewiseLinearMF::triangle(lo, lo, 0.0)?),
            ("Z".to_string(), PiecewiseLinearMF::triangle(lo, 0.0, hi)?),
            ("P".to_string(), PiecewiseLinearMF::triangle(0.0, hi, hi)?),
        ];
        Self::new(name, universe, terms)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn terms(&self) -> &[(String, PiecewiseLinearMF)] {
        &self.terms
    }

    pub fn term_index(&self, label: &str) -> Option<usize> {
        self.terms.iter().position(|(l, _)| l == label)
    }

    pub fn term(&self, label: &str) -> Option<&PiecewiseLinearMF> {
        self.terms
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, mf)| mf)
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.terms.iter().map(|(l, _)| l.as_str())
    }

    /// Degree of every term at `x`, in term order.
    pub fn degrees(&self, x: f64) -> Vec<f64> {
        self.terms.iter().map(|(_, mf)| mf.eval(x)).collect()
    }

    /// Label and degree of every term at `x`, in term order.
    pub fn fuzzify(&self, x: f64) -> Vec<(&str, f64)> {
        self.terms
            .iter()
            .map(|(l, mf)| (l.as_str(), mf.eval(x)))
            .collect()
    }
}
