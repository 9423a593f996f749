use std::collections::HashSet;

use crate::{Error, LinguisticVariable, PiecewiseLinearMF, Result, Universe};

/// Number of uniform probes used when checking `lower <= upper`, on top of
/// every vertex of both functions.
const ORDER_PROBES: usize = 1001;

/// Interval type-2 set: the footprint between a lower and an upper
/// membership function.
#[derive(Debug, Clone, PartialEq)]
pub struct IT2Set {
    label: String,
    lower: PiecewiseLinearMF,
    upper: PiecewiseLinearMF,
}

impl IT2Set {
    pub fn new(
        label: impl Into<String>,
        lower: PiecewiseLinearMF,
        upper: PiecewiseLinearMF,
    ) -> Result<Self> {
        let label = label.into();
        check_order(&label, &lower, &upper)?;
        Ok(Self {
            label,
            lower,
            upper,
        })
    }

    /// A set without uncertainty: both bounds are `mf`.
    pub fn crisp(label: impl Into<String>, mf: PiecewiseLinearMF) -> Self {
        Self {
            label: label.into(),
            lower: mf.clone(),
            upper: mf,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn lower(&self) -> &PiecewiseLinearMF {
        &self.lower
    }

    pub fn upper(&self) -> &PiecewiseLinearMF {
        &self.upper
    }
}

fn check_order(label: &str, lower: &PiecewiseLinearMF, upper: &PiecewiseLinearMF) -> Result<()> {
    let lo = lower.first_x().min(upper.first_x());
    let hi = lower.last_x().max(upper.last_x());
    let probes = (0..ORDER_PROBES)
        .map(|i| lo + (hi - lo) * i as f64 / (ORDER_PROBES - 1) as f64)
        .chain(lower.vertices().iter().map(|v| v.0))
        .chain(upper.vertices().iter().map(|v| v.0));
    for x in probes {
        let (l, u) = (lower.eval(x), upper.eval(x));
        if l > u {
            return Err(Error::FouViolation(format!(
                "term `{label}` at x = {x}: lower {l} > upper {u}"
            )));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct IT2Variable {
    name: String,
    universe: Universe,
    terms: Vec<IT2Set>,
}

impl IT2Variable {
    pub fn new(name: impl Into<String>, universe: Universe, terms: Vec<IT2Set>) -> Result<Self> {
        let name = name.into();
        let invalid = |reason: String| Error::InvalidVariable {
            name: name.clone(),
            reason,
        };
        if terms.is_empty() {
            return Err(invalid("no terms".into()));
        }
        let mut seen = HashSet::new();
        for t in &terms {
            if !seen.insert(t.label()) {
                return Err(invalid(format!("duplicate term label `{}`", t.label())));
            }
            for mf in [t.lower(), t.upper()] {
                if !universe.contains(mf.first_x()) || !universe.contains(mf.last_x()) {
                    return Err(invalid(format!(
                        "term `{}` has vertices outside [{}, {}]",
                        t.label(),
                        universe.lo(),
                        universe.hi()
                    )));
                }
            }
        }
        Ok(Self {
            name,
            universe,
            terms,
        })
    }

    /// Lifts a type-1 variable with zero uncertainty.
    pub fn from_t1(var: &LinguisticVariable) -> Self {
        Self {
            name: var.name().to_string(),
            universe: var.universe(),
            terms: var
                .terms()
                .iter()
                .map(|(l, mf)| IT2Set::crisp(l.clone(), mf.clone()))
                .collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn terms(&self) -> &[IT2Set] {
        &self.terms
    }

    pub fn term(&self, label: &str) -> Option<&IT2Set> {
        self.terms.iter().find(|t| t.label() == label)
    }

    /// The type-1 variable made of every upper membership function.
    pub fn upper_variable(&self) -> LinguisticVariable {
        self.project(|t| t.upper())
    }

    /// The type-1 variable made of every lower membership function.
    pub fn lower_variable(&self) -> LinguisticVariable {
        self.project(|t| t.lower())
    }

    fn project(&self, pick: impl Fn(&IT2Set) -> &PiecewiseLinearMF) -> LinguisticVariable {
        let terms = self
            .terms
            .iter()
            .map(|t| (t.label().to_string(), pick(t).clone()))
            .collect();
        LinguisticVariable::new(self.name.clone(), self.universe, terms)
            .expect("IT2Variable invariants imply a valid projection")
    }
}
