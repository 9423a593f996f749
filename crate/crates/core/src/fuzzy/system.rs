use super::sampled::grid_point;
use super::{LinguisticVariable, RuleBase, SampledMF};
use crate::{Error, Result};

/// Mamdani type-1 system: min AND, min implication, max aggregation and
/// centroid defuzzification on a uniform output grid.
#[derive(Debug, Clone, PartialEq)]
pub struct T1System {
    inputs: Vec<LinguisticVariable>,
    output: LinguisticVariable,
    rules: RuleBase,
    grid_size: usize,
    // term indices per rule: (antecedent per input, consequent)
    compiled: Vec<(Vec<usize>, usize)>,
    // every output term sampled on the output grid
    consequents: Vec<Vec<f64>>,
}

impl T1System {
    pub fn new(
        inputs: Vec<LinguisticVariable>,
        output: LinguisticVariable,
        rules: RuleBase,
        grid_size: usize,
    ) -> Result<Self> {
        if grid_size < 2 {
            return Err(Error::InvalidParameter(format!(
                "grid_size must be at least 2, got {grid_size}"
            )));
        }
        if rules.arity() != inputs.len() {
            return Err(Error::ArityMismatch {
                expected: inputs.len(),
                got: rules.arity(),
            });
        }
        let mut compiled = Vec::with_capacity(rules.len());
        for rule in rules.rules() {
            let ante = rule
                .antecedent
                .iter()
                .zip(&inputs)
                .map(|(label, var)| {
                    var.term_index(label).ok_or_else(|| Error::UnknownTerm {
                        variable: var.name().to_string(),
                        label: label.clone(),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let cons = output
                .term_index(&rule.consequent)
                .ok_or_else(|| Error::UnknownTerm {
                    variable: output.name().to_string(),
                    label: rule.consequent.clone(),
                })?;
            compiled.push((ante, cons));
        }
        let u = output.universe();
        let consequents = output
            .terms()
            .iter()
            .map(|(_, mf)| {
                (0..grid_size)
                    .map(|i| mf.eval(grid_point(u, grid_size, i)))
                    .collect()
            })
            .collect();
        Ok(Self {
            inputs,
            output,
            rules,
            grid_size,
            compiled,
            consequents,
        })
    }

    pub fn inputs(&self) -> &[LinguisticVariable] {
        &self.inputs
    }

    pub fn output(&self) -> &LinguisticVariable {
        &self.output
    }

    pub fn rules(&self) -> &RuleBase {
        &self.rules
    }

    pub fn grid_size(&self) -> usize {
        self.grid_size
    }

    pub fn arity(&self) -> usize {
        self.inputs.len()
    }

    fn check_arity(&self, inputs: &[f64]) -> Result<()> {
        if inputs.len() != self.inputs.len() {
            return Err(Error::ArityMismatch {
                expected: self.inputs.len(),
                got: inputs.len(),
            });
        }
        Ok(())
    }

    /// Firing strength of every rule: the minimum of its antecedent degrees.
    pub fn fire_strengths(&self, inputs: &[f64]) -> Result<Vec<(usize, f64)>> {
        self.check_arity(inputs)?;
        let degrees: Vec<Vec<f64>> = self
            .inputs
            .iter()
            .zip(inputs)
            .map(|(var, &x)| var.degrees(x))
            .collect();
        Ok(self
            .compiled
            .iter()
            .enumerate()
            .map(|(r, (ante, _))| {
                let s = ante
                    .iter()
                    .enumerate()
                    .map(|(k, &t)| degrees[k][t])
                    .fold(1.0, f64::min);
                (r, s)
            })
            .collect())
    }

    /// Clips each rule's consequent at its strength and takes the pointwise
    /// maximum. `strengths` is indexed by rule.
    pub fn aggregate(&self, strengths: &[f64]) -> Result<SampledMF> {
        if strengths.len() != self.compiled.len() {
            return Err(Error::InvalidParameter(format!(
                "expected {} rule strengths, got {}",
                self.compiled.len(),
                strengths.len()
            )));
        }
        let mut mu = vec![0.0_f64; self.grid_size];
        for (&s, (_, cons)) in strengths.iter().zip(&self.compiled) {
            if s <= 0.0 {
                continue;
            }
            for (m, &c) in mu.iter_mut().zip(&self.consequents[*cons]) {
                *m = m.max(s.min(c));
            }
        }
        Ok(SampledMF::from_raw(self.output.universe(), mu))
    }

    pub fn infer(&self, inputs: &[f64]) -> Result<SampledMF> {
        let strengths: Vec<f64> = self
            .fire_strengths(inputs)?
            .into_iter()
            .map(|(_, s)| s)
            .collect();
        self.aggregate(&strengths)
    }

    /// Crisp output: inference followed by centroid defuzzification.
    pub fn output_value(&self, inputs: &[f64]) -> Result<f64> {
        Ok(self.infer(inputs)?.centroid()?.value)
    }
}
