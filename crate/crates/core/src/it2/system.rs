use super::{combine_centroid, CombinerResult, IT2Variable};
use crate::{Error, LinguisticVariable, Result, RuleBase, SampledMF, T1System};

/// Two type-1 systems with a shared rule base: one built from the upper
/// membership functions of every input, one from the lower ones.
#[derive(Debug, Clone, PartialEq)]
pub struct DecomposedSystem {
    upper: T1System,
    lower: T1System,
}

/// Builds the decomposed system for type-2 inputs and a type-1 output.
pub fn decompose(
    inputs: &[IT2Variable],
    output: &LinguisticVariable,
    rules: &RuleBase,
    grid_size: usize,
) -> Result<DecomposedSystem> {
    decompose_with_output(inputs, &IT2Variable::from_t1(output), rules, grid_size)
}

/// Like [`decompose`], but with interval type-2 consequents: the upper path
/// uses the upper output terms and the lower path the lower ones.
pub fn decompose_with_output(
    inputs: &[IT2Variable],
    output: &IT2Variable,
    rules: &RuleBase,
    grid_size: usize,
) -> Result<DecomposedSystem> {
    let upper = T1System::new(
        inputs.iter().map(IT2Variable::upper_variable).collect(),
        output.upper_variable(),
        rules.clone(),
        grid_size,
    )?;
    let lower = T1System::new(
        inputs.iter().map(IT2Variable::lower_variable).collect(),
        output.lower_variable(),
        rules.clone(),
        grid_size,
    )?;
    Ok(DecomposedSystem { upper, lower })
}

impl DecomposedSystem {
    pub fn upper_path(&self) -> &T1System {
        &self.upper
    }

    pub fn lower_path(&self) -> &T1System {
        &self.lower
    }

    pub fn arity(&self) -> usize {
        self.upper.arity()
    }

    /// Runs both inference paths. Returns `(upper, lower)` aggregates.
    pub fn evaluate_paths(&self, inputs: &[f64]) -> Result<(SampledMF, SampledMF)> {
        let upper = self.upper.infer(inputs)?;
        let lower = self.lower.infer(inputs)?;
        debug_assert!(
            upper.mu().iter().zip(lower.mu()).all(|(u, l)| l <= u),
            "lower aggregate exceeds upper at inputs {inputs:?}"
        );
        Ok((upper, lower))
    }

    /// Both aggregates plus the combined centroid.
    pub fn evaluate(&self, inputs: &[f64]) -> Result<CombinerResult> {
        let (upper, lower) = self.evaluate_paths(inputs)?;
        combine_centroid(&upper, &lower)
    }

    /// Crisp output. [`Error::UndefinedOutput`] when nothing fires.
    pub fn output_value(&self, inputs: &[f64]) -> Result<f64> {
        Ok(self.evaluate(inputs)?.y)
    }
}

/// Checks `lower <= upper` on every grid node; returns the violation count.
pub fn count_fou_violations(upper: &SampledMF, lower: &SampledMF) -> Result<usize> {
    if !upper.same_grid(lower) {
        return Err(Error::GridMismatch);
    }
    Ok(upper
        .mu()
        .iter()
        .zip(lower.mu())
        .filter(|(u, l)| l > u)
        .count())
}
