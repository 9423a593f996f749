use std::collections::HashSet;

use crate::{Error, Result};

/// `IF x1 is A1 AND ... AND xn is An THEN y is C`, by term label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub antecedent: Vec<String>,
    pub consequent: String,
}

impl Rule {
    pub fn new<S: Into<String>>(antecedent: impl IntoIterator<Item = S>, consequent: S) -> Self {
        Self {
            antecedent: antecedent.into_iter().map(Into::into).collect(),
            consequent: consequent.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleBase {
    rules: Vec<Rule>,
}

impl RuleBase {
    pub fn new(rules: Vec<Rule>) -> Result<Self> {
        if rules.is_empty() {
            return Err(Error::InvalidRuleBase("no rules".into()));
        }
        let arity = rules[0].antecedent.len();
        let mut seen = HashSet::new();
        for r in &rules {
            if r.antecedent.len() != arity {
                return Err(Error::InvalidRuleBase(format!(
                    "mixed antecedent arity {} and {}",
                    arity,
                    r.antecedent.len()
                )));
            }
            if !seen.insert(r.antecedent.clone()) {
                return Err(Error::InvalidRuleBase(format!(
                    "duplicate antecedent {:?}",
                    r.antecedent
                )));
            }
        }
        Ok(Self { rules })
    }

    /// Two-input rule table: `table[i][j]` is the consequent for
    /// `row_labels[i]` on the first input and `col_labels[j]` on the second.
    pub fn from_table<S: AsRef<str>>(
        row_labels: &[S],
        col_labels: &[S],
        table: &[Vec<S>],
    ) -> Result<Self> {
        if table.len() != row_labels.len() {
            return Err(Error::InvalidRuleBase(format!(
                "table has {} rows, expected {}",
                table.len(),
                row_labels.len()
            )));
        }
        let mut rules = Vec::with_capacity(row_labels.len() * col_labels.len());
        for (row, r) in table.iter().zip(row_labels) {
            if row.len() != col_labels.len() {
                return Err(Error::InvalidRuleBase(format!(
                    "row `{}` has {} entries, expected {}",
                    r.as_ref(),
                    row.len(),
                    col_labels.len()
                )));
            }
            for (cons, c) in row.iter().zip(col_labels) {
                rules.push(Rule::new([r.as_ref(), c.as_ref()], cons.as_ref()));
            }
        }
        Self::new(rules)
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn arity(&self) -> usize {
        self.rules[0].antecedent.len()
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }
}
