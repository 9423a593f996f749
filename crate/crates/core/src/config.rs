//! TOML system definitions.
//!
//! ```toml
//! name = "pendulum_it2"
//! grid_size = 1001                      # optional, default 1001
//!
//! [[inputs]]
//! name = "error"
//! universe = [-0.7853981633974483, 0.7853981633974483]
//! blur = 0.19634954084936207            # optional, blurs every `vertices` term
//!
//! [[inputs.terms]]
//! label = "N"
//! vertices = [[-0.7853981633974483, 1.0], [0.0, 0.0]]
//!
//! # a term may instead be given as `base` + `delta` (blurred on load) or as
//! # an explicit `lower` + `upper` pair
//!
//! [output]
//! name = "force"
//! universe = [-50.0, 50.0]
//! # terms as above
//!
//! [rules]                               # two inputs: a label grid
//! rows = ["N", "Z", "P"]                # first input, default: its term order
//! columns = ["N", "Z", "P"]             # second input
//! table = [["P", "P", "Z"], ["P", "Z", "N"], ["Z", "N", "N"]]
//! # "-" in a cell means no rule. Any arity: list = [{ when = [..], then = ".." }]
//!
//! [plant]
//! g = 9.8
//!
//! [sim]                                 # every key optional
//! dt = 0.001
//! duration = 5.0
//! theta0 = 0.1
//! theta_dot0 = 0.0
//! noise_sigma = 0.0
//! seed = 0
//! saturation = 0.7853981633974483
//! ```

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::it2::{blur_mf, decompose_with_output};
use crate::pendulum::{
    pendulum_inputs, pendulum_output, pendulum_rules, PlantParams, SimConfig, BLUR_DELTA,
};
use crate::{
    Controller, DecomposedSystem, Error, IT2Set, IT2Variable, LinguisticVariable,
    PiecewiseLinearMF, Result, Rule, RuleBase, T1System, Universe, DEFAULT_GRID_SIZE,
};

/// Marks an empty cell of a rule table.
pub const NO_RULE: &str = "-";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ControllerKind {
    T1,
    It2,
}

impl fmt::Display for ControllerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ControllerKind::T1 => "t1",
            ControllerKind::It2 => "it2",
        })
    }
}

impl FromStr for ControllerKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "t1" => Ok(ControllerKind::T1),
            "it2" => Ok(ControllerKind::It2),
            _ => Err(Error::InvalidParameter(format!(
                "controller must be `t1` or `it2`, got `{s}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemConfig {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_size: Option<usize>,
    pub inputs: Vec<VariableConfig>,
    pub output: VariableConfig,
    pub rules: RulesConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plant: Option<PlantConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sim: Option<SimSection>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VariableConfig {
    pub name: String,
    pub universe: [f64; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blur: Option<f64>,
    pub terms: Vec<TermConfig>,
}

/// Exactly one of `vertices`, `base` + `delta`, or `lower` + `upper`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermConfig {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper: Option<Vec<[f64; 2]>>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RulesConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rows: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub columns: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub list: Option<Vec<RuleConfig>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleConfig {
    pub when: Vec<String>,
    pub then: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlantConfig {
    pub g: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub duration: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta_dot0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub noise_sigma: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub saturation: Option<f64>,
}

impl SimSection {
    /// Fills unset keys from `base`.
    pub fn apply(&self, base: &SimConfig) -> SimConfig {
        SimConfig {
            dt: self.dt.unwrap_or(base.dt),
            duration: self.duration.unwrap_or(base.duration),
            theta0: self.theta0.unwrap_or(base.theta0),
            theta_dot0: self.theta_dot0.unwrap_or(base.theta_dot0),
            noise_sigma: self.noise_sigma.unwrap_or(base.noise_sigma),
            seed: self.seed.unwrap_or(base.seed),
            saturation: self.saturation.unwrap_or(base.saturation),
        }
    }
}

fn config_err(key: impl Into<String>) -> impl FnOnce(Error) -> Error {
    let key = key.into();
    move |e| match e {
        Error::Config { .. } => e,
        other => Error::Config {
            key,
            message: other.to_string(),
        },
    }
}

fn bad(key: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Config {
        key: key.into(),
        message: message.into(),
    }
}

fn to_pairs(v: &[[f64; 2]]) -> Vec<(f64, f64)> {
    v.iter().map(|p| (p[0], p[1])).collect()
}

fn from_mf(mf: &PiecewiseLinearMF) -> Vec<[f64; 2]> {
    mf.vertices().iter().map(|&(x, m)| [x, m]).collect()
}

fn mf_at(key: String, v: &[[f64; 2]]) -> Result<PiecewiseLinearMF> {
    PiecewiseLinearMF::new(to_pairs(v)).map_err(config_err(key))
}

enum TermForm<'a> {
    Vertices(&'a [[f64; 2]]),
    Blurred(&'a [[f64; 2]], f64),
    Explicit(&'a [[f64; 2]], &'a [[f64; 2]]),
}

impl TermConfig {
    pub fn t1(label: impl Into<String>, mf: &PiecewiseLinearMF) -> Self {
        Self {
            label: label.into(),
            vertices: Some(from_mf(mf)),
            ..Default::default()
        }
    }

    pub fn blurred(label: impl Into<String>, base: &PiecewiseLinearMF, delta: f64) -> Self {
        Self {
            label: label.into(),
            base: Some(from_mf(base)),
            delta: Some(delta),
            ..Default::default()
        }
    }

    pub fn explicit(set: &IT2Set) -> Self {
        Self {
            label: set.label().to_string(),
            lower: Some(from_mf(set.lower())),
            upper: Some(from_mf(set.upper())),
            ..Default::default()
        }
    }

    fn form(&self, key: &str) -> Result<TermForm<'_>> {
        match (
            &self.vertices,
            &self.base,
            self.delta,
            &self.lower,
            &self.upper,
        ) {
            (Some(v), None, None, None, None) => Ok(TermForm::Vertices(v)),
            (None, Some(b), Some(d), None, None) => Ok(TermForm::Blurred(b, d)),
            (None, None, None, Some(l), Some(u)) => Ok(TermForm::Explicit(l, u)),
            (None, Some(_), None, None, None) => Err(bad(format!("{key}.delta"), "missing")),
            (None, None, Some(_), None, None) => Err(bad(format!("{key}.base"), "missing")),
            (None, None, None, Some(_), None) => Err(bad(format!("{key}.upper"), "missing")),
            (None, None, None, None, Some(_)) => Err(bad(format!("{key}.lower"), "missing")),
            (None, None, None, None, None) => Err(bad(
                key,
                "needs `vertices`, `base` + `delta`, or `lower` + `upper`",
            )),
            _ => Err(bad(
                key,
                "give exactly one of `vertices`, `base` + `delta`, or `lower` + `upper`",
            )),
        }
    }
}

impl VariableConfig {
    pub fn from_t1(var: &LinguisticVariable) -> Self {
        let u = var.universe();
        Self {
            name: var.name().to_string(),
            universe: [u.lo(), u.hi()],
            blur: None,
            terms: var
                .terms()
                .iter()
                .map(|(l, mf)| TermConfig::t1(l.clone(), mf))
                .collect(),
        }
    }

    pub fn from_it2(var: &IT2Variable) -> Self {
        let u = var.universe();
        Self {
            name: var.name().to_string(),
            universe: [u.lo(), u.hi()],
            blur: None,
            terms: var.terms().iter().map(TermConfig::explicit).collect(),
        }
    }

    fn universe(&self, key: &str) -> Result<Universe> {
        Universe::new(self.universe[0], self.universe[1])
            .map_err(config_err(format!("{key}.universe")))
    }

    fn check_blur(&self, key: &str) -> Result<Option<f64>> {
        match self.blur {
            Some(d) if !(d.is_finite() && d >= 0.0) => Err(bad(
                format!("{key}.blur"),
                format!("must be finite and >= 0, got {d}"),
            )),
            b => Ok(b),
        }
    }

    /// The type-1 view. Blur is ignored; explicit `lower`/`upper` terms
    /// have no type-1 form and are rejected.
    pub fn to_t1(&self, key: &str) -> Result<LinguisticVariable> {
        let universe = self.universe(key)?;
        self.check_blur(key)?;
        let terms = self
            .terms
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let tk = format!("{key}.terms[{i}]");
                let mf = match t.form(&tk)? {
                    TermForm::Vertices(v) => mf_at(format!("{tk}.vertices"), v)?,
                    TermForm::Blurred(b, _) => mf_at(format!("{tk}.base"), b)?,
                    TermForm::Explicit(..) => {
                        return Err(bad(tk, "explicit lower/upper term has no type-1 form"))
                    }
                };
                Ok((t.label.clone(), mf))
            })
            .collect::<Result<Vec<_>>>()?;
        LinguisticVariable::new(self.name.clone(), universe, terms).map_err(config_err(key))
    }

    /// The interval type-2 view. `vertices` terms are blurred by the
    /// variable's `blur` (crisp if unset).
    pub fn to_it2(&self, key: &str) -> Result<IT2Variable> {
        let universe = self.universe(key)?;
        let blur = self.check_blur(key)?;
        let terms = self
            .terms
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let tk = format!("{key}.terms[{i}]");
                let (lower, upper) = match t.form(&tk)? {
                    TermForm::Vertices(v) => {
                        let mf = mf_at(format!("{tk}.vertices"), v)?;
                        blur_mf(&mf, blur.unwrap_or(0.0), universe).map_err(config_err(&tk))?
                    }
                    TermForm::Blurred(b, d) => {
                        let mf = mf_at(format!("{tk}.base"), b)?;
                        blur_mf(&mf, d, universe).map_err(config_err(format!("{tk}.delta")))?
                    }
                    TermForm::Explicit(l, u) => (
                        mf_at(format!("{tk}.lower"), l)?,
                        mf_at(format!("{tk}.upper"), u)?,
                    ),
                };
                IT2Set::new(t.label.clone(), lower, upper).map_err(config_err(tk))
            })
            .collect::<Result<Vec<_>>>()?;
        IT2Variable::new(self.name.clone(), universe, terms).map_err(config_err(key))
    }

    fn labels(&self) -> Vec<String> {
        self.terms.iter().map(|t| t.label.clone()).collect()
    }
}

impl RulesConfig {
    pub fn table(table: Vec<Vec<String>>) -> Self {
        Self {
            table: Some(table),
            ..Default::default()
        }
    }

    fn build(&self, inputs: &[VariableConfig]) -> Result<RuleBase> {
        let rules = match (&self.table, &self.list) {
            (Some(table), None) => {
                if inputs.len() != 2 {
                    return Err(bad(
                        "rules.table",
                        format!("a table needs exactly 2 inputs, found {}", inputs.len()),
                    ));
                }
                let rows = self.rows.clone().unwrap_or_else(|| inputs[0].labels());
                let cols = self.columns.clone().unwrap_or_else(|| inputs[1].labels());
                if table.len() != rows.len() {
                    return Err(bad(
                        "rules.table",
                        format!("{} rows, expected {}", table.len(), rows.len()),
                    ));
                }
                let mut rules = Vec::new();
                for (r, row) in table.iter().enumerate() {
                    if row.len() != cols.len() {
                        return Err(bad(
                            format!("rules.table[{r}]"),
                            format!("{} cells, expected {}", row.len(), cols.len()),
                        ));
                    }
                    for (c, cell) in row.iter().enumerate() {
                        if cell != NO_RULE {
                            rules.push(Rule::new([rows[r].clone(), cols[c].clone()], cell.clone()));
                        }
                    }
                }
                rules
            }
            (None, Some(list)) => {
                if self.rows.is_some() || self.columns.is_some() {
                    return Err(bad("rules", "`rows`/`columns` only apply to `table`"));
                }
                list.iter()
                    .map(|r| Rule::new(r.when.iter().cloned(), r.then.clone()))
                    .collect()
            }
            (Some(_), Some(_)) => return Err(bad("rules", "give `table` or `list`, not both")),
            (None, None) => return Err(bad("rules", "needs `table` or `list`")),
        };
        RuleBase::new(rules).map_err(config_err("rules"))
    }
}

fn check_labels(
    rules: &RuleBase,
    inputs: &[VariableConfig],
    output: &VariableConfig,
) -> Result<()> {
    for (n, rule) in rules.rules().iter().enumerate() {
        if rule.antecedent.len() != inputs.len() {
            return Err(bad(
                format!("rules[{n}]"),
                format!(
                    "{} antecedent labels for {} inputs",
                    rule.antecedent.len(),
                    inputs.len()
                ),
            ));
        }
        for (k, (label, var)) in rule.antecedent.iter().zip(inputs).enumerate() {
            if !var.terms.iter().any(|t| &t.label == label) {
                return Err(bad(
                    format!("rules[{n}].when[{k}]"),
                    format!("no term `{label}` in input `{}`", var.name),
                ));
            }
        }
        if !output.terms.iter().any(|t| t.label == rule.consequent) {
            return Err(bad(
                format!("rules[{n}].then"),
                format!("no term `{}` in output `{}`", rule.consequent, output.name),
            ));
        }
    }
    Ok(())
}

impl SystemConfig {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        toml::from_str(s).map_err(|e| Error::Parse(e.to_string().trim_end().to_string()))
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    /// The reference pendulum controller in config form.
    pub fn pendulum(kind: ControllerKind) -> Self {
        let [e, de] = pendulum_inputs();
        let blur = match kind {
            ControllerKind::T1 => None,
            ControllerKind::It2 => Some(BLUR_DELTA),
        };
        let input = |v: &LinguisticVariable| VariableConfig {
            blur,
            ..VariableConfig::from_t1(v)
        };
        let rb = pendulum_rules();
        let table = rb
            .rules()
            .chunks(3)
            .map(|row| row.iter().map(|r| r.consequent.clone()).collect())
            .collect();
        Self {
            name: format!("pendulum_{kind}"),
            grid_size: Some(DEFAULT_GRID_SIZE),
            inputs: vec![input(&e), input(&de)],
            output: VariableConfig::from_t1(&pendulum_output()),
            rules: RulesConfig {
                rows: Some(vec!["N".into(), "Z".into(), "P".into()]),
                columns: Some(vec!["N".into(), "Z".into(), "P".into()]),
                ..RulesConfig::table(table)
            },
            plant: Some(PlantConfig {
                g: PlantParams::default().g,
            }),
            sim: Some(SimSection {
                dt: Some(1e-3),
                duration: Some(5.0),
                theta0: Some(0.1),
                theta_dot0: Some(0.0),
                noise_sigma: Some(0.0),
                seed: Some(0),
                saturation: Some(std::f64::consts::FRAC_PI_4),
            }),
        }
    }

    pub fn grid_size(&self) -> Result<usize> {
        match self.grid_size {
            Some(n) if n < 2 => Err(bad("grid_size", format!("must be >= 2, got {n}"))),
            Some(n) => Ok(n),
            None => Ok(DEFAULT_GRID_SIZE),
        }
    }

    pub fn rule_base(&self) -> Result<RuleBase> {
        if self.inputs.is_empty() {
            return Err(bad("inputs", "at least one input required"));
        }
        let rb = self.rules.build(&self.inputs)?;
        check_labels(&rb, &self.inputs, &self.output)?;
        Ok(rb)
    }

    pub fn build_t1(&self) -> Result<T1System> {
        let inputs = self
            .inputs
            .iter()
            .enumerate()
            .map(|(i, v)| v.to_t1(&format!("inputs[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        let output = self.output.to_t1("output")?;
        T1System::new(inputs, output, self.rule_base()?, self.grid_size()?)
            .map_err(config_err("rules"))
    }

    pub fn build_it2(&self) -> Result<DecomposedSystem> {
        let inputs = self
            .inputs
            .iter()
            .enumerate()
            .map(|(i, v)| v.to_it2(&format!("inputs[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        let output = self.output.to_it2("output")?;
        decompose_with_output(&inputs, &output, &self.rule_base()?, self.grid_size()?)
            .map_err(config_err("rules"))
    }

    pub fn build_controller(&self, kind: ControllerKind) -> Result<Box<dyn Controller>> {
        Ok(match kind {
            ControllerKind::T1 => Box::new(self.build_t1()?),
            ControllerKind::It2 => Box::new(self.build_it2()?),
        })
    }

    pub fn plant(&self) -> Result<PlantParams> {
        match &self.plant {
            None => Ok(PlantParams::default()),
            Some(p) => PlantParams::new(p.g).map_err(config_err("plant.g")),
        }
    }

    /// Simulation settings from `[sim]` over the defaults, validated.
    pub fn sim_config(&self) -> Result<SimConfig> {
        let cfg = match &self.sim {
            None => SimConfig::default(),
            Some(s) => s.apply(&SimConfig::default()),
        };
        cfg.validate().map_err(config_err("sim"))?;
        Ok(cfg)
    }
}
