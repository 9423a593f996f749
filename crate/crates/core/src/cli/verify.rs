use super::CliError;
use crate::verify::{run_suite, Suite, VerifyOptions};

#[derive(Debug, clap::Args)]
pub(crate) struct Args {
    /// Cases per randomized suite (default: 1000 / 100 / 50).
    #[arg(long)]
    cases: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// `suite=value` for one suite or a bare value for all; repeatable.
    #[arg(long = "tolerance", value_name = "[SUITE=]VALUE")]
    tolerances: Vec<String>,
}

fn parse_tolerances(items: &[String], opts: &mut VerifyOptions) -> Result<(), CliError> {
    for item in items {
        let (suites, value) = match item.split_once('=') {
            Some((name, v)) => (
                vec![name
                    .trim()
                    .parse::<Suite>()
                    .map_err(|e| CliError::Usage(e.to_string()))?],
                v,
            ),
            None => (Suite::ALL.to_vec(), item.as_str()),
        };
        let v: f64 = value
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("bad tolerance `{item}`")))?;
        if v.is_nan() || v < 0.0 {
            return Err(CliError::Usage(format!(
                "tolerance must be >= 0, got `{item}`"
            )));
        }
        for s in suites {
            opts.tolerances.insert(s, v);
        }
    }
    Ok(())
}

pub(crate) fn run(a: Args) -> Result<(), CliError> {
    if a.cases == Some(0) {
        return Err(CliError::Usage("--cases must be at least 1".into()));
    }
    let mut opts = VerifyOptions {
        cases: a.cases,
        seed: a.seed,
        ..Default::default()
    };
    parse_tolerances(&a.tolerances, &mut opts)?;
    let mut failed = 0;
    for s in Suite::ALL {
        let r = run_suite(s, &opts).map_err(|e| CliError::Failure(format!("{s}: {e}")))?;
        println!("{r}");
        if !r.passed() {
            failed += 1;
        }
    }
    if failed == 0 {
        println!("all {} suites passed", Suite::ALL.len());
        Ok(())
    } else {
        Err(CliError::Failure(format!("{failed} suite(s) failed")))
    }
}
