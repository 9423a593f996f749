use std::f64::consts::FRAC_PI_4;
use std::fmt::Write as _;
use std::hint::black_box;
use std::path::PathBuf;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{write_file, CliError};
use crate::combine_centroid;
use crate::oracle::km_centroid;
use crate::pendulum::{pendulum_it2, BLUR_DELTA};

pub const BENCH_HEADER: &str = "method,grid_size,case_id,y,iterations,nanoseconds";

#[derive(Debug, clap::Args)]
pub(crate) struct Args {
    /// Random controller inputs per grid size.
    #[arg(long, default_value_t = 100)]
    cases: usize,
    /// Output grid sizes, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "1001")]
    grid_sizes: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Timed repetitions per case; the median is reported.
    #[arg(long, default_value_t = 5)]
    repeats: usize,
    /// CSV destination; standard output if absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn median_ns(repeats: usize, mut f: impl FnMut()) -> u128 {
    let mut t: Vec<u128> = (0..repeats)
        .map(|_| {
            let start = Instant::now();
            f();
            start.elapsed().as_nanos()
        })
        .collect();
    t.sort_unstable();
    t[t.len() / 2]
}

fn median(mut xs: Vec<u128>) -> u128 {
    xs.sort_unstable();
    xs.get(xs.len() / 2).copied().unwrap_or(0)
}

pub(crate) fn run(a: Args) -> Result<(), CliError> {
    if a.cases == 0 || a.repeats == 0 {
        return Err(CliError::Usage(
            "--cases and --repeats must be at least 1".into(),
        ));
    }
    if let Some(&g) = a.grid_sizes.iter().find(|&&g| g < 2) {
        return Err(CliError::Usage(format!(
            "grid size must be at least 2, got {g}"
        )));
    }
    let mut csv = format!("{BENCH_HEADER}\n");
    let mut summary = String::new();
    for &grid in &a.grid_sizes {
        let system = pendulum_it2(BLUR_DELTA, grid)?;
        let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
        let (mut t_gc, mut t_km) = (Vec::new(), Vec::new());
        for case in 0..a.cases {
            let x = [
                rng.random_range(-FRAC_PI_4..=FRAC_PI_4),
                rng.random_range(-FRAC_PI_4..=FRAC_PI_4),
            ];
            let (u, l) = system.evaluate_paths(&x)?;
            let gc = combine_centroid(&u, &l)?;
            let ns = median_ns(a.repeats, || {
                black_box(combine_centroid(black_box(&u), black_box(&l)).ok());
            });
            t_gc.push(ns);
            let _ = writeln!(csv, "combine,{grid},{case},{:?},n/a,{ns}", gc.y);

            let km = km_centroid(&u, &l)?;
            let ns = median_ns(a.repeats, || {
                black_box(km_centroid(black_box(&u), black_box(&l)).ok());
            });
            t_km.push(ns);
            let _ = writeln!(
                csv,
                "km,{grid},{case},{:?},{},{ns}",
                km.midpoint(),
                km.iterations()
            );
        }
        let _ = writeln!(
            summary,
            "grid {grid}: median combine {} ns, median km {} ns",
            median(t_gc),
            median(t_km)
        );
    }
    match &a.out {
        Some(p) => write_file(p, csv.as_bytes())?,
        None => print!("{csv}"),
    }
    eprint!("{summary}");
    Ok(())
}
