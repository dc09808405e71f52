//! Random-family sweeps.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use specrad::families::random_family;
use specrad::family::rescale_family;
use specrad::lsr::{perturbation_matrices, run_algorithm, SolverConfig, Variant};
use specrad::MatrixFamily;

use crate::cli::BenchArgs;
use crate::commands::resolve_rescale;
use crate::report::sig15;

pub const JOBS_ENV: &str = "SPECRAD_JOBS";

pub const HEADER: &str =
    "d,m,density,seed,theta,lower,upper,l_slp,l_opt,n,n_op,j_max,vertices,wall_seconds,status";

#[derive(Clone, Debug, PartialEq)]
struct Job {
    d: usize,
    density: f64,
    seed: u64,
    theta: f64,
}

fn list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<T>()
                .ok()
                .with_context(|| format!("bad {what} {t:?}"))
        })
        .collect()
}

fn jobs_limit(args: &BenchArgs) -> Result<usize> {
    let n = match args.jobs {
        Some(n) => n,
        None => match std::env::var(JOBS_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .with_context(|| format!("bad {JOBS_ENV} value {v:?}"))?,
            Err(_) => 1,
        },
    };
    if n == 0 {
        bail!("--jobs must be at least 1");
    }
    Ok(n)
}

fn perturb(family: &MatrixFamily, eps: f64, seed: u64) -> Result<MatrixFamily> {
    if eps == 0.0 {
        return Ok(family.clone());
    }
    let deltas = perturbation_matrices(family.dim(), family.len(), seed);
    let members = family
        .members()
        .iter()
        .zip(&deltas)
        .map(|(a, d)| a.add_scaled(eps, d))
        .collect();
    Ok(MatrixFamily::new(members)?)
}

fn run_one(job: &Job, args: &BenchArgs, variant: Variant) -> String {
    let start = Instant::now();
    let head = format!(
        "{},{},{},{},{}",
        job.d, args.members, job.density, job.seed, job.theta
    );
    let result = (|| -> Result<String> {
        let mut family = random_family(job.d, args.members, job.density, job.seed)?;
        if let Some(eps) = args.epsilon {
            if eps.is_nan() || eps < 0.0 {
                bail!("epsilon must be nonnegative");
            }
            family = perturb(&family, eps, job.seed)?;
        }
        let cfg = SolverConfig {
            delta: args.delta,
            max_evals: args.max_evals,
            theta: job.theta,
            ..SolverConfig::default()
        };
        let scale = resolve_rescale(Some("auto"), &family, &cfg, variant)?;
        let r = run_algorithm(&rescale_family(&family, scale)?, &cfg, variant)?;
        let m = r.metrics;
        Ok(format!(
            "{},{},{},{},{},{},{},{},{:.3},{}",
            sig15(r.lower / scale),
            sig15(r.upper / scale),
            m.l_slp,
            m.l_opt,
            m.n,
            m.n_op,
            m.j_max,
            r.final_vertices.len(),
            start.elapsed().as_secs_f64(),
            r.terminated_by.as_str()
        ))
    })();
    match result {
        Ok(tail) => format!("{head},{tail}"),
        Err(e) => {
            let msg = e.to_string().replace([',', '\n'], ";");
            format!(
                "{head},,,,,,,,,{:.3},error: {msg}",
                start.elapsed().as_secs_f64()
            )
        }
    }
}

/// The CSV text, rows in sweep order (dims, densities, seeds, thetas).
pub fn bench(args: &BenchArgs) -> Result<String> {
    let variant: Variant = args.algorithm.parse()?;
    if args.members == 0 {
        bail!("--members must be at least 1");
    }
    let dims: Vec<usize> = list(&args.dims, "dimension")?;
    let densities: Vec<f64> = list(&args.densities, "density")?;
    let seeds: Vec<u64> = list(&args.seeds, "seed")?;
    let thetas: Vec<f64> = list(&args.thetas, "theta")?;
    let mut jobs = Vec::new();
    for &d in &dims {
        for &density in &densities {
            for &seed in &seeds {
                for &theta in &thetas {
                    jobs.push(Job {
                        d,
                        density,
                        seed,
                        theta,
                    });
                }
            }
        }
    }
    let limit = jobs_limit(args)?.min(jobs.len().max(1));
    let rows: Mutex<Vec<Option<String>>> = Mutex::new(vec![None; jobs.len()]);
    let next = AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..limit {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= jobs.len() {
                    break;
                }
                let row = run_one(&jobs[i], args, variant);
                rows.lock().expect("row lock")[i] = Some(row);
            });
        }
    });
    let mut out = String::from(HEADER);
    out.push('\n');
    for row in rows.into_inner().expect("row lock") {
        out.push_str(&row.expect("every job ran"));
        out.push('\n');
    }
    Ok(out)
}
