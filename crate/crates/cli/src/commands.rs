use std::fs;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::json;
use specrad::family::rescale_family;
use specrad::jsr::{adaptive_gripenberg_jsr, gripenberg_jsr, JsrConfig};
use specrad::lsr::{
    identify_slp_candidates, iterative_rescaling_driver, regularized_lsr, run_algorithm,
    InitAntinorm, SlpMode, SolverConfig, SolverReport, Termination, Variant,
    DEFAULT_ENUMERATION_CAP,
};
use specrad::MatrixFamily;

use crate::cli::{GenArgs, JsrArgs, LsrArgs};
use crate::io::{family_json, load_family, read_vertices};
use crate::report::{sig15, JsrJson, JsrOutput, LadderEntry, LsrJson, LsrOutput, Manifest};

pub const EXIT_BUDGET: u8 = 2;

fn exit_code(t: Termination) -> u8 {
    match t {
        Termination::Accuracy => 0,
        Termination::Budget => EXIT_BUDGET,
    }
}

fn parse_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>()
                .with_context(|| format!("bad number {t:?}"))
        })
        .collect()
}

fn parse_init(spec: &str, dim: usize, members: usize) -> Result<InitAntinorm> {
    if spec == "ones" {
        return Ok(InitAntinorm::Ones);
    }
    if let Some(idx) = spec.strip_prefix("eig:") {
        let i: usize = idx
            .parse()
            .with_context(|| format!("bad member index {idx:?}"))?;
        if i == 0 || i > members {
            bail!("member index {i} out of range 1..={members}");
        }
        return Ok(InitAntinorm::Eigenvector(i - 1));
    }
    if let Some(path) = spec.strip_prefix("vertices:") {
        let (d, vs) = read_vertices(path.as_ref())?;
        if d != dim {
            bail!("vertex file has dimension {d}, family has {dim}");
        }
        return Ok(InitAntinorm::Vertices(vs));
    }
    bail!("unknown --init {spec:?} (expected ones, eig:IDX or vertices:FILE)")
}

/// Returns the positive factor to apply to the family, if any.
pub(crate) fn resolve_rescale(
    spec: Option<&str>,
    family: &MatrixFamily,
    cfg: &SolverConfig,
    variant: Variant,
) -> Result<f64> {
    match spec {
        None => Ok(1.0),
        Some("auto") => {
            let prelim = SolverConfig {
                max_evals: 10.max(family.len()),
                ..cfg.clone()
            };
            let l = run_algorithm(family, &prelim, variant)?.lower;
            if !(l > 0.0 && l.is_finite()) {
                bail!("automatic rescaling needs a positive preliminary lower bound, got {l}");
            }
            Ok(1.0 / l)
        }
        Some(v) => {
            let c: f64 = v.parse().with_context(|| format!("bad --rescale {v:?}"))?;
            if !(c > 0.0 && c.is_finite()) {
                bail!("--rescale must be positive");
            }
            Ok(c)
        }
    }
}

fn candidates(family: &MatrixFamily, report: &SolverReport, slp: &str) -> Result<Vec<Vec<usize>>> {
    let mode = match slp {
        "active" => SlpMode::FromActive,
        "enumerate" => SlpMode::EnumerateAll {
            cap: DEFAULT_ENUMERATION_CAP,
        },
        other => bail!("unknown --slp {other:?} (expected enumerate or active)"),
    };
    identify_slp_candidates(family, report, mode).map_err(|e| anyhow!("{e}; try --slp active"))
}

pub fn lsr(args: &LsrArgs, argv: &[String]) -> Result<(String, u8)> {
    let start = Instant::now();
    let variant: Variant = args.algorithm.parse()?;
    let (family, desc) = load_family(&args.source, args.transpose, None)?;
    let mut cfg = SolverConfig {
        delta: args.delta,
        max_evals: args.max_evals,
        theta: args.theta,
        tol: args.tol,
        init: parse_init(&args.init, family.dim(), family.len())?,
        ..SolverConfig::default()
    };
    if args.epsilon.is_some() && args.max_iter.is_some() {
        bail!("--epsilon and --max-iter cannot be combined");
    }
    let scale = resolve_rescale(args.rescale.as_deref(), &family, &cfg, variant)?;
    let family = if scale != 1.0 {
        rescale_family(&family, scale)?
    } else {
        family
    };
    cfg.trace = false;

    let mut ladder = None;
    let report = if let Some(list) = &args.epsilon {
        let eps = parse_list(list)?;
        if eps.is_empty() {
            bail!("--epsilon needs at least one value");
        }
        let runs = regularized_lsr(&family, &cfg, variant, &eps, args.perturbation_seed)?;
        let mut entries = Vec::with_capacity(runs.len());
        for (e, r) in &runs {
            entries.push(LadderEntry {
                epsilon: sig15(*e),
                report: LsrJson::new(r, family.dim(), &r.slp_candidates),
            });
        }
        ladder = Some(entries);
        runs.into_iter().last().expect("nonempty ladder").1
    } else if let Some(it) = args.max_iter {
        iterative_rescaling_driver(&family, &cfg, it, variant)?
    } else {
        run_algorithm(&family, &cfg, variant)?
    };
    let cands = if ladder.is_some() {
        report.slp_candidates.clone()
    } else {
        candidates(&family, &report, &args.slp)?
    };
    let out = LsrOutput {
        report: LsrJson::new(&report, family.dim(), &cands),
        ladder,
        manifest: Manifest {
            command: argv.to_vec(),
            version: env!("CARGO_PKG_VERSION"),
            family: desc,
            config: json!({
                "algorithm": args.algorithm,
                "delta": args.delta,
                "max_evals": args.max_evals,
                "theta": args.theta,
                "tol": args.tol,
                "init": args.init,
                "transpose": args.transpose,
                "rescale": args.rescale,
                "epsilon": args.epsilon,
                "perturbation_seed": args.perturbation_seed,
                "max_iter": args.max_iter,
                "slp": args.slp,
            }),
            scale: sig15(scale),
            wall_seconds: start.elapsed().as_secs_f64(),
        },
    };
    let text = serde_json::to_string_pretty(&out)? + "\n";
    Ok((text, exit_code(report.terminated_by)))
}

pub fn jsr(args: &JsrArgs, argv: &[String]) -> Result<(String, u8)> {
    let start = Instant::now();
    let (family, desc) = load_family(&args.source, args.transpose, args.rescale)?;
    let vertices = match args.init.as_str() {
        "ones" => None,
        s => match s.strip_prefix("vertices:") {
            Some(path) => {
                let (d, vs) = read_vertices(path.as_ref())?;
                if d != family.dim() {
                    bail!("vertex file has dimension {d}, family has {}", family.dim());
                }
                Some(vs)
            }
            None => bail!("unknown --init {s:?} (expected ones or vertices:FILE)"),
        },
    };
    let cfg = JsrConfig {
        delta: args.delta,
        max_evals: args.max_evals,
        tol: args.tol,
        vertices,
        ..JsrConfig::default()
    };
    let report = match args.algorithm.as_str() {
        "classic" => gripenberg_jsr(&family, &cfg)?,
        "adaptive" => adaptive_gripenberg_jsr(&family, &cfg)?,
        other => bail!("unknown --algorithm {other:?} (expected classic or adaptive)"),
    };
    let out = JsrOutput {
        report: JsrJson::new(&report, family.dim()),
        manifest: Manifest {
            command: argv.to_vec(),
            version: env!("CARGO_PKG_VERSION"),
            family: desc,
            config: json!({
                "algorithm": args.algorithm,
                "delta": args.delta,
                "max_evals": args.max_evals,
                "tol": args.tol,
                "init": args.init,
                "transpose": args.transpose,
                "rescale": args.rescale,
            }),
            scale: sig15(args.rescale.unwrap_or(1.0)),
            wall_seconds: start.elapsed().as_secs_f64(),
        },
    };
    let text = serde_json::to_string_pretty(&out)? + "\n";
    Ok((text, exit_code(report.terminated_by)))
}

pub fn gen(args: &GenArgs) -> Result<(String, u8)> {
    let (family, _) = load_family(&args.source, args.transpose, args.rescale)?;
    let text = family_json(&family);
    match &args.output {
        Some(path) => {
            fs::write(path, &text).with_context(|| format!("cannot write {}", path.display()))?;
            Ok((String::new(), 0))
        }
        None => Ok((text, 0)),
    }
}
