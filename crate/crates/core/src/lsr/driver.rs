//! Iterative rescaling: repeated warm-started runs on `F / L`.

use super::engine::run_algorithm;
use super::{InitAntinorm, SolverConfig, SolverReport, Variant};
use crate::error::{Error, Result};
use crate::family::{rescale_family, MatrixFamily};

/// Budget of the preliminary run.
const PRELIMINARY_EVALS: usize = 10;

/// Runs the preliminary pass, then up to `max_iter` warm-started passes on
/// the family divided by the latest lower bound. Bounds are reported in the
/// units of `family`; the best lower and upper bound over all passes are
/// kept. Metrics and vertices come from the last pass, `l_slp` and the
/// s.l.p. candidates from the pass that produced the best upper bound.
pub fn iterative_rescaling_driver(
    family: &MatrixFamily,
    cfg: &SolverConfig,
    max_iter: usize,
    variant: Variant,
) -> Result<SolverReport> {
    if max_iter == 0 {
        return Err(Error::invalid("maxIter must be at least 1"));
    }
    if variant == Variant::S {
        return Err(Error::invalid(
            "the rescaling driver needs an adaptive variant (a or e)",
        ));
    }
    let wrap = |iteration: usize| {
        move |e: Error| Error::Restart {
            iteration,
            source: Box::new(e),
        }
    };

    let prelim_cfg = SolverConfig {
        max_evals: PRELIMINARY_EVALS.max(family.len()),
        ..cfg.clone()
    };
    let prelim = run_algorithm(family, &prelim_cfg, variant).map_err(wrap(0))?;
    let mut best = prelim.clone();
    let mut scale = prelim.lower;
    let mut vertices = prelim.final_vertices;

    for j in 1..=max_iter {
        if !(scale > 0.0 && scale.is_finite()) {
            log::warn!("lower bound {scale} cannot be used to rescale; stopping");
            break;
        }
        let scaled = rescale_family(family, 1.0 / scale)?;
        let run_cfg = SolverConfig {
            init: InitAntinorm::Vertices(vertices),
            ..cfg.clone()
        };
        let mut rep = run_algorithm(&scaled, &run_cfg, variant).map_err(wrap(j))?;
        let (l_new, h_new) = (rep.lower, rep.upper);
        log::debug!("rescaling pass {j}: relative bounds ({l_new}, {h_new}), scale {scale}");
        let stop = h_new - l_new < cfg.delta || (l_new - 1.0).abs() < cfg.delta || j == max_iter;

        rep.lower = l_new * scale;
        rep.upper = h_new * scale;
        for s in rep.history.iter_mut() {
            s.lower *= scale;
            s.upper *= scale;
            s.kept_min *= scale;
        }
        if rep.upper < best.upper {
            best.upper = rep.upper;
            best.metrics.l_slp = rep.metrics.l_slp;
            best.slp_candidates = rep.slp_candidates.clone();
            best.slp_witnesses = rep.slp_witnesses.clone();
        }
        best.lower = best.lower.max(rep.lower);
        best.lp_failures += rep.lp_failures;
        best.eigen_skips += rep.eigen_skips;
        best.metrics = super::Metrics {
            l_slp: best.metrics.l_slp,
            ..rep.metrics
        };
        best.final_vertices = rep.final_vertices.clone();
        best.terminated_by = rep.terminated_by;
        best.history = rep.history;
        best.events = rep.events;

        vertices = rep.final_vertices;
        if stop {
            break;
        }
        scale *= l_new;
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;

    #[test]
    fn normalized_single_matrix_stops_at_once() {
        let a = Matrix::from_rows(&[[0.5, 0.5], [0.5, 0.5]]).unwrap();
        let f = MatrixFamily::new(vec![a]).unwrap();
        let rep = iterative_rescaling_driver(&f, &SolverConfig::default(), 5, Variant::A).unwrap();
        assert!((rep.lower - 1.0).abs() < 1e-9 && (rep.upper - 1.0).abs() < 1e-9);
    }

    #[test]
    fn rejects_zero_iterations_and_s() {
        let f = MatrixFamily::new(vec![Matrix::identity(2)]).unwrap();
        assert!(iterative_rescaling_driver(&f, &SolverConfig::default(), 0, Variant::A).is_err());
        assert!(iterative_rescaling_driver(&f, &SolverConfig::default(), 1, Variant::S).is_err());
    }
}
