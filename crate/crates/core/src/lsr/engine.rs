use log::{debug, warn};

use super::slp::canonical_candidates;
use super::{
    BoundsState, InitAntinorm, Metrics, ProductEvent, SolverConfig, SolverReport, Termination,
    Variant,
};
use crate::antinorm::{eval_matrix, prune, rescaled_eigenvector, PolytopeAntinorm};
use crate::error::{Error, Result};
use crate::family::{extend_product, MatrixFamily, ProductNode};
use crate::matrix::Matrix;
use crate::spectral::{spectral_info, spectral_radius};

/// Products whose spectral root lies within this relative distance of the
/// best one are reported as s.l.p. witnesses.
const WITNESS_TIE: f64 = 1e-9;
/// Algorithm E only records products that lower the upper bound by more
/// than this relative amount.
const STRICT_IMPROVEMENT: f64 = 1e-12;

pub fn run_algorithm_s(family: &MatrixFamily, cfg: &SolverConfig) -> Result<SolverReport> {
    run_algorithm(family, cfg, Variant::S)
}

pub fn run_algorithm_a(family: &MatrixFamily, cfg: &SolverConfig) -> Result<SolverReport> {
    run_algorithm(family, cfg, Variant::A)
}

pub fn run_algorithm_e(family: &MatrixFamily, cfg: &SolverConfig) -> Result<SolverReport> {
    run_algorithm(family, cfg, Variant::E)
}

pub(crate) fn initial_antinorm(
    family: &MatrixFamily,
    cfg: &SolverConfig,
) -> Result<PolytopeAntinorm> {
    let d = family.dim();
    let a = match &cfg.init {
        InitAntinorm::Ones => PolytopeAntinorm::one_antinorm(d),
        InitAntinorm::Eigenvector(i) => {
            if *i >= family.len() {
                return Err(Error::invalid(format!(
                    "no member {} for the initial eigenvector",
                    i + 1
                )));
            }
            let info = spectral_info(family.member(*i))?;
            let v = info.leading_vector.ok_or_else(|| {
                Error::invalid(format!("member {} has no real leading eigenvector", i + 1))
            })?;
            PolytopeAntinorm::new(d, vec![v])?
        }
        InitAntinorm::Vertices(vs) => PolytopeAntinorm::new(d, vs.clone())?,
    };
    let mut a = a.with_tol(cfg.tol);
    a.lp = cfg.lp;
    Ok(a)
}

fn validate(family: &MatrixFamily, cfg: &SolverConfig, variant: Variant) -> Result<()> {
    family.require_nonnegative()?;
    if !(cfg.delta > 0.0) {
        return Err(Error::invalid(format!(
            "delta must be positive, got {}",
            cfg.delta
        )));
    }
    if cfg.max_evals < family.len() {
        return Err(Error::invalid(format!(
            "budget {} is smaller than the family size {}",
            cfg.max_evals,
            family.len()
        )));
    }
    if variant == Variant::E && !(cfg.theta > 1.0) {
        return Err(Error::invalid(format!(
            "theta must exceed 1, got {}",
            cfg.theta
        )));
    }
    if !(cfg.tol >= 0.0) {
        return Err(Error::invalid("tol must be nonnegative"));
    }
    Ok(())
}

struct Run<'a> {
    family: &'a MatrixFamily,
    cfg: &'a SolverConfig,
    variant: Variant,
    antinorm: PolytopeAntinorm,
    upper: f64,
    lp_failures: usize,
    eigen_skips: usize,
    /// Rescaled eigenvectors waiting for the end of the degree.
    pending: Vec<Vec<f64>>,
    degree_best: f64,
    degree_witnesses: Vec<(Vec<usize>, f64)>,
    events: Vec<ProductEvent>,
}

impl Run<'_> {
    /// Evaluates one product: antinorm, spectral root, upper bound, vertex
    /// insertion. Returns the antinorm value.
    fn visit(&mut self, node: &ProductNode) -> Result<(f64, f64, bool)> {
        let n = node.degree() as f64;
        let (value, candidate) = match eval_matrix(&self.antinorm, &node.matrix) {
            Ok(v) => {
                self.lp_failures += v.lp_failures;
                (v.value, v.candidate)
            }
            Err(Error::Lp { vertex, status }) => {
                warn!(
                    "antinorm of {:?} failed at vertex {}: {status}",
                    node.word,
                    vertex + 1
                );
                self.lp_failures += self.antinorm.len();
                (0.0, None)
            }
            Err(e) => return Err(e),
        };
        let rho_root = spectral_radius(&node.matrix)?.powf(1.0 / n);

        let improves = if self.upper.is_infinite() {
            rho_root.is_finite()
        } else {
            rho_root < self.upper * (1.0 - STRICT_IMPROVEMENT)
        };
        if improves && self.variant == Variant::E {
            match self.rescaled_leading_vector(&node.matrix) {
                Some(w) => self.pending.push(w),
                None => {
                    debug!("skipping the eigenvector of {:?}", node.word);
                    self.eigen_skips += 1;
                }
            }
        }
        if rho_root < self.upper {
            self.upper = rho_root;
        }
        self.track_witness(&node.word, rho_root);

        let mut inserted = false;
        if self.variant != Variant::S && value <= 1.0 + self.antinorm.tol {
            if let Some(z) = candidate {
                if z.iter().any(|&x| x != 0.0) {
                    self.antinorm.push_vertex(z);
                    inserted = true;
                }
            }
        }
        Ok((value, rho_root, inserted))
    }

    fn track_witness(&mut self, word: &[usize], rho_root: f64) {
        if rho_root < self.degree_best {
            self.degree_best = rho_root;
            let cutoff = rho_root * (1.0 + WITNESS_TIE);
            self.degree_witnesses.retain(|(_, r)| *r <= cutoff);
        }
        if rho_root <= self.degree_best * (1.0 + WITNESS_TIE) {
            self.degree_witnesses.push((word.to_vec(), rho_root));
        }
    }

    fn begin_degree(&mut self) {
        self.pending.clear();
        self.degree_best = f64::INFINITY;
        self.degree_witnesses.clear();
    }

    /// `v / (a(v) θ)` for the leading eigenvector of `y`, measured with the
    /// antinorm as it stands when `y` is visited.
    fn rescaled_leading_vector(&mut self, y: &Matrix) -> Option<Vec<f64>> {
        let v = match spectral_info(y) {
            Ok(info) => info.leading_vector,
            Err(e) => {
                warn!("eigenvector computation failed: {e}");
                None
            }
        }?;
        match rescaled_eigenvector(&self.antinorm, &v, self.cfg.theta) {
            Ok(w) => w,
            Err(e) => {
                warn!("eigenvector rescaling failed: {e}");
                self.lp_failures += 1;
                None
            }
        }
    }

    /// Eigenvector insertion (Algorithm E) followed by pruning (A and E).
    fn refine(&mut self) {
        for w in std::mem::take(&mut self.pending) {
            self.antinorm.push_vertex(w);
        }
        if self.variant != Variant::S {
            let (pruned, failures) = prune(&self.antinorm);
            self.antinorm = pruned;
            self.lp_failures += failures;
        }
    }

    fn witnesses_at_upper(&self) -> Vec<Vec<usize>> {
        if self.degree_best <= self.upper * (1.0 + WITNESS_TIE) {
            self.degree_witnesses
                .iter()
                .map(|(w, _)| w.clone())
                .collect()
        } else {
            Vec::new()
        }
    }
}

/// Runs Algorithm S, A or E on a nonnegative family.
pub fn run_algorithm(
    family: &MatrixFamily,
    cfg: &SolverConfig,
    variant: Variant,
) -> Result<SolverReport> {
    validate(family, cfg, variant)?;
    let m = family.len();
    let delta = cfg.delta;
    let mut run = Run {
        family,
        cfg,
        variant,
        antinorm: initial_antinorm(family, cfg)?,
        upper: f64::INFINITY,
        lp_failures: 0,
        eigen_skips: 0,
        pending: Vec::new(),
        degree_best: f64::INFINITY,
        degree_witnesses: Vec::new(),
        events: Vec::new(),
    };

    // Degree one.
    run.begin_degree();
    let root = ProductNode::identity(family.dim());
    let mut active = Vec::with_capacity(m);
    for i in 0..m {
        let mut node = extend_product(run.family, &root, i)?;
        let (value, rho_root, inserted) = run.visit(&node)?;
        node.q = value;
        if cfg.trace {
            run.events.push(ProductEvent {
                degree: 1,
                word: node.word.clone(),
                antinorm: value,
                rho_root,
                score: value,
                upper: run.upper,
                kept: true,
                inserted,
            });
        }
        active.push(node);
    }
    let mut lower = active.iter().map(|p| p.q).fold(f64::INFINITY, f64::min);
    let mut slp_witnesses = run.witnesses_at_upper();
    run.refine();

    let mut metrics = Metrics {
        l_opt: 1,
        l_slp: 1,
        n: 1,
        n_op: m,
        j_max: m,
    };
    let mut history = vec![BoundsState {
        degree: 1,
        lower,
        upper: run.upper,
        kept_min: lower,
        active: m,
        n_op: m,
        vertex_count: run.antinorm.len(),
        l_opt: 1,
        l_slp: 1,
    }];

    let mut exhausted = false;
    while run.upper - lower >= delta && metrics.n_op <= cfg.max_evals {
        let (upper_old, lower_old) = (run.upper, lower);
        metrics.n += 1;
        let n = metrics.n;
        run.begin_degree();
        let mut kept_min = f64::INFINITY;
        let mut next = Vec::new();
        for parent in &active {
            for i in 0..m {
                let mut node = extend_product(run.family, parent, i)?;
                let (value, rho_root, inserted) = run.visit(&node)?;
                let score = parent.q.max(value.powf(1.0 / n as f64));
                let kept = score < run.upper - delta;
                if cfg.trace {
                    run.events.push(ProductEvent {
                        degree: n,
                        word: node.word.clone(),
                        antinorm: value,
                        rho_root,
                        score,
                        upper: run.upper,
                        kept,
                        inserted,
                    });
                }
                if kept {
                    kept_min = kept_min.min(score);
                    node.q = score;
                    next.push(node);
                }
            }
        }
        lower = lower_old.max(kept_min.min(run.upper - delta));
        metrics.n_op += active.len() * m;
        metrics.j_max = metrics.j_max.max(next.len());
        if run.upper - lower < upper_old - lower_old {
            metrics.l_opt = n;
        }
        if run.upper < upper_old {
            metrics.l_slp = n;
            slp_witnesses = run.witnesses_at_upper();
        }
        run.refine();
        history.push(BoundsState {
            degree: n,
            lower,
            upper: run.upper,
            kept_min,
            active: next.len(),
            n_op: metrics.n_op,
            vertex_count: run.antinorm.len(),
            l_opt: metrics.l_opt,
            l_slp: metrics.l_slp,
        });
        debug!(
            "degree {n}: [{lower}, {}], |S|={}, n_op={}, |V|={}",
            run.upper,
            next.len(),
            metrics.n_op,
            run.antinorm.len()
        );
        active = next;
        if active.is_empty() {
            // Every product was discarded, so the fold already put the lower
            // bound at upper - delta; nothing is left to explore.
            exhausted = true;
            break;
        }
    }

    let terminated_by = if exhausted || run.upper - lower < delta {
        Termination::Accuracy
    } else {
        Termination::Budget
    };
    Ok(SolverReport {
        lower,
        upper: run.upper,
        metrics,
        slp_candidates: canonical_candidates(&slp_witnesses),
        slp_witnesses,
        final_vertices: run.antinorm.vertices().to_vec(),
        lp_failures: run.lp_failures,
        eigen_skips: run.eigen_skips,
        terminated_by,
        history,
        events: run.events,
    })
}
