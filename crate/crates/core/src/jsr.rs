//! Joint spectral radius bounds with real balanced polytope norms: the
//! classic fixed-norm branch-and-bound and its adaptive refinement.

use log::{debug, warn};

use crate::antinorm::DEFAULT_TOL;
use crate::error::{Error, Result};
use crate::family::{extend_product, MatrixFamily, ProductNode};
use crate::lp::{solve_lp, LpOptions, LpProblem, LpStatus};
use crate::lsr::{canonical_rotation, BoundsState, Metrics, Termination};
use crate::matrix::Matrix;
use crate::spectral::spectral_radius;

const WITNESS_TIE: f64 = 1e-9;

/// Norm whose unit ball is `absco(V) = {Σ c_i v_i : Σ |c_i| ≤ 1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolytopeNorm {
    dim: usize,
    vertices: Vec<Vec<f64>>,
    pub tol: f64,
    pub lp: LpOptions,
}

impl PolytopeNorm {
    /// The vertices must span `R^d`.
    pub fn new(dim: usize, vertices: Vec<Vec<f64>>) -> Result<Self> {
        if dim == 0 || vertices.is_empty() {
            return Err(Error::invalid("a polytope norm needs at least one vertex"));
        }
        if vertices
            .iter()
            .any(|v| v.len() != dim || !v.iter().all(|x| x.is_finite()))
        {
            return Err(Error::invalid(format!(
                "vertices must be finite vectors of length {dim}"
            )));
        }
        if Matrix::from_columns(&vertices)?.rank(1e-10) < dim {
            return Err(Error::invalid(
                "polytope norm vertices must span the whole space",
            ));
        }
        Ok(Self {
            dim,
            vertices,
            tol: DEFAULT_TOL,
            lp: LpOptions::default(),
        })
    }

    /// The 1-norm (vertices `±e_i`).
    pub fn one_norm(dim: usize) -> Self {
        Self::new(dim, Matrix::identity(dim).columns()).expect("identity spans")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }
}

/// `min Σ|c_i|  s.t.  V c = z`, with `c = c⁺ − c⁻`.
fn norm_lp(
    vertices: &[Vec<f64>],
    z: &[f64],
    opts: &LpOptions,
) -> std::result::Result<f64, LpStatus> {
    if z.iter().all(|&x| x == 0.0) {
        return Ok(0.0);
    }
    let (d, p) = (z.len(), vertices.len());
    let mut a = Matrix::zeros(2 * d, 2 * p);
    let mut b = vec![0.0; 2 * d];
    for i in 0..d {
        for (j, v) in vertices.iter().enumerate() {
            a[(i, j)] = v[i];
            a[(i, p + j)] = -v[i];
            a[(d + i, j)] = -v[i];
            a[(d + i, p + j)] = v[i];
        }
        b[i] = z[i];
        b[d + i] = -z[i];
    }
    let out = solve_lp(&LpProblem::nonnegative(vec![1.0; 2 * p], a, b), opts);
    match out.status {
        LpStatus::Optimal => Ok(out.objective_value.max(0.0)),
        other => Err(other),
    }
}

pub fn polytope_norm_vector(nrm: &PolytopeNorm, z: &[f64]) -> Result<f64> {
    if z.len() != nrm.dim || !z.iter().all(|x| x.is_finite()) {
        return Err(Error::invalid(format!(
            "expected a finite vector of length {}",
            nrm.dim
        )));
    }
    norm_lp(&nrm.vertices, z, &nrm.lp)
        .map_err(|s| Error::numerical(format!("polytope norm LP ({s})"), 0))
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormValue {
    pub value: f64,
    pub argmax_vertex_index: usize,
    /// `A v_j` at the maximizing vertex.
    pub candidate: Vec<f64>,
}

/// Induced norm `max_j ‖A v_j‖`, lowest index on ties. Any failed LP is an
/// error since skipping a vertex could understate the norm.
pub fn polytope_norm_matrix(nrm: &PolytopeNorm, a: &Matrix) -> Result<NormValue> {
    if a.rows() != nrm.dim || a.cols() != nrm.dim {
        return Err(Error::invalid("matrix dimension does not match the norm"));
    }
    if let Some(s) = a.balancing_factor() {
        let mut v = polytope_norm_matrix(nrm, &a.scaled(1.0 / s))?;
        v.value *= s;
        v.candidate.iter_mut().for_each(|x| *x *= s);
        return Ok(v);
    }
    let mut best: Option<NormValue> = None;
    for (j, v) in nrm.vertices.iter().enumerate() {
        let z = a.mul_vec(v);
        let value = norm_lp(&nrm.vertices, &z, &nrm.lp).map_err(|s| Error::Lp {
            vertex: j,
            status: s.to_string(),
        })?;
        if best.as_ref().is_none_or(|b| value > b.value) {
            best = Some(NormValue {
                value,
                argmax_vertex_index: j,
                candidate: z,
            });
        }
    }
    Ok(best.expect("nonempty vertex set"))
}

/// Drops `v_i` when `‖v_i‖` measured by the other vertices is at most
/// `1 − tol`, scanning from the last index and repeating until nothing
/// changes. A vertex whose removal would lose full rank stays.
pub fn prune_norm(nrm: &PolytopeNorm) -> (PolytopeNorm, usize) {
    let mut cur = nrm.clone();
    let mut failures = 0;
    loop {
        let mut removed = false;
        let mut i = cur.vertices.len();
        while i > 0 {
            i -= 1;
            if i >= cur.vertices.len() || cur.vertices.len() <= cur.dim {
                continue;
            }
            let mut others = cur.vertices.clone();
            let v = others.remove(i);
            let spans = Matrix::from_columns(&others)
                .map(|m| m.rank(1e-10) == cur.dim)
                .unwrap_or(false);
            if !spans {
                continue;
            }
            match norm_lp(&others, &v, &cur.lp) {
                Ok(x) if x <= 1.0 - cur.tol => {
                    cur.vertices = others;
                    removed = true;
                }
                Ok(_) => {}
                Err(s) => {
                    warn!(
                        "norm pruning LP failed at vertex {}: {s}; keeping it",
                        i + 1
                    );
                    failures += 1;
                }
            }
        }
        if !removed {
            break;
        }
    }
    (cur, failures)
}

#[derive(Clone, Debug)]
pub struct JsrConfig {
    pub delta: f64,
    pub max_evals: usize,
    pub tol: f64,
    /// Initial vertices; `None` gives the 1-norm.
    pub vertices: Option<Vec<Vec<f64>>>,
    pub lp: LpOptions,
}

impl Default for JsrConfig {
    fn default() -> Self {
        Self {
            delta: 1e-6,
            max_evals: 1000,
            tol: DEFAULT_TOL,
            vertices: None,
            lp: LpOptions::default(),
        }
    }
}

/// `metrics.l_slp` holds the degree at which the lower bound last rose,
/// `smp_candidates` the maximizers found there. In `history`, `kept_min`
/// is the largest prefix score kept at each degree.
#[derive(Clone, Debug)]
pub struct JsrReport {
    pub lower: f64,
    pub upper: f64,
    pub metrics: Metrics,
    pub smp_candidates: Vec<Vec<usize>>,
    pub final_vertices: Vec<Vec<f64>>,
    pub vertices_added: usize,
    pub lp_failures: usize,
    pub terminated_by: Termination,
    pub history: Vec<BoundsState>,
}

pub fn gripenberg_jsr(family: &MatrixFamily, cfg: &JsrConfig) -> Result<JsrReport> {
    run_jsr(family, cfg, false)
}

/// As [`gripenberg_jsr`], but the argmax image `z = P v_j` of a degree-`k`
/// product is added as the vertex `z / t^k` whenever `‖z‖ ≥ t^k`, with `t`
/// the running lower bound. Vertices are pruned after every degree.
pub fn adaptive_gripenberg_jsr(family: &MatrixFamily, cfg: &JsrConfig) -> Result<JsrReport> {
    run_jsr(family, cfg, true)
}

struct JsrRun {
    norm: PolytopeNorm,
    adaptive: bool,
    lower: f64,
    lp_failures: usize,
    added: usize,
    degree_best: f64,
    degree_words: Vec<(Vec<usize>, f64)>,
}

impl JsrRun {
    /// Returns `‖P‖^{1/k}`, or `+∞` when the norm could not be computed.
    fn visit(&mut self, node: &ProductNode) -> Result<f64> {
        let k = node.degree() as f64;
        let root = spectral_radius(&node.matrix)?.powf(1.0 / k);
        if root > self.lower {
            self.lower = root;
        }
        if root > self.degree_best {
            self.degree_best = root;
            let cutoff = root * (1.0 - WITNESS_TIE);
            self.degree_words.retain(|(_, r)| *r >= cutoff);
        }
        if root >= self.degree_best * (1.0 - WITNESS_TIE) {
            self.degree_words.push((node.word.clone(), root));
        }

        let nv = match polytope_norm_matrix(&self.norm, &node.matrix) {
            Ok(v) => v,
            Err(Error::Lp { vertex, status }) => {
                warn!(
                    "norm of {:?} failed at vertex {}: {status}",
                    node.word,
                    vertex + 1
                );
                self.lp_failures += 1;
                return Ok(f64::INFINITY);
            }
            Err(e) => return Err(e),
        };
        if self.adaptive && self.lower > 0.0 {
            let scale = self.lower.powf(k);
            if nv.value >= scale * (1.0 - self.norm.tol) && nv.candidate.iter().any(|&x| x != 0.0) {
                self.norm
                    .vertices
                    .push(nv.candidate.iter().map(|x| x / scale).collect());
                self.added += 1;
            }
        }
        Ok(nv.value.powf(1.0 / k))
    }

    fn refine(&mut self) {
        if self.adaptive {
            let (pruned, failures) = prune_norm(&self.norm);
            self.norm = pruned;
            self.lp_failures += failures;
        }
    }

    fn begin_degree(&mut self) {
        self.degree_best = f64::NEG_INFINITY;
        self.degree_words.clear();
    }

    fn words_at_lower(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = if self.degree_best >= self.lower * (1.0 - WITNESS_TIE) {
            self.degree_words
                .iter()
                .map(|(w, _)| canonical_rotation(w))
                .collect()
        } else {
            Vec::new()
        };
        out.sort();
        out.dedup();
        out
    }
}

fn run_jsr(family: &MatrixFamily, cfg: &JsrConfig, adaptive: bool) -> Result<JsrReport> {
    if !(cfg.delta > 0.0) {
        return Err(Error::invalid(format!(
            "delta must be positive, got {}",
            cfg.delta
        )));
    }
    if cfg.max_evals < family.len() {
        return Err(Error::invalid("budget is smaller than the family size"));
    }
    if !(cfg.tol >= 0.0) {
        return Err(Error::invalid("tol must be nonnegative"));
    }
    let d = family.dim();
    let m = family.len();
    let mut norm = match &cfg.vertices {
        Some(v) => PolytopeNorm::new(d, v.clone())?,
        None => PolytopeNorm::one_norm(d),
    };
    norm.tol = cfg.tol;
    norm.lp = cfg.lp;
    let mut run = JsrRun {
        norm,
        adaptive,
        lower: 0.0,
        lp_failures: 0,
        added: 0,
        degree_best: f64::NEG_INFINITY,
        degree_words: Vec::new(),
    };

    run.begin_degree();
    let root = ProductNode::identity(d);
    let mut active = Vec::with_capacity(m);
    for i in 0..m {
        let mut node = extend_product(family, &root, i)?;
        node.q = run.visit(&node)?;
        active.push(node);
    }
    let mut upper = active.iter().map(|p| p.q).fold(f64::NEG_INFINITY, f64::max);
    let mut smp = run.words_at_lower();
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
        lower: run.lower,
        upper,
        kept_min: upper,
        active: m,
        n_op: m,
        vertex_count: run.norm.len(),
        l_opt: 1,
        l_slp: 1,
    }];

    let delta = cfg.delta;
    let mut exhausted = false;
    while upper - run.lower >= delta && metrics.n_op <= cfg.max_evals {
        let (upper_old, lower_old) = (upper, run.lower);
        metrics.n += 1;
        let n = metrics.n;
        run.begin_degree();
        let mut kept_max = f64::NEG_INFINITY;
        let mut next = Vec::new();
        for parent in &active {
            for i in 0..m {
                let mut node = extend_product(family, parent, i)?;
                let score = parent.q.min(run.visit(&node)?);
                if score > run.lower + delta {
                    kept_max = kept_max.max(score);
                    node.q = score;
                    next.push(node);
                }
            }
        }
        upper = upper_old.min(kept_max.max(run.lower + delta));
        metrics.n_op += active.len() * m;
        metrics.j_max = metrics.j_max.max(next.len());
        if upper - run.lower < upper_old - lower_old {
            metrics.l_opt = n;
        }
        if run.lower > lower_old {
            metrics.l_slp = n;
            smp = run.words_at_lower();
        }
        run.refine();
        history.push(BoundsState {
            degree: n,
            lower: run.lower,
            upper,
            kept_min: kept_max,
            active: next.len(),
            n_op: metrics.n_op,
            vertex_count: run.norm.len(),
            l_opt: metrics.l_opt,
            l_slp: metrics.l_slp,
        });
        debug!(
            "jsr degree {n}: [{}, {upper}], |S|={}, |V|={}",
            run.lower,
            next.len(),
            run.norm.len()
        );
        active = next;
        if active.is_empty() {
            exhausted = true;
            break;
        }
    }
    let terminated_by = if exhausted || upper - run.lower < delta {
        Termination::Accuracy
    } else {
        Termination::Budget
    };
    Ok(JsrReport {
        lower: run.lower,
        upper,
        metrics,
        smp_candidates: smp,
        final_vertices: run.norm.vertices.clone(),
        vertices_added: run.added,
        lp_failures: run.lp_failures,
        terminated_by,
        history,
    })
}
