//! Lower spectral radius bounds: the fixed-antinorm algorithm (S), the
//! adaptive variant (A) and the eigenvector-enriched variant (E), plus
//! s.l.p. identification, the iterative rescaling driver and perturbation
//! regularization.

mod driver;
mod engine;
mod oracle;
mod regularize;
mod slp;

pub use driver::iterative_rescaling_driver;
pub use engine::{run_algorithm, run_algorithm_a, run_algorithm_e, run_algorithm_s};
pub use oracle::{alpha_k_oracle, max_spectral_root, min_spectral_root, DEFAULT_ENUMERATION_CAP};
pub use regularize::{perturbation_matrices, regularized_lsr};
pub use slp::{canonical_rotation, identify_slp_candidates, SlpMode};

use crate::lp::LpOptions;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    S,
    A,
    E,
}

impl std::str::FromStr for Variant {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "s" => Ok(Variant::S),
            "a" => Ok(Variant::A),
            "e" => Ok(Variant::E),
            _ => Err(crate::Error::invalid(format!(
                "unknown algorithm {s:?} (expected s, a or e)"
            ))),
        }
    }
}

/// Initial antinorm.
#[derive(Clone, Debug, PartialEq)]
pub enum InitAntinorm {
    /// Identity vertices, i.e. the 1-antinorm.
    Ones,
    /// The single vertex given by the leading eigenvector of member `i`
    /// (0-based).
    Eigenvector(usize),
    Vertices(Vec<Vec<f64>>),
}

#[derive(Clone, Debug)]
pub struct SolverConfig {
    pub delta: f64,
    /// Budget `M` on matrix-antinorm evaluations.
    pub max_evals: usize,
    /// Eigenvector shrink factor for Algorithm E.
    pub theta: f64,
    /// Insertion and pruning tolerance.
    pub tol: f64,
    pub init: InitAntinorm,
    pub lp: LpOptions,
    /// Record one event per evaluated product.
    pub trace: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            delta: 1e-6,
            max_evals: 1000,
            theta: 1.005,
            tol: crate::antinorm::DEFAULT_TOL,
            init: InitAntinorm::Ones,
            lp: LpOptions::default(),
            trace: false,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Metrics {
    pub l_opt: usize,
    pub l_slp: usize,
    pub n: usize,
    pub n_op: usize,
    pub j_max: usize,
}

impl Metrics {
    pub fn as_tuple(&self) -> (usize, usize, usize, usize, usize) {
        (self.l_opt, self.l_slp, self.n, self.n_op, self.j_max)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Termination {
    Accuracy,
    Budget,
}

impl Termination {
    pub fn as_str(&self) -> &'static str {
        match self {
            Termination::Accuracy => "accuracy",
            Termination::Budget => "budget",
        }
    }
}

/// Solver state at the end of one degree.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundsState {
    pub degree: usize,
    pub lower: f64,
    pub upper: f64,
    /// Minimum prefix score over the products kept at this degree
    /// (`+∞` when none was kept); the lower bound before the fold.
    pub kept_min: f64,
    pub active: usize,
    pub n_op: usize,
    pub vertex_count: usize,
    pub l_opt: usize,
    pub l_slp: usize,
}

/// One evaluated product.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductEvent {
    pub degree: usize,
    /// 0-based member indices.
    pub word: Vec<usize>,
    pub antinorm: f64,
    pub rho_root: f64,
    /// Prefix score `max(l(parent), a(Y)^{1/n})`.
    pub score: f64,
    /// Upper bound right after this product was seen.
    pub upper: f64,
    pub kept: bool,
    /// Whether the candidate vertex was added.
    pub inserted: bool,
}

#[derive(Clone, Debug)]
pub struct SolverReport {
    pub lower: f64,
    pub upper: f64,
    pub metrics: Metrics,
    /// Canonical cyclic representatives, 0-based.
    pub slp_candidates: Vec<Vec<usize>>,
    /// Words at degree `l_slp` whose spectral root attained the upper bound.
    pub slp_witnesses: Vec<Vec<usize>>,
    pub final_vertices: Vec<Vec<f64>>,
    pub lp_failures: usize,
    /// Algorithm E eigenvectors skipped because the antinorm vanished on
    /// them or the dominant eigenvalue was complex.
    pub eigen_skips: usize,
    pub terminated_by: Termination,
    pub history: Vec<BoundsState>,
    pub events: Vec<ProductEvent>,
}
