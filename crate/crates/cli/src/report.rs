//! JSON report emission.

use serde::Serialize;
use specrad::jsr::JsrReport;
use specrad::lsr::{Metrics, SolverReport};

/// Decimal string with 15 significant digits; `inf`, `-inf` or `nan` for
/// non-finite values.
pub fn sig15(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    if x == 0.0 {
        return "0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..=15).contains(&exp) {
        let decimals = (14 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{x:.14e}")
    }
}

fn round15(x: f64) -> f64 {
    sig15(x).parse().unwrap_or(x)
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct MetricsJson {
    pub l_opt: usize,
    pub l_slp: usize,
    pub n: usize,
    pub n_op: usize,
    pub j_max: usize,
}

impl From<Metrics> for MetricsJson {
    fn from(m: Metrics) -> Self {
        Self {
            l_opt: m.l_opt,
            l_slp: m.l_slp,
            n: m.n,
            n_op: m.n_op,
            j_max: m.j_max,
        }
    }
}

fn one_based(words: &[Vec<usize>]) -> Vec<Vec<usize>> {
    words
        .iter()
        .map(|w| w.iter().map(|i| i + 1).collect())
        .collect()
}

fn vertices15(vs: &[Vec<f64>]) -> Vec<Vec<f64>> {
    vs.iter()
        .map(|v| v.iter().map(|&x| round15(x)).collect())
        .collect()
}

/// The report doubles as a vertex file through `dim` and `vertices`.
#[derive(Serialize, Debug, Clone)]
pub struct LsrJson {
    pub lower: String,
    pub upper: String,
    pub metrics: MetricsJson,
    pub slp_candidates: Vec<Vec<usize>>,
    pub vertex_count: usize,
    pub terminated_by: String,
    pub lp_failures: usize,
    pub eigen_skips: usize,
    pub dim: usize,
    pub vertices: Vec<Vec<f64>>,
}

impl LsrJson {
    pub fn new(r: &SolverReport, dim: usize, candidates: &[Vec<usize>]) -> Self {
        Self {
            lower: sig15(r.lower),
            upper: sig15(r.upper),
            metrics: r.metrics.into(),
            slp_candidates: one_based(candidates),
            vertex_count: r.final_vertices.len(),
            terminated_by: r.terminated_by.as_str().into(),
            lp_failures: r.lp_failures,
            eigen_skips: r.eigen_skips,
            dim,
            vertices: vertices15(&r.final_vertices),
        }
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct JsrJson {
    pub lower: String,
    pub upper: String,
    /// `l_slp` is the degree at which the lower bound last rose.
    pub metrics: MetricsJson,
    pub smp_candidates: Vec<Vec<usize>>,
    pub vertex_count: usize,
    pub vertices_added: usize,
    pub terminated_by: String,
    pub lp_failures: usize,
    pub dim: usize,
    pub vertices: Vec<Vec<f64>>,
}

impl JsrJson {
    pub fn new(r: &JsrReport, dim: usize) -> Self {
        Self {
            lower: sig15(r.lower),
            upper: sig15(r.upper),
            metrics: r.metrics.into(),
            smp_candidates: one_based(&r.smp_candidates),
            vertex_count: r.final_vertices.len(),
            vertices_added: r.vertices_added,
            terminated_by: r.terminated_by.as_str().into(),
            lp_failures: r.lp_failures,
            dim,
            vertices: vertices15(&r.final_vertices),
        }
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct LadderEntry {
    pub epsilon: String,
    #[serde(flatten)]
    pub report: LsrJson,
}

/// Enough to repeat the run.
#[derive(Serialize, Debug, Clone)]
pub struct Manifest {
    pub command: Vec<String>,
    pub version: &'static str,
    pub family: String,
    pub config: serde_json::Value,
    /// Factor applied to the family before solving; bounds refer to the
    /// rescaled family.
    pub scale: String,
    pub wall_seconds: f64,
}

#[derive(Serialize, Debug, Clone)]
pub struct LsrOutput {
    #[serde(flatten)]
    pub report: LsrJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ladder: Option<Vec<LadderEntry>>,
    pub manifest: Manifest,
}

#[derive(Serialize, Debug, Clone)]
pub struct JsrOutput {
    #[serde(flatten)]
    pub report: JsrJson,
    pub manifest: Manifest,
}

#[derive(Serialize, Debug)]
pub struct Diagnostic {
    pub error: String,
    pub kind: &'static str,
}
