//! Polytope antinorms on the nonnegative orthant.
//!
//! The unit antiball is `conv(V) + R_+^d`. For a vector `z ≥ 0` the value is
//! `1 / c₀` where `c₀ = min { c₀ : c₀ z ≥ V c, Σ c ≥ 1, c ≥ 0 }`; an
//! infeasible program means `a(z) = 0` and `c₀ = 0` means `a(z) = +∞`.

use log::warn;

use crate::error::{Error, Result};
use crate::lp::{solve_lp, LpOptions, LpProblem, LpStatus};
use crate::matrix::Matrix;

pub const DEFAULT_TOL: f64 = 1e-9;

/// Relative tolerance for treating two unit 1-norm vertices as equal.
const DUPLICATE_TOL: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct PolytopeAntinorm {
    dim: usize,
    vertices: Vec<Vec<f64>>,
    pub tol: f64,
    pub lp: LpOptions,
}

#[derive(Clone, Debug)]
pub struct AntinormValue {
    pub value: f64,
    pub c_min: f64,
    /// Minimizing vertex (matrix evaluation only).
    pub argmin_vertex_index: Option<usize>,
    /// `P v_j` for the minimizing vertex (matrix evaluation only).
    pub candidate: Option<Vec<f64>>,
    /// Vertices skipped because their LP failed.
    pub lp_failures: usize,
}

impl AntinormValue {
    fn from_c_min(c_min: f64) -> Self {
        let value = if c_min == f64::INFINITY {
            0.0
        } else if c_min <= 0.0 {
            f64::INFINITY
        } else {
            1.0 / c_min
        };
        Self {
            value,
            c_min,
            argmin_vertex_index: None,
            candidate: None,
            lp_failures: 0,
        }
    }
}

impl PolytopeAntinorm {
    pub fn new(dim: usize, vertices: Vec<Vec<f64>>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::invalid("an antinorm needs at least one vertex"));
        }
        for (j, v) in vertices.iter().enumerate() {
            if v.len() != dim {
                return Err(Error::invalid(format!(
                    "vertex {} has {} entries, expected {dim}",
                    j + 1,
                    v.len()
                )));
            }
            if !v.iter().all(|x| x.is_finite() && *x >= 0.0) {
                return Err(Error::invalid(format!(
                    "vertex {} is not a finite nonnegative vector",
                    j + 1
                )));
            }
            if v.iter().all(|&x| x == 0.0) {
                return Err(Error::invalid(format!("vertex {} is zero", j + 1)));
            }
        }
        Ok(Self {
            dim,
            vertices,
            tol: DEFAULT_TOL,
            lp: LpOptions::default(),
        })
    }

    /// Identity vertices: the 1-antinorm `a(x) = Σ x_i`.
    pub fn one_antinorm(dim: usize) -> Self {
        let vertices = (0..dim)
            .map(|i| {
                let mut e = vec![0.0; dim];
                e[i] = 1.0;
                e
            })
            .collect();
        Self::new(dim, vertices).expect("identity vertices are valid")
    }

    /// Columns of `v` as vertices.
    pub fn from_matrix(v: &Matrix) -> Result<Self> {
        Self::new(v.rows(), v.columns())
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
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

    pub fn vertex_matrix(&self) -> Matrix {
        Matrix::from_columns(&self.vertices).expect("vertices share a dimension")
    }

    /// Appends a vertex without testing it.
    pub fn push_vertex(&mut self, z: Vec<f64>) {
        debug_assert_eq!(z.len(), self.dim);
        self.vertices.push(z);
    }

    fn without(&self, i: usize) -> Self {
        let mut out = self.clone();
        out.vertices.remove(i);
        out
    }
}

/// `c₀` of the antinorm LP over the given vertex list.
fn antinorm_c_min(
    vertices: &[Vec<f64>],
    z: &[f64],
    opts: &LpOptions,
) -> std::result::Result<f64, LpStatus> {
    let d = z.len();
    let p = vertices.len();
    let mut a = Matrix::zeros(d + 1, p + 1);
    for i in 0..d {
        a[(i, 0)] = -z[i];
        for (j, v) in vertices.iter().enumerate() {
            a[(i, j + 1)] = v[i];
        }
    }
    for j in 0..p {
        a[(d, j + 1)] = -1.0;
    }
    let mut b = vec![0.0; d + 1];
    b[d] = -1.0;
    let mut f = vec![0.0; p + 1];
    f[0] = 1.0;
    let out = solve_lp(&LpProblem::nonnegative(f, a, b), opts);
    match out.status {
        LpStatus::Optimal => Ok(out.solution[0].max(0.0)),
        LpStatus::Infeasible => Ok(f64::INFINITY),
        other => Err(other),
    }
}

pub fn eval_vector(a: &PolytopeAntinorm, z: &[f64]) -> Result<AntinormValue> {
    check_vector(a, z)?;
    antinorm_c_min(&a.vertices, z, &a.lp)
        .map(AntinormValue::from_c_min)
        .map_err(|status| Error::Lp {
            vertex: 0,
            status: status.to_string(),
        })
}

fn check_vector(a: &PolytopeAntinorm, z: &[f64]) -> Result<()> {
    if z.len() != a.dim {
        return Err(Error::invalid(format!(
            "vector has {} entries, expected {}",
            z.len(),
            a.dim
        )));
    }
    if !z.iter().all(|x| x.is_finite() && *x >= 0.0) {
        return Err(Error::invalid(
            "antinorms are evaluated on finite nonnegative vectors",
        ));
    }
    Ok(())
}

/// `min_j a(P v_j)` with the lowest index winning ties. Vertices whose LP
/// fails are skipped and counted; if every LP fails the error is returned.
pub fn eval_matrix(a: &PolytopeAntinorm, p: &Matrix) -> Result<AntinormValue> {
    if p.rows() != a.dim || p.cols() != a.dim {
        return Err(Error::invalid(
            "matrix dimension does not match the antinorm",
        ));
    }
    if !p.is_nonnegative() || !p.is_finite() {
        return Err(Error::invalid(
            "antinorms are evaluated on finite nonnegative matrices",
        ));
    }
    if let Some(s) = p.balancing_factor() {
        let mut v = eval_matrix(a, &p.scaled(1.0 / s))?;
        v.value *= s;
        v.c_min /= s;
        if let Some(z) = v.candidate.as_mut() {
            z.iter_mut().for_each(|x| *x *= s);
        }
        return Ok(v);
    }
    let mut best: Option<(usize, f64, Vec<f64>)> = None;
    let mut failures = 0;
    let mut last_failure = None;
    for (j, v) in a.vertices.iter().enumerate() {
        let z = p.mul_vec(v);
        match antinorm_c_min(&a.vertices, &z, &a.lp) {
            Ok(c) => {
                let value = AntinormValue::from_c_min(c).value;
                if best.as_ref().is_none_or(|(_, bv, _)| value < *bv) {
                    best = Some((j, value, z));
                }
            }
            Err(status) => {
                warn!("antinorm LP failed at vertex {}: {status}", j + 1);
                failures += 1;
                last_failure = Some((j, status));
            }
        }
    }
    match best {
        Some((j, value, z)) => Ok(AntinormValue {
            value,
            c_min: if value == 0.0 {
                f64::INFINITY
            } else if value.is_infinite() {
                0.0
            } else {
                1.0 / value
            },
            argmin_vertex_index: Some(j),
            candidate: Some(z),
            lp_failures: failures,
        }),
        None => {
            let (vertex, status) = last_failure.expect("at least one vertex");
            Err(Error::Lp {
                vertex,
                status: status.to_string(),
            })
        }
    }
}

/// Minimum column sum.
pub fn one_antinorm_matrix(a: &Matrix) -> f64 {
    a.column_sums().into_iter().fold(f64::INFINITY, f64::min)
}

/// `(Σ x_i^p)^{1/p}` for `p ≤ 1, p ≠ 0`; `p = -∞` gives the minimum entry.
pub fn p_antinorm_vector(p: f64, x: &[f64]) -> Result<f64> {
    if p.is_nan() || p == 0.0 || p > 1.0 {
        return Err(Error::invalid(format!(
            "p-antinorm needs p <= 1, p != 0; got {p}"
        )));
    }
    if !x.iter().all(|v| v.is_finite() && *v >= 0.0) {
        return Err(Error::invalid(
            "p-antinorms are evaluated on finite nonnegative vectors",
        ));
    }
    if p == f64::NEG_INFINITY {
        return Ok(x.iter().copied().fold(f64::INFINITY, f64::min));
    }
    if p < 0.0 && x.contains(&0.0) {
        return Ok(0.0);
    }
    Ok(x.iter().map(|v| v.powf(p)).sum::<f64>().powf(1.0 / p))
}

/// Appends `z` when `a(z) ≤ 1 + tol`. An LP failure counts as rejection.
pub fn try_insert_vertex(a: &PolytopeAntinorm, z: &[f64]) -> Result<(PolytopeAntinorm, bool)> {
    check_vector(a, z)?;
    if z.iter().all(|&x| x == 0.0) {
        return Err(Error::invalid("the zero vector cannot be a vertex"));
    }
    let accepted = match eval_vector(a, z) {
        Ok(v) => v.value <= 1.0 + a.tol,
        Err(e) => {
            warn!("vertex insertion test failed: {e}");
            false
        }
    };
    let mut out = a.clone();
    if accepted {
        out.vertices.push(z.to_vec());
    }
    Ok((out, accepted))
}

/// Removes vertices `v_i` with `a_{V∖v_i}(v_i) ≥ 1 + tol`, scanning from the
/// last index and restarting after any removal, then drops duplicates.
/// Returns the pruned antinorm and the number of failed LPs.
pub fn prune(a: &PolytopeAntinorm) -> (PolytopeAntinorm, usize) {
    let mut cur = a.clone();
    let mut failures = 0;
    loop {
        let nv = cur.vertices.len();
        if nv <= 1 {
            break;
        }
        let mut removed = false;
        for i in (0..nv).rev() {
            if i >= cur.vertices.len() || cur.vertices.len() <= 1 {
                continue;
            }
            let w = cur.without(i);
            if w.vertex_matrix().rank(1e-10) == 0 {
                continue;
            }
            match antinorm_c_min(&w.vertices, &cur.vertices[i], &cur.lp) {
                Ok(c) => {
                    if AntinormValue::from_c_min(c).value >= 1.0 + cur.tol {
                        cur = w;
                        removed = true;
                    }
                }
                Err(status) => {
                    warn!(
                        "pruning LP failed at vertex {}: {status}; keeping it",
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
    cur.vertices = dedupe(std::mem::take(&mut cur.vertices));
    (cur, failures)
}

fn unit(v: &[f64]) -> Vec<f64> {
    let s: f64 = v.iter().map(|x| x.abs()).sum();
    v.iter().map(|x| x / s).collect()
}

fn same_direction(a: &[f64], b: &[f64]) -> bool {
    a.iter()
        .zip(b)
        .all(|(x, y)| (x - y).abs() <= DUPLICATE_TOL * x.abs().max(y.abs()))
}

/// Collapses vertices on a common ray, keeping the position of the first
/// and the shortest representative (longer ones are dominated).
pub(crate) fn dedupe(vertices: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let mut kept: Vec<Vec<f64>> = Vec::with_capacity(vertices.len());
    let mut units: Vec<Vec<f64>> = Vec::with_capacity(vertices.len());
    let norm1 = |v: &[f64]| v.iter().map(|x| x.abs()).sum::<f64>();
    for v in vertices {
        let u = unit(&v);
        match units.iter().position(|k| same_direction(k, &u)) {
            Some(k) => {
                if norm1(&v) < norm1(&kept[k]) {
                    kept[k] = v;
                }
            }
            None => {
                units.push(u);
                kept.push(v);
            }
        }
    }
    kept
}

/// `v / (a(v) θ)`, or `None` when `a(v)` is zero or infinite.
pub fn rescaled_eigenvector(
    a: &PolytopeAntinorm,
    v: &[f64],
    theta: f64,
) -> Result<Option<Vec<f64>>> {
    if !(theta > 1.0) {
        return Err(Error::invalid(format!(
            "scaling parameter must exceed 1, got {theta}"
        )));
    }
    let av = eval_vector(a, v)?.value;
    if av == 0.0 || !av.is_finite() {
        return Ok(None);
    }
    let s = av * theta;
    Ok(Some(v.iter().map(|x| x / s).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn identity_vertices_give_the_one_antinorm() {
        let a = PolytopeAntinorm::one_antinorm(2);
        let v = eval_vector(&a, &[0.3328, 0.4992]).unwrap();
        assert!(close(v.value, 0.8320, 1e-12));
        let v2 = eval_vector(&a, &[0.6656, 0.9984]).unwrap();
        assert!(close(v2.value, 1.6640, 1e-12));
    }

    #[test]
    fn zero_and_boundary_vectors() {
        let a = PolytopeAntinorm::new(2, vec![vec![1.0, 1.0]]).unwrap();
        assert_eq!(eval_vector(&a, &[0.0, 0.0]).unwrap().value, 0.0);
        // Positive vertex set: any vector with a zero entry has antinorm zero.
        assert_eq!(eval_vector(&a, &[3.0, 0.0]).unwrap().value, 0.0);
        assert!(close(
            eval_vector(&a, &[2.0, 5.0]).unwrap().value,
            2.0,
            1e-12
        ));
        let b =
            PolytopeAntinorm::new(2, vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![0.3, 0.4]]).unwrap();
        for v in b.vertices() {
            assert!(close(eval_vector(&b, v).unwrap().value, 1.0, 1e-12));
        }
    }

    #[test]
    fn single_boundary_vertex() {
        let a = PolytopeAntinorm::new(2, vec![vec![1.0, 0.0]]).unwrap();
        assert!(close(
            eval_vector(&a, &[1.0, 0.0]).unwrap().value,
            1.0,
            1e-12
        ));
        assert!(close(
            eval_vector(&a, &[2.5, 7.0]).unwrap().value,
            2.5,
            1e-12
        ));
        assert_eq!(eval_vector(&a, &[0.0, 4.0]).unwrap().value, 0.0);
    }

    #[test]
    fn matrix_evaluation_candidate() {
        let a = PolytopeAntinorm::one_antinorm(2);
        let p = Matrix::from_rows(&[[1.1649, 0.3328], [0.0, 0.4992]]).unwrap();
        let v = eval_matrix(&a, &p).unwrap();
        assert!(close(v.value, 0.8320, 1e-12));
        assert_eq!(v.argmin_vertex_index, Some(1));
        assert_eq!(v.candidate.unwrap(), vec![0.3328, 0.4992]);
        let i = eval_matrix(&a, &Matrix::identity(2)).unwrap();
        assert!(close(i.value, 1.0, 1e-12));
        assert_eq!(i.argmin_vertex_index, Some(0));
    }

    #[test]
    fn closed_form_one_antinorm() {
        let a1 = Matrix::from_rows(&[
            [5.0, 1.0, 0.0, 0.0],
            [0.0, 5.0, 2.0, 0.0],
            [0.0, 0.0, 3.0, 1.0],
            [0.0, 0.0, 0.0, 2.0],
        ])
        .unwrap();
        assert_eq!(one_antinorm_matrix(&a1), 3.0);
        assert_eq!(one_antinorm_matrix(&Matrix::identity(3)), 1.0);
    }

    #[test]
    fn p_antinorms() {
        assert_eq!(
            p_antinorm_vector(f64::NEG_INFINITY, &[1.0, 2.0]).unwrap(),
            1.0
        );
        assert!(close(
            p_antinorm_vector(1.0, &[0.3328, 0.4992]).unwrap(),
            0.8320,
            1e-12
        ));
        assert!(close(
            p_antinorm_vector(0.5, &[1.0, 1.0]).unwrap(),
            4.0,
            1e-12
        ));
        assert_eq!(p_antinorm_vector(-2.0, &[0.0, 1.0]).unwrap(), 0.0);
        // -1: harmonic-type value 1/(1/2 + 1/2) = 1
        assert!(close(
            p_antinorm_vector(-1.0, &[2.0, 2.0]).unwrap(),
            1.0,
            1e-12
        ));
        assert!(p_antinorm_vector(0.0, &[1.0]).is_err());
        assert!(p_antinorm_vector(2.0, &[1.0]).is_err());
    }

    #[test]
    fn insertion_rule() {
        let a = PolytopeAntinorm::one_antinorm(2);
        let (a2, ok) = try_insert_vertex(&a, &[0.3328, 0.4992]).unwrap();
        assert!(ok);
        assert_eq!(a2.len(), 3);
        // Rejected: antinorm above 1 + tol.
        let (a3, ok) = try_insert_vertex(&a2, &[0.5, 0.9]).unwrap();
        assert!(!ok);
        assert_eq!(a3.len(), 3);
        // An existing vertex is accepted and later removed as a duplicate.
        let (a4, ok) = try_insert_vertex(&a2, &[1.0, 0.0]).unwrap();
        assert!(ok);
        let (pruned, _) = prune(&a4);
        assert_eq!(pruned.len(), 3);
        assert!(try_insert_vertex(&a, &[0.0, 0.0]).is_err());
    }

    #[test]
    fn pruning_removes_interior_vertex() {
        let a =
            PolytopeAntinorm::new(2, vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![2.0, 2.0]]).unwrap();
        let (p, failures) = prune(&a);
        assert_eq!(failures, 0);
        assert_eq!(p.vertices(), &[vec![1.0, 0.0], vec![0.0, 1.0]]);
    }

    #[test]
    fn pruning_collapses_a_ray() {
        let a = PolytopeAntinorm::new(2, vec![vec![3.0, 3.0], vec![1.0, 1.0]]).unwrap();
        let (p, _) = prune(&a);
        assert_eq!(p.vertices(), &[vec![1.0, 1.0]]);
        let b =
            PolytopeAntinorm::new(2, vec![vec![0.5, 0.5], vec![1.0, 0.0], vec![0.5, 0.5]]).unwrap();
        let (q, _) = prune(&b);
        assert_eq!(q.vertices(), &[vec![0.5, 0.5], vec![1.0, 0.0]]);
    }

    #[test]
    fn rescaled_eigenvectors() {
        let a = PolytopeAntinorm::one_antinorm(2);
        let w = rescaled_eigenvector(&a, &[1.0, 1.0], 1.005)
            .unwrap()
            .unwrap();
        assert!(close(
            eval_vector(&a, &w).unwrap().value,
            1.0 / 1.005,
            1e-12
        ));
        let e = rescaled_eigenvector(&a, &[1.0, 0.0], 1.005)
            .unwrap()
            .unwrap();
        assert!(close(e[0], 1.0 / 1.005, 1e-15));
        let pos = PolytopeAntinorm::new(2, vec![vec![1.0, 1.0]]).unwrap();
        assert!(rescaled_eigenvector(&pos, &[1.0, 0.0], 1.005)
            .unwrap()
            .is_none());
        assert!(rescaled_eigenvector(&a, &[1.0, 0.0], 1.0).is_err());
    }

    fn vec2() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(0.0..5.0f64, 3)
    }

    fn antinorm3() -> impl Strategy<Value = PolytopeAntinorm> {
        prop::collection::vec(prop::collection::vec(0.01..3.0f64, 3), 1..6)
            .prop_map(|vs| PolytopeAntinorm::new(3, vs).unwrap())
    }

    fn mat3() -> impl Strategy<Value = Matrix> {
        prop::collection::vec(0.0..2.0f64, 9).prop_map(|d| Matrix::new(3, 3, d).unwrap())
    }

    proptest! {
        #[test]
        fn homogeneity(a in antinorm3(), z in vec2(), lambda in 0.01..10.0f64) {
            let base = eval_vector(&a, &z).unwrap().value;
            let scaled: Vec<f64> = z.iter().map(|x| x * lambda).collect();
            let v = eval_vector(&a, &scaled).unwrap().value;
            prop_assert!((v - lambda * base).abs() <= 1e-8 * (lambda * base).max(1e-300));
        }

        #[test]
        fn superadditivity(a in antinorm3(), x in vec2(), y in vec2()) {
            let ax = eval_vector(&a, &x).unwrap().value;
            let ay = eval_vector(&a, &y).unwrap().value;
            let s: Vec<f64> = x.iter().zip(&y).map(|(p, q)| p + q).collect();
            let axy = eval_vector(&a, &s).unwrap().value;
            prop_assert!(axy >= ax + ay - 1e-8 * (ax + ay));
        }

        #[test]
        fn identity_vertices_match_closed_form(p in mat3()) {
            let a = PolytopeAntinorm::one_antinorm(3);
            let v = eval_matrix(&a, &p).unwrap().value;
            prop_assert!((v - one_antinorm_matrix(&p)).abs() <= 1e-9);
        }

        #[test]
        fn supermultiplicativity(a in antinorm3(), p in mat3(), q in mat3()) {
            let ap = eval_matrix(&a, &p).unwrap().value;
            let aq = eval_matrix(&a, &q).unwrap().value;
            let apq = eval_matrix(&a, &p.matmul(&q)).unwrap().value;
            prop_assert!(apq >= ap * aq - 1e-8 * (1.0 + ap * aq));
        }

        #[test]
        fn insertion_is_monotone(a in antinorm3(), z in prop::collection::vec(0.01..1.0f64, 3), xs in prop::collection::vec(vec2(), 5)) {
            let (b, accepted) = try_insert_vertex(&a, &z).unwrap();
            if accepted {
                for x in &xs {
                    let before = eval_vector(&a, x).unwrap().value;
                    let after = eval_vector(&b, x).unwrap().value;
                    prop_assert!(after >= before - 1e-9 * before.max(1.0));
                }
            }
        }

        #[test]
        fn pruning_preserves_values(a in antinorm3(), xs in prop::collection::vec(vec2(), 5)) {
            let (p, _) = prune(&a);
            for x in &xs {
                let before = eval_vector(&a, x).unwrap().value;
                let after = eval_vector(&p, x).unwrap().value;
                prop_assert!((before - after).abs() <= 10.0 * a.tol * before.max(1.0));
            }
            for v in p.vertices() {
                let val = eval_vector(&p, v).unwrap().value;
                prop_assert!((val - 1.0).abs() <= 10.0 * a.tol, "vertex value {val}");
            }
        }
    }
}
