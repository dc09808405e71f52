//! Dense bounded-variable simplex for small inequality-form LPs.
//!
//! Solves `min fᵀx  s.t.  A x ≤ b,  lo ≤ x ≤ up`. Variables are shifted,
//! flipped or split so that every working variable lives in `[0, u]`; each
//! row gets a slack and rows with a negative right-hand side get an
//! artificial for phase one. The basis inverse is kept explicitly and
//! refactorized periodically.

#![allow(clippy::needless_range_loop)]

use crate::matrix::Matrix;

#[derive(Clone, Debug)]
pub struct LpProblem {
    pub objective: Vec<f64>,
    pub ineq_matrix: Matrix,
    pub ineq_rhs: Vec<f64>,
    pub lower_bounds: Vec<f64>,
    pub upper_bounds: Vec<f64>,
}

impl LpProblem {
    /// `min fᵀx  s.t.  A x ≤ b,  x ≥ 0`.
    pub fn nonnegative(objective: Vec<f64>, ineq_matrix: Matrix, ineq_rhs: Vec<f64>) -> Self {
        let n = objective.len();
        Self {
            objective,
            ineq_matrix,
            ineq_rhs,
            lower_bounds: vec![0.0; n],
            upper_bounds: vec![f64::INFINITY; n],
        }
    }

    fn well_formed(&self) -> bool {
        let n = self.objective.len();
        let r = self.ineq_rhs.len();
        self.ineq_matrix.rows() == r
            && (self.ineq_matrix.cols() == n || r == 0)
            && self.lower_bounds.len() == n
            && self.upper_bounds.len() == n
            && self.objective.iter().all(|x| x.is_finite())
            && self.ineq_rhs.iter().all(|x| x.is_finite())
            && self.ineq_matrix.is_finite()
            && self
                .lower_bounds
                .iter()
                .all(|x| !x.is_nan() && *x != f64::INFINITY)
            && self
                .upper_bounds
                .iter()
                .all(|x| !x.is_nan() && *x != f64::NEG_INFINITY)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LpOptions {
    pub feas_tol: f64,
    /// `None` means `max(300, variables + rows)`.
    pub max_iter: Option<usize>,
}

impl Default for LpOptions {
    fn default() -> Self {
        Self {
            feas_tol: 1e-10,
            max_iter: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    NumericalFailure,
}

impl std::fmt::Display for LpStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            LpStatus::Optimal => "optimal",
            LpStatus::Infeasible => "infeasible",
            LpStatus::Unbounded => "unbounded",
            LpStatus::NumericalFailure => "numerical failure",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct LpOutcome {
    pub status: LpStatus,
    /// Empty unless optimal.
    pub solution: Vec<f64>,
    /// NaN unless optimal.
    pub objective_value: f64,
    pub iterations: usize,
}

impl LpOutcome {
    fn failed(status: LpStatus, iterations: usize) -> Self {
        Self {
            status,
            solution: Vec::new(),
            objective_value: f64::NAN,
            iterations,
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum VarMap {
    Shift { col: usize, lo: f64 },
    Flip { col: usize, up: f64 },
    Split { pos: usize, neg: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum State {
    Basic,
    Lower,
    Upper,
}

const REFACTOR_EVERY: usize = 40;

struct Simplex {
    m: usize,
    cols: Vec<Vec<f64>>,
    upper: Vec<f64>,
    rhs: Vec<f64>,
    basis: Vec<usize>,
    state: Vec<State>,
    binv: Vec<f64>,
    xb: Vec<f64>,
    iterations: usize,
    max_iter: usize,
    since_refactor: usize,
    feas_tol: f64,
}

enum PhaseEnd {
    Optimal,
    Unbounded,
    Failure,
}

impl Simplex {
    fn value_of_nonbasic(&self, j: usize) -> f64 {
        match self.state[j] {
            State::Upper => self.upper[j],
            _ => 0.0,
        }
    }

    fn refactor(&mut self) -> bool {
        let m = self.m;
        // Gauss-Jordan on [B | I].
        let mut b = vec![0.0; m * m];
        for (k, &j) in self.basis.iter().enumerate() {
            for i in 0..m {
                b[i * m + k] = self.cols[j][i];
            }
        }
        let mut inv = vec![0.0; m * m];
        for i in 0..m {
            inv[i * m + i] = 1.0;
        }
        for c in 0..m {
            let piv = (c..m)
                .max_by(|&x, &y| b[x * m + c].abs().total_cmp(&b[y * m + c].abs()))
                .unwrap();
            if b[piv * m + c].abs() < 1e-14 {
                return false;
            }
            if piv != c {
                for k in 0..m {
                    b.swap(piv * m + k, c * m + k);
                    inv.swap(piv * m + k, c * m + k);
                }
            }
            let p = b[c * m + c];
            for k in 0..m {
                b[c * m + k] /= p;
                inv[c * m + k] /= p;
            }
            for i in 0..m {
                if i != c {
                    let f = b[i * m + c];
                    if f != 0.0 {
                        for k in 0..m {
                            b[i * m + k] -= f * b[c * m + k];
                            inv[i * m + k] -= f * inv[c * m + k];
                        }
                    }
                }
            }
        }
        self.binv = inv;
        let mut r = self.rhs.clone();
        for j in 0..self.cols.len() {
            if self.state[j] == State::Upper {
                let u = self.upper[j];
                for (ri, a) in r.iter_mut().zip(&self.cols[j]) {
                    *ri -= a * u;
                }
            }
        }
        self.xb = (0..m)
            .map(|i| (0..m).map(|k| self.binv[i * m + k] * r[k]).sum())
            .collect();
        self.since_refactor = 0;
        true
    }

    fn ftran(&self, j: usize) -> Vec<f64> {
        let m = self.m;
        let col = &self.cols[j];
        (0..m)
            .map(|i| (0..m).map(|k| self.binv[i * m + k] * col[k]).sum())
            .collect()
    }

    fn run_phase(&mut self, cost: &[f64]) -> PhaseEnd {
        let m = self.m;
        let ncols = self.cols.len();
        let cmax = cost.iter().fold(1.0f64, |a, c| a.max(c.abs()));
        let opt_tol = self.feas_tol * cmax;
        let mut bland = false;
        let mut degenerate_run = 0usize;
        loop {
            if self.iterations >= self.max_iter {
                return PhaseEnd::Failure;
            }
            let y: Vec<f64> = (0..m)
                .map(|k| {
                    (0..m)
                        .map(|i| cost[self.basis[i]] * self.binv[i * m + k])
                        .sum()
                })
                .collect();
            let mut entering: Option<(usize, f64)> = None;
            for j in 0..ncols {
                if self.state[j] == State::Basic || self.upper[j] == 0.0 {
                    continue;
                }
                let d = cost[j] - self.cols[j].iter().zip(&y).map(|(a, b)| a * b).sum::<f64>();
                let eligible = match self.state[j] {
                    State::Lower => d < -opt_tol,
                    State::Upper => d > opt_tol,
                    State::Basic => false,
                };
                if !eligible {
                    continue;
                }
                if bland {
                    entering = Some((j, d));
                    break;
                }
                if entering.is_none_or(|(_, best)| d.abs() > best.abs()) {
                    entering = Some((j, d));
                }
            }
            let Some((j, _)) = entering else {
                if self.since_refactor > 0 {
                    if !self.refactor() {
                        return PhaseEnd::Failure;
                    }
                    continue;
                }
                return PhaseEnd::Optimal;
            };

            let alpha = self.ftran(j);
            let dir = if self.state[j] == State::Lower {
                1.0
            } else {
                -1.0
            };
            let amax = alpha.iter().fold(0.0f64, |a, x| a.max(x.abs()));
            let piv_tol = (1e-10 * amax).max(1e-12);
            let mut leave: Option<(usize, f64, State, f64)> = None;
            for i in 0..m {
                let a = dir * alpha[i];
                let (t, to) = if a > piv_tol {
                    (self.xb[i].max(0.0) / a, State::Lower)
                } else if a < -piv_tol {
                    let u = self.upper[self.basis[i]];
                    if u.is_infinite() {
                        continue;
                    }
                    ((u - self.xb[i]).max(0.0) / -a, State::Upper)
                } else {
                    continue;
                };
                let better = match leave {
                    None => true,
                    Some((li, lt, _, la)) => {
                        if bland {
                            t < lt || (t == lt && self.basis[i] < self.basis[li])
                        } else {
                            t < lt - 1e-15 || (t <= lt + 1e-15 && a.abs() > la)
                        }
                    }
                };
                if better {
                    leave = Some((i, t, to, a.abs()));
                }
            }
            let t_flip = self.upper[j];
            let t_pivot = leave.map_or(f64::INFINITY, |l| l.1);
            if t_flip.is_infinite() && t_pivot.is_infinite() {
                return PhaseEnd::Unbounded;
            }
            self.iterations += 1;
            if t_flip <= t_pivot {
                for i in 0..m {
                    self.xb[i] -= dir * t_flip * alpha[i];
                }
                self.state[j] = if self.state[j] == State::Lower {
                    State::Upper
                } else {
                    State::Lower
                };
                degenerate_run = 0;
                continue;
            }
            let (r, t, to, _) = leave.unwrap();
            let entering_value = self.value_of_nonbasic(j) + dir * t;
            for i in 0..m {
                self.xb[i] -= dir * t * alpha[i];
            }
            self.xb[r] = entering_value;
            let old = self.basis[r];
            self.state[old] = to;
            self.state[j] = State::Basic;
            self.basis[r] = j;
            let pr = alpha[r];
            for k in 0..m {
                self.binv[r * m + k] /= pr;
            }
            for i in 0..m {
                if i != r && alpha[i] != 0.0 {
                    let f = alpha[i];
                    for k in 0..m {
                        self.binv[i * m + k] -= f * self.binv[r * m + k];
                    }
                }
            }
            self.since_refactor += 1;
            if self.since_refactor >= REFACTOR_EVERY && !self.refactor() {
                return PhaseEnd::Failure;
            }
            if t <= 1e-14 {
                degenerate_run += 1;
                if degenerate_run > 3 * ncols {
                    bland = true;
                }
            } else {
                degenerate_run = 0;
            }
        }
    }
}

pub fn solve_lp(p: &LpProblem, opts: &LpOptions) -> LpOutcome {
    if !p.well_formed() {
        return LpOutcome::failed(LpStatus::NumericalFailure, 0);
    }
    let n = p.objective.len();
    let m = p.ineq_rhs.len();
    let a = |i: usize, k: usize| p.ineq_matrix[(i, k)];

    let mut maps = Vec::with_capacity(n);
    let mut cols: Vec<Vec<f64>> = Vec::new();
    let mut upper = Vec::new();
    let mut cost = Vec::new();
    let mut rhs = p.ineq_rhs.clone();
    for k in 0..n {
        let (lo, up) = (p.lower_bounds[k], p.upper_bounds[k]);
        if lo > up {
            return LpOutcome::failed(LpStatus::Infeasible, 0);
        }
        if lo.is_finite() {
            for (i, r) in rhs.iter_mut().enumerate() {
                *r -= a(i, k) * lo;
            }
            maps.push(VarMap::Shift {
                col: cols.len(),
                lo,
            });
            cols.push((0..m).map(|i| a(i, k)).collect());
            upper.push(up - lo);
            cost.push(p.objective[k]);
        } else if up.is_finite() {
            for (i, r) in rhs.iter_mut().enumerate() {
                *r -= a(i, k) * up;
            }
            maps.push(VarMap::Flip {
                col: cols.len(),
                up,
            });
            cols.push((0..m).map(|i| -a(i, k)).collect());
            upper.push(f64::INFINITY);
            cost.push(-p.objective[k]);
        } else {
            maps.push(VarMap::Split {
                pos: cols.len(),
                neg: cols.len() + 1,
            });
            cols.push((0..m).map(|i| a(i, k)).collect());
            cols.push((0..m).map(|i| -a(i, k)).collect());
            upper.extend([f64::INFINITY, f64::INFINITY]);
            cost.extend([p.objective[k], -p.objective[k]]);
        }
    }
    let structural = cols.len();
    for i in 0..m {
        let mut e = vec![0.0; m];
        e[i] = 1.0;
        cols.push(e);
        upper.push(f64::INFINITY);
        cost.push(0.0);
    }
    let mut basis: Vec<usize> = (0..m).map(|i| structural + i).collect();
    let mut artificials = Vec::new();
    for i in 0..m {
        if rhs[i] < 0.0 {
            for col in cols.iter_mut() {
                col[i] = -col[i];
            }
            rhs[i] = -rhs[i];
            let mut e = vec![0.0; m];
            e[i] = 1.0;
            basis[i] = cols.len();
            artificials.push(cols.len());
            cols.push(e);
            upper.push(f64::INFINITY);
            cost.push(0.0);
        }
    }
    let ncols = cols.len();
    let mut state = vec![State::Lower; ncols];
    for &j in &basis {
        state[j] = State::Basic;
    }
    let mut binv = vec![0.0; m * m];
    for i in 0..m {
        binv[i * m + i] = 1.0;
    }
    let max_iter = opts.max_iter.unwrap_or_else(|| 300.max(n + m));
    let mut sx = Simplex {
        m,
        cols,
        upper,
        xb: rhs.clone(),
        rhs,
        basis,
        state,
        binv,
        iterations: 0,
        max_iter,
        since_refactor: 0,
        feas_tol: opts.feas_tol,
    };

    if !artificials.is_empty() {
        let mut c1 = vec![0.0; ncols];
        for &j in &artificials {
            c1[j] = 1.0;
        }
        match sx.run_phase(&c1) {
            PhaseEnd::Optimal => {}
            // Phase one is bounded below by zero.
            PhaseEnd::Unbounded | PhaseEnd::Failure => {
                return LpOutcome::failed(LpStatus::NumericalFailure, sx.iterations)
            }
        }
        let infeas: f64 = (0..m)
            .filter(|&i| artificials.contains(&sx.basis[i]))
            .map(|i| sx.xb[i].max(0.0))
            .sum();
        let scale = sx.rhs.iter().fold(1.0f64, |a, r| a.max(r.abs()));
        if infeas > opts.feas_tol * scale {
            return LpOutcome::failed(LpStatus::Infeasible, sx.iterations);
        }
        for &j in &artificials {
            sx.upper[j] = 0.0;
        }
    }
    match sx.run_phase(&cost) {
        PhaseEnd::Optimal => {}
        PhaseEnd::Unbounded => return LpOutcome::failed(LpStatus::Unbounded, sx.iterations),
        PhaseEnd::Failure => return LpOutcome::failed(LpStatus::NumericalFailure, sx.iterations),
    }

    let mut w = vec![0.0; ncols];
    for j in 0..ncols {
        w[j] = sx.value_of_nonbasic(j);
    }
    for (i, &j) in sx.basis.iter().enumerate() {
        w[j] = sx.xb[i];
    }
    let solution: Vec<f64> = maps
        .iter()
        .map(|map| match *map {
            VarMap::Shift { col, lo } => lo + w[col].max(0.0),
            VarMap::Flip { col, up } => up - w[col].max(0.0),
            VarMap::Split { pos, neg } => w[pos].max(0.0) - w[neg].max(0.0),
        })
        .collect();
    let objective_value = p.objective.iter().zip(&solution).map(|(f, x)| f * x).sum();
    LpOutcome {
        status: LpStatus::Optimal,
        solution,
        objective_value,
        iterations: sx.iterations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(f: Vec<f64>, rows: &[Vec<f64>], b: Vec<f64>) -> LpProblem {
        let a = if rows.is_empty() {
            Matrix::zeros(0, f.len())
        } else {
            Matrix::from_rows(rows).unwrap()
        };
        LpProblem::nonnegative(f, a, b)
    }

    #[test]
    fn single_lower_bound() {
        let out = solve_lp(
            &lp(vec![1.0], &[vec![-1.0]], vec![-1.0]),
            &LpOptions::default(),
        );
        assert_eq!(out.status, LpStatus::Optimal);
        assert!((out.solution[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn antinorm_lp_identity_vertices() {
        // vars (c0, c1, c2): c0 z >= V c, c1 + c2 >= 1
        let z = [0.3328, 0.4992];
        let rows = vec![
            vec![-z[0], 1.0, 0.0],
            vec![-z[1], 0.0, 1.0],
            vec![0.0, -1.0, -1.0],
        ];
        let out = solve_lp(
            &lp(vec![1.0, 0.0, 0.0], &rows, vec![0.0, 0.0, -1.0]),
            &LpOptions::default(),
        );
        assert_eq!(out.status, LpStatus::Optimal);
        assert!((out.objective_value - 1.0 / 0.8320).abs() < 1e-12);
    }

    #[test]
    fn zero_vector_antinorm_lp_is_infeasible() {
        let rows = vec![
            vec![0.0, 1.0, 2.0],
            vec![0.0, 3.0, 1.0],
            vec![0.0, -1.0, -1.0],
        ];
        let out = solve_lp(
            &lp(vec![1.0, 0.0, 0.0], &rows, vec![0.0, 0.0, -1.0]),
            &LpOptions::default(),
        );
        assert_eq!(out.status, LpStatus::Infeasible);
    }

    #[test]
    fn unbounded_detected() {
        let out = solve_lp(
            &lp(vec![-1.0, 0.0], &[vec![0.0, 1.0]], vec![1.0]),
            &LpOptions::default(),
        );
        assert_eq!(out.status, LpStatus::Unbounded);
    }

    #[test]
    fn free_and_boxed_variables() {
        // min x - y, -3 <= x <= 5 (so x = -3), y free with y <= 2, y <= x + 4
        let mut p = lp(
            vec![1.0, -1.0],
            &[vec![0.0, 1.0], vec![-1.0, 1.0]],
            vec![2.0, 4.0],
        );
        p.lower_bounds = vec![-3.0, f64::NEG_INFINITY];
        p.upper_bounds = vec![5.0, f64::INFINITY];
        let out = solve_lp(&p, &LpOptions::default());
        assert_eq!(out.status, LpStatus::Optimal);
        assert!((out.solution[0] + 3.0).abs() < 1e-12);
        assert!((out.solution[1] - 1.0).abs() < 1e-12);
        // Upper-bounded only.
        let mut q = lp(vec![-1.0], &[], vec![]);
        q.lower_bounds = vec![f64::NEG_INFINITY];
        q.upper_bounds = vec![7.0];
        let out = solve_lp(&q, &LpOptions::default());
        assert!((out.solution[0] - 7.0).abs() < 1e-12);
    }

    #[test]
    fn crossed_bounds_infeasible() {
        let mut p = lp(vec![1.0], &[], vec![]);
        p.lower_bounds = vec![2.0];
        p.upper_bounds = vec![1.0];
        assert_eq!(
            solve_lp(&p, &LpOptions::default()).status,
            LpStatus::Infeasible
        );
    }

    #[test]
    fn malformed_problem_does_not_panic() {
        let p = lp(vec![1.0, 2.0], &[vec![1.0, 1.0]], vec![1.0, 2.0]);
        assert_eq!(
            solve_lp(&p, &LpOptions::default()).status,
            LpStatus::NumericalFailure
        );
    }

    #[test]
    fn heavily_degenerate_instance_terminates() {
        // Many redundant constraints through the origin.
        let mut rows = Vec::new();
        for k in 1..12 {
            rows.push(vec![k as f64, -(k as f64), 1.0]);
            rows.push(vec![-1.0, k as f64, -(k as f64)]);
        }
        rows.push(vec![1.0, 1.0, 1.0]);
        let mut b = vec![0.0; rows.len() - 1];
        b.push(1.0);
        let out = solve_lp(&lp(vec![-1.0, -1.0, -1.0], &rows, b), &LpOptions::default());
        assert_ne!(out.status, LpStatus::NumericalFailure);
    }

    /// Minimum over all vertices of `{A x <= b, 0 <= x <= 10}`.
    fn enumerate_vertices(f: &[f64], rows: &[Vec<f64>], b: &[f64]) -> Option<f64> {
        let n = f.len();
        let mut all: Vec<(Vec<f64>, f64)> = rows.iter().cloned().zip(b.iter().copied()).collect();
        for k in 0..n {
            let mut e = vec![0.0; n];
            e[k] = -1.0;
            all.push((e.clone(), 0.0));
            e[k] = 1.0;
            all.push((e, 10.0));
        }
        let total = all.len();
        let mut best: Option<f64> = None;
        let mut idx: Vec<usize> = (0..n).collect();
        loop {
            let a = Matrix::from_rows(&idx.iter().map(|&i| all[i].0.clone()).collect::<Vec<_>>())
                .unwrap();
            let rhs: Vec<f64> = idx.iter().map(|&i| all[i].1).collect();
            if a.rank(1e-12) == n {
                if let Some(x) = crate::matrix::solve_dense(&a, &rhs) {
                    let feasible = all.iter().all(|(row, bi)| {
                        row.iter().zip(&x).map(|(p, q)| p * q).sum::<f64>() <= bi + 1e-9
                    });
                    if feasible {
                        let v: f64 = f.iter().zip(&x).map(|(p, q)| p * q).sum();
                        best = Some(best.map_or(v, |bv: f64| bv.min(v)));
                    }
                }
            }
            // next combination
            let mut k = n;
            loop {
                if k == 0 {
                    return best;
                }
                k -= 1;
                if idx[k] < total - n + k {
                    idx[k] += 1;
                    for t in k + 1..n {
                        idx[t] = idx[t - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    fn small_lp() -> impl Strategy<Value = (Vec<f64>, Vec<Vec<f64>>, Vec<f64>)> {
        (1usize..=4, 1usize..=6).prop_flat_map(|(n, r)| {
            (
                prop::collection::vec(-5.0..5.0f64, n),
                prop::collection::vec(prop::collection::vec(-5.0..5.0f64, n), r),
                prop::collection::vec(-3.0..8.0f64, r),
            )
        })
    }

    proptest! {
        #[test]
        fn agrees_with_vertex_enumeration((f, rows, b) in small_lp()) {
            let n = f.len();
            let mut p = lp(f.clone(), &rows, b.clone());
            p.upper_bounds = vec![10.0; n];
            let out = solve_lp(&p, &LpOptions::default());
            match enumerate_vertices(&f, &rows, &b) {
                Some(best) => {
                    prop_assert_eq!(out.status, LpStatus::Optimal);
                    prop_assert!((out.objective_value - best).abs() <= 1e-8 * (1.0 + best.abs()),
                        "lp {} vs enum {}", out.objective_value, best);
                    for (row, bi) in rows.iter().zip(&b) {
                        let lhs: f64 = row.iter().zip(&out.solution).map(|(p, q)| p * q).sum();
                        prop_assert!(lhs <= bi + 1e-9);
                    }
                }
                None => prop_assert_eq!(out.status, LpStatus::Infeasible),
            }
        }

        #[test]
        fn weak_duality(n in 1usize..5, r in 1usize..6, seed in prop::collection::vec(0.0..1.0f64, 60)) {
            // Build a dual-feasible y >= 0 with f + Aᵀy >= 0 so the primal is bounded.
            let mut it = seed.into_iter().cycle();
            let rows: Vec<Vec<f64>> = (0..r).map(|_| (0..n).map(|_| it.next().unwrap() * 4.0 - 2.0).collect()).collect();
            let b: Vec<f64> = (0..r).map(|_| it.next().unwrap() * 6.0 - 1.0).collect();
            let y: Vec<f64> = (0..r).map(|_| it.next().unwrap()).collect();
            let f: Vec<f64> = (0..n).map(|k| {
                let aty: f64 = (0..r).map(|i| rows[i][k] * y[i]).sum();
                -aty + it.next().unwrap()
            }).collect();
            let dual_bound: f64 = -b.iter().zip(&y).map(|(p, q)| p * q).sum::<f64>();
            let out = solve_lp(&lp(f, &rows, b), &LpOptions::default());
            if out.status == LpStatus::Optimal {
                prop_assert!(out.objective_value >= dual_bound - 1e-7);
            } else {
                prop_assert_eq!(out.status, LpStatus::Infeasible);
            }
        }

        #[test]
        fn objective_scales_linearly((f, rows, b) in small_lp(), alpha in 0.1..10.0f64) {
            let n = f.len();
            let mut p = lp(f.clone(), &rows, b.clone());
            p.upper_bounds = vec![10.0; n];
            let base = solve_lp(&p, &LpOptions::default());
            // Scaling f by alpha scales the optimum by alpha.
            let mut q = p.clone();
            q.objective = f.iter().map(|x| x * alpha).collect();
            let scaled = solve_lp(&q, &LpOptions::default());
            prop_assert_eq!(base.status, scaled.status);
            if base.status == LpStatus::Optimal {
                prop_assert!((scaled.objective_value - alpha * base.objective_value).abs()
                    <= 1e-8 * (1.0 + scaled.objective_value.abs()));
            }
        }
    }
}
