//! Spectral radius, dominant eigenvectors and the simple-dominance check.
//!
//! Eigenvalues come from balancing, reduction to upper Hessenberg form by
//! stabilized elementary similarity transforms and the Francis double-shift
//! QR iteration. For nonnegative matrices an independent Perron power
//! iteration is available as well.

#![allow(clippy::needless_range_loop)]

use crate::error::{Error, Result};
use crate::matrix::{solve_dense, Matrix};

/// Second-largest eigenvalue modulus must stay below `rho * (1 - GAP_TOL)`
/// for the dominant eigenvalue to count as strictly dominant.
pub const GAP_TOL: f64 = 1e-8;

const MAX_QR_SWEEPS: usize = 60;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Eigenvalue {
    pub re: f64,
    pub im: f64,
}

impl Eigenvalue {
    pub fn modulus(&self) -> f64 {
        self.re.hypot(self.im)
    }
}

#[derive(Clone, Debug)]
pub struct SpectralInfo {
    pub rho: f64,
    /// Unit 1-norm eigenvector for a real dominant eigenvalue `±rho`;
    /// nonnegative when the matrix is. `None` when every eigenvalue of
    /// maximal modulus is complex.
    pub leading_vector: Option<Vec<f64>>,
    /// The real dominant eigenvalue paired with `leading_vector`.
    pub leading_value: Option<f64>,
    pub simple_dominant: bool,
}

/// All eigenvalues of a square matrix.
pub fn eigenvalues(a: &Matrix) -> Result<Vec<Eigenvalue>> {
    if !a.is_square() {
        return Err(Error::invalid("eigenvalues of a non-square matrix"));
    }
    if !a.is_finite() {
        return Err(Error::invalid("matrix has non-finite entries"));
    }
    let n = a.rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut h: Vec<Vec<f64>> = a.to_rows();
    balance(&mut h);
    hessenberg(&mut h);
    hqr(&mut h)
}

/// Spectral radius only.
pub fn spectral_radius(a: &Matrix) -> Result<f64> {
    if let Some(s) = a.balancing_factor() {
        return Ok(spectral_radius(&a.scaled(1.0 / s))? * s);
    }
    Ok(eigenvalues(a)?
        .iter()
        .map(Eigenvalue::modulus)
        .fold(0.0, f64::max))
}

/// Spectral radius, leading eigenvector and simple-dominance flag.
pub fn spectral_info(a: &Matrix) -> Result<SpectralInfo> {
    if let Some(s) = a.balancing_factor() {
        let mut info = spectral_info(&a.scaled(1.0 / s))?;
        info.rho *= s;
        info.leading_value = info.leading_value.map(|x| x * s);
        return Ok(info);
    }
    let eigs = eigenvalues(a)?;
    let rho = eigs.iter().map(Eigenvalue::modulus).fold(0.0, f64::max);
    let simple_dominant = simple_dominance(&eigs, rho);

    let nonneg = a.is_nonnegative();
    // Nonnegative matrices always have rho itself as an eigenvalue.
    let leading_value = if nonneg {
        Some(rho)
    } else {
        let band = rho * (1.0 - GAP_TOL);
        eigs.iter()
            .filter(|e| e.modulus() >= band && e.im.abs() <= 1e-10 * rho.max(f64::MIN_POSITIVE))
            .map(|e| e.re)
            .max_by(|x, y| x.total_cmp(y))
    };
    let leading_vector = match leading_value {
        Some(lambda) => Some(inverse_iteration(a, lambda, nonneg)?),
        None => None,
    };
    Ok(SpectralInfo {
        rho,
        leading_vector,
        leading_value,
        simple_dominant,
    })
}

fn simple_dominance(eigs: &[Eigenvalue], rho: f64) -> bool {
    if rho <= 0.0 {
        return false;
    }
    let band = rho * (1.0 - GAP_TOL);
    let top: Vec<&Eigenvalue> = eigs.iter().filter(|e| e.modulus() >= band).collect();
    top.len() == 1 && top[0].im.abs() <= 1e-12 * rho
}

/// True iff `rho(A) > 0`, `±rho(A)` is simple and every other eigenvalue has
/// modulus below `rho(A) * (1 - GAP_TOL)`.
pub fn is_asymptotically_rank_one(a: &Matrix) -> Result<bool> {
    let eigs = eigenvalues(a)?;
    let rho = eigs.iter().map(Eigenvalue::modulus).fold(0.0, f64::max);
    Ok(simple_dominance(&eigs, rho))
}

/// Perron power iteration on `A + I` for a nonnegative matrix.
///
/// The shift makes `rho + 1` the unique eigenvalue of maximal modulus even
/// for periodic matrices. Stops once the Rayleigh-type quotient changes by
/// less than `rel_tol` relative. Returns `(rho, unit 1-norm vector)`.
pub fn perron_power_iteration(
    a: &Matrix,
    rel_tol: f64,
    max_iter: usize,
) -> Result<(f64, Vec<f64>)> {
    if !a.is_square() || !a.is_nonnegative() || !a.is_finite() {
        return Err(Error::invalid(
            "Perron iteration needs a finite nonnegative square matrix",
        ));
    }
    let n = a.rows();
    let mut v = vec![1.0 / n as f64; n];
    let mut prev = f64::NAN;
    for it in 0..max_iter {
        let mut w = a.mul_vec(&v);
        for (wi, vi) in w.iter_mut().zip(&v) {
            *wi += vi;
        }
        // v has unit 1-norm and is nonnegative, so the 1-norm of w is the quotient.
        let lambda: f64 = w.iter().sum();
        if lambda == 0.0 {
            return Ok((0.0, v));
        }
        for wi in w.iter_mut() {
            *wi /= lambda;
        }
        v = w;
        if (lambda - prev).abs() <= rel_tol * lambda && it > 2 {
            return Ok((lambda - 1.0, v));
        }
        prev = lambda;
    }
    Err(Error::numerical("Perron power iteration", max_iter))
}

/// Inverse iteration for the eigenvector of the real eigenvalue `lambda`.
fn inverse_iteration(a: &Matrix, lambda: f64, nonneg: bool) -> Result<Vec<f64>> {
    let n = a.rows();
    let scale = a.max_abs().max(lambda.abs()).max(f64::MIN_POSITIVE);
    let mut v = vec![1.0 / n as f64; n];
    let mut shift = lambda + 1e-10 * scale * if lambda < 0.0 { -1.0 } else { 1.0 };
    for attempt in 0..4 {
        let mut shifted = a.clone();
        for i in 0..n {
            shifted[(i, i)] -= shift;
        }
        let mut ok = true;
        for _ in 0..6 {
            match solve_dense(&shifted, &v) {
                Some(x) if x.iter().all(|t| t.is_finite()) => {
                    let norm: f64 = x.iter().map(|t| t.abs()).sum();
                    if norm == 0.0 {
                        ok = false;
                        break;
                    }
                    v = x.iter().map(|t| t / norm).collect();
                }
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            let sum: f64 = v.iter().sum();
            if sum < 0.0 {
                v.iter_mut().for_each(|t| *t = -*t);
            }
            if nonneg {
                v.iter_mut().for_each(|t| *t = t.max(0.0));
                let s: f64 = v.iter().sum();
                if s > 0.0 {
                    v.iter_mut().for_each(|t| *t /= s);
                }
            }
            return Ok(v);
        }
        shift = lambda + 10f64.powi(-8 + 2 * attempt) * scale;
        v = vec![1.0 / n as f64; n];
    }
    Err(Error::numerical("inverse iteration", 24))
}

const RADIX: f64 = 2.0;

fn balance(a: &mut [Vec<f64>]) {
    let n = a.len();
    let sqrdx = RADIX * RADIX;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[j][i].abs();
                    r += a[i][j].abs();
                }
            }
            if c != 0.0 && r != 0.0 {
                let mut g = r / RADIX;
                let mut f = 1.0;
                let s = c + r;
                while c < g {
                    f *= RADIX;
                    c *= sqrdx;
                }
                g = r * RADIX;
                while c > g {
                    f /= RADIX;
                    c /= sqrdx;
                }
                if (c + r) / f < 0.95 * s {
                    done = false;
                    let g = 1.0 / f;
                    for j in 0..n {
                        a[i][j] *= g;
                    }
                    for row in a.iter_mut() {
                        row[i] *= f;
                    }
                }
            }
        }
    }
}

fn hessenberg(a: &mut [Vec<f64>]) {
    let n = a.len();
    for m in 1..n.saturating_sub(1) {
        let mut x: f64 = 0.0;
        let mut i = m;
        for j in m..n {
            if a[j][m - 1].abs() > x.abs() {
                x = a[j][m - 1];
                i = j;
            }
        }
        if i != m {
            for j in (m - 1)..n {
                let t = a[i][j];
                a[i][j] = a[m][j];
                a[m][j] = t;
            }
            for row in a.iter_mut() {
                row.swap(i, m);
            }
        }
        if x != 0.0 {
            for i in (m + 1)..n {
                let mut y = a[i][m - 1];
                if y != 0.0 {
                    y /= x;
                    a[i][m - 1] = y;
                    for j in m..n {
                        a[i][j] -= y * a[m][j];
                    }
                    for row in a.iter_mut() {
                        row[m] += y * row[i];
                    }
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..i.saturating_sub(1) {
            a[i][j] = 0.0;
        }
    }
}

fn sign(a: f64, b: f64) -> f64 {
    if b >= 0.0 {
        a.abs()
    } else {
        -a.abs()
    }
}

/// Eigenvalues of an upper Hessenberg matrix (destroyed in the process).
fn hqr(a: &mut [Vec<f64>]) -> Result<Vec<Eigenvalue>> {
    let n = a.len();
    let mut wr = vec![0.0; n];
    let mut wi = vec![0.0; n];
    let mut anorm = 0.0;
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            anorm += a[i][j].abs();
        }
    }
    let mut nn = n as isize - 1;
    let mut t = 0.0;
    let mut total_its = 0usize;
    while nn >= 0 {
        let mut its = 0;
        loop {
            let nu = nn as usize;
            // Smallest l such that the subdiagonal a[l][l-1] is negligible.
            let mut l = nu;
            while l >= 1 {
                let mut s = a[l - 1][l - 1].abs() + a[l][l].abs();
                if s == 0.0 {
                    s = anorm;
                }
                if a[l][l - 1].abs() + s == s {
                    a[l][l - 1] = 0.0;
                    break;
                }
                l -= 1;
            }
            let mut x = a[nu][nu];
            if l == nu {
                wr[nu] = x + t;
                wi[nu] = 0.0;
                nn -= 1;
                break;
            }
            let mut y = a[nu - 1][nu - 1];
            let mut w = a[nu][nu - 1] * a[nu - 1][nu];
            if l == nu - 1 {
                let p = 0.5 * (y - x);
                let q = p * p + w;
                let mut z = q.abs().sqrt();
                x += t;
                if q >= 0.0 {
                    z = p + sign(z, p);
                    wr[nu - 1] = x + z;
                    wr[nu] = x + z;
                    if z != 0.0 {
                        wr[nu] = x - w / z;
                    }
                    wi[nu - 1] = 0.0;
                    wi[nu] = 0.0;
                } else {
                    wr[nu - 1] = x + p;
                    wr[nu] = x + p;
                    wi[nu - 1] = -z;
                    wi[nu] = z;
                }
                nn -= 2;
                break;
            }
            if its == MAX_QR_SWEEPS {
                return Err(Error::numerical("Hessenberg QR iteration", total_its));
            }
            if its == 10 || its == 20 {
                // Exceptional shift.
                t += x;
                for (i, row) in a.iter_mut().enumerate().take(nu + 1) {
                    row[i] -= x;
                }
                let s = a[nu][nu - 1].abs() + a[nu - 1][nu - 2].abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            its += 1;
            total_its += 1;

            let (mut p, mut q, mut r, mut z);
            let mut m = nu - 2;
            loop {
                z = a[m][m];
                r = x - z;
                let s0 = y - z;
                p = (r * s0 - w) / a[m + 1][m] + a[m][m + 1];
                q = a[m + 1][m + 1] - z - r - s0;
                r = a[m + 2][m + 1];
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = a[m][m - 1].abs() * (q.abs() + r.abs());
                let v = p.abs() * (a[m - 1][m - 1].abs() + z.abs() + a[m + 1][m + 1].abs());
                if u + v == v {
                    break;
                }
                m -= 1;
            }
            for i in (m + 2)..=nu {
                a[i][i - 2] = 0.0;
                if i != m + 2 {
                    a[i][i - 3] = 0.0;
                }
            }
            let mut k = m;
            while k < nu {
                if k != m {
                    p = a[k][k - 1];
                    q = a[k + 1][k - 1];
                    r = 0.0;
                    if k != nu - 1 {
                        r = a[k + 2][k - 1];
                    }
                    x = p.abs() + q.abs() + r.abs();
                    if x != 0.0 {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                let s = sign((p * p + q * q + r * r).sqrt(), p);
                if s != 0.0 {
                    if k == m {
                        if l != m {
                            a[k][k - 1] = -a[k][k - 1];
                        }
                    } else {
                        a[k][k - 1] = -s * x;
                    }
                    p += s;
                    x = p / s;
                    y = q / s;
                    z = r / s;
                    q /= p;
                    r /= p;
                    for j in k..=nu {
                        let mut pp = a[k][j] + q * a[k + 1][j];
                        if k != nu - 1 {
                            pp += r * a[k + 2][j];
                            a[k + 2][j] -= pp * z;
                        }
                        a[k + 1][j] -= pp * y;
                        a[k][j] -= pp * x;
                    }
                    let mmin = if nu < k + 3 { nu } else { k + 3 };
                    for row in a.iter_mut().take(mmin + 1).skip(l) {
                        let mut pp = x * row[k] + y * row[k + 1];
                        if k != nu - 1 {
                            pp += z * row[k + 2];
                            row[k + 2] -= pp * r;
                        }
                        row[k + 1] -= pp * q;
                        row[k] -= pp;
                    }
                }
                k += 1;
            }
        }
    }
    Ok(wr
        .into_iter()
        .zip(wi)
        .map(|(re, im)| Eigenvalue { re, im })
        .collect())
}
