//! Brute-force enumeration over all products of a fixed degree.

use crate::antinorm::{eval_matrix, PolytopeAntinorm};
use crate::error::{Error, Result};
use crate::family::MatrixFamily;
use crate::matrix::Matrix;
use crate::spectral::spectral_radius;

pub const DEFAULT_ENUMERATION_CAP: u128 = 1 << 20;

fn word_count(m: usize, k: usize) -> u128 {
    (m as u128).checked_pow(k as u32).unwrap_or(u128::MAX)
}

/// Calls `f` on every product of degree `k`, words in lexicographic order,
/// each product associated left to right.
pub(crate) fn for_each_product<F>(
    family: &MatrixFamily,
    k: usize,
    cap: u128,
    mut f: F,
) -> Result<()>
where
    F: FnMut(&[usize], &Matrix) -> Result<()>,
{
    let m = family.len();
    let needed = word_count(m, k);
    if needed > cap {
        return Err(Error::EnumerationCap { needed, cap });
    }
    if k == 0 {
        return Ok(());
    }
    let mut word = Vec::with_capacity(k);
    let mut prefixes: Vec<Matrix> = Vec::with_capacity(k);
    fn rec<F: FnMut(&[usize], &Matrix) -> Result<()>>(
        family: &MatrixFamily,
        k: usize,
        word: &mut Vec<usize>,
        prefixes: &mut Vec<Matrix>,
        f: &mut F,
    ) -> Result<()> {
        for i in 0..family.len() {
            let p = match prefixes.last() {
                Some(prev) => prev.matmul(family.member(i)),
                None => family.member(i).clone(),
            };
            word.push(i);
            if word.len() == k {
                f(word, &p)?;
            } else {
                prefixes.push(p);
                rec(family, k, word, prefixes, f)?;
                prefixes.pop();
            }
            word.pop();
        }
        Ok(())
    }
    rec(family, k, &mut word, &mut prefixes, &mut f)
}

/// `min_{P ∈ Σ_k} a(P)^{1/k}` by enumeration.
pub fn alpha_k_oracle(family: &MatrixFamily, a: &PolytopeAntinorm, k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::invalid("degree must be at least 1"));
    }
    let mut best = f64::INFINITY;
    for_each_product(family, k, DEFAULT_ENUMERATION_CAP, |_, p| {
        best = best.min(eval_matrix(a, p)?.value.powf(1.0 / k as f64));
        Ok(())
    })?;
    Ok(best)
}

fn extreme_root(family: &MatrixFamily, k_max: usize, want_min: bool) -> Result<(f64, Vec<usize>)> {
    let mut best = if want_min {
        f64::INFINITY
    } else {
        f64::NEG_INFINITY
    };
    let mut best_word = Vec::new();
    for k in 1..=k_max {
        for_each_product(family, k, DEFAULT_ENUMERATION_CAP, |w, p| {
            let r = spectral_radius(p)?.powf(1.0 / k as f64);
            if (want_min && r < best) || (!want_min && r > best) {
                best = r;
                best_word = w.to_vec();
            }
            Ok(())
        })?;
    }
    Ok((best, best_word))
}

/// `min_{j ≤ k_max} min_{P ∈ Σ_j} ρ(P)^{1/j}`, an upper bound on the LSR,
/// with a minimizing word.
pub fn min_spectral_root(family: &MatrixFamily, k_max: usize) -> Result<(f64, Vec<usize>)> {
    extreme_root(family, k_max, true)
}

/// `max_{j ≤ k_max} max_{P ∈ Σ_j} ρ(P)^{1/j}`, a lower bound on the JSR,
/// with a maximizing word.
pub fn max_spectral_root(family: &MatrixFamily, k_max: usize) -> Result<(f64, Vec<usize>)> {
    extreme_root(family, k_max, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::illustrative_family;
    use crate::family::{materialize, rescale_family, transpose_family};

    #[test]
    fn degree_one_is_member_minimum() {
        let f = illustrative_family();
        let c = 6.009313489530125f64.recip();
        let g = rescale_family(&transpose_family(&f), c).unwrap();
        let a = PolytopeAntinorm::one_antinorm(2);
        let v = alpha_k_oracle(&g, &a, 1).unwrap();
        assert!((v - 0.8320).abs() < 5e-5);
    }

    #[test]
    fn single_matrix_power() {
        let a = Matrix::from_rows(&[[2.0, 1.0], [0.5, 3.0]]).unwrap();
        let f = MatrixFamily::new(vec![a.clone()]).unwrap();
        let one = PolytopeAntinorm::one_antinorm(2);
        let a3 = a.matmul(&a).matmul(&a);
        let want = crate::antinorm::one_antinorm_matrix(&a3).powf(1.0 / 3.0);
        assert!((alpha_k_oracle(&f, &one, 3).unwrap() - want).abs() < 1e-12);
    }

    #[test]
    fn enumeration_visits_every_word_once() {
        let f = crate::families::random_family(2, 2, 1.0, 3).unwrap();
        let mut seen = Vec::new();
        for_each_product(&f, 3, 100, |w, p| {
            assert_eq!(*p, materialize(&f, w).unwrap().matrix);
            seen.push(w.to_vec());
            Ok(())
        })
        .unwrap();
        assert_eq!(seen.len(), 8);
        let a = PolytopeAntinorm::one_antinorm(2);
        let brute = seen
            .iter()
            .map(|w| {
                crate::antinorm::one_antinorm_matrix(&materialize(&f, w).unwrap().matrix)
                    .powf(1.0 / 3.0)
            })
            .fold(f64::INFINITY, f64::min);
        assert!((alpha_k_oracle(&f, &a, 3).unwrap() - brute).abs() < 1e-9);
    }

    #[test]
    fn cap_is_enforced() {
        let f = crate::families::random_family(2, 3, 1.0, 3).unwrap();
        let err = for_each_product(&f, 5, 100, |_, _| Ok(())).unwrap_err();
        assert!(matches!(
            err,
            Error::EnumerationCap {
                needed: 243,
                cap: 100
            }
        ));
    }
}
