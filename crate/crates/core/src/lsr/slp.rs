//! s.l.p. candidate identification.

use super::oracle::{for_each_product, DEFAULT_ENUMERATION_CAP};
use super::SolverReport;
use crate::error::Result;
use crate::family::MatrixFamily;
use crate::spectral::spectral_radius;

/// Relative tie tolerance between spectral roots of candidate products.
const TIE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlpMode {
    /// Enumerate every word of degree `l_slp`, up to `cap` words.
    EnumerateAll { cap: u128 },
    /// Use the products that attained the upper bound during the run.
    FromActive,
}

impl Default for SlpMode {
    fn default() -> Self {
        SlpMode::EnumerateAll {
            cap: DEFAULT_ENUMERATION_CAP,
        }
    }
}

/// Lexicographically smallest rotation.
pub fn canonical_rotation(word: &[usize]) -> Vec<usize> {
    let n = word.len();
    (0..n.max(1))
        .map(|s| {
            word[s.min(n)..]
                .iter()
                .chain(&word[..s.min(n)])
                .copied()
                .collect::<Vec<_>>()
        })
        .min()
        .unwrap_or_default()
}

pub(crate) fn canonical_candidates(words: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = words.iter().map(|w| canonical_rotation(w)).collect();
    out.sort();
    out.dedup();
    out
}

/// Minimizers of `ρ(P)^{1/l}` at `l = l_slp`, one canonical rotation each.
pub fn identify_slp_candidates(
    family: &MatrixFamily,
    report: &SolverReport,
    mode: SlpMode,
) -> Result<Vec<Vec<usize>>> {
    match mode {
        SlpMode::FromActive => Ok(canonical_candidates(&report.slp_witnesses)),
        SlpMode::EnumerateAll { cap } => {
            let l = report.metrics.l_slp.max(1);
            let mut scored: Vec<(Vec<usize>, f64)> = Vec::new();
            for_each_product(family, l, cap, |w, p| {
                scored.push((w.to_vec(), spectral_radius(p)?.powf(1.0 / l as f64)));
                Ok(())
            })?;
            let best = scored.iter().map(|(_, r)| *r).fold(f64::INFINITY, f64::min);
            let words: Vec<Vec<usize>> = scored
                .into_iter()
                .filter(|(_, r)| *r <= best + TIE * best)
                .map(|(w, _)| w)
                .collect();
            Ok(canonical_candidates(&words))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotations() {
        assert_eq!(canonical_rotation(&[1, 0, 0, 1, 0]), vec![0, 0, 1, 0, 1]);
        assert_eq!(canonical_rotation(&[2]), vec![2]);
        assert_eq!(canonical_rotation(&[]), Vec::<usize>::new());
        assert_eq!(
            canonical_candidates(&[vec![1, 0], vec![0, 1], vec![0, 0]]),
            vec![vec![0, 0], vec![0, 1]]
        );
    }
}
