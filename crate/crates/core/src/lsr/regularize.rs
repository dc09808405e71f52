//! Perturbation regularization `F_ε = F + ε Δ`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::engine::run_algorithm;
use super::{SolverConfig, SolverReport, Variant};
use crate::error::{Error, Result};
use crate::family::MatrixFamily;
use crate::matrix::Matrix;

/// `m` strictly positive `d × d` matrices with unit Frobenius norm.
pub fn perturbation_matrices(d: usize, m: usize, seed: u64) -> Vec<Matrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..m)
        .map(|_| {
            // 1 - U[0,1) lies in (0, 1].
            let data: Vec<f64> = (0..d * d).map(|_| 1.0 - rng.gen::<f64>()).collect();
            let norm = data.iter().map(|x| x * x).sum::<f64>().sqrt();
            Matrix::new(d, d, data.into_iter().map(|x| x / norm).collect()).unwrap()
        })
        .collect()
}

/// One run per `ε`, on `F + ε Δ` with the same seeded `Δ` throughout.
/// `epsilons` must be nonnegative and non-increasing.
pub fn regularized_lsr(
    family: &MatrixFamily,
    cfg: &SolverConfig,
    variant: Variant,
    epsilons: &[f64],
    seed: u64,
) -> Result<Vec<(f64, SolverReport)>> {
    if epsilons.iter().any(|e| !(*e >= 0.0) || !e.is_finite()) {
        return Err(Error::invalid(
            "perturbation sizes must be finite and nonnegative",
        ));
    }
    if epsilons.windows(2).any(|w| w[1] > w[0]) {
        return Err(Error::invalid(
            "perturbation sizes must be given in descending order",
        ));
    }
    let deltas = perturbation_matrices(family.dim(), family.len(), seed);
    epsilons
        .iter()
        .map(|&eps| {
            let mut perturbed = family.clone();
            if eps > 0.0 {
                let members = family
                    .members()
                    .iter()
                    .zip(&deltas)
                    .map(|(a, d)| a.add_scaled(eps, d))
                    .collect();
                perturbed = MatrixFamily::new(members)?;
                perturbed.rescale = family.rescale;
                perturbed.transposed = family.transposed;
                perturbed.labels = family.labels.clone();
            }
            log::debug!("regularized run at eps = {eps:e}");
            Ok((eps, run_algorithm(&perturbed, cfg, variant)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perturbations_are_positive_and_normalized() {
        for d in perturbation_matrices(3, 4, 11) {
            assert!(d.is_positive());
            assert!((d.frobenius_norm() - 1.0).abs() < 1e-14);
        }
        assert_eq!(
            perturbation_matrices(2, 2, 5),
            perturbation_matrices(2, 2, 5)
        );
    }

    #[test]
    fn zero_epsilon_matches_plain_run() {
        let f = crate::families::random_family(2, 2, 1.0, 9).unwrap();
        let cfg = SolverConfig {
            max_evals: 40,
            ..SolverConfig::default()
        };
        let plain = run_algorithm(&f, &cfg, Variant::A).unwrap();
        let reg = regularized_lsr(&f, &cfg, Variant::A, &[0.0], 1).unwrap();
        assert_eq!(reg[0].1.lower, plain.lower);
        assert_eq!(reg[0].1.upper, plain.upper);
        assert!(regularized_lsr(&f, &cfg, Variant::A, &[1e-7, 1e-5], 1).is_err());
    }
}
