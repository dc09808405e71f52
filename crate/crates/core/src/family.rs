//! Matrix families and semigroup products.

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Products whose entries exceed this magnitude abort the run; the family
/// should be rescaled first.
pub const OVERFLOW_GUARD: f64 = 1e150;

#[derive(Clone, Debug, PartialEq)]
pub struct MatrixFamily {
    dim: usize,
    members: Vec<Matrix>,
    /// Product of all scale factors applied since construction.
    pub rescale: f64,
    pub transposed: bool,
    pub labels: Vec<String>,
}

impl MatrixFamily {
    pub fn new(members: Vec<Matrix>) -> Result<Self> {
        let Some(first) = members.first() else {
            return Err(Error::invalid("a family needs at least one matrix"));
        };
        let dim = first.rows();
        if dim == 0 {
            return Err(Error::invalid("matrices must have positive dimension"));
        }
        for (i, a) in members.iter().enumerate() {
            if a.rows() != dim || a.cols() != dim {
                return Err(Error::invalid(format!(
                    "member {} is {}x{}, expected {dim}x{dim}",
                    i + 1,
                    a.rows(),
                    a.cols()
                )));
            }
            if !a.is_finite() {
                return Err(Error::invalid(format!(
                    "member {} has non-finite entries",
                    i + 1
                )));
            }
        }
        let labels = (1..=members.len()).map(|i| format!("A{i}")).collect();
        Ok(Self {
            dim,
            members,
            rescale: 1.0,
            transposed: false,
            labels,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.members.len() {
            return Err(Error::invalid(format!(
                "{} labels for {} matrices",
                labels.len(),
                self.members.len()
            )));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Matrix] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &Matrix {
        &self.members[i]
    }

    pub fn is_nonnegative(&self) -> bool {
        self.members.iter().all(Matrix::is_nonnegative)
    }

    /// LSR entry points call this; JSR accepts signed families.
    pub fn require_nonnegative(&self) -> Result<()> {
        match self.members.iter().position(|a| !a.is_nonnegative()) {
            Some(i) => Err(Error::invalid(format!(
                "member {} has negative entries; the LSR solvers need a nonnegative family",
                i + 1
            ))),
            None => Ok(()),
        }
    }
}

/// A product `A_{w_1} A_{w_2} ... A_{w_k}` with its word (0-based indices)
/// and the cached prefix score.
#[derive(Clone, Debug)]
pub struct ProductNode {
    pub word: Vec<usize>,
    pub matrix: Matrix,
    pub q: f64,
}

impl ProductNode {
    /// The empty product.
    pub fn identity(dim: usize) -> Self {
        Self {
            word: Vec::new(),
            matrix: Matrix::identity(dim),
            q: 0.0,
        }
    }

    pub fn degree(&self) -> usize {
        self.word.len()
    }
}

/// Right-multiplies `node` by member `i`. The prefix score is copied; the
/// solver updates it.
pub fn extend_product(family: &MatrixFamily, node: &ProductNode, i: usize) -> Result<ProductNode> {
    if i >= family.len() {
        return Err(Error::invalid(format!(
            "index {} out of range for a family of {}",
            i + 1,
            family.len()
        )));
    }
    let matrix = if node.word.is_empty() {
        family.member(i).clone()
    } else {
        node.matrix.matmul(family.member(i))
    };
    let mut word = Vec::with_capacity(node.word.len() + 1);
    word.extend_from_slice(&node.word);
    word.push(i);
    let magnitude = matrix.max_abs();
    if magnitude > OVERFLOW_GUARD || !magnitude.is_finite() {
        return Err(Error::Overflow {
            degree: word.len(),
            magnitude,
        });
    }
    Ok(ProductNode {
        word,
        matrix,
        q: node.q,
    })
}

/// The left-to-right product along `word`.
pub fn materialize(family: &MatrixFamily, word: &[usize]) -> Result<ProductNode> {
    let mut node = ProductNode::identity(family.dim());
    for &i in word {
        node = extend_product(family, &node, i)?;
    }
    Ok(node)
}

pub fn rescale_family(family: &MatrixFamily, c: f64) -> Result<MatrixFamily> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::invalid(format!(
            "rescale factor must be positive, got {c}"
        )));
    }
    let mut out = family.clone();
    out.members = family.members.iter().map(|a| a.scaled(c)).collect();
    out.rescale *= c;
    Ok(out)
}

pub fn transpose_family(family: &MatrixFamily) -> MatrixFamily {
    let mut out = family.clone();
    out.members = family.members.iter().map(Matrix::transpose).collect();
    out.transposed = !family.transposed;
    out
}

/// `max_j (max_i a_ij / min_i a_ij)` for a strictly positive matrix.
pub fn embedded_cone_constant(a: &Matrix) -> Result<f64> {
    if !a.is_positive() {
        return Err(Error::invalid(
            "the embedded cone constant needs a strictly positive matrix",
        ));
    }
    Ok((0..a.cols())
        .map(|j| {
            let col = a.column(j);
            let hi = col.iter().copied().fold(f64::MIN, f64::max);
            let lo = col.iter().copied().fold(f64::MAX, f64::min);
            hi / lo
        })
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair() -> MatrixFamily {
        MatrixFamily::new(vec![
            Matrix::from_rows(&[[7.0, 0.0], [2.0, 3.0]]).unwrap(),
            Matrix::from_rows(&[[2.0, 4.0], [0.0, 8.0]]).unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn empty_and_mixed_families_rejected() {
        assert!(MatrixFamily::new(vec![]).is_err());
        let bad = MatrixFamily::new(vec![Matrix::identity(2), Matrix::identity(3)]);
        assert!(bad.is_err());
    }

    #[test]
    fn extend_from_identity_is_member() {
        let f = pair();
        let node = extend_product(&f, &ProductNode::identity(2), 1).unwrap();
        assert_eq!(node.matrix, *f.member(1));
        assert_eq!(node.word, vec![1]);
    }

    #[test]
    fn materialize_matches_manual_product() {
        let f = pair();
        let p = materialize(&f, &[0, 1, 0]).unwrap();
        let manual = f.member(0).matmul(f.member(1)).matmul(f.member(0));
        assert_eq!(p.matrix, manual);
        assert_eq!(p.degree(), 3);
    }

    #[test]
    fn overflow_guard_trips() {
        let f = MatrixFamily::new(vec![Matrix::from_rows(&[[1e80]]).unwrap()]).unwrap();
        let err = materialize(&f, &[0, 0]).unwrap_err();
        assert!(matches!(err, Error::Overflow { degree: 2, .. }));
    }

    #[test]
    fn rescale_and_transpose_metadata() {
        let f = pair();
        assert!(rescale_family(&f, 0.0).is_err());
        let g = rescale_family(&f, 2.0).unwrap();
        assert_eq!(g.rescale, 2.0);
        assert_eq!(g.member(0)[(0, 0)], 14.0);
        let back = rescale_family(&g, 0.5).unwrap();
        assert_eq!(back.members(), f.members());
        let t = transpose_family(&f);
        assert!(t.transposed);
        assert_eq!(t.member(0)[(0, 1)], 2.0);
        assert_eq!(transpose_family(&t), f);
    }

    #[test]
    fn cone_constant() {
        let a = Matrix::from_rows(&[[1.0, 2.0], [3.0, 4.0]]).unwrap();
        assert_eq!(embedded_cone_constant(&a).unwrap(), 3.0);
        let b = Matrix::from_rows(&[[1.0, 10.0], [1.0, 1.0]]).unwrap();
        assert_eq!(embedded_cone_constant(&b).unwrap(), 10.0);
        let same = Matrix::from_rows(&[[2.0, 5.0], [2.0, 5.0]]).unwrap();
        assert_eq!(embedded_cone_constant(&same).unwrap(), 1.0);
        assert!(embedded_cone_constant(&Matrix::identity(2)).is_err());
    }
}
