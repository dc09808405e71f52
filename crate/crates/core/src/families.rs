//! Constructors for the benchmark families and seeded random families.
//!
//! Random families use `ChaCha8Rng::seed_from_u64(seed)` from `rand_chacha`
//! 0.3. For each matrix in order and each entry in row-major order, two
//! draws are taken: `u = gen::<f64>()` decides whether the entry is nonzero
//! (`u < density`), then `1.0 - gen::<f64>()` gives its value in `(0, 1]`.
//! Both draws happen for every entry so the value stream does not depend on
//! the sparsity pattern.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::family::{rescale_family, transpose_family, MatrixFamily};
use crate::matrix::Matrix;

/// `(A_s)_{ij} = 1` iff `i + 2 - s ≤ 2j ≤ i + r - s + 1` (1-based), for odd `r ≥ 3`.
pub fn euler_family(r: usize) -> Result<MatrixFamily> {
    if r < 3 || r.is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "Euler families need an odd r >= 3, got {r}"
        )));
    }
    let n = r - 1;
    let member = |s: usize| {
        let mut a = Matrix::zeros(n, n);
        for i in 1..=n {
            for j in 1..=n {
                if i + 2 <= 2 * j + s && 2 * j + s <= i + r + 1 {
                    a[(i - 1, j - 1)] = 1.0;
                }
            }
        }
        a
    };
    MatrixFamily::new(vec![member(1), member(2)])
}

pub fn pascal_rhombus_family() -> MatrixFamily {
    let a1 = Matrix::from_rows(&[
        [0.0, 1.0, 0.0, 0.0, 0.0],
        [1.0, 0.0, 2.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, 0.0, 2.0, 1.0],
    ])
    .unwrap();
    let a2 = Matrix::from_rows(&[
        [1.0, 0.0, 2.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 2.0, 1.0],
        [1.0, 1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0, 0.0],
    ])
    .unwrap();
    MatrixFamily::new(vec![a1, a2]).unwrap()
}

/// `{[[7,0],[2,3]], [[2,4],[0,8]]}`.
pub fn illustrative_family() -> MatrixFamily {
    MatrixFamily::new(vec![
        Matrix::from_rows(&[[7.0, 0.0], [2.0, 3.0]]).unwrap(),
        Matrix::from_rows(&[[2.0, 4.0], [0.0, 8.0]]).unwrap(),
    ])
    .unwrap()
}

/// Two upper-triangular 4x4 matrices whose lower spectral radius is 3.
pub fn critical_family() -> MatrixFamily {
    MatrixFamily::new(vec![
        Matrix::from_rows(&[
            [5.0, 1.0, 0.0, 0.0],
            [0.0, 5.0, 2.0, 0.0],
            [0.0, 0.0, 3.0, 1.0],
            [0.0, 0.0, 0.0, 2.0],
        ])
        .unwrap(),
        Matrix::from_rows(&[
            [1.0, 2.0, 3.0, 4.0],
            [0.0, 2.0, 5.0, 6.0],
            [0.0, 0.0, 3.0, 7.0],
            [0.0, 0.0, 0.0, 4.0],
        ])
        .unwrap(),
    ])
    .unwrap()
}

/// `(1/5) {[[3,0],[1,3]], [[3,-3],[0,-1]]}`, a signed pair for the JSR solvers.
pub fn signed_example_family() -> MatrixFamily {
    MatrixFamily::new(vec![
        Matrix::from_rows(&[[3.0, 0.0], [1.0, 3.0]])
            .unwrap()
            .scaled(0.2),
        Matrix::from_rows(&[[3.0, -3.0], [0.0, -1.0]])
            .unwrap()
            .scaled(0.2),
    ])
    .unwrap()
}

pub fn random_family(d: usize, m: usize, density: f64, seed: u64) -> Result<MatrixFamily> {
    if d == 0 || m == 0 {
        return Err(Error::invalid("random families need d >= 1 and m >= 1"));
    }
    if !(density > 0.0 && density <= 1.0) {
        return Err(Error::invalid(format!(
            "density must lie in (0, 1], got {density}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let members = (0..m)
        .map(|_| {
            let data = (0..d * d)
                .map(|_| {
                    let keep = rng.gen::<f64>() < density;
                    let value = 1.0 - rng.gen::<f64>();
                    if keep {
                        value
                    } else {
                        0.0
                    }
                })
                .collect();
            Matrix::new(d, d, data).unwrap()
        })
        .collect();
    MatrixFamily::new(members)
}

#[derive(Clone, Debug, PartialEq)]
pub enum FamilyKind {
    Explicit(MatrixFamily),
    Euler(usize),
    PascalRhombus,
    Illustrative,
    Critical,
    SignedExample,
    Random {
        d: usize,
        m: usize,
        density: f64,
        seed: u64,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub transpose: bool,
    pub rescale: Option<f64>,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind) -> Self {
        Self {
            kind,
            transpose: false,
            rescale: None,
        }
    }

    pub fn build(&self) -> Result<MatrixFamily> {
        let mut f = match &self.kind {
            FamilyKind::Explicit(f) => f.clone(),
            FamilyKind::Euler(r) => euler_family(*r)?,
            FamilyKind::PascalRhombus => pascal_rhombus_family(),
            FamilyKind::Illustrative => illustrative_family(),
            FamilyKind::Critical => critical_family(),
            FamilyKind::SignedExample => signed_example_family(),
            FamilyKind::Random {
                d,
                m,
                density,
                seed,
            } => random_family(*d, *m, *density, *seed)?,
        };
        if self.transpose {
            f = transpose_family(&f);
        }
        if let Some(c) = self.rescale {
            f = rescale_family(&f, c)?;
        }
        Ok(f)
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    /// Builtin names: `euler:R`, `pascal`, `illustrative`, `critical`, `signed`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(r) = s.strip_prefix("euler:") {
            let r = r
                .parse()
                .map_err(|_| Error::invalid(format!("bad Euler parameter {r:?}")))?;
            return Ok(FamilyKind::Euler(r));
        }
        match s {
            "pascal" => Ok(FamilyKind::PascalRhombus),
            "illustrative" => Ok(FamilyKind::Illustrative),
            "critical" => Ok(FamilyKind::Critical),
            "signed" => Ok(FamilyKind::SignedExample),
            _ => Err(Error::invalid(format!(
                "unknown builtin family {s:?} (expected euler:R, pascal, illustrative, critical or signed)"
            ))),
        }
    }
}

/// Parses `d,m,density,seed`.
pub fn parse_random_spec(s: &str) -> Result<FamilyKind> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || Error::invalid(format!("random spec must be d,m,density,seed; got {s:?}"));
    if parts.len() != 4 {
        return Err(bad());
    }
    Ok(FamilyKind::Random {
        d: parts[0].parse().map_err(|_| bad())?,
        m: parts[1].parse().map_err(|_| bad())?,
        density: parts[2].parse().map_err(|_| bad())?,
        seed: parts[3].parse().map_err(|_| bad())?,
    })
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyKind::Explicit(fam) => {
                write!(f, "explicit({}x{}, m={})", fam.dim(), fam.dim(), fam.len())
            }
            FamilyKind::Euler(r) => write!(f, "euler:{r}"),
            FamilyKind::PascalRhombus => f.write_str("pascal"),
            FamilyKind::Illustrative => f.write_str("illustrative"),
            FamilyKind::Critical => f.write_str("critical"),
            FamilyKind::SignedExample => f.write_str("signed"),
            FamilyKind::Random {
                d,
                m,
                density,
                seed,
            } => write!(f, "random:{d},{m},{density},{seed}"),
        }
    }
}
