//! Bounds for the lower and joint spectral radius of finite families of
//! matrices that leave the nonnegative orthant invariant.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod antinorm;
pub mod error;
pub mod families;
pub mod family;
pub mod jsr;
pub mod lp;
pub mod lsr;
pub mod matrix;
pub mod spectral;

pub use error::{Error, Result};
pub use family::{MatrixFamily, ProductNode};
pub use matrix::Matrix;
