//! Family and vertex files.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use specrad::families::{parse_random_spec, FamilyKind, FamilySpec};
use specrad::{Error, Matrix, MatrixFamily};

use crate::cli::FamilySource;

/// A number given either as a JSON number or as a decimal string.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum Number {
    Num(f64),
    Text(String),
}

impl Number {
    fn value(&self) -> Result<f64> {
        match self {
            Number::Num(x) => Ok(*x),
            Number::Text(s) => s
                .trim()
                .parse()
                .with_context(|| format!("not a number: {s:?}")),
        }
    }
}

#[derive(Deserialize)]
struct FamilyFileIn {
    dim: usize,
    matrices: Vec<Vec<Number>>,
    #[serde(default)]
    labels: Option<Vec<String>>,
}

#[derive(Serialize)]
pub struct FamilyFileOut<'a> {
    pub dim: usize,
    pub matrices: Vec<&'a [f64]>,
    pub labels: &'a [String],
}

#[derive(Deserialize)]
struct VertexFileIn {
    dim: usize,
    vertices: Vec<Vec<Number>>,
}

pub fn parse_family(text: &str) -> Result<MatrixFamily> {
    let file: FamilyFileIn = serde_json::from_str(text).context("malformed family file")?;
    if file.matrices.is_empty() {
        return Err(Error::InvalidInput("family file lists no matrices".into()).into());
    }
    let d = file.dim;
    let members = file
        .matrices
        .iter()
        .enumerate()
        .map(|(i, m)| {
            if m.len() != d * d {
                return Err(Error::InvalidInput(format!(
                    "matrix {} has {} entries, expected {}",
                    i + 1,
                    m.len(),
                    d * d
                ))
                .into());
            }
            let data = m.iter().map(Number::value).collect::<Result<Vec<_>>>()?;
            Ok(Matrix::new(d, d, data)?)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut family = MatrixFamily::new(members)?;
    if let Some(labels) = file.labels {
        family = family.with_labels(labels)?;
    }
    Ok(family)
}

pub fn family_json(family: &MatrixFamily) -> String {
    let out = FamilyFileOut {
        dim: family.dim(),
        matrices: family.members().iter().map(Matrix::as_slice).collect(),
        labels: &family.labels,
    };
    serde_json::to_string_pretty(&out).expect("family serializes") + "\n"
}

pub fn read_vertices(path: &Path) -> Result<(usize, Vec<Vec<f64>>)> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let file: VertexFileIn = serde_json::from_str(&text).context("malformed vertex file")?;
    let vs = file
        .vertices
        .iter()
        .map(|v| {
            if v.len() != file.dim {
                return Err(Error::InvalidInput(format!(
                    "vertex has {} entries, expected {}",
                    v.len(),
                    file.dim
                ))
                .into());
            }
            v.iter().map(Number::value).collect()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((file.dim, vs))
}

/// Builds the family and a short description for the run manifest.
pub fn load_family(
    source: &FamilySource,
    transpose: bool,
    rescale: Option<f64>,
) -> Result<(MatrixFamily, String)> {
    let (kind, desc) = if let Some(path) = &source.family {
        let text =
            fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        (
            FamilyKind::Explicit(parse_family(&text)?),
            format!("file:{}", path.display()),
        )
    } else if let Some(name) = &source.builtin {
        let kind: FamilyKind = name.parse()?;
        let desc = kind.to_string();
        (kind, desc)
    } else if let Some(spec) = &source.random {
        let kind = parse_random_spec(spec)?;
        let desc = kind.to_string();
        (kind, desc)
    } else {
        return Err(Error::InvalidInput("no family source given".into()).into());
    };
    let spec = FamilySpec {
        kind,
        transpose,
        rescale,
    };
    Ok((spec.build()?, desc))
}
