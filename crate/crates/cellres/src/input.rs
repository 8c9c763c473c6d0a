//! Lattice, grading and vector inputs.

use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use cellres_core::exactmath::matrix::IntMatrix;
use cellres_core::exactmath::rational::{parse_rational, RatVector, Rational};
use cellres_core::lattice::{embedding_from_basis, lattice_from_toric_embedding, lawrence_lift, LatticeEmbedding};
use serde::Deserialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    /// Columns of the basis (or the ray matrix itself) span `L`.
    Direct,
    /// The Lawrence lattice of a ray matrix.
    Lawrence,
    /// The kernel of `phi_star` pushed forward by `nu`.
    Toric,
}

/// One of the three lattice file shapes.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum LatticeFile {
    Basis { n: usize, basis: Vec<Vec<i64>> },
    Toric { phi_star: Vec<Vec<i64>>, nu: Vec<Vec<i64>> },
    Rays { rays: Vec<Vec<i64>>, mode: Option<String> },
}

fn rows_matrix(rows: &[Vec<i64>], what: &str) -> Result<IntMatrix> {
    let width = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != width) {
        bail!("{what}: rows of unequal length");
    }
    Ok(IntMatrix::from_rows(rows))
}

/// Reads JSON from a path, or parses the argument itself when it starts
/// with `{` or `[`.
pub fn read_json<T: for<'de> Deserialize<'de>>(arg: &str) -> Result<T> {
    let text = if arg.trim_start().starts_with(['{', '[']) {
        arg.to_string()
    } else {
        fs::read_to_string(Path::new(arg)).with_context(|| format!("reading {arg}"))?
    };
    serde_json::from_str(&text).with_context(|| format!("parsing {arg}"))
}

impl LatticeFile {
    pub fn embedding(&self, mode: Option<Mode>) -> Result<LatticeEmbedding> {
        match self {
            LatticeFile::Basis { n, basis } => {
                if let Some(m) = mode.filter(|m| *m != Mode::Direct) {
                    bail!("a basis file only supports direct mode, not {m:?}");
                }
                if basis.iter().any(|c| c.len() != *n) {
                    bail!("basis columns must have length n = {n}");
                }
                let m = if basis.is_empty() { IntMatrix::zeros(*n, 0) } else { IntMatrix::from_columns(*n, basis) };
                Ok(embedding_from_basis(m)?)
            }
            LatticeFile::Toric { phi_star, nu } => {
                if let Some(m) = mode.filter(|m| *m != Mode::Toric) {
                    bail!("a toric file only supports toric mode, not {m:?}");
                }
                Ok(lattice_from_toric_embedding(&rows_matrix(phi_star, "phi_star")?, &rows_matrix(nu, "nu")?)?)
            }
            LatticeFile::Rays { rays, mode: file_mode } => {
                let file_mode = match file_mode.as_deref() {
                    None => None,
                    Some("lawrence") => Some(Mode::Lawrence),
                    Some("direct") => Some(Mode::Direct),
                    Some(other) => bail!("unknown mode {other:?} in rays file"),
                };
                let nu = rows_matrix(rays, "rays")?;
                match mode.or(file_mode).unwrap_or(Mode::Lawrence) {
                    Mode::Lawrence => Ok(lawrence_lift(&nu)?),
                    Mode::Direct => Ok(embedding_from_basis(nu)?),
                    Mode::Toric => bail!("toric mode needs phi_star and nu"),
                }
            }
        }
    }
}

/// A grading matrix given as rows.
pub fn grading(arg: &str) -> Result<IntMatrix> {
    let rows: Vec<Vec<i64>> = read_json(arg)?;
    rows_matrix(&rows, "grading")
}

/// Comma-separated rationals; the token `eps` stands for `eps`.
pub fn rational_vector(s: &str, eps: &Rational) -> Result<RatVector> {
    s.split(',')
        .map(|t| match t.trim() {
            "eps" => Ok(eps.clone()),
            "-eps" => Ok(-eps.clone()),
            t => parse_rational(t).map_err(|e| anyhow!("{e}: {t:?}")),
        })
        .collect::<Result<Vec<_>>>()
        .map(RatVector)
}

pub fn rational(s: &str) -> Result<Rational> {
    parse_rational(s).map_err(|e| anyhow!("{e}: {s:?}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use cellres_core::exactmath::rational::{int, rat};

    #[test]
    fn file_shapes() {
        let f: LatticeFile = read_json(r#"{"n": 4, "basis": [[1,-1,-1,1]]}"#).unwrap();
        assert_eq!(f.embedding(None).unwrap().d, 1);
        let f: LatticeFile = read_json(r#"{"rays": [[1,0],[0,1],[-1,2],[0,-1]], "mode": "lawrence"}"#).unwrap();
        let l = f.embedding(None).unwrap();
        assert_eq!((l.n, l.d), (8, 2));
        assert_eq!(f.embedding(Some(Mode::Direct)).unwrap().n, 4);
        let f: LatticeFile = read_json(r#"{"phi_star": [[0,0]], "nu": [[1,0],[0,1],[-1,2],[0,-1]]}"#).unwrap();
        assert_eq!(f.embedding(None).unwrap().d, 2);
        assert!(read_json::<LatticeFile>(r#"{"n": 2}"#).is_err());
    }

    #[test]
    fn vectors_with_eps() {
        let v = rational_vector("-1/2, 0, eps", &rat(1, 100)).unwrap();
        assert_eq!(v.0, vec![rat(-1, 2), int(0), rat(1, 100)]);
        assert!(rational_vector("a", &int(0)).is_err());
    }
}
