use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::matrix::IntMatrix;
use super::normal_form::snf;
use crate::error::{Error, Result};

/// One integral homology group: free rank plus torsion invariants.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomologyGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        if self.rank > 0 {
            write!(f, "Z^{}", self.rank)?;
            first = false;
        }
        for t in &self.torsion {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "Z/{}", t)?;
            first = false;
        }
        Ok(())
    }
}

/// Homology groups indexed by degree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomologyProfile {
    pub groups: Vec<HomologyGroup>,
}

impl HomologyProfile {
    /// Reduced homology: drops one free summand from `H_0` of a nonempty complex.
    pub fn reduced(&self) -> HomologyProfile {
        let mut groups = self.groups.clone();
        if let Some(h0) = groups.first_mut() {
            h0.rank = h0.rank.saturating_sub(1);
        }
        HomologyProfile { groups }
    }

    pub fn is_zero(&self) -> bool {
        self.groups.iter().all(HomologyGroup::is_zero)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.rank).collect()
    }
}

/// Homology of the chain complex `C_0 <- C_1 <- ... <- C_top`.
///
/// `dims[i]` is the rank of `C_i` and `boundaries[i]` is the map
/// `C_{i+1} -> C_i`, a `dims[i] x dims[i+1]` matrix.
pub fn integer_homology(dims: &[usize], boundaries: &[IntMatrix]) -> Result<HomologyProfile> {
    if boundaries.len() + 1 != dims.len().max(1) {
        return Err(Error::DimensionMismatch { expected: dims.len().saturating_sub(1), found: boundaries.len() });
    }
    for (i, b) in boundaries.iter().enumerate() {
        if b.rows() != dims[i] {
            return Err(Error::DimensionMismatch { expected: dims[i], found: b.rows() });
        }
        if b.cols() != dims[i + 1] {
            return Err(Error::DimensionMismatch { expected: dims[i + 1], found: b.cols() });
        }
    }
    for i in 1..boundaries.len() {
        let prod = boundaries[i - 1].mul(&boundaries[i]);
        if let Some((row, col)) = first_nonzero(&prod) {
            return Err(Error::NotAComplex { index: i, row, col });
        }
    }

    let factors: Vec<Vec<BigInt>> = boundaries.iter().map(|b| snf(b).invariant_factors()).collect();
    let groups = (0..dims.len())
        .map(|i| {
            let rank_out = if i == 0 { 0 } else { factors[i - 1].len() };
            let incoming = factors.get(i).map(Vec::as_slice).unwrap_or(&[]);
            HomologyGroup {
                rank: dims[i] - rank_out - incoming.len(),
                torsion: incoming.iter().filter(|x| !x.is_one()).cloned().collect(),
            }
        })
        .collect();
    Ok(HomologyProfile { groups })
}

fn first_nonzero(m: &IntMatrix) -> Option<(usize, usize)> {
    (0..m.rows()).flat_map(|r| (0..m.cols()).map(move |c| (r, c))).find(|&(r, c)| !m.get(r, c).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn circle() {
        let d1 = IntMatrix::from_rows(&[[-1, 1], [1, -1]]);
        let h = integer_homology(&[2, 2], &[d1]).unwrap();
        assert_eq!(h.ranks(), [1, 1]);
        assert!(h.groups.iter().all(|g| g.torsion.is_empty()));
    }

    #[test]
    fn point() {
        let h = integer_homology(&[1], &[]).unwrap();
        assert_eq!(h.ranks(), [1]);
        assert!(h.reduced().is_zero());
    }

    #[test]
    fn torus() {
        let h = integer_homology(&[1, 2, 1], &[IntMatrix::zeros(1, 2), IntMatrix::zeros(2, 1)]).unwrap();
        assert_eq!(h.ranks(), [1, 2, 1]);
    }

    #[test]
    fn projective_plane_has_two_torsion() {
        // one vertex, one loop a, one disc attached along a^2
        let h = integer_homology(&[1, 1, 1], &[IntMatrix::zeros(1, 1), IntMatrix::from_rows(&[[2]])]).unwrap();
        assert_eq!(h.groups[1].torsion, vec![BigInt::from(2)]);
        assert_eq!(h.ranks(), [1, 0, 0]);
    }

    #[test]
    fn rejects_non_complex() {
        let d1 = IntMatrix::from_rows(&[[1, 1]]);
        let d2 = IntMatrix::from_rows(&[[1], [0]]);
        assert!(matches!(integer_homology(&[1, 2, 1], &[d1, d2]), Err(Error::NotAComplex { .. })));
    }

    #[test]
    fn empty_complex() {
        let h = integer_homology(&[], &[]).unwrap();
        assert!(h.is_zero());
    }
}
