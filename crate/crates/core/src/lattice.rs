//! Sublattices `L` of `Z^n` given by a basis, and the grading by `Z^n / L`.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactmath::matrix::IntMatrix;
use crate::exactmath::normal_form::{hnf, snf};
use crate::exactmath::rational::{self, int, RatVector, Rational};

/// The inclusion `iota: Z^d -> Z^n` whose columns form a basis of `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeEmbedding {
    pub n: usize,
    pub d: usize,
    pub iota: IntMatrix,
    pub saturated: bool,
    rows: Vec<Vec<i64>>,
}

impl LatticeEmbedding {
    fn from_checked(iota: IntMatrix) -> Self {
        let s = snf(&iota);
        let saturated = s.invariant_factors().iter().all(One::is_one);
        let rows = iota.to_i64_rows().expect("lattice entries must fit in i64");
        LatticeEmbedding { n: iota.rows(), d: iota.cols(), iota, saturated, rows }
    }

    /// The linear forms `q -> a_i . q` given by the rows of `iota`.
    pub fn forms(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// `iota(v)` for an integer vector `v`.
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.rows.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// The real extension of `iota` on rational points.
    pub fn apply_rat(&self, q: &RatVector) -> RatVector {
        RatVector(
            self.rows
                .iter()
                .map(|r| r.iter().zip(q.iter()).map(|(&a, x)| x * int(a)).sum())
                .collect(),
        )
    }

    /// Returns `v` with `iota(v) = u`, if `u` lies in `L`.
    pub fn preimage(&self, u: &[i64]) -> Option<Vec<i64>> {
        let a = rational::to_rational_rows(&self.iota);
        let b: Vec<Rational> = u.iter().map(|&x| int(x)).collect();
        let x = rational::solve(&a, &b)?;
        if !x.iter().all(|c| c.is_integer()) {
            return None;
        }
        let v: Vec<i64> = x.iter().map(rational::floor_i64).collect();
        (self.apply(&v) == u).then_some(v)
    }

    pub fn contains(&self, u: &[i64]) -> bool {
        self.preimage(u).is_some()
    }

    /// `Some(m)` when `n = 2m` and every basis vector has the form `(v, -v)`.
    pub fn lawrence_half(&self) -> Option<usize> {
        if !self.n.is_multiple_of(2) {
            return None;
        }
        let m = self.n / 2;
        let ok = (0..m).all(|i| self.rows[i].iter().zip(&self.rows[i + m]).all(|(a, b)| *a == -*b));
        ok.then_some(m)
    }
}

fn first_dependent_column(b: &IntMatrix) -> Option<usize> {
    (0..b.cols()).find(|&k| b.select_columns(&(0..=k).collect::<Vec<_>>()).rank() <= k)
}

/// Wraps a user basis; the columns are kept as given.
pub fn embedding_from_basis(b: IntMatrix) -> Result<LatticeEmbedding> {
    if let Some(column) = first_dependent_column(&b) {
        return Err(Error::RankDeficient { column });
    }
    Ok(LatticeEmbedding::from_checked(b))
}

/// `L = ker(phi_star)` pushed into `Z^n` by the ray matrix `nu` (rows are rays).
pub fn lattice_from_toric_embedding(phi_star: &IntMatrix, nu: &IntMatrix) -> Result<LatticeEmbedding> {
    if phi_star.cols() != nu.cols() {
        return Err(Error::DimensionMismatch { expected: nu.cols(), found: phi_star.cols() });
    }
    let kernel = hnf(phi_star).kernel();
    embedding_from_basis(nu.mul(&kernel))
}

/// The Lawrence lattice `{(v, -v)}` for a ray matrix `nu_y` (rows are rays).
pub fn lawrence_lift(nu_y: &IntMatrix) -> Result<LatticeEmbedding> {
    if let Some(column) = first_dependent_column(nu_y) {
        return Err(Error::RankDeficient { column });
    }
    Ok(LatticeEmbedding::from_checked(nu_y.vstack(&nu_y.neg())))
}

/// The saturation `(L tensor Q) ∩ Z^n`. Saturated input is returned unchanged.
pub fn saturate(l: &LatticeEmbedding) -> LatticeEmbedding {
    if l.saturated {
        return l.clone();
    }
    let perp = hnf(&l.iota.transpose()).kernel();
    let sat = hnf(&perp.transpose()).kernel();
    LatticeEmbedding::from_checked(sat)
}

/// A class in `Z^n / L`: free coordinates plus residues modulo the torsion factors.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuotientDegree {
    pub free: Vec<i64>,
    pub torsion: Vec<i64>,
}

impl QuotientDegree {
    pub fn is_zero(&self) -> bool {
        self.free.iter().chain(&self.torsion).all(|&x| x == 0)
    }
}

impl fmt::Display for QuotientDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.free.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", x)?;
        }
        if !self.torsion.is_empty() {
            write!(f, ";")?;
            for (i, x) in self.torsion.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", x)?;
            }
        }
        write!(f, ")")
    }
}

/// The surjection `eta: Z^n -> Z^n / L`, with an optional coarser grading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientGrading {
    pub free_rank: usize,
    pub torsion: Vec<i64>,
    pub eta_free: IntMatrix,
    pub eta_torsion: IntMatrix,
    pub coarsening: Option<IntMatrix>,
}

pub fn quotient_grading(l: &LatticeEmbedding, coarsening: Option<IntMatrix>) -> Result<QuotientGrading> {
    if let Some(g) = &coarsening {
        if g.cols() != l.n {
            return Err(Error::DimensionMismatch { expected: l.n, found: g.cols() });
        }
        let prod = g.mul(&l.iota);
        if let Some(column) = (0..prod.cols()).find(|&c| prod.column(c).iter().any(|x| !x.is_zero())) {
            return Err(Error::NotAnnihilating { column });
        }
    }
    let s = snf(&l.iota);
    let factors = s.invariant_factors();
    let tors_rows: Vec<usize> = (0..factors.len()).filter(|&i| !factors[i].is_one()).collect();
    let torsion = tors_rows.iter().map(|&i| factors[i].to_i64().expect("torsion factor overflows i64")).collect();
    let pt = s.p.transpose();
    let eta_torsion = pt.select_columns(&tors_rows).transpose();
    let eta_free = pt.select_columns(&(l.d..l.n).collect::<Vec<_>>()).transpose();
    Ok(QuotientGrading { free_rank: l.n - l.d, torsion, eta_free, eta_torsion, coarsening })
}

impl QuotientGrading {
    pub fn degree(&self, u: &[i64]) -> QuotientDegree {
        let free = self.eta_free.mul_vec_i64(u);
        let big: Vec<BigInt> = u.iter().map(|&x| BigInt::from(x)).collect();
        let torsion = self
            .eta_torsion
            .mul_vec(&big)
            .iter()
            .zip(&self.torsion)
            .map(|(x, &m)| x.mod_floor(&BigInt::from(m)).to_i64().unwrap())
            .collect();
        QuotientDegree { free, torsion }
    }

    /// Degree under the coarsening matrix, when one is set.
    pub fn coarse(&self, u: &[i64]) -> Option<Vec<i64>> {
        self.coarsening.as_ref().map(|g| g.mul_vec_i64(u))
    }

    /// Whether `u - w` lies in `L`.
    pub fn same_class(&self, u: &[i64], w: &[i64]) -> bool {
        let diff: Vec<i64> = u.iter().zip(w).map(|(a, b)| a - b).collect();
        self.degree(&diff).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use alloc::vec;

    #[test]
    fn saturation_flag() {
        let l = embedding_from_basis(IntMatrix::from_columns(4, &[[1, -1, -1, 1]])).unwrap();
        assert!(l.saturated && l.d == 1);
        let l = embedding_from_basis(IntMatrix::from_columns(2, &[[2, -2]])).unwrap();
        assert!(!l.saturated);
        let l = embedding_from_basis(fixtures::hirzebruch_point_basis()).unwrap();
        assert!(l.saturated && l.d == 2);
    }

    #[test]
    fn rejects_dependent_column() {
        let b = IntMatrix::from_columns(3, &[[1, 0, 1], [2, 0, 2]]);
        assert_eq!(embedding_from_basis(b), Err(Error::RankDeficient { column: 1 }));
    }

    #[test]
    fn toric_kernel_recovers_point_embedding() {
        let nu = fixtures::hirzebruch_rays(2);
        let l = lattice_from_toric_embedding(&IntMatrix::zeros(0, 2), &nu).unwrap();
        assert_eq!(l.iota, fixtures::hirzebruch_point_basis());
        let l = lattice_from_toric_embedding(&IntMatrix::identity(2), &nu).unwrap();
        assert_eq!(l.d, 0);
    }

    #[test]
    fn toric_kernel_is_annihilated() {
        let phi = IntMatrix::from_rows(&[[1, 0]]);
        let nu = IntMatrix::from_rows(&[[1, 0], [-1, 0], [0, 1], [0, -1]]);
        let l = lattice_from_toric_embedding(&phi, &nu).unwrap();
        assert_eq!(l.d, 1);
        let k = hnf(&phi).kernel();
        assert!(phi.mul(&k).is_zero());
        assert_eq!(nu.mul(&k), l.iota);
    }

    #[test]
    fn lawrence_matrices() {
        let l = lawrence_lift(&fixtures::hirzebruch_rays(2)).unwrap();
        assert_eq!(l.iota, fixtures::hirzebruch_diagonal_basis());
        assert_eq!(l.lawrence_half(), Some(4));
        let p1 = lawrence_lift(&IntMatrix::from_rows(&[[1], [-1]])).unwrap();
        assert_eq!(p1.iota, IntMatrix::from_columns(4, &[[1, -1, -1, 1]]));
        let p2 = lawrence_lift(&fixtures::p2_rays()).unwrap();
        let paper = IntMatrix::from_columns(6, &[[1, -1, 0, -1, 1, 0], [0, -1, 1, 0, 1, -1]]);
        let both = p2.iota.hstack(&paper);
        assert_eq!(both.rank(), 2);
        for c in 0..2 {
            let col: Vec<i64> = paper.column(c).iter().map(|x| x.to_i64().unwrap()).collect();
            assert!(p2.contains(&col));
        }
    }

    #[test]
    fn saturate_examples() {
        let l = embedding_from_basis(IntMatrix::from_columns(2, &[[2, -2]])).unwrap();
        let s = saturate(&l);
        assert!(s.saturated);
        assert!(s.contains(&[1, -1]));
        let l = embedding_from_basis(IntMatrix::from_columns(3, &[[2, 0, 0], [0, 3, 0]])).unwrap();
        let inv: Vec<BigInt> = snf(&l.iota).invariant_factors();
        assert_eq!(inv, vec![BigInt::from(1), BigInt::from(6)]);
        let s = saturate(&l);
        assert!(s.contains(&[1, 0, 0]) && s.contains(&[0, 1, 0]));
        assert_eq!(saturate(&s), s);
    }

    #[test]
    fn grading_of_point_embedding() {
        let l = embedding_from_basis(fixtures::hirzebruch_point_basis()).unwrap();
        let g = quotient_grading(&l, Some(fixtures::hirzebruch_pic())).unwrap();
        assert_eq!(g.coarse(&[0, 1, 0, 0]), Some(vec![-2, 1]));
        for c in [[1, 0], [0, 1], [3, -2]] {
            assert!(g.degree(&l.apply(&c)).is_zero());
        }
        let bad = IntMatrix::from_rows(&[[1, 0, 0, 0]]);
        assert_eq!(quotient_grading(&l, Some(bad)), Err(Error::NotAnnihilating { column: 0 }));
    }

    #[test]
    fn grading_free_and_torsion() {
        let l = embedding_from_basis(IntMatrix::from_columns(4, &[[1, -1, -1, 1]])).unwrap();
        let g = quotient_grading(&l, None).unwrap();
        assert_eq!((g.free_rank, g.torsion.len()), (3, 0));
        let l = embedding_from_basis(IntMatrix::from_columns(2, &[[2, -2]])).unwrap();
        let g = quotient_grading(&l, None).unwrap();
        assert_eq!(g.torsion, vec![2]);
        assert!(!g.same_class(&[1, -1], &[0, 0]));
        assert!(g.same_class(&[2, -2], &[0, 0]));
    }
}
