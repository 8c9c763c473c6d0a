//! The graded free complex of a labeled periodic complex, and the monomial
//! modules attached to it.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::cellcomplex::{build_periodic_complex, PeriodicCellComplex};
use crate::error::{Error, Result};
use crate::exactmath::polyhedron::Polyhedron;
use crate::exactmath::rational::{int, RatVector};
use crate::lattice::{LatticeEmbedding, QuotientGrading};
use crate::polynomial::{Poly, PolyMatrix};
use crate::stratify::{ceiling, Stratification};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    /// Cell class, for complexes built from a cell complex.
    pub cell: Option<usize>,
    /// `psi(sigma)`; empty for complexes entered by hand.
    pub label: Vec<i64>,
    /// The twist `a` in `S(a)`: the coarse degree of `-psi(sigma)`, or its
    /// quotient degree (free part then torsion residues) without a coarsening.
    pub twist: Vec<i64>,
}

/// `terms[i]` are the generators in homological index `i`;
/// `differentials[i]` maps index `i + 1` to index `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedFreeComplex {
    pub n: usize,
    pub terms: Vec<Vec<Generator>>,
    pub differentials: Vec<PolyMatrix>,
}

impl GradedFreeComplex {
    /// A complex given by twists and matrices, without cell data.
    pub fn from_parts(n: usize, twists: Vec<Vec<Vec<i64>>>, differentials: Vec<PolyMatrix>) -> Self {
        let terms = twists
            .into_iter()
            .map(|ts| ts.into_iter().map(|twist| Generator { cell: None, label: Vec::new(), twist }).collect())
            .collect();
        GradedFreeComplex { n, terms, differentials }
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.terms.iter().map(Vec::len).collect()
    }
}

pub fn twist_of(g: &QuotientGrading, label: &[i64]) -> Vec<i64> {
    let neg: Vec<i64> = label.iter().map(|x| -x).collect();
    match g.coarse(&neg) {
        Some(c) => c,
        None => {
            let q = g.degree(&neg);
            q.free.into_iter().chain(q.torsion).collect()
        }
    }
}

/// Entry `(tau', sigma')` is the sum over facets `tau + v` of `sigma` of
/// `eps * x^(psi(sigma) - psi(tau) - iota(v))`.
pub fn build_resolution(c: &PeriodicCellComplex, s: &Stratification, g: &QuotientGrading) -> Result<GradedFreeComplex> {
    let l = &c.lattice;
    let top = c.top_dim();
    let by_dim: Vec<Vec<usize>> = (0..=top).map(|k| c.cells_of_dim(k)).collect();
    let terms: Vec<Vec<Generator>> = by_dim
        .iter()
        .map(|ids| {
            ids.iter()
                .map(|&i| Generator { cell: Some(i), label: s.labels[i].clone(), twist: twist_of(g, &s.labels[i]) })
                .collect()
        })
        .collect();
    let mut differentials = Vec::with_capacity(top);
    for k in 1..=top {
        let row_of: BTreeMap<usize, usize> = by_dim[k - 1].iter().enumerate().map(|(r, &i)| (i, r)).collect();
        let mut m = PolyMatrix::zeros(by_dim[k - 1].len(), by_dim[k].len());
        for (col, &i) in by_dim[k].iter().enumerate() {
            for f in &c.cells[i].facets {
                let below = s.label_at(l, f.class, &f.offset);
                let exp: Vec<i64> = s.labels[i].iter().zip(&below).map(|(a, b)| a - b).collect();
                if exp.iter().any(|&x| x < 0) {
                    return Err(Error::Incompatible(format!(
                        "facet {} (offset {:?}) of cell {} has a larger label",
                        f.class, f.offset, i
                    )));
                }
                m.get_mut(row_of[&f.class], col).add_term(exp, BigInt::from(f.sign));
            }
        }
        differentials.push(m);
    }
    Ok(GradedFreeComplex { n: l.n, terms, differentials })
}

/// Position and value of a nonzero entry of some `d_i * d_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareWitness {
    pub index: usize,
    pub row: usize,
    pub col: usize,
    pub value: Poly,
}

/// `Ok(None)` when consecutive differentials compose to zero.
pub fn check_d_squared(f: &GradedFreeComplex) -> Result<Option<SquareWitness>> {
    for i in 1..f.differentials.len() {
        let (a, b) = (&f.differentials[i - 1], &f.differentials[i]);
        if a.cols != b.rows {
            return Err(Error::DimensionMismatch { expected: a.cols, found: b.rows });
        }
        let p = a.mul(b);
        for row in 0..p.rows {
            for col in 0..p.cols {
                if !p.get(row, col).is_zero() {
                    return Ok(Some(SquareWitness { index: i, row, col, value: p.get(row, col).clone() }));
                }
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalityReport {
    /// No differential entry has a nonzero constant term.
    pub algebraic: bool,
    /// No facet relation joins two cells with equal labels.
    pub topological: bool,
    /// `(index, row, col)` of entries with a constant term.
    pub unit_entries: Vec<(usize, usize, usize)>,
    /// `(cell, facet class, offset)` with `psi(facet + offset) = psi(cell)`.
    pub equal_labels: Vec<(usize, usize, Vec<i64>)>,
}

impl MinimalityReport {
    pub fn minimal(&self) -> bool {
        self.algebraic && self.topological
    }
}

pub fn minimality(f: &GradedFreeComplex, c: &PeriodicCellComplex, s: &Stratification) -> MinimalityReport {
    let mut unit_entries = Vec::new();
    for (i, m) in f.differentials.iter().enumerate() {
        for r in 0..m.rows {
            for col in 0..m.cols {
                if !m.get(r, col).constant_term().is_zero() {
                    unit_entries.push((i + 1, r, col));
                }
            }
        }
    }
    let mut equal_labels = Vec::new();
    for (i, cell) in c.cells.iter().enumerate() {
        for fa in &cell.facets {
            if s.label_at(&c.lattice, fa.class, &fa.offset) == s.labels[i] {
                equal_labels.push((i, fa.class, fa.offset.clone()));
            }
        }
    }
    MinimalityReport {
        algebraic: unit_entries.is_empty(),
        topological: equal_labels.is_empty(),
        unit_entries,
        equal_labels,
    }
}

/// Entries `(index, row, col)` having a monomial `x^a` with
/// `psi(sigma) - psi(tau) - a` outside `L`.
pub fn homogeneity_violations(f: &GradedFreeComplex, g: &QuotientGrading) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for (i, m) in f.differentials.iter().enumerate() {
        for r in 0..m.rows {
            for col in 0..m.cols {
                let (top, bottom) = (&f.terms[i + 1][col].label, &f.terms[i][r].label);
                for (a, _) in m.get(r, col).terms() {
                    let diff: Vec<i64> = top.iter().zip(bottom).zip(a).map(|((x, y), z)| x - y - z).collect();
                    if !g.degree(&diff).is_zero() {
                        out.push((i + 1, r, col));
                    }
                }
            }
        }
    }
    out
}

/// A point `c` with `iota(c) <= w`, i.e. `x^w = x^(w - iota c) * x^(iota c)`
/// with the first factor a monomial of `S`.
pub fn ml_witness(w: &[i64], l: &LatticeEmbedding, window: Option<i64>) -> Result<Option<Vec<i64>>> {
    let mut p = Polyhedron::new(l.d);
    for (row, &wi) in l.forms().iter().zip(w) {
        p.push_int(row, int(wi));
    }
    Ok(p.integer_points(window)?.into_iter().next())
}

/// Whether `x^w` lies in the module generated by `x^u`, `u` in `L`.
pub fn ml_membership(w: &[i64], l: &LatticeEmbedding, window: Option<i64>) -> Result<bool> {
    Ok(ml_witness(w, l, window)?.is_some())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ambient {
    /// Laurent exponents in `Z^n`.
    Laurent,
    /// Cosets in `Z^n / L`, each given by a representative.
    Cosets,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialModule {
    pub ambient: Ambient,
    pub generators: Vec<Vec<i64>>,
}

impl MonomialModule {
    /// Whether some generator divides `w` in the module's ambient.
    pub fn contains(&self, w: &[i64], l: &LatticeEmbedding, window: Option<i64>) -> Result<bool> {
        for u in &self.generators {
            if divides(self.ambient, u, w, l, window)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn divides(ambient: Ambient, u: &[i64], w: &[i64], l: &LatticeEmbedding, window: Option<i64>) -> Result<bool> {
    let diff: Vec<i64> = w.iter().zip(u).map(|(a, b)| a - b).collect();
    match ambient {
        Ambient::Laurent => Ok(diff.iter().all(|&x| x >= 0)),
        Ambient::Cosets => ml_membership(&diff, l, window),
    }
}

fn irredundant(
    ambient: Ambient,
    mut cands: Vec<Vec<i64>>,
    l: &LatticeEmbedding,
    g: &QuotientGrading,
    window: Option<i64>,
) -> Result<Vec<Vec<i64>>> {
    cands.sort();
    let mut distinct: Vec<Vec<i64>> = Vec::new();
    for u in cands {
        let dup = match ambient {
            Ambient::Laurent => distinct.contains(&u),
            Ambient::Cosets => distinct.iter().any(|w| g.same_class(w, &u)),
        };
        if !dup {
            distinct.push(u);
        }
    }
    let mut keep = Vec::new();
    for (i, u) in distinct.iter().enumerate() {
        let mut redundant = false;
        for (j, w) in distinct.iter().enumerate() {
            if i != j && divides(ambient, w, u, l, window)? {
                redundant = true;
                break;
            }
        }
        if !redundant {
            keep.push(u.clone());
        }
    }
    Ok(keep)
}

/// Irredundant generators of the module spanned by the vertex labels, up to `L`.
pub fn monomial_module_generators(
    c: &PeriodicCellComplex,
    s: &Stratification,
    g: &QuotientGrading,
    window: Option<i64>,
) -> Result<MonomialModule> {
    let cands = c.cells_of_dim(0).into_iter().map(|i| s.labels[i].clone()).collect();
    let generators = irredundant(Ambient::Cosets, cands, &c.lattice, g, window)?;
    Ok(MonomialModule { ambient: Ambient::Cosets, generators })
}

/// The vertex labels of one fundamental domain, irredundant in `Z^n`.
pub fn laurent_generators(c: &PeriodicCellComplex, s: &Stratification, g: &QuotientGrading) -> Result<MonomialModule> {
    let cands = c.cells_of_dim(0).into_iter().map(|i| s.labels[i].clone()).collect();
    let generators = irredundant(Ambient::Laurent, cands, &c.lattice, g, None)?;
    Ok(MonomialModule { ambient: Ambient::Laurent, generators })
}

/// Generators of the normalization over the semigroup ring: ceilings of the
/// vertices of the unshifted standard complex, up to `L`.
pub fn closure_generators(l: &LatticeEmbedding, g: &QuotientGrading, window: Option<i64>) -> Result<MonomialModule> {
    let c = build_periodic_complex(l, &RatVector::zeros(l.n))?;
    let s = ceiling(&c)?;
    monomial_module_generators(&c, &s, g, window)
}

// Backtracking state for the isomorphism search.
struct IsoSearch<'a> {
    f: &'a GradedFreeComplex,
    r: &'a GradedFreeComplex,
    slots: Vec<(usize, usize)>,
    map: Vec<Vec<Option<(usize, i64)>>>,
    used: Vec<Vec<bool>>,
}

impl IsoSearch<'_> {
    fn consistent(&self, i: usize, j: usize) -> bool {
        let (fj, sj) = self.map[i][j].unwrap();
        if i > 0 {
            let (df, dr) = (&self.f.differentials[i - 1], &self.r.differentials[i - 1]);
            for (row, m) in self.map[i - 1].iter().enumerate() {
                if let Some((fr, sr)) = m {
                    if &df.get(*fr, fj).scale(sr * sj) != dr.get(row, j) {
                        return false;
                    }
                }
            }
        }
        if i < self.f.differentials.len() {
            let (df, dr) = (&self.f.differentials[i], &self.r.differentials[i]);
            for (col, m) in self.map[i + 1].iter().enumerate() {
                if let Some((fc, sc)) = m {
                    if &df.get(fj, *fc).scale(sj * sc) != dr.get(j, col) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, k: usize) -> bool {
        if k == self.slots.len() {
            return true;
        }
        let (i, j) = self.slots[k];
        for cand in 0..self.f.terms[i].len() {
            if self.used[i][cand] || self.f.terms[i][cand].twist != self.r.terms[i][j].twist {
                continue;
            }
            self.used[i][cand] = true;
            for sign in [1, -1] {
                self.map[i][j] = Some((cand, sign));
                if self.consistent(i, j) && self.run(k + 1) {
                    return true;
                }
            }
            self.map[i][j] = None;
            self.used[i][cand] = false;
        }
        false
    }
}

/// Whether degree-preserving signed permutations of the generators carry
/// `f`'s differentials onto `r`'s exactly.
pub fn compare_graded_iso(f: &GradedFreeComplex, r: &GradedFreeComplex) -> bool {
    if f.n != r.n || f.ranks() != r.ranks() || f.differentials.len() != r.differentials.len() {
        return false;
    }
    for (a, b) in f.terms.iter().zip(&r.terms) {
        let mut x: Vec<&Vec<i64>> = a.iter().map(|g| &g.twist).collect();
        let mut y: Vec<&Vec<i64>> = b.iter().map(|g| &g.twist).collect();
        x.sort();
        y.sort();
        if x != y {
            return false;
        }
    }
    for (a, b) in f.differentials.iter().zip(&r.differentials) {
        if (a.rows, a.cols) != (b.rows, b.cols) {
            return false;
        }
    }
    let slots = f.terms.iter().enumerate().flat_map(|(i, t)| (0..t.len()).map(move |j| (i, j))).collect();
    let mut search = IsoSearch {
        f,
        r,
        slots,
        map: f.terms.iter().map(|t| vec![None; t.len()]).collect(),
        used: f.terms.iter().map(|t| vec![false; t.len()]).collect(),
    };
    search.run(0)
}

/// Multiplicity of each twist in each homological index.
pub fn betti_table(f: &GradedFreeComplex) -> BTreeMap<(usize, Vec<i64>), usize> {
    let mut out = BTreeMap::new();
    for (i, t) in f.terms.iter().enumerate() {
        for g in t {
            *out.entry((i, g.twist.clone())).or_insert(0) += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::lattice::{embedding_from_basis, lawrence_lift, quotient_grading};
    use crate::polynomial::VarNames;

    fn point_complex() -> (PeriodicCellComplex, Stratification, QuotientGrading) {
        let l = embedding_from_basis(fixtures::hirzebruch_point_basis()).unwrap();
        let c = build_periodic_complex(&l, &RatVector::zeros(4)).unwrap();
        let s = ceiling(&c).unwrap();
        let g = quotient_grading(&l, Some(fixtures::hirzebruch_pic())).unwrap();
        (c, s, g)
    }

    #[test]
    fn built_complex_is_a_complex() {
        let (c, s, g) = point_complex();
        let f = build_resolution(&c, &s, &g).unwrap();
        assert_eq!(f.ranks(), [2, 5, 3]);
        assert_eq!(check_d_squared(&f).unwrap(), None);
        assert!(homogeneity_violations(&f, &g).is_empty());
        let m = minimality(&f, &c, &s);
        assert!(!m.algebraic && !m.topological);
    }

    #[test]
    fn flipped_sign_breaks_d_squared() {
        let (c, s, g) = point_complex();
        let mut f = build_resolution(&c, &s, &g).unwrap();
        let e = f.differentials[0].get(0, 0).neg();
        *f.differentials[0].get_mut(0, 0) = e;
        assert!(check_d_squared(&f).unwrap().is_some());
    }

    #[test]
    fn iso_recovers_signed_permutation() {
        let (c, s, g) = point_complex();
        let f = build_resolution(&c, &s, &g).unwrap();
        assert!(compare_graded_iso(&f, &f));
        let mut r = f.clone();
        r.terms[1].swap(0, 1);
        let d0 = &mut r.differentials[0];
        for row in 0..d0.rows {
            let a = d0.get(row, 0).clone();
            let b = d0.get(row, 1).clone();
            *d0.get_mut(row, 0) = b;
            *d0.get_mut(row, 1) = a;
        }
        let d1 = &mut r.differentials[1];
        for col in 0..d1.cols {
            let a = d1.get(0, col).clone();
            let b = d1.get(1, col).clone();
            *d1.get_mut(0, col) = b.neg();
            *d1.get_mut(1, col) = a;
        }
        for row in 0..r.differentials[0].rows {
            let v = r.differentials[0].get(row, 0).neg();
            *r.differentials[0].get_mut(row, 0) = v;
        }
        assert!(compare_graded_iso(&f, &r));
        let mut bad = r.clone();
        bad.terms[0][0].twist = vec![9, 9];
        assert!(!compare_graded_iso(&f, &bad));
    }

    #[test]
    fn membership_examples() {
        let l = lawrence_lift(&fixtures::hirzebruch_rays(2)).unwrap();
        let v = VarNames::standard(8, true);
        let w = v.parse_monomial("x1*y1*x2*y2*x3*y4/(y3*x4)").unwrap();
        assert!(ml_membership(&w, &l, None).unwrap());
        assert!(ml_membership(&[0; 8], &l, None).unwrap());
        let w = v.parse_monomial("x3*y4/(y3*x4)").unwrap();
        assert!(!ml_membership(&w, &l, None).unwrap());
    }

    #[test]
    fn closure_of_trivial_and_p2() {
        let l = embedding_from_basis(crate::exactmath::matrix::IntMatrix::identity(1)).unwrap();
        let g = quotient_grading(&l, None).unwrap();
        assert_eq!(closure_generators(&l, &g, None).unwrap().generators, [vec![0]]);
        let l = lawrence_lift(&fixtures::p2_rays()).unwrap();
        let g = quotient_grading(&l, None).unwrap();
        assert_eq!(closure_generators(&l, &g, None).unwrap().generators, [vec![0; 6]]);
    }

    #[test]
    fn betti_of_zero_complex() {
        let f = GradedFreeComplex::from_parts(1, Vec::new(), Vec::new());
        assert!(betti_table(&f).is_empty());
    }
}
