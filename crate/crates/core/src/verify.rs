//! Checks that a labeled complex gives a free resolution: pointedness,
//! acyclicity of sublevel complexes over a finite degree set, and a summary
//! certificate.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::cellcomplex::{sublevel_complex, PeriodicCellComplex};
use crate::error::Result;
use crate::exactmath::homology::HomologyProfile;
use crate::exactmath::polyhedron::Polyhedron;
use crate::exactmath::rational::{common_denominator, floor_i64, int, Rational};
use crate::lattice::{LatticeEmbedding, QuotientDegree, QuotientGrading};
use crate::rescomplex::{build_resolution, check_d_squared, minimality, MinimalityReport, SquareWitness};
use crate::stratify::{check_compatible, CompatReport, Stratification};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pointedness {
    pub pointed: bool,
    /// A nonzero element of `L` with nonnegative entries, when not pointed.
    pub witness: Option<Vec<i64>>,
}

/// Decides whether `L` meets the nonnegative orthant only at `0`.
pub fn pointedness_check(l: &LatticeEmbedding) -> Pointedness {
    if l.d == 0 {
        return Pointedness { pointed: true, witness: None };
    }
    let mut p = Polyhedron::new(l.d);
    let mut total = vec![0i64; l.d];
    for row in l.forms() {
        p.push_int(&row.iter().map(|x| -x).collect::<Vec<_>>(), int(0));
        for (t, x) in total.iter_mut().zip(row) {
            *t += x;
        }
    }
    p.push_eq(total.iter().map(|&x| int(x)).collect(), int(1));
    match p.feasible_point() {
        None => Pointedness { pointed: true, witness: None },
        Some(q) => {
            let den = Rational::from_integer(common_denominator(&q));
            let c: Vec<i64> = q.iter().map(|x| floor_i64(&(x * &den))).collect();
            Pointedness { pointed: false, witness: Some(l.apply(&c)) }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanFailure {
    pub degree: Vec<i64>,
    pub reduced: HomologyProfile,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub join_depth: usize,
    pub tested: usize,
    pub failures: Vec<ScanFailure>,
}

impl ScanReport {
    pub fn acyclic(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanOptions {
    pub join_depth: usize,
    /// Search window for sublevel complexes of non-pointed lattices.
    pub window: Option<i64>,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { join_depth: 2, window: None }
    }
}

fn join(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

/// Labels of all translates of cell classes by `{-1, 0, 1}^d`.
pub fn translate_labels(c: &PeriodicCellComplex, s: &Stratification) -> Vec<Vec<i64>> {
    let d = c.dim();
    let mut offsets: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..d {
        offsets = offsets
            .into_iter()
            .flat_map(|o| {
                [-1, 0, 1].into_iter().map(move |x| {
                    let mut o = o.clone();
                    o.push(x);
                    o
                })
            })
            .collect();
    }
    let mut out = BTreeSet::new();
    for class in 0..c.cells.len() {
        for off in &offsets {
            out.insert(s.label_at(&c.lattice, class, off));
        }
    }
    out.into_iter().collect()
}

/// Joins of up to `depth` translate labels, one representative per class
/// modulo `L` (the lexicographically smallest one found).
pub fn join_degrees(c: &PeriodicCellComplex, s: &Stratification, g: &QuotientGrading, depth: usize) -> Vec<Vec<i64>> {
    let base = translate_labels(c, s);
    let mut all: BTreeSet<Vec<i64>> = base.iter().cloned().collect();
    let mut level: BTreeSet<Vec<i64>> = all.clone();
    for _ in 1..depth {
        let mut next = BTreeSet::new();
        for a in &level {
            for b in &base {
                let j = join(a, b);
                if !all.contains(&j) {
                    next.insert(j);
                }
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    let mut reps: BTreeMap<QuotientDegree, Vec<i64>> = BTreeMap::new();
    for u in all {
        reps.entry(g.degree(&u)).or_insert(u);
    }
    let mut out: Vec<Vec<i64>> = reps.into_values().collect();
    out.sort();
    out
}

/// Reduced integral homology of the sublevel complex at each degree; a
/// degree fails when it is nonzero.
pub fn scan_degrees(
    c: &PeriodicCellComplex,
    s: &Stratification,
    degrees: &[Vec<i64>],
    window: Option<i64>,
) -> Result<Vec<ScanFailure>> {
    let mut failures = Vec::new();
    for u in degrees {
        let sub = sublevel_complex(c, &s.labels, u, window)?;
        let reduced = sub.reduced_homology()?;
        if !reduced.is_zero() {
            failures.push(ScanFailure { degree: u.clone(), reduced });
        }
    }
    failures.sort_by(|a, b| a.degree.cmp(&b.degree));
    Ok(failures)
}

pub fn acyclicity_scan(
    c: &PeriodicCellComplex,
    s: &Stratification,
    g: &QuotientGrading,
    opts: &ScanOptions,
) -> Result<ScanReport> {
    let degrees = join_degrees(c, s, g, opts.join_depth);
    let failures = scan_degrees(c, s, &degrees, opts.window)?;
    Ok(ScanReport { join_depth: opts.join_depth, tested: degrees.len(), failures })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub compatibility: CompatReport,
    pub d_squared: Option<SquareWitness>,
    pub pointedness: Pointedness,
    /// `None` when the lattice is not pointed and no window was given.
    pub scan: Option<ScanReport>,
    pub minimality: MinimalityReport,
}

impl Certificate {
    pub fn pass(&self) -> bool {
        self.compatibility.ok() && self.d_squared.is_none() && self.scan.as_ref().is_some_and(ScanReport::acyclic)
    }
}

pub fn resolution_certificate(
    c: &PeriodicCellComplex,
    s: &Stratification,
    g: &QuotientGrading,
    opts: &ScanOptions,
) -> Result<Certificate> {
    let compatibility = check_compatible(c, s);
    let pointedness = pointedness_check(&c.lattice);
    let f = if compatibility.violations.is_empty() { Some(build_resolution(c, s, g)?) } else { None };
    let d_squared = match &f {
        Some(f) => check_d_squared(f)?,
        None => None,
    };
    let scan = if pointedness.pointed || opts.window.is_some() { Some(acyclicity_scan(c, s, g, opts)?) } else { None };
    let minimality = match &f {
        Some(f) => minimality(f, c, s),
        None => MinimalityReport { algebraic: false, topological: false, unit_entries: Vec::new(), equal_labels: Vec::new() },
    };
    Ok(Certificate { compatibility, d_squared, pointedness, scan, minimality })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cellcomplex::build_periodic_complex;
    use crate::exactmath::matrix::IntMatrix;
    use crate::exactmath::rational::RatVector;
    use crate::fixtures;
    use crate::lattice::{embedding_from_basis, lawrence_lift, quotient_grading};
    use crate::stratify::ceiling;

    #[test]
    fn pointedness_examples() {
        let l = lawrence_lift(&fixtures::hirzebruch_rays(2)).unwrap();
        assert!(pointedness_check(&l).pointed);
        let l = embedding_from_basis(IntMatrix::from_columns(2, &[[1, 0]])).unwrap();
        let p = pointedness_check(&l);
        assert!(!p.pointed);
        assert_eq!(p.witness, Some(vec![1, 0]));
        let l = embedding_from_basis(fixtures::hirzebruch_point_basis()).unwrap();
        assert!(pointedness_check(&l).pointed);
    }

    #[test]
    fn ceiling_on_point_lattice_is_acyclic() {
        let l = embedding_from_basis(fixtures::hirzebruch_point_basis()).unwrap();
        let c = build_periodic_complex(&l, &RatVector::zeros(4)).unwrap();
        let s = ceiling(&c).unwrap();
        let g = quotient_grading(&l, None).unwrap();
        let r = acyclicity_scan(&c, &s, &g, &ScanOptions::default()).unwrap();
        assert!(r.acyclic() && r.tested > 0);
    }
}
