//! Labelings `psi: cells -> Z^n` of periodic complexes.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::cellcomplex::{build_custom_complex, build_periodic_complex, PeriodicCellComplex};
use crate::error::{Error, Result};
use crate::exactmath::rational::{ceil_i64, int, rat, RatVector, Rational};
use crate::fixtures;
use crate::lattice::{embedding_from_basis, LatticeEmbedding};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StratKind {
    Ceiling,
    Anderson,
    Lcm,
    FhP2,
}

impl fmt::Display for StratKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StratKind::Ceiling => "ceiling",
            StratKind::Anderson => "anderson",
            StratKind::Lcm => "lcm",
            StratKind::FhP2 => "fh-p2",
        })
    }
}

/// One label per cell class, for the class's canonical representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratification {
    pub kind: StratKind,
    pub shift: RatVector,
    pub labels: Vec<Vec<i64>>,
}

impl Stratification {
    /// Label of the translate `cells[class] + offset`.
    pub fn label_at(&self, l: &LatticeEmbedding, class: usize, offset: &[i64]) -> Vec<i64> {
        add(&self.labels[class], &l.apply(offset))
    }
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn join(a: &mut [i64], b: &[i64]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x = (*x).max(*y);
    }
}

fn ceil_vec(p: &RatVector) -> Vec<i64> {
    p.ceil()
}

/// Componentwise ceiling of the shifted ambient point over `q`.
pub fn ceiling_at(c: &PeriodicCellComplex, q: &RatVector) -> Vec<i64> {
    ceil_vec(&c.ambient(q))
}

/// Labels every cell by the ceiling of its shifted ambient image.
pub fn ceiling(c: &PeriodicCellComplex) -> Result<Stratification> {
    let labels = pointwise(c, |q| ceiling_at(c, q))?;
    Ok(Stratification { kind: StratKind::Ceiling, shift: c.shift.clone(), labels })
}

fn pointwise(c: &PeriodicCellComplex, f: impl Fn(&RatVector) -> Vec<i64>) -> Result<Vec<Vec<i64>>> {
    (0..c.cells.len())
        .map(|i| {
            let (a, b) = c.interior_samples(i);
            let la = f(&a);
            if f(&b) != la {
                return Err(Error::Incompatible(format!("label is not constant on the interior of cell {}", i)));
            }
            Ok(la)
        })
        .collect()
}

/// Higher-cell labels as componentwise maxima over closure vertices.
/// `vertex_labels` maps each vertex class id to its label.
pub fn lcm_from_vertices(c: &PeriodicCellComplex, vertex_labels: &BTreeMap<usize, Vec<i64>>) -> Stratification {
    let labels = lcm_labels(c, vertex_labels);
    Stratification { kind: StratKind::Lcm, shift: c.shift.clone(), labels }
}

fn lcm_labels(c: &PeriodicCellComplex, vertex_labels: &BTreeMap<usize, Vec<i64>>) -> Vec<Vec<i64>> {
    (0..c.cells.len())
        .map(|i| {
            let mut acc: Option<Vec<i64>> = None;
            for (w, off) in c.closure_vertices(i) {
                let lab = add(&vertex_labels[&w], &c.lattice.apply(&off));
                match acc.as_mut() {
                    Some(a) => join(a, &lab),
                    None => acc = Some(lab),
                }
            }
            acc.expect("cell without vertices")
        })
        .collect()
}

/// Vertex label `(floor a, -floor a)` with `a` the first block of the
/// shifted ambient vertex; higher cells take maxima.
pub fn anderson(c: &PeriodicCellComplex) -> Result<Stratification> {
    let m = c.lattice.lawrence_half().ok_or(Error::NotLawrence)?;
    let vertex_labels: BTreeMap<usize, Vec<i64>> = c
        .cells_of_dim(0)
        .into_iter()
        .map(|i| {
            let p = c.ambient(c.cells[i].reference());
            let fl: Vec<i64> = p.0[..m].iter().map(crate::exactmath::rational::floor_i64).collect();
            let mut lab = fl.clone();
            lab.extend(fl.iter().map(|x| -x));
            (i, lab)
        })
        .collect();
    let labels = lcm_labels(c, &vertex_labels);
    Ok(Stratification { kind: StratKind::Anderson, shift: c.shift.clone(), labels })
}

/// The shift `(w, -w)` with `w` zero except `eps` at position `coord` of the first block.
pub fn epsilon_shift(l: &LatticeEmbedding, eps: &Rational, coord: usize) -> Result<RatVector> {
    let m = l.lawrence_half().ok_or(Error::NotLawrence)?;
    if coord >= m {
        return Err(Error::DimensionMismatch { expected: m, found: coord + 1 });
    }
    let mut s = RatVector::zeros(l.n);
    s.0[coord] = eps.clone();
    s.0[coord + m] = -eps.clone();
    Ok(s)
}

/// Builds the standard complex for the epsilon shift and checks that halving
/// epsilon leaves the number of cell classes in each dimension unchanged.
pub fn epsilon_complex(l: &LatticeEmbedding, eps: &Rational, coord: usize) -> Result<PeriodicCellComplex> {
    let c = build_periodic_complex(l, &epsilon_shift(l, eps, coord)?)?;
    let half = build_periodic_complex(l, &epsilon_shift(l, &(eps / int(2)), coord)?)?;
    if c.counts() != half.counts() {
        return Err(Error::UnstableEpsilon(format!("{:?} vs {:?}", c.counts(), half.counts())));
    }
    Ok(c)
}

/// `b = max { t : sum_i ceil(p_i + t) <= 0 }`.
fn staircase_height(p: &[Rational]) -> Rational {
    let m = int(p.len() as i64);
    let centre = -p.iter().sum::<Rational>() / &m;
    let lo = &centre - int(1);
    let value = |t: &Rational| -> i64 { p.iter().map(|x| ceil_i64(&(x + t))).sum() };
    let mut best = lo.clone();
    for x in p {
        let k0 = ceil_i64(&(&lo + x));
        let k1 = ceil_i64(&(&centre + x));
        for k in k0..=k1 {
            let t = int(k) - x;
            if t >= lo && t <= centre && value(&t) <= 0 && t > best {
                best = t;
            }
        }
    }
    best
}

/// The staircase label of an ambient point `(p, -p)`: `ceil(gamma, -gamma)`
/// with `gamma = p + b (1, ..., 1)`.
pub fn fh_label(first_block: &[Rational]) -> Vec<i64> {
    let b = staircase_height(first_block);
    let gamma: Vec<Rational> = first_block.iter().map(|x| x + &b).collect();
    let mut out: Vec<i64> = gamma.iter().map(ceil_i64).collect();
    out.extend(gamma.iter().map(|x| ceil_i64(&-x)));
    out
}

/// The staircase labeling of a complex on a Lawrence lattice.
pub fn fh_labels(c: &PeriodicCellComplex) -> Result<Stratification> {
    let m = c.lattice.lawrence_half().ok_or(Error::NotLawrence)?;
    let labels = pointwise(c, |q| fh_label(&c.ambient(q).0[..m]))?;
    Ok(Stratification { kind: StratKind::FhP2, shift: c.shift.clone(), labels })
}

/// The rhombus complex on the Lawrence lattice of `P^2` obtained by projecting
/// the staircase surface, with its staircase labels.
pub fn fh_p2_complex() -> Result<(PeriodicCellComplex, Stratification)> {
    let l = embedding_from_basis(fixtures::p2_diagonal_basis())?;
    let third = rat(1, 3);
    let vertices = vec![
        RatVector::zeros(2),
        RatVector(vec![third.clone(), third.clone()]),
        RatVector(vec![rat(2, 3), rat(2, 3)]),
    ];
    let locate = |q: &RatVector| -> (usize, Vec<i64>) {
        let off = q.floor();
        let neg: Vec<i64> = off.iter().map(|x| -x).collect();
        let r = q.add_ints(&neg);
        (vertices.iter().position(|v| *v == r).expect("staircase vertex"), off)
    };
    let mut cells = Vec::new();
    for i in 0..3 {
        let mut pts = Vec::new();
        for a in [0, -1] {
            for b in [0, -1] {
                let mut p = [0i64; 3];
                let others: Vec<usize> = (0..3).filter(|&k| k != i).collect();
                p[others[0]] = a;
                p[others[1]] = b;
                let t = rat(p.iter().sum(), 3);
                let q = RatVector(vec![int(p[0]) - &t, int(p[2]) - &t]);
                pts.push(locate(&q));
            }
        }
        cells.push((2, pts));
    }
    let c = build_custom_complex(&l, &RatVector::zeros(6), &vertices, &cells)?;
    let s = fh_labels(&c)?;
    Ok((c, s))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub cell: usize,
    pub facet: usize,
    pub offset: Vec<i64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompatReport {
    /// Facet relations where the facet's label exceeds the cell's.
    pub violations: Vec<Violation>,
    /// Cells whose pointwise label differs between two interior samples.
    pub inconstant: Vec<usize>,
}

impl CompatReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty() && self.inconstant.is_empty()
    }
}

/// Closure monotonicity on every facet relation, and for pointwise kinds
/// constancy on sampled interior points.
pub fn check_compatible(c: &PeriodicCellComplex, s: &Stratification) -> CompatReport {
    let mut report = CompatReport::default();
    for (i, cell) in c.cells.iter().enumerate() {
        for f in &cell.facets {
            let lab = s.label_at(&c.lattice, f.class, &f.offset);
            if lab.iter().zip(&s.labels[i]).any(|(a, b)| a > b) {
                report.violations.push(Violation { cell: i, facet: f.class, offset: f.offset.clone() });
            }
        }
        let eval: Option<fn(&PeriodicCellComplex, &RatVector) -> Vec<i64>> = match s.kind {
            StratKind::Ceiling => Some(ceiling_at),
            StratKind::FhP2 => Some(|c: &PeriodicCellComplex, q: &RatVector| {
                let m = c.lattice.n / 2;
                fh_label(&c.ambient(q).0[..m])
            }),
            _ => None,
        };
        if let Some(f) = eval {
            let (a, b) = c.interior_samples(i);
            if f(c, &a) != s.labels[i] || f(c, &b) != s.labels[i] {
                report.inconstant.push(i);
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::matrix::IntMatrix;
    use crate::lattice::lawrence_lift;

    fn q(a: Rational, b: Rational) -> RatVector {
        RatVector(vec![a, b])
    }

    #[test]
    fn ceiling_on_point_embedding() {
        let l = embedding_from_basis(fixtures::hirzebruch_point_basis()).unwrap();
        let c = build_periodic_complex(&l, &RatVector::zeros(4)).unwrap();
        assert_eq!(ceiling_at(&c, &q(int(0), rat(1, 2))), [0, 1, 1, 0]);
        let s = ceiling(&c).unwrap();
        let origin = c.locate(&[RatVector::zeros(2)]).unwrap().0;
        assert_eq!(s.labels[origin], [0, 0, 0, 0]);
        assert!(check_compatible(&c, &s).ok());
    }

    #[test]
    fn anderson_vertex_labels() {
        let l = lawrence_lift(&fixtures::hirzebruch_rays(2)).unwrap();
        let c = build_periodic_complex(&l, &RatVector::zeros(8)).unwrap();
        let s = anderson(&c).unwrap();
        let (v, off) = c.locate(&[q(int(0), rat(1, 2))]).unwrap();
        assert_eq!(s.label_at(&l, v, &off), [0, 0, 1, -1, 0, 0, -1, 1]);
        let (v, off) = c.locate(&[q(int(1), rat(1, 2))]).unwrap();
        assert_eq!(s.label_at(&l, v, &off), [1, 0, 0, -1, -1, 0, 0, 1]);
        assert!(check_compatible(&c, &s).ok());
    }

    #[test]
    fn anderson_matches_lcm_of_its_vertices() {
        let l = lawrence_lift(&fixtures::hirzebruch_rays(2)).unwrap();
        let c = build_periodic_complex(&l, &RatVector::zeros(8)).unwrap();
        let a = anderson(&c).unwrap();
        let v: BTreeMap<usize, Vec<i64>> = c.cells_of_dim(0).into_iter().map(|i| (i, a.labels[i].clone())).collect();
        assert_eq!(lcm_from_vertices(&c, &v).labels, a.labels);
    }

    #[test]
    fn anderson_rejects_non_lawrence() {
        let l = embedding_from_basis(fixtures::hirzebruch_point_basis()).unwrap();
        let c = build_periodic_complex(&l, &RatVector::zeros(4)).unwrap();
        assert_eq!(anderson(&c), Err(Error::NotLawrence));
    }

    #[test]
    fn lcm_edge_is_join() {
        let l = embedding_from_basis(IntMatrix::identity(1)).unwrap();
        let verts = [RatVector(vec![int(0)]), RatVector(vec![rat(1, 2)])];
        let cells = [(1, vec![(0, vec![0]), (1, vec![0])]), (1, vec![(1, vec![0]), (0, vec![1])])];
        let c = build_custom_complex(&l, &RatVector::zeros(1), &verts, &cells).unwrap();
        let v0 = c.locate(&[verts[0].clone()]).unwrap().0;
        let v1 = c.locate(&[verts[1].clone()]).unwrap().0;
        let s = lcm_from_vertices(&c, &BTreeMap::from([(v0, vec![0]), (v1, vec![1])]));
        let e = c.locate(&[verts[0].clone(), verts[1].clone()]).unwrap().0;
        assert_eq!(s.labels[e], [1]);
    }

    #[test]
    fn forced_violation_is_reported() {
        let l = embedding_from_basis(fixtures::hirzebruch_point_basis()).unwrap();
        let c = build_periodic_complex(&l, &RatVector::zeros(4)).unwrap();
        let mut s = ceiling(&c).unwrap();
        let v = c.cells_of_dim(0)[0];
        s.labels[v][0] += 5;
        let r = check_compatible(&c, &s);
        assert!(!r.ok());
        assert!(r.violations.iter().all(|x| x.facet == v));
    }

    #[test]
    fn staircase_vertices() {
        let (c, s) = fh_p2_complex().unwrap();
        assert_eq!(c.counts(), [3, 6, 3]);
        assert_eq!(c.euler_characteristic(), 0);
        let mut vl: Vec<Vec<i64>> = c.cells_of_dim(0).into_iter().map(|i| s.labels[i].clone()).collect();
        vl.sort();
        assert_eq!(vl, [vec![0, -2, 0, 0, 2, 0], vec![0, -1, 0, 0, 1, 0], vec![0, 0, 0, 0, 0, 0]]);
        assert!(check_compatible(&c, &s).ok());
    }

    #[test]
    fn epsilon_shift_is_stable() {
        let l = lawrence_lift(&fixtures::hirzebruch_rays(2)).unwrap();
        let c = epsilon_complex(&l, &rat(1, 100), 2).unwrap();
        assert_eq!(c.counts(), [4, 8, 4]);
    }
}
