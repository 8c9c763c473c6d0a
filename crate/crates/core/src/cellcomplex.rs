//! Periodic polyhedral cell complexes on `L_R`, stored as cell classes of a
//! fundamental domain for the action of `Z^d` by translation.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::homology::{integer_homology, HomologyProfile};
use crate::exactmath::matrix::IntMatrix;
use crate::exactmath::polyhedron::Polyhedron;
use crate::exactmath::rational::{self, floor_i64, int, rat, RatVector, Rational};
use crate::lattice::LatticeEmbedding;

/// A facet relation: the facet is `cells[class]` translated by `offset`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Facet {
    pub class: usize,
    pub offset: Vec<i64>,
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellClass {
    pub dim: usize,
    /// Vertices of the canonical representative in lexicographic order; the
    /// first one lies in `[0,1)^d`.
    pub vertices: Vec<RatVector>,
    pub orientation: Vec<RatVector>,
    pub facets: Vec<Facet>,
}

impl CellClass {
    pub fn reference(&self) -> &RatVector {
        &self.vertices[0]
    }

    pub fn centroid(&self) -> RatVector {
        RatVector::centroid(&self.vertices)
    }
}

#[derive(Clone, Debug)]
pub struct PeriodicCellComplex {
    pub lattice: LatticeEmbedding,
    pub shift: RatVector,
    pub cells: Vec<CellClass>,
    index: BTreeMap<Vec<RatVector>, usize>,
}

// Translate so the lexicographically smallest point has integer part zero.
fn canonical(points: &[RatVector]) -> (Vec<RatVector>, Vec<i64>) {
    let mut pts = points.to_vec();
    pts.sort();
    let offset = pts[0].floor();
    let neg: Vec<i64> = offset.iter().map(|x| -x).collect();
    (pts.iter().map(|p| p.add_ints(&neg)).collect(), offset)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Direction basis of the affine hull of a sorted vertex list: edge vectors
/// from the first vertex, in lexicographic order, kept while independent.
fn orientation_basis(points: &[RatVector], k: usize) -> Vec<RatVector> {
    let base = &points[0];
    let mut diffs: Vec<RatVector> = points[1..].iter().map(|p| p - base).collect();
    diffs.sort();
    let mut basis: Vec<RatVector> = Vec::new();
    for v in diffs {
        if basis.len() == k {
            break;
        }
        let mut rows: Vec<Vec<Rational>> = basis.iter().map(|b| b.0.clone()).collect();
        rows.push(v.0.clone());
        if rational::rank(&rows) == rows.len() {
            basis.push(v);
        }
    }
    basis
}

// Coordinates of `w` in the (independent) basis; `w` must lie in its span.
fn coordinates(basis: &[RatVector], w: &RatVector) -> Vec<Rational> {
    let d = w.len();
    let a: Vec<Vec<Rational>> = (0..d).map(|i| basis.iter().map(|b| b[i].clone()).collect()).collect();
    rational::solve(&a, &w.0).expect("vector outside the cell's affine hull")
}

/// Facets of `conv(points)`, a polytope of affine dimension `k` whose vertex
/// set may include extra boundary points; returned as index sets.
fn facets_of(points: &[RatVector], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return Vec::new();
    }
    let mut sorted = points.to_vec();
    sorted.sort();
    let basis = orientation_basis(&sorted, k);
    let base = &points[0];
    let local: Vec<Vec<Rational>> = points.iter().map(|p| coordinates(&basis, &(p - base))).collect();
    let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
    if k == 1 {
        let lo = local.iter().map(|x| &x[0]).min().unwrap();
        let hi = local.iter().map(|x| &x[0]).max().unwrap();
        for t in [lo, hi] {
            out.insert((0..points.len()).filter(|&i| &local[i][0] == t).collect());
        }
        return out.into_iter().collect();
    }
    for combo in combinations(points.len(), k) {
        let p0 = &local[combo[0]];
        let rows: Vec<Vec<Rational>> =
            combo[1..].iter().map(|&i| local[i].iter().zip(p0).map(|(a, b)| a - b).collect()).collect();
        let ns = rational::nullspace(&rows, k);
        if ns.len() != 1 {
            continue;
        }
        let normal = &ns[0];
        let side: Vec<Rational> = local
            .iter()
            .map(|x| x.iter().zip(p0).zip(normal).map(|((a, b), c)| (a - b) * c).sum())
            .collect();
        let pos = side.iter().any(|s| s.is_positive());
        let neg = side.iter().any(|s| s.is_negative());
        if pos && neg {
            continue;
        }
        out.insert((0..points.len()).filter(|&i| side[i].is_zero()).collect());
    }
    out.into_iter().collect()
}

/// Every face of `conv(points)` (including itself) as sorted vertex lists.
/// Only points that survive as faces are actual vertices.
fn all_faces(points: &[RatVector], k: usize) -> BTreeSet<(usize, Vec<RatVector>)> {
    let mut seen: BTreeSet<(usize, Vec<RatVector>)> = BTreeSet::new();
    let mut queue: VecDeque<(usize, Vec<RatVector>)> = VecDeque::new();
    let mut start = points.to_vec();
    start.sort();
    start.dedup();
    queue.push_back((k, start));
    while let Some((dim, pts)) = queue.pop_front() {
        if !seen.insert((dim, pts.clone())) {
            continue;
        }
        for f in facets_of(&pts, dim) {
            let sub: Vec<RatVector> = f.iter().map(|&i| pts[i].clone()).collect();
            queue.push_back((dim - 1, sub));
        }
    }
    // Faces are vertex sets: restrict every face to the points that are 0-faces.
    let vertices: BTreeSet<RatVector> =
        seen.iter().filter(|(d, _)| *d == 0).map(|(_, p)| p[0].clone()).collect();
    seen.into_iter()
        .map(|(d, pts)| (d, pts.into_iter().filter(|p| vertices.contains(p)).collect()))
        .collect()
}

impl PeriodicCellComplex {
    pub fn dim(&self) -> usize {
        self.lattice.d
    }

    pub fn top_dim(&self) -> usize {
        self.cells.iter().map(|c| c.dim).max().unwrap_or(0)
    }

    pub fn counts(&self) -> Vec<usize> {
        let mut out = vec![0; self.top_dim() + 1];
        for c in &self.cells {
            out[c.dim] += 1;
        }
        out
    }

    pub fn cells_of_dim(&self, k: usize) -> Vec<usize> {
        (0..self.cells.len()).filter(|&i| self.cells[i].dim == k).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells.iter().map(|c| if c.dim % 2 == 0 { 1 } else { -1 }).sum()
    }

    /// Ambient point `iota(q) + s`.
    pub fn ambient(&self, q: &RatVector) -> RatVector {
        &self.lattice.apply_rat(q) + &self.shift
    }

    /// Class and offset of the translated cell with the given vertex set.
    pub fn locate(&self, points: &[RatVector]) -> Option<(usize, Vec<i64>)> {
        let (key, offset) = canonical(points);
        self.index.get(&key).map(|&i| (i, offset))
    }

    /// Vertex classes (with offsets) of the closure of a cell's representative.
    pub fn closure_vertices(&self, i: usize) -> Vec<(usize, Vec<i64>)> {
        self.cells[i]
            .vertices
            .iter()
            .map(|v| self.locate(core::slice::from_ref(v)).expect("vertex class missing"))
            .collect()
    }

    /// Two distinct relative-interior points of the representative (equal for vertices).
    pub fn interior_samples(&self, i: usize) -> (RatVector, RatVector) {
        let c = self.cells[i].centroid();
        let second = (&c + self.cells[i].reference()).scale(&rat(1, 2));
        (c, second)
    }

    /// Checks that the boundary of every boundary vanishes in the periodic chain complex.
    pub fn check_boundary(&self) -> Result<()> {
        for (i, c) in self.cells.iter().enumerate() {
            let mut acc: BTreeMap<(usize, Vec<i64>), i64> = BTreeMap::new();
            for f in &c.facets {
                for g in &self.cells[f.class].facets {
                    let off: Vec<i64> = f.offset.iter().zip(&g.offset).map(|(a, b)| a + b).collect();
                    *acc.entry((g.class, off)).or_default() += (f.sign * g.sign) as i64;
                }
            }
            if acc.values().any(|&x| x != 0) {
                return Err(Error::InvalidCell(format!("boundary of boundary of cell {} is nonzero", i)));
            }
        }
        Ok(())
    }

    fn assemble(lattice: LatticeEmbedding, shift: RatVector, classes: BTreeSet<(usize, Vec<RatVector>)>) -> Result<Self> {
        let mut index = BTreeMap::new();
        let mut cells = Vec::with_capacity(classes.len());
        for (i, (dim, verts)) in classes.into_iter().enumerate() {
            index.insert(verts.clone(), i);
            let orientation = orientation_basis(&verts, dim);
            cells.push(CellClass { dim, vertices: verts, orientation, facets: Vec::new() });
        }
        let mut cx = PeriodicCellComplex { lattice, shift, cells, index };
        for i in 0..cx.cells.len() {
            let cell = &cx.cells[i];
            let centroid = cell.centroid();
            let mut facets = Vec::new();
            for f in facets_of(&cell.vertices, cell.dim) {
                let pts: Vec<RatVector> = f.iter().map(|&j| cell.vertices[j].clone()).collect();
                let (class, offset) = cx.locate(&pts).ok_or_else(|| {
                    Error::InvalidCell(format!("facet {:?} of cell {} is not a listed cell", pts, i))
                })?;
                let outward = &RatVector::centroid(&pts) - &centroid;
                let mut columns = vec![outward];
                columns.extend(cx.cells[class].orientation.iter().cloned());
                let m: Vec<Vec<Rational>> = columns.iter().map(|w| coordinates(&cell.orientation, w)).collect();
                let det = rational::det(&m);
                let sign = if det.is_positive() { 1 } else { -1 };
                facets.push(Facet { class, offset, sign });
            }
            facets.sort();
            cx.cells[i].facets = facets;
        }
        Ok(cx)
    }
}

fn check_forms(l: &LatticeEmbedding) -> Result<()> {
    let rows = rational::to_rational_rows(&l.iota);
    if rational::rank(&rows) < l.d {
        let ns = rational::nullspace(&rows, l.d);
        return Err(Error::UncoveredDirection(format!("{}", RatVector(ns[0].clone()))));
    }
    Ok(())
}

struct Arrangement {
    forms: Vec<Vec<i64>>,
    shifts: Vec<Rational>,
    d: usize,
}

impl Arrangement {
    fn value(&self, i: usize, q: &RatVector) -> Rational {
        self.forms[i].iter().zip(q.iter()).map(|(&a, x)| x * int(a)).sum::<Rational>() + &self.shifts[i]
    }

    // A point on no hyperplane.
    fn generic_point(&self) -> RatVector {
        for m in 5i64.. {
            let q = RatVector((0..self.d).map(|k| rat(1, m.pow(k as u32 + 1))).collect());
            if (0..self.forms.len()).all(|i| !self.value(i, &q).is_integer()) {
                return q;
            }
        }
        unreachable!()
    }

    /// Vertices of the closed chamber `j_i - 1 <= a_i.q + s_i <= j_i`.
    fn chamber_vertices(&self, j: &[i64]) -> Vec<RatVector> {
        let mut rows: Vec<(Vec<Rational>, Rational)> = Vec::new();
        for (i, a) in self.forms.iter().enumerate() {
            let a: Vec<Rational> = a.iter().map(|&x| int(x)).collect();
            rows.push((a.clone(), int(j[i]) - &self.shifts[i]));
            rows.push((a.iter().map(|x| -x).collect(), -(int(j[i] - 1) - &self.shifts[i])));
        }
        let mut out: BTreeSet<RatVector> = BTreeSet::new();
        for combo in combinations(rows.len(), self.d) {
            let a: Vec<Vec<Rational>> = combo.iter().map(|&c| rows[c].0.clone()).collect();
            if rational::rank(&a) < self.d {
                continue;
            }
            let b: Vec<Rational> = combo.iter().map(|&c| rows[c].1.clone()).collect();
            let Some(x) = rational::solve(&a, &b) else { continue };
            let x = RatVector(x);
            if rows.iter().all(|(a, b)| &RatVector(a.clone()).dot(&x) <= b) {
                out.insert(x);
            }
        }
        out.into_iter().collect()
    }
}

/// The standard cell structure of the periodic arrangement
/// `{q : a_i . q + s_i in Z}` where `a_i` are the rows of `iota`.
pub fn build_periodic_complex(l: &LatticeEmbedding, shift: &RatVector) -> Result<PeriodicCellComplex> {
    if shift.len() != l.n {
        return Err(Error::DimensionMismatch { expected: l.n, found: shift.len() });
    }
    check_forms(l)?;
    let d = l.d;
    if d == 0 {
        let classes = BTreeSet::from([(0, vec![RatVector::zeros(0)])]);
        return PeriodicCellComplex::assemble(l.clone(), shift.clone(), classes);
    }
    let (forms, shifts): (Vec<Vec<i64>>, Vec<Rational>) = l
        .forms()
        .iter()
        .zip(shift.iter())
        .filter(|(a, _)| a.iter().any(|&x| x != 0))
        .map(|(a, s)| (a.clone(), s.clone()))
        .unzip();
    let arr = Arrangement { forms, shifts, d };

    let q0 = arr.generic_point();
    let j0: Vec<i64> = (0..arr.forms.len()).map(|i| rational::ceil_i64(&arr.value(i, &q0))).collect();
    let mut seen: BTreeMap<Vec<RatVector>, Vec<i64>> = BTreeMap::new();
    let mut queue: VecDeque<Vec<i64>> = VecDeque::from([j0]);
    let mut classes: BTreeSet<(usize, Vec<RatVector>)> = BTreeSet::new();
    while let Some(j) = queue.pop_front() {
        let verts = arr.chamber_vertices(&j);
        let (key, t) = canonical(&verts);
        if seen.contains_key(&key) {
            continue;
        }
        let j: Vec<i64> = j.iter().zip(&arr.forms).map(|(ji, a)| ji - a.iter().zip(&t).map(|(x, y)| x * y).sum::<i64>()).collect();
        seen.insert(key.clone(), j.clone());

        for (dim, face) in all_faces(&key, d) {
            let (fkey, _) = canonical(&face);
            classes.insert((dim, fkey));
        }
        let g = RatVector::centroid(&key);
        for f in facets_of(&key, d) {
            let pts: Vec<RatVector> = f.iter().map(|&i| key[i].clone()).collect();
            let c = RatVector::centroid(&pts);
            let out = &c - &g;
            let next: Vec<i64> = (0..arr.forms.len())
                .map(|i| {
                    let v = arr.value(i, &c);
                    if !v.is_integer() {
                        return j[i];
                    }
                    let k = floor_i64(&v);
                    let slope: Rational = arr.forms[i].iter().zip(out.iter()).map(|(&a, x)| x * int(a)).sum();
                    if slope.is_positive() {
                        k + 1
                    } else {
                        k
                    }
                })
                .collect();
            queue.push_back(next);
        }
    }
    PeriodicCellComplex::assemble(l.clone(), shift.clone(), classes)
}

/// A periodic complex from user cells. Each cell lists its points as
/// `(vertex index, offset)`; `vertices` are representatives in `[0,1)^d`.
pub fn build_custom_complex(
    l: &LatticeEmbedding,
    shift: &RatVector,
    vertices: &[RatVector],
    cells: &[(usize, Vec<(usize, Vec<i64>)>)],
) -> Result<PeriodicCellComplex> {
    let d = l.d;
    if shift.len() != l.n {
        return Err(Error::DimensionMismatch { expected: l.n, found: shift.len() });
    }
    for v in vertices {
        if v.len() != d {
            return Err(Error::DimensionMismatch { expected: d, found: v.len() });
        }
        if v.floor().iter().any(|&x| x != 0) {
            return Err(Error::InvalidCell(format!("vertex {} is outside [0,1)^d", v)));
        }
    }
    let mut classes: BTreeSet<(usize, Vec<RatVector>)> = BTreeSet::new();
    for v in vertices {
        classes.insert((0, vec![v.clone()]));
    }
    for (ci, (dim, pts)) in cells.iter().enumerate() {
        let mut points = Vec::with_capacity(pts.len());
        for (idx, off) in pts {
            let v = vertices
                .get(*idx)
                .ok_or_else(|| Error::InvalidCell(format!("cell {} refers to missing vertex {}", ci, idx)))?;
            if off.len() != d {
                return Err(Error::DimensionMismatch { expected: d, found: off.len() });
            }
            points.push(v.add_ints(off));
        }
        if points.is_empty() || rational::affine_dim(&points) != *dim {
            return Err(Error::InvalidCell(format!("cell {} does not span dimension {}", ci, dim)));
        }
        let faces = all_faces(&points, *dim);
        let corners: BTreeSet<&RatVector> = faces.iter().filter(|(k, _)| *k == 0).map(|(_, p)| &p[0]).collect();
        if let Some(p) = points.iter().find(|p| !corners.contains(p)) {
            return Err(Error::InvalidCell(format!("cell {} is not convex in position: {} is not a vertex", ci, p)));
        }
        for (k, face) in faces {
            classes.insert((k, canonical(&face).0));
        }
    }
    let listed: BTreeSet<&RatVector> = vertices.iter().collect();
    if let Some((_, p)) = classes.iter().find(|(k, p)| *k == 0 && !listed.contains(&p[0])) {
        return Err(Error::InvalidCell(format!("vertex {} is not listed", p[0])));
    }
    PeriodicCellComplex::assemble(l.clone(), shift.clone(), classes)
}

/// A finite cell complex with boundary matrices `boundaries[i]: C_{i+1} -> C_i`.
#[derive(Clone, Debug, Default)]
pub struct FiniteComplex {
    /// Per dimension, the cells as (class, offset).
    pub cells: Vec<Vec<(usize, Vec<i64>)>>,
    pub boundaries: Vec<IntMatrix>,
}

impl FiniteComplex {
    pub fn is_empty(&self) -> bool {
        self.cells.iter().all(Vec::is_empty)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn homology(&self) -> Result<HomologyProfile> {
        integer_homology(&self.counts(), &self.boundaries)
    }

    /// Reduced homology; the empty complex counts as acyclic here.
    pub fn reduced_homology(&self) -> Result<HomologyProfile> {
        if self.is_empty() {
            return Ok(HomologyProfile::default());
        }
        Ok(self.homology()?.reduced())
    }
}

/// The subcomplex of translates `sigma + v` with `label(sigma) + iota(v) <= u`.
pub fn sublevel_complex(
    c: &PeriodicCellComplex,
    labels: &[Vec<i64>],
    u: &[i64],
    window: Option<i64>,
) -> Result<FiniteComplex> {
    let l = &c.lattice;
    let top = c.top_dim();
    let mut cells: Vec<Vec<(usize, Vec<i64>)>> = vec![Vec::new(); top + 1];
    for (i, cell) in c.cells.iter().enumerate() {
        let mut p = Polyhedron::new(l.d);
        for (r, row) in l.forms().iter().enumerate() {
            p.push_int(row, int(u[r] - labels[i][r]));
        }
        for v in p.integer_points(window)? {
            cells[cell.dim].push((i, v));
        }
    }
    for list in cells.iter_mut() {
        list.sort();
    }
    let pos: Vec<BTreeMap<(usize, Vec<i64>), usize>> =
        cells.iter().map(|list| list.iter().cloned().enumerate().map(|(k, x)| (x, k)).collect()).collect();
    let mut boundaries = Vec::with_capacity(top);
    for k in 1..=top {
        let mut m = IntMatrix::zeros(cells[k - 1].len(), cells[k].len());
        for (col, (i, v)) in cells[k].iter().enumerate() {
            for f in &c.cells[*i].facets {
                let off: Vec<i64> = v.iter().zip(&f.offset).map(|(a, b)| a + b).collect();
                let row = *pos[k - 1].get(&(f.class, off)).ok_or_else(|| {
                    Error::Incompatible(String::from("a facet of a sublevel cell lies above the level"))
                })?;
                m.set(row, col, num_bigint::BigInt::from(f.sign));
            }
        }
        boundaries.push(m);
    }
    Ok(FiniteComplex { cells, boundaries })
}
