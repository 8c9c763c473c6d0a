//! Rational polyhedra `{x : A x <= b}` handled by Fourier-Motzkin elimination.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::rational::{ceil_i64, common_denominator, floor_i64, int, RatVector, Rational};
use crate::error::{Error, Result};

/// The inequality `a . x <= b`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Ineq {
    pub a: Vec<Rational>,
    pub b: Rational,
}

impl Ineq {
    pub fn new(a: Vec<Rational>, b: Rational) -> Self {
        Ineq { a, b }
    }

    // Scale so that the first nonzero coefficient has absolute value one.
    fn normalized(mut self) -> Self {
        if let Some(p) = self.a.iter().find(|x| !x.is_zero()).map(|x| x.abs()) {
            for x in self.a.iter_mut() {
                *x /= &p;
            }
            self.b /= &p;
        }
        self
    }

    fn slack(&self, x: &[Rational]) -> Rational {
        let lhs: Rational = self.a.iter().zip(x).map(|(a, v)| a * v).sum();
        &self.b - lhs
    }
}

#[derive(Clone, Debug, Default)]
pub struct Polyhedron {
    pub dim: usize,
    pub rows: Vec<Ineq>,
}

impl Polyhedron {
    pub fn new(dim: usize) -> Self {
        Polyhedron { dim, rows: Vec::new() }
    }

    pub fn push(&mut self, a: Vec<Rational>, b: Rational) {
        assert_eq!(a.len(), self.dim);
        self.rows.push(Ineq::new(a, b));
    }

    pub fn push_int(&mut self, a: &[i64], b: Rational) {
        self.push(a.iter().map(|&x| int(x)).collect(), b);
    }

    pub fn push_eq(&mut self, a: Vec<Rational>, b: Rational) {
        let na = a.iter().map(|x| -x).collect();
        let nb = -b.clone();
        self.push(a, b);
        self.push(na, nb);
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.rows.iter().all(|r| !r.slack(x).is_negative())
    }

    /// `proj[0]` is the fully eliminated constant system and `proj[k + 1]`
    /// constrains only `x_0..=x_k`.
    fn projections(&self) -> Vec<Vec<Ineq>> {
        let mut out = Vec::with_capacity(self.dim);
        let mut cur: Vec<Ineq> = dedup(self.rows.iter().cloned().map(Ineq::normalized));
        for k in (0..self.dim).rev() {
            out.push(cur.clone());
            cur = eliminate(&cur, k);
        }
        out.push(cur);
        out.reverse();
        out
    }

    /// A rational point of the polyhedron, if nonempty.
    pub fn feasible_point(&self) -> Option<Vec<Rational>> {
        let proj = self.projections();
        if proj[0].iter().any(|r| r.b.is_negative()) {
            return None;
        }
        let mut x: Vec<Rational> = Vec::with_capacity(self.dim);
        for k in 0..self.dim {
            let (lo, hi) = bounds(&proj[k + 1], &x, k)?;
            let v = match (lo, hi) {
                (Some(l), Some(h)) => (l + h) / int(2),
                (Some(l), None) => l,
                (None, Some(h)) => h,
                (None, None) => Rational::zero(),
            };
            x.push(v);
        }
        Some(x)
    }

    pub fn is_empty(&self) -> bool {
        self.feasible_point().is_none()
    }

    /// A nonzero `r` with `A r <= 0`, scaled to be integral, or `None` when bounded.
    pub fn recession_direction(&self) -> Option<Vec<Rational>> {
        for k in 0..self.dim {
            for s in [1i64, -1] {
                let mut cone = Polyhedron::new(self.dim);
                for r in &self.rows {
                    cone.push(r.a.clone(), Rational::zero());
                }
                let mut e: Vec<Rational> = (0..self.dim).map(|_| Rational::zero()).collect();
                e[k] = int(-s);
                cone.push(e, int(-1));
                if let Some(r) = cone.feasible_point() {
                    let den = Rational::from_integer(common_denominator(&r));
                    return Some(r.into_iter().map(|x| x * &den).collect());
                }
            }
        }
        None
    }

    /// All integer points. With `window = Some(w)` the search is clipped to
    /// `|x_i| <= w`; without a window an unbounded region is an error.
    pub fn integer_points(&self, window: Option<i64>) -> Result<Vec<Vec<i64>>> {
        let proj = self.projections();
        if proj[0].iter().any(|r| r.b.is_negative()) {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        let mut prefix: Vec<Rational> = Vec::with_capacity(self.dim);
        let mut ints: Vec<i64> = Vec::with_capacity(self.dim);
        self.enumerate(&proj, window, &mut prefix, &mut ints, &mut out)?;
        Ok(out)
    }

    fn enumerate(
        &self,
        proj: &[Vec<Ineq>],
        window: Option<i64>,
        prefix: &mut Vec<Rational>,
        ints: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) -> Result<()> {
        let k = prefix.len();
        if k == self.dim {
            out.push(ints.clone());
            return Ok(());
        }
        let Some((lo, hi)) = bounds(&proj[k + 1], prefix, k) else { return Ok(()) };
        let lo = match (lo, window) {
            (Some(l), Some(w)) => ceil_i64(&l).max(-w),
            (Some(l), None) => ceil_i64(&l),
            (None, Some(w)) => -w,
            (None, None) => return Err(self.unbounded()),
        };
        let hi = match (hi, window) {
            (Some(h), Some(w)) => floor_i64(&h).min(w),
            (Some(h), None) => floor_i64(&h),
            (None, Some(w)) => w,
            (None, None) => return Err(self.unbounded()),
        };
        for v in lo..=hi {
            prefix.push(int(v));
            ints.push(v);
            self.enumerate(proj, window, prefix, ints, out)?;
            prefix.pop();
            ints.pop();
        }
        Ok(())
    }

    fn unbounded(&self) -> Error {
        let dir = self.recession_direction().unwrap_or_default();
        Error::Unbounded(format!("{}", RatVector(dir)))
    }
}

// Bounds on x_k implied by `rows` once x_0..x_{k-1} are fixed to `prefix`.
// Returns None when some constraint is violated outright.
fn bounds(rows: &[Ineq], prefix: &[Rational], k: usize) -> Option<(Option<Rational>, Option<Rational>)> {
    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    for r in rows {
        let rest = &r.b - r.a[..k].iter().zip(prefix).map(|(a, x)| a * x).sum::<Rational>();
        let c = &r.a[k];
        if c.is_zero() {
            if rest.is_negative() {
                return None;
            }
        } else if c.is_positive() {
            let v = rest / c;
            if hi.as_ref().is_none_or(|h| &v < h) {
                hi = Some(v);
            }
        } else {
            let v = rest / c;
            if lo.as_ref().is_none_or(|l| &v > l) {
                lo = Some(v);
            }
        }
    }
    if let (Some(l), Some(h)) = (&lo, &hi) {
        if l > h {
            return None;
        }
    }
    Some((lo, hi))
}

fn eliminate(rows: &[Ineq], k: usize) -> Vec<Ineq> {
    let (mut pos, mut neg, mut keep) = (Vec::new(), Vec::new(), Vec::new());
    for r in rows {
        if r.a[k].is_positive() {
            pos.push(r);
        } else if r.a[k].is_negative() {
            neg.push(r);
        } else {
            keep.push(r.clone());
        }
    }
    for p in &pos {
        for n in &neg {
            let fp = -n.a[k].clone();
            let fn_ = p.a[k].clone();
            let a: Vec<Rational> = p.a.iter().zip(&n.a).map(|(x, y)| x * &fp + y * &fn_).collect();
            let b = &p.b * &fp + &n.b * &fn_;
            keep.push(Ineq::new(a, b).normalized());
        }
    }
    dedup(keep.into_iter())
}

// Drops duplicates and trivially true constant rows, keeping the tightest
// right-hand side among rows with equal left-hand sides.
fn dedup(rows: impl Iterator<Item = Ineq>) -> Vec<Ineq> {
    let mut best: alloc::collections::BTreeMap<Vec<Rational>, Rational> = Default::default();
    let mut infeasible = BTreeSet::new();
    for r in rows {
        if r.a.iter().all(Zero::is_zero) {
            if r.b.is_negative() {
                infeasible.insert(r);
            }
            continue;
        }
        match best.get_mut(&r.a) {
            Some(b) if *b <= r.b => {}
            Some(b) => *b = r.b,
            None => {
                best.insert(r.a, r.b);
            }
        }
    }
    let mut out: Vec<Ineq> = infeasible.into_iter().collect();
    out.extend(best.into_iter().map(|(a, b)| Ineq { a, b }));
    out
}

/// Unit coordinate vector as rationals.
pub fn unit(dim: usize, k: usize) -> Vec<Rational> {
    (0..dim).map(|i| if i == k { Rational::one() } else { Rational::zero() }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::rat;
    use alloc::vec;

    #[test]
    fn triangle_points() {
        // x >= 0, y >= 0, x + y <= 2
        let mut p = Polyhedron::new(2);
        p.push_int(&[-1, 0], int(0));
        p.push_int(&[0, -1], int(0));
        p.push_int(&[1, 1], int(2));
        let pts = p.integer_points(None).unwrap();
        assert_eq!(pts.len(), 6);
        assert!(p.recession_direction().is_none());
        assert!(p.contains(&p.feasible_point().unwrap()));
    }

    #[test]
    fn empty_thin_strip() {
        let mut p = Polyhedron::new(1);
        p.push_int(&[1], rat(2, 3));
        p.push_int(&[-1], rat(-1, 3));
        assert!(!p.is_empty());
        assert!(p.integer_points(None).unwrap().is_empty());
        p.push_int(&[1], rat(1, 4));
        assert!(p.is_empty());
    }

    #[test]
    fn unbounded_needs_window() {
        let mut p = Polyhedron::new(2);
        p.push_int(&[-1, 0], int(0));
        p.push_int(&[0, 1], int(0));
        p.push_int(&[0, -1], int(0));
        assert!(matches!(p.integer_points(None), Err(Error::Unbounded(_))));
        assert_eq!(p.integer_points(Some(3)).unwrap().len(), 4);
        assert_eq!(p.recession_direction().unwrap(), vec![int(1), int(0)]);
    }

    #[test]
    fn zero_dimensional() {
        let mut p = Polyhedron::new(0);
        assert_eq!(p.integer_points(None).unwrap(), vec![Vec::<i64>::new()]);
        p.push(vec![], int(-1));
        assert!(p.integer_points(None).unwrap().is_empty());
    }
}
