//! Hermite and Smith normal forms over the integers.
//!
//! Pivoting is deterministic: the nonzero entry of smallest absolute value
//! wins, ties going to the lowest index (row-major for Smith).

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// Column Hermite normal form `h = a * u` with `u` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hnf {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// Row index of the pivot of each nonzero column of `h`, in column order.
    pub pivot_rows: Vec<usize>,
}

impl Hnf {
    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }

    /// Columns of `u` that `a` sends to zero; a basis of the integer kernel.
    pub fn kernel(&self) -> IntMatrix {
        let cols: Vec<usize> = (self.rank()..self.u.cols()).collect();
        self.u.select_columns(&cols)
    }
}

fn smallest_in_row(h: &IntMatrix, r: usize, from: usize) -> Option<usize> {
    (from..h.cols())
        .filter(|&c| !h.get(r, c).is_zero())
        .min_by(|&x, &y| h.get(r, x).abs().cmp(&h.get(r, y).abs()).then(x.cmp(&y)))
}

pub fn hnf(a: &IntMatrix) -> Hnf {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = IntMatrix::identity(n);
    let mut pivot_rows = Vec::new();
    let mut k = 0;
    for r in 0..m {
        if k == n {
            break;
        }
        loop {
            let Some(best) = smallest_in_row(&h, r, k) else { break };
            h.swap_cols(k, best);
            u.swap_cols(k, best);
            let mut reduced = true;
            for j in k + 1..n {
                if h.get(r, j).is_zero() {
                    continue;
                }
                let q = h.get(r, j).div_floor(h.get(r, k));
                h.sub_col_multiple(j, k, &q);
                u.sub_col_multiple(j, k, &q);
                if !h.get(r, j).is_zero() {
                    reduced = false;
                }
            }
            if reduced {
                break;
            }
        }
        if h.get(r, k).is_zero() {
            continue;
        }
        if h.get(r, k).is_negative() {
            h.negate_col(k);
            u.negate_col(k);
        }
        for c in 0..k {
            let q = h.get(r, c).div_floor(h.get(r, k));
            h.sub_col_multiple(c, k, &q);
            u.sub_col_multiple(c, k, &q);
        }
        pivot_rows.push(r);
        k += 1;
    }
    Hnf { h, u, pivot_rows }
}

/// Smith normal form `d = p * a * q` with `p`, `q` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub d: IntMatrix,
    pub p: IntMatrix,
    pub q: IntMatrix,
}

impl Snf {
    /// Nonzero diagonal entries, each dividing the next.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

fn smallest_in_block(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let v = d.get(i, j);
            if v.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if d.get(bi, bj).abs() <= v.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

pub fn snf(a: &IntMatrix) -> Snf {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut p = IntMatrix::identity(m);
    let mut q = IntMatrix::identity(n);
    for t in 0..m.min(n) {
        loop {
            let Some((i0, j0)) = smallest_in_block(&d, t) else {
                return Snf { d, p, q };
            };
            d.swap_rows(t, i0);
            p.swap_rows(t, i0);
            d.swap_cols(t, j0);
            q.swap_cols(t, j0);

            let mut clean = true;
            for i in t + 1..m {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let k = d.get(i, t).div_floor(d.get(t, t));
                d.sub_row_multiple(i, t, &k);
                p.sub_row_multiple(i, t, &k);
                clean &= d.get(i, t).is_zero();
            }
            for j in t + 1..n {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let k = d.get(t, j).div_floor(d.get(t, t));
                d.sub_col_multiple(j, t, &k);
                q.sub_col_multiple(j, t, &k);
                clean &= d.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            let pivot = d.get(t, t).clone();
            let offender = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !d.get(i, j).is_multiple_of(&pivot));
            match offender {
                Some((i, _)) => {
                    let minus_one = BigInt::from(-1);
                    d.sub_row_multiple(t, i, &minus_one);
                    p.sub_row_multiple(t, i, &minus_one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            p.negate_row(t);
        }
    }
    Snf { d, p, q }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn unimodular(m: &IntMatrix) -> bool {
        m.det().abs().is_one()
    }

    #[test]
    fn hnf_of_single_column_is_itself() {
        let a = IntMatrix::from_columns(4, &[[1, -1, -1, 1]]);
        let r = hnf(&a);
        assert_eq!(r.h, a);
        assert_eq!(r.u, IntMatrix::identity(1));
    }

    #[test]
    fn hnf_identity() {
        let r = hnf(&IntMatrix::identity(2));
        assert_eq!(r.h, IntMatrix::identity(2));
        assert_eq!(r.u, IntMatrix::identity(2));
    }

    #[test]
    fn hnf_defining_identities() {
        let a = IntMatrix::from_rows(&[[2, 1], [0, 1]]);
        let r = hnf(&a);
        assert_eq!(a.mul(&r.u), r.h);
        assert!(unimodular(&r.u));
        // first row [2 1] reduces to pivot gcd 1
        assert_eq!(r.h.get(0, 0), &BigInt::one());
        assert!(r.h.get(0, 1).is_zero());
        assert!(r.h.get(1, 1).is_positive());
    }

    #[test]
    fn hnf_kernel_of_wide_matrix() {
        let a = IntMatrix::from_rows(&[[1, 1, 1]]);
        let r = hnf(&a);
        let k = r.kernel();
        assert_eq!(k.cols(), 2);
        assert!(a.mul(&k).is_zero());
    }

    #[test]
    fn snf_diag_2_3() {
        let a = IntMatrix::from_rows(&[[2, 0], [0, 3]]);
        let s = snf(&a);
        assert_eq!(s.d, IntMatrix::from_rows(&[[1, 0], [0, 6]]));
        assert_eq!(s.p.mul(&a).mul(&s.q), s.d);
        assert!(unimodular(&s.p) && unimodular(&s.q));
    }

    #[test]
    fn snf_zero_matrix() {
        let a = IntMatrix::zeros(2, 3);
        let s = snf(&a);
        assert!(s.d.is_zero());
        assert_eq!(s.p, IntMatrix::identity(2));
        assert_eq!(s.q, IntMatrix::identity(3));
    }

    #[test]
    fn snf_primitive_column() {
        let a = IntMatrix::from_columns(4, &[[1, -1, -1, 1]]);
        let s = snf(&a);
        assert_eq!(s.invariant_factors(), [BigInt::one()]);
        assert_eq!(s.p.mul(&a).mul(&s.q), s.d);
    }
}
