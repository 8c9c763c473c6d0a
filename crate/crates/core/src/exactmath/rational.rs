use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Index, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn floor_i64(x: &Rational) -> i64 {
    x.floor().to_integer().to_i64().expect("floor overflows i64")
}

pub fn ceil_i64(x: &Rational) -> i64 {
    x.ceil().to_integer().to_i64().expect("ceiling overflows i64")
}

/// Parses `"p/q"`, `"p"` or a decimal such as `"-0.5"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if let Some((whole, frac)) = t.split_once('.') {
        let neg = whole.starts_with('-');
        let digits = frac.len() as u32;
        let w = if whole.is_empty() || whole == "-" { BigInt::zero() } else { parse_int(whole)? };
        let f = if frac.is_empty() { BigInt::zero() } else { parse_int(frac)? };
        if f.is_negative() {
            return Err(Error::Parse(String::from(t)));
        }
        let den = num_traits::pow(BigInt::from(10), digits as usize);
        let mag = w.abs() * &den + f;
        let num = if neg { -mag } else { mag };
        return Ok(Rational::new(num, den));
    }
    Rational::from_str(t).map_err(|_| Error::Parse(String::from(t)))
}

fn parse_int(s: &str) -> Result<BigInt> {
    BigInt::from_str(s).map_err(|_| Error::Parse(String::from(s)))
}

/// A vector of exact rationals. Entries are kept in lowest terms with
/// positive denominators (guaranteed by `BigRational`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RatVector(pub Vec<Rational>);

impl RatVector {
    pub fn zeros(n: usize) -> Self {
        RatVector((0..n).map(|_| Rational::zero()).collect())
    }

    pub fn from_ints(v: &[i64]) -> Self {
        RatVector(v.iter().map(|&x| int(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn scale(&self, k: &Rational) -> RatVector {
        RatVector(self.0.iter().map(|x| x * k).collect())
    }

    pub fn add_ints(&self, v: &[i64]) -> RatVector {
        RatVector(self.0.iter().zip(v).map(|(x, &y)| x + int(y)).collect())
    }

    pub fn floor(&self) -> Vec<i64> {
        self.0.iter().map(floor_i64).collect()
    }

    pub fn ceil(&self) -> Vec<i64> {
        self.0.iter().map(ceil_i64).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    pub fn dot(&self, other: &RatVector) -> Rational {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// Mean of a nonempty list of points.
    pub fn centroid(points: &[RatVector]) -> RatVector {
        let n = points[0].len();
        let k = int(points.len() as i64);
        let mut acc = RatVector::zeros(n);
        for p in points {
            acc = &acc + p;
        }
        RatVector(acc.0.into_iter().map(|x| x / &k).collect())
    }
}

impl Index<usize> for RatVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl<'a> Add<&'a RatVector> for &'a RatVector {
    type Output = RatVector;
    fn add(self, rhs: &RatVector) -> RatVector {
        RatVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl<'a> Sub<&'a RatVector> for &'a RatVector {
    type Output = RatVector;
    fn sub(self, rhs: &RatVector) -> RatVector {
        RatVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Debug for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", x)?;
        }
        write!(f, ")")
    }
}

/// Lexicographic comparison of rational points.
pub fn lex_cmp(a: &RatVector, b: &RatVector) -> Ordering {
    a.0.cmp(&b.0)
}

pub fn to_rational_rows(m: &IntMatrix) -> Vec<Vec<Rational>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect()
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(a: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let s = &a[r][j] * &f;
                    a[i][j] -= s;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut a = rows.to_vec();
    rref(&mut a).len()
}

/// One solution of `a x = b` (free variables set to zero), or `None`.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x: Vec<Rational> = (0..cols).map(|_| Rational::zero()).collect();
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][cols].clone();
    }
    Some(x)
}

/// Basis of the right null space of `a` (`cols` gives the width when `a` has no rows).
pub fn nullspace(a: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut m = a.to_vec();
    let pivots = rref(&mut m);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v: Vec<Rational> = (0..cols).map(|_| Rational::zero()).collect();
        v[free] = Rational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Affine dimension of a nonempty point set.
pub fn affine_dim(points: &[RatVector]) -> usize {
    let base = &points[0];
    let diffs: Vec<Vec<Rational>> = points[1..].iter().map(|p| (p - base).0).collect();
    rank(&diffs)
}

/// Determinant of a square rational matrix.
pub fn det(a: &[Vec<Rational>]) -> Rational {
    let n = a.len();
    let mut m = a.to_vec();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else { return Rational::zero() };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= &m[c][c];
        for i in c + 1..n {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &m[c][c];
                for j in c..n {
                    let s = &m[c][j] * &f;
                    m[i][j] -= s;
                }
            }
        }
    }
    d
}

/// Smallest positive integer `k` with `k * v` integral.
pub fn common_denominator(v: &[Rational]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("-1/2").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("-0.5").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational(" 2/4 ").unwrap(), rat(1, 2));
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn floor_and_ceil_of_negative_halves() {
        assert_eq!(floor_i64(&rat(-1, 2)), -1);
        assert_eq!(ceil_i64(&rat(-1, 2)), 0);
        assert_eq!(ceil_i64(&rat(1, 2)), 1);
        assert_eq!(ceil_i64(&int(-3)), -3);
    }

    #[test]
    fn solve_and_nullspace() {
        let a = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert!(solve(&a, &[int(1), int(3)]).is_none());
        let x = solve(&a, &[int(1), int(2)]).unwrap();
        assert_eq!(&x[0] + &x[1] * int(2), int(1));
        let ns = nullspace(&a, 2);
        assert_eq!(ns.len(), 1);
        assert_eq!(&ns[0][0] + &ns[0][1] * int(2), int(0));
    }

    #[test]
    fn rational_det() {
        let a = vec![vec![rat(1, 2), int(1)], vec![int(1), int(4)]];
        assert_eq!(det(&a), int(1));
    }
}
