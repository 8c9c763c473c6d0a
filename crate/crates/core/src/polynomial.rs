//! Sparse Laurent polynomials with integer coefficients, plus rendering and
//! parsing in the variables `x1..xn` (or `x1..xm, y1..ym` for Lawrence lattices).

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn monomial(exp: Vec<i64>, coef: impl Into<BigInt>) -> Self {
        let mut p = Poly::zero();
        p.add_term(exp, coef.into());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exp: Vec<i64>, coef: BigInt) {
        if coef.is_zero() {
            return;
        }
        let e = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *e += coef;
        if e.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    /// Terms in increasing lexicographic order of exponents.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn scale(&self, k: i64) -> Poly {
        if k == 0 {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn constant_term(&self) -> BigInt {
        self.terms
            .iter()
            .find(|(e, _)| e.iter().all(|&x| x == 0))
            .map(|(_, c)| c.clone())
            .unwrap_or_default()
    }

    /// Whether every exponent is nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }
}

/// Display names of the ambient variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarNames {
    names: Vec<String>,
    // display order of variable indices
    order: Vec<usize>,
}

impl VarNames {
    /// `x1..xn`, or `x1..xm, y1..ym` interleaved by index when `lawrence` and `n = 2m`.
    pub fn standard(n: usize, lawrence: bool) -> Self {
        if lawrence && n.is_multiple_of(2) && n > 0 {
            let m = n / 2;
            let names = (1..=m).map(|i| format!("x{}", i)).chain((1..=m).map(|i| format!("y{}", i))).collect();
            let order = (0..m).flat_map(|i| [i, i + m]).collect();
            VarNames { names, order }
        } else {
            VarNames { names: (1..=n).map(|i| format!("x{}", i)).collect(), order: (0..n).collect() }
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    fn product(&self, exp: &[i64], sign: i64) -> Vec<String> {
        let mut out = Vec::new();
        for &i in &self.order {
            let e = exp[i] * sign;
            if e == 1 {
                out.push(self.names[i].clone());
            } else if e > 1 {
                out.push(format!("{}^{}", self.names[i], e));
            }
        }
        out
    }

    /// Renders a Laurent monomial such as `x3*y4/(y3*x4)`.
    pub fn monomial(&self, exp: &[i64]) -> String {
        let num = self.product(exp, 1);
        let den = self.product(exp, -1);
        let mut s = if num.is_empty() { String::from("1") } else { num.join("*") };
        match den.len() {
            0 => {}
            1 => {
                s.push('/');
                s.push_str(&den[0]);
            }
            _ => {
                let _ = write!(s, "/({})", den.join("*"));
            }
        }
        s
    }

    pub fn poly(&self, p: &Poly) -> String {
        if p.is_zero() {
            return String::from("0");
        }
        let mut s = String::new();
        for (k, (e, c)) in p.terms().enumerate() {
            let mono = if e.iter().all(|&x| x == 0) { None } else { Some(self.monomial(e)) };
            let abs = c.abs();
            if c.is_negative() {
                s.push('-');
            } else if k > 0 {
                s.push('+');
            }
            match mono {
                None => {
                    let _ = write!(s, "{}", abs);
                }
                Some(m) if abs.is_one() => s.push_str(&m),
                Some(m) => {
                    let _ = write!(s, "{}*{}", abs, m);
                }
            }
        }
        s
    }

    fn index_of(&self, name: &str) -> Result<usize> {
        self.names.iter().position(|n| n == name).ok_or_else(|| Error::Parse(name.to_string()))
    }

    // One factor `name` or `name^k`.
    fn factor(&self, f: &str, exp: &mut [i64], sign: i64) -> Result<()> {
        let (name, power) = match f.split_once('^') {
            Some((n, p)) => (n.trim(), i64::from_str(p.trim()).map_err(|_| Error::Parse(f.to_string()))?),
            None => (f.trim(), 1),
        };
        exp[self.index_of(name)?] += sign * power;
        Ok(())
    }

    /// Parses a Laurent monomial like `x1*y2^2/(y1*x4)` or `1`.
    pub fn parse_monomial(&self, s: &str) -> Result<Vec<i64>> {
        let mut exp = vec![0; self.len()];
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a, Some(b.trim().trim_start_matches('(').trim_end_matches(')'))),
            None => (s, None),
        };
        for f in num.split('*').map(str::trim).filter(|f| !f.is_empty() && *f != "1") {
            self.factor(f, &mut exp, 1)?;
        }
        if let Some(den) = den {
            for f in den.split('*').map(str::trim).filter(|f| !f.is_empty() && *f != "1") {
                self.factor(f, &mut exp, -1)?;
            }
        }
        Ok(exp)
    }

    /// Parses sums of signed terms `c*monomial`, e.g. `y1*x3-x1*y3` or `-1`.
    pub fn parse_poly(&self, s: &str) -> Result<Poly> {
        let mut p = Poly::zero();
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(Error::Parse(s.to_string()));
        }
        let mut terms: Vec<(i64, String)> = Vec::new();
        let mut cur = String::new();
        let mut sign = 1;
        for (i, ch) in t.chars().enumerate() {
            if (ch == '+' || ch == '-') && !cur.ends_with('^') {
                if !cur.is_empty() {
                    terms.push((sign, core::mem::take(&mut cur)));
                } else if i > 0 {
                    return Err(Error::Parse(s.to_string()));
                }
                sign = if ch == '-' { -1 } else { 1 };
            } else {
                cur.push(ch);
            }
        }
        terms.push((sign, cur));
        for (sign, body) in &terms {
            let body = body.as_str();
            if body.is_empty() {
                return Err(Error::Parse(s.to_string()));
            }
            let (coef, mono) = match body.split_once('*') {
                Some((c, rest)) if c.chars().all(|ch| ch.is_ascii_digit()) => (BigInt::from_str(c).unwrap(), rest),
                _ if body.chars().all(|ch| ch.is_ascii_digit()) => {
                    (BigInt::from_str(body).map_err(|_| Error::Parse(s.to_string()))?, "1")
                }
                _ => (BigInt::one(), body),
            };
            p.add_term(self.parse_monomial(mono)?, coef * *sign);
        }
        Ok(p)
    }
}

/// A dense matrix of polynomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PolyMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, entries: vec![Poly::zero(); rows * cols] }
    }

    pub fn get(&self, r: usize, c: usize) -> &Poly {
        &self.entries[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut Poly {
        &mut self.entries[r * self.cols + c]
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = PolyMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j).add(&a.mul(b));
                        *out.get_mut(i, j) = cur;
                    }
                }
            }
        }
        out
    }

    /// Parses rows of polynomial strings.
    pub fn parse(names: &VarNames, rows: &[&[&str]]) -> Result<PolyMatrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = PolyMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(Error::DimensionMismatch { expected: c, found: row.len() });
            }
            for (j, s) in row.iter().enumerate() {
                *m.get_mut(i, j) = names.parse_poly(s)?;
            }
        }
        Ok(m)
    }

    pub fn render(&self, names: &VarNames) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| names.poly(self.get(i, j))).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_laurent_monomials() {
        let v = VarNames::standard(8, true);
        assert_eq!(v.monomial(&[0, 0, 1, -1, 0, 0, -1, 1]), "x3*y4/(y3*x4)");
        assert_eq!(v.monomial(&[0; 8]), "1");
        assert_eq!(v.monomial(&[0, 0, 0, 0, 0, -1, 0, 0]), "1/y2");
        assert_eq!(v.monomial(&[2, 0, 0, 0, 0, 0, 0, 0]), "x1^2");
    }

    #[test]
    fn parse_round_trip() {
        let v = VarNames::standard(8, true);
        for s in ["x3*y4/(y3*x4)", "x1*y4/(y1*x4)", "1", "x1^2*y1"] {
            assert_eq!(v.monomial(&v.parse_monomial(s).unwrap()), s);
        }
        let p = v.parse_poly("y1*x3-x1*y3").unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(v.parse_poly("-1").unwrap(), Poly::monomial(vec![0; 8], -1));
        assert_eq!(v.parse_poly("0").unwrap(), Poly::zero());
        assert!(v.parse_poly("z9").is_err());
    }

    #[test]
    fn arithmetic() {
        let v = VarNames::standard(2, false);
        let a = v.parse_poly("x1-x2").unwrap();
        let b = v.parse_poly("x1+x2").unwrap();
        assert_eq!(a.mul(&b), v.parse_poly("x1^2-x2^2").unwrap());
        assert!(a.add(&a.neg()).is_zero());
        assert_eq!(v.parse_poly("3-2*x1").unwrap().constant_term(), BigInt::from(3));
    }
}
