use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::PolyQ;
use crate::{Error, Result};

/// Sparse bivariate polynomial in `u, v` over `Q`; keys are `(i, j)` for `u^i v^j`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BiPolyQ {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl BiPolyQ {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term(0, 0, c);
        p
    }

    pub fn u() -> Self {
        Self::term(1, 0, BigRational::one())
    }

    pub fn v() -> Self {
        Self::term(0, 1, BigRational::one())
    }

    pub fn term(i: u32, j: u32, c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    /// Binary form `sum_k c_k u^(n-k) v^k` from `[c_0, ..., c_n]`.
    pub fn from_form_coeffs(coeffs: &[BigRational]) -> Self {
        let n = coeffs.len().saturating_sub(1) as u32;
        let mut p = Self::zero();
        for (k, c) in coeffs.iter().enumerate() {
            p.add_term(n - k as u32, k as u32, c.clone());
        }
        p
    }

    pub fn from_form_i64(coeffs: &[i64]) -> Self {
        let cs: Vec<BigRational> = coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect();
        Self::from_form_coeffs(&cs)
    }

    /// Coefficients `[c_0, ..., c_n]` of a form of degree `n` (`c_k` at `u^(n-k) v^k`).
    pub fn form_coeffs(&self, n: u32) -> Vec<BigRational> {
        (0..=n).map(|k| self.coeff(n - k, k)).collect()
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigRational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    /// Degree if every monomial has the same total degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|(i, j)| i + j);
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut p = Self::zero();
        for (&(i, j), a) in &self.terms {
            p.add_term(i, j, a * c);
        }
        p
    }

    pub fn du(&self) -> Self {
        let mut p = Self::zero();
        for (&(i, j), a) in &self.terms {
            if i > 0 {
                p.add_term(i - 1, j, a * BigRational::from_integer(i.into()));
            }
        }
        p
    }

    pub fn dv(&self) -> Self {
        let mut p = Self::zero();
        for (&(i, j), a) in &self.terms {
            if j > 0 {
                p.add_term(i, j - 1, a * BigRational::from_integer(j.into()));
            }
        }
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(BigRational::one()), |acc, _| &acc * self)
    }

    pub fn eval(&self, u: &BigRational, v: &BigRational) -> BigRational {
        self.terms
            .iter()
            .map(|(&(i, j), c)| c * num_traits::pow(u.clone(), i as usize) * num_traits::pow(v.clone(), j as usize))
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// Exact evaluation at integer points of an integral polynomial.
    pub fn eval_int(&self, u: &BigInt, v: &BigInt) -> BigRational {
        self.eval(&BigRational::from_integer(u.clone()), &BigRational::from_integer(v.clone()))
    }

    /// Substitute univariate polynomials for `u` and `v`.
    pub fn substitute(&self, u: &PolyQ, v: &PolyQ) -> PolyQ {
        let mut acc = PolyQ::zero();
        for (&(i, j), c) in &self.terms {
            let t = &u.pow(i) * &v.pow(j);
            acc = &acc + &t.scale(c);
        }
        acc
    }
}

impl Add for &BiPolyQ {
    type Output = BiPolyQ;
    fn add(self, rhs: &BiPolyQ) -> BiPolyQ {
        let mut p = self.clone();
        for (&(i, j), c) in &rhs.terms {
            p.add_term(i, j, c.clone());
        }
        p
    }
}

impl Sub for &BiPolyQ {
    type Output = BiPolyQ;
    fn sub(self, rhs: &BiPolyQ) -> BiPolyQ {
        self + &(-rhs)
    }
}

impl Neg for &BiPolyQ {
    type Output = BiPolyQ;
    fn neg(self) -> BiPolyQ {
        self.scale(&-BigRational::one())
    }
}

impl Mul for &BiPolyQ {
    type Output = BiPolyQ;
    fn mul(self, rhs: &BiPolyQ) -> BiPolyQ {
        let mut p = BiPolyQ::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &rhs.terms {
                p.add_term(i + k, j + l, a * b);
            }
        }
        p
    }
}

impl fmt::Display for BiPolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<_> = self.terms.iter().collect();
        keys.sort_by_key(|(k, _)| std::cmp::Reverse((k.0 + k.1, k.0)));
        let parts: Vec<String> = keys
            .into_iter()
            .map(|(&(i, j), c)| {
                let mut s = c.to_string();
                if i > 0 {
                    s += &if i == 1 { "*u".into() } else { format!("*u^{i}") };
                }
                if j > 0 {
                    s += &if j == 1 { "*v".into() } else { format!("*v^{j}") };
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for BiPolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPolyQ({self})")
    }
}

/// Discriminant of an integral binary cubic `a u^3 + b u^2 v + c u v^2 + d v^3`.
pub fn binary_form_disc(form: &BiPolyQ) -> Result<BigInt> {
    if form.homogeneous_degree() != Some(3) {
        return Err(Error::InvalidArgument("binary_form_disc needs a homogeneous cubic".into()));
    }
    if !form.is_integral() {
        return Err(Error::InvalidArgument("binary_form_disc needs integer coefficients".into()));
    }
    let cs: Vec<BigInt> = form.form_coeffs(3).into_iter().map(|c| c.to_integer()).collect();
    let (a, b, c, d) = (&cs[0], &cs[1], &cs[2], &cs[3]);
    Ok(BigInt::from(18) * a * b * c * d - BigInt::from(4) * b * b * b * d + b * b * c * c
        - BigInt::from(4) * a * c * c * c
        - BigInt::from(27) * a * a * d * d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_discriminants() {
        assert_eq!(binary_form_disc(&BiPolyQ::from_form_i64(&[1, 0, 0, 1])).unwrap(), BigInt::from(-27));
        // uv(u+v) = u^2 v + u v^2
        assert_eq!(binary_form_disc(&BiPolyQ::from_form_i64(&[0, 1, 1, 0])).unwrap(), BigInt::from(1));
        assert!(binary_form_disc(&BiPolyQ::from_form_i64(&[1, 0, 1])).is_err());
        let mixed = &BiPolyQ::from_form_i64(&[1, 0, 0, 1]) + &BiPolyQ::u();
        assert!(binary_form_disc(&mixed).is_err());
    }

    #[test]
    fn derivatives_and_substitution() {
        let f = BiPolyQ::from_form_i64(&[3, 30, 30, 2]);
        assert_eq!(f.du().homogeneous_degree(), Some(2));
        let x2 = PolyQ::from_i64s(&[0, 0, 1]);
        let one = PolyQ::from_i64s(&[1]);
        assert_eq!(f.substitute(&x2, &one), PolyQ::from_i64s(&[2, 0, 30, 0, 30, 0, 3]));
    }
}
