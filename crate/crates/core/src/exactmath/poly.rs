use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::numtheory::{inv_mod, mod_big};
use crate::{Error, Result};

/// Coefficient rings usable in [`Poly`].
pub trait Coeff:
    Clone + PartialEq + fmt::Debug + Zero + One + Neg<Output = Self> + std::ops::Sub<Output = Self> + Send + Sync
{
    fn from_i64(n: i64) -> Self;
}

impl Coeff for BigInt {
    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }
}

impl Coeff for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

/// Dense univariate polynomial, coefficients in ascending degree.
///
/// The coefficient vector never ends in a zero; the zero polynomial has no
/// coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

pub type PolyZ = Poly<BigInt>;
pub type PolyQ = Poly<BigRational>;

impl<T: Coeff> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    /// The polynomial `t`.
    pub fn x() -> Self {
        Poly::monomial(T::one(), 1)
    }

    pub fn monomial(c: T, k: usize) -> Self {
        let mut v = vec![T::zero(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    /// `t - root`.
    pub fn linear_root(root: T) -> Self {
        Poly::new(vec![-root, T::one()])
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Poly::new(cs.iter().map(|&c| T::from_i64(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn scale(&self, c: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * T::from_i64(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `self(other(t))`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * other) + &Poly::constant(c.clone());
        }
        acc
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<T: Coeff> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Coeff> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Coeff> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<T: Coeff> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl<T: Coeff> $tr for Poly<T> {
            type Output = Poly<T>;
            fn $m(self, rhs: Poly<T>) -> Poly<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl<T: Coeff + fmt::Display> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{i}")?,
            }
        }
        Ok(())
    }
}

impl<T: Coeff + fmt::Display> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]", self.to_csv())
    }
}

impl<T: Coeff + fmt::Display> Poly<T> {
    /// Ascending comma separated decimal coefficients.
    pub fn to_csv(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl PolyZ {
    pub fn from_csv(s: &str) -> Result<PolyZ> {
        let coeffs = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<BigInt>()
                    .map_err(|e| Error::InvalidArgument(format!("bad coefficient {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyZ::new(coeffs))
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn primitive_part(&self) -> PolyZ {
        let c = self.content();
        if c.is_zero() {
            return PolyZ::zero();
        }
        let c = if self.leading().is_some_and(|l| l.is_negative()) { -c } else { c };
        PolyZ::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) a mod b`.
    pub fn pseudo_rem(&self, b: &PolyZ) -> PolyZ {
        let db = b.degree().expect("pseudo_rem by zero");
        let lb = b.leading().unwrap().clone();
        let mut r = self.clone();
        let Some(da) = r.degree() else { return r };
        if da < db {
            return r;
        }
        let mut steps = da - db + 1;
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.leading().unwrap().clone();
            let shifted = &Poly::monomial(lr, dr - db) * b;
            r = &r.scale(&lb) - &shifted;
            steps -= 1;
        }
        if steps > 0 {
            r = r.scale(&num_traits::pow(lb, steps));
        }
        r
    }

    /// Exact division in `Z[t]`; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &PolyZ) -> Option<PolyZ> {
        let dd = d.degree()?;
        let ld = d.leading().unwrap();
        let mut r = self.clone();
        let Some(dr0) = r.degree() else { return Some(PolyZ::zero()) };
        if dr0 < dd {
            return None;
        }
        let mut q = vec![BigInt::zero(); dr0 - dd + 1];
        while let Some(dr) = r.degree() {
            if dr < dd {
                return None;
            }
            let (qc, rem) = r.leading().unwrap().div_rem(ld);
            if !rem.is_zero() {
                return None;
            }
            let term = Poly::monomial(qc.clone(), dr - dd);
            q[dr - dd] = qc;
            r = &r - &(&term * d);
        }
        Some(PolyZ::new(q))
    }

    /// Residues of the coefficients modulo `m`.
    pub fn reduce_mod(&self, m: u64) -> Vec<u64> {
        let mut v: Vec<u64> = self.coeffs.iter().map(|c| mod_big(c, m)).collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    pub fn eval_mod(&self, x: u64, m: u64) -> u64 {
        let mut acc: u128 = 0;
        for c in self.coeffs.iter().rev() {
            acc = (acc * x as u128 + mod_big(c, m) as u128) % m as u128;
        }
        acc as u64
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    pub fn to_q(&self) -> PolyQ {
        self.map(|c| BigRational::from_integer(c.clone()))
    }

    /// Sum of squares of the coefficients, rounded up to an integer square root.
    pub fn l2_norm_ceil(&self) -> BigInt {
        let s: BigInt = self.coeffs.iter().map(|c| c * c).sum();
        let r = s.sqrt();
        if &r * &r == s {
            r
        } else {
            r + 1
        }
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }
}

impl PolyQ {
    /// Euclidean division over `Q`.
    pub fn div_rem(&self, d: &PolyQ) -> (PolyQ, PolyQ) {
        let dd = d.degree().expect("division by zero polynomial");
        let ld = d.leading().unwrap().clone();
        let mut r = self.clone();
        let mut q = PolyQ::zero();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let c = r.leading().unwrap() / &ld;
            let term = Poly::monomial(c, dr - dd);
            r = &r - &(&term * d);
            q = &q + &term;
        }
        (q, r)
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()))
    }

    /// `(P, D)` with `self = P / D`, `P` integral.
    pub fn clear_denominators(&self) -> (PolyZ, BigInt) {
        let d = self.denominator_lcm();
        let p = PolyZ::new(self.coeffs.iter().map(|c| (c * &d).to_integer()).collect());
        (p, d)
    }

    /// Integral polynomial if every coefficient is an integer.
    pub fn to_z(&self) -> Option<PolyZ> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(PolyZ::new)
    }

    /// Value at `x` modulo a prime `p`, or `None` if a denominator vanishes mod `p`.
    pub fn eval_mod(&self, x: u64, p: u64) -> Option<u64> {
        let mut acc: u128 = 0;
        for c in self.coeffs.iter().rev() {
            let num = mod_big(c.numer(), p);
            let den = inv_mod(mod_big(c.denom(), p), p)?;
            let cv = (num as u128 * den as u128) % p as u128;
            acc = (acc * x as u128 + cv) % p as u128;
        }
        Some(acc as u64)
    }

    pub fn eval_int(&self, x: &BigInt) -> BigRational {
        self.eval(&BigRational::from_integer(x.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(cs: &[i64]) -> PolyZ {
        PolyZ::from_i64s(cs)
    }

    #[test]
    fn arithmetic_and_normalisation() {
        let a = z(&[1, 2, 0, 0]);
        assert_eq!(a.degree(), Some(1));
        let b = z(&[-1, 1]);
        assert_eq!(&a * &b, z(&[-1, -1, 2]));
        assert!((&a - &a).is_zero());
        assert_eq!(z(&[1, 1]).pow(3), z(&[1, 3, 3, 1]));
        assert_eq!(z(&[0, 0, 1]).compose(&z(&[1, 1])), z(&[1, 2, 1]));
    }

    #[test]
    fn exact_division() {
        let f = z(&[-1, 0, 1]);
        assert_eq!(f.div_exact(&z(&[1, 1])), Some(z(&[-1, 1])));
        assert_eq!(f.div_exact(&z(&[2, 1])), None);
        assert_eq!(z(&[4, 2]).div_exact(&z(&[2])), Some(z(&[2, 1])));
    }

    #[test]
    fn pseudo_remainder_matches_field_division() {
        let a = z(&[3, 0, 5, 2, 7]);
        let b = z(&[1, 3, 2]);
        let pr = a.pseudo_rem(&b);
        let (_, r) = a.to_q().div_rem(&b.to_q());
        let scale = BigRational::from_integer(BigInt::from(2).pow(3));
        assert_eq!(pr.to_q(), r.scale(&scale));
    }

    #[test]
    fn csv_roundtrip() {
        let f = z(&[2, 0, 30, 0, 30, 0, 3]);
        assert_eq!(PolyZ::from_csv(&f.to_csv()).unwrap(), f);
    }

    #[test]
    fn rational_reduction_mod_p() {
        let f = PolyQ::new(vec![BigRational::new(1.into(), 2.into()), BigRational::from_integer(3.into())]);
        // 1/2 + 3*4 mod 7 = 4 + 12 = 16 = 2
        assert_eq!(f.eval_mod(4, 7), Some(2));
        assert_eq!(f.eval_mod(4, 2), None);
    }
}
