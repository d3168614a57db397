//! Arithmetic in `Z[sqrt 70]` and the five prime ideals the descent needs.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::exactmath::{valuation, Rational};
use crate::{Error, Result};

/// The radicand.
pub const D: i64 = 70;

/// `(r + s sqrt 70) / d` with `d >= 1` and `gcd(r, s, d) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct QuadElem {
    #[serde(serialize_with = "crate::exactmath::ser_display")]
    pub r: BigInt,
    #[serde(serialize_with = "crate::exactmath::ser_display")]
    pub s: BigInt,
    #[serde(serialize_with = "crate::exactmath::ser_display")]
    pub d: BigInt,
}

impl QuadElem {
    pub fn new(r: impl Into<BigInt>, s: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        let (mut r, mut s, mut d) = (r.into(), s.into(), d.into());
        assert!(!d.is_zero(), "zero denominator");
        if d.is_negative() {
            r = -r;
            s = -s;
            d = -d;
        }
        let g = r.gcd(&s).gcd(&d);
        QuadElem { r: r / &g, s: s / &g, d: d / &g }
    }

    pub fn int(r: i64, s: i64) -> Self {
        Self::new(r, s, 1)
    }

    pub fn one() -> Self {
        Self::int(1, 0)
    }

    pub fn is_integral(&self) -> bool {
        self.d.is_one()
    }

    pub fn norm(&self) -> Rational {
        Rational::new(&self.r * &self.r - BigInt::from(D) * &self.s * &self.s, &self.d * &self.d)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.r.clone(), -&self.s, self.d.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(
            &self.r * &o.r + BigInt::from(D) * &self.s * &o.s,
            &self.r * &o.s + &self.s * &o.r,
            &self.d * &o.d,
        )
    }

    pub fn inv(&self) -> Self {
        let n = self.norm();
        assert!(!n.is_zero(), "inverse of zero");
        // x^-1 = conj(x) / N(x)
        let c = self.conj();
        Self::new(&c.r * n.denom(), &c.s * n.denom(), &c.d * n.numer())
    }

    pub fn pow(&self, e: i32) -> Self {
        let base = if e < 0 { self.inv() } else { self.clone() };
        (0..e.unsigned_abs()).fold(Self::one(), |acc, _| acc.mul(&base))
    }

    /// Value under the real embedding with `sqrt 70 > 0`.
    pub fn to_f64(&self) -> f64 {
        (self.r.to_f64().unwrap() + self.s.to_f64().unwrap() * (D as f64).sqrt()) / self.d.to_f64().unwrap()
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.s.is_negative() { "-" } else { "+" };
        let body = format!("{} {sign} {}*sqrt(70)", self.r, self.s.abs());
        if self.d.is_one() {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/{}", self.d)
        }
    }
}

/// Fundamental unit from the continued fraction of `sqrt 70`.
pub fn fundamental_unit() -> QuadElem {
    let a0 = BigInt::from(D).sqrt();
    let (mut m, mut q, mut a) = (BigInt::zero(), BigInt::one(), a0.clone());
    let (mut h_prev, mut h) = (BigInt::one(), a0.clone());
    let (mut k_prev, mut k) = (BigInt::zero(), BigInt::one());
    loop {
        let n = &h * &h - BigInt::from(D) * &k * &k;
        if n.abs().is_one() {
            return QuadElem::new(h, k, 1);
        }
        m = &q * &a - &m;
        q = (BigInt::from(D) - &m * &m) / &q;
        a = (&a0 + &m) / &q;
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
    }
}

/// Exponents of `p2 = (2, sqrt70)`, `p3 = (3, 1 + sqrt70)`,
/// `p3' = (3, 1 - sqrt70)`, `p5 = (25 + 3 sqrt70)` and `p7 = (7, sqrt70)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IdealSpec {
    pub e2: i32,
    pub e3: i32,
    pub e3p: i32,
    pub e5: i32,
    pub e7: i32,
}

impl IdealSpec {
    pub const UNIT: IdealSpec = IdealSpec { e2: 0, e3: 0, e3p: 0, e5: 0, e7: 0 };

    pub fn norm(&self) -> Rational {
        let pw = |p: i64, e: i32| {
            let b = Rational::from_integer(BigInt::from(p));
            if e >= 0 {
                num_traits::pow(b, e as usize)
            } else {
                num_traits::pow(b.recip(), (-e) as usize)
            }
        };
        pw(2, self.e2) * pw(3, self.e3 + self.e3p) * pw(5, self.e5) * pw(7, self.e7)
    }

    /// The class group has order 2 and `p2, p3, p3', p7` are all non-trivial.
    pub fn is_principal(&self) -> bool {
        (self.e2 + self.e3 + self.e3p + self.e7).rem_euclid(2) == 0
    }

    pub fn mul(&self, o: &IdealSpec) -> IdealSpec {
        IdealSpec {
            e2: self.e2 + o.e2,
            e3: self.e3 + o.e3,
            e3p: self.e3p + o.e3p,
            e5: self.e5 + o.e5,
            e7: self.e7 + o.e7,
        }
    }
}

/// `omega` with `omega^2 = 70 (mod 3^k)` and `omega = -1 (mod 3)`, so that
/// `O/p3^k = Z/3^k` via `sqrt70 -> omega`.
fn omega(k: u32) -> BigInt {
    let m = BigInt::from(3).pow(k);
    let mut w = BigInt::from(-1);
    // Newton lifting: w <- w - (w^2 - 70) / (2w).
    for _ in 0..k {
        let f = (&w * &w - BigInt::from(D)).mod_floor(&m);
        let inv = (BigInt::from(2) * &w).modinv(&m).expect("2w is a unit");
        w = (&w - f * inv).mod_floor(&m);
    }
    w
}

fn split_valuation(r: &BigInt, s: &BigInt, sign: i64) -> i32 {
    if r.is_zero() && s.is_zero() {
        return i32::MAX;
    }
    let mut k = 0;
    loop {
        let m = BigInt::from(3).pow(k + 1);
        let w = omega(k + 1) * sign;
        if !(r + s * w).mod_floor(&m).is_zero() {
            return k as i32;
        }
        k += 1;
    }
}

/// Valuations of a nonzero integral element at the five primes.
pub fn valuations(x: &QuadElem) -> IdealSpec {
    assert!(x.is_integral());
    let n = (&x.r * &x.r - BigInt::from(D) * &x.s * &x.s).abs();
    IdealSpec {
        e2: valuation(&n, 2) as i32,
        e3: split_valuation(&x.r, &x.s, 1),
        e3p: split_valuation(&x.r, &x.s, -1),
        e5: valuation(&n, 5) as i32,
        e7: valuation(&n, 7) as i32,
    }
}

/// Default search bound on `|s|` for generators.
pub const DEFAULT_GENERATOR_BOUND: u64 = 100_000;

/// A generator `(r + s sqrt70)/d` of a principal ideal with minimal `d`.
/// The search runs over increasing `s >= 0` and prefers `r > 0`; the norm
/// equation fixes `r` up to sign.
pub fn ideal_generator(spec: &IdealSpec, bound: u64) -> Result<QuadElem> {
    if !spec.is_principal() {
        return Err(Error::Precondition(format!("{spec:?} is not principal")));
    }
    let up = |e: i32| if e < 0 { ((-e) as u32).div_ceil(2) } else { 0 };
    let (k2, k5, k7) = (up(spec.e2), up(spec.e5), up(spec.e7));
    let k3 = (-spec.e3.min(spec.e3p)).max(0) as u32;
    let int = IdealSpec {
        e2: spec.e2 + 2 * k2 as i32,
        e3: spec.e3 + k3 as i32,
        e3p: spec.e3p + k3 as i32,
        e5: spec.e5 + 2 * k5 as i32,
        e7: spec.e7 + 2 * k7 as i32,
    };
    let scale = BigInt::from(2).pow(k2) * BigInt::from(3).pow(k3) * BigInt::from(5).pow(k5) * BigInt::from(7).pow(k7);
    let n = int.norm().to_integer();
    for s in 0..=bound {
        let s = BigInt::from(s);
        let base = BigInt::from(D) * &s * &s;
        for target in [&base + &n, &base - &n] {
            if target.is_negative() {
                continue;
            }
            let r = target.sqrt();
            if &r * &r != target {
                continue;
            }
            for r in [r.clone(), -r] {
                let g = QuadElem::new(r, s.clone(), 1);
                if valuations(&g) == int {
                    return Ok(QuadElem::new(g.r, g.s, scale));
                }
            }
        }
    }
    Err(Error::GeneratorNotFound(bound))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit() {
        let e = fundamental_unit();
        assert_eq!(e, QuadElem::int(251, 30));
        assert_eq!(e.norm(), Rational::from_integer(1.into()));
        assert!(e.mul(&e.inv()) == QuadElem::one());
        // The printed value is not a unit.
        assert_eq!(QuadElem::int(251, 31).norm(), Rational::from_integer((-4269).into()));
    }

    #[test]
    fn generators() {
        let p5 = IdealSpec { e5: 1, ..IdealSpec::UNIT };
        assert_eq!(ideal_generator(&p5, 1000).unwrap(), QuadElem::int(25, 3));
        assert_eq!(ideal_generator(&IdealSpec::UNIT, 10).unwrap(), QuadElem::one());
        let p2p7 = IdealSpec { e2: 1, e7: 1, ..IdealSpec::UNIT };
        let g = ideal_generator(&p2p7, 1000).unwrap();
        assert_eq!(g.norm().abs(), Rational::from_integer(14.into()));
        assert_eq!(valuations(&g), p2p7);
        assert!(ideal_generator(&IdealSpec { e2: 1, ..IdealSpec::UNIT }, 10).is_err());
    }

    #[test]
    fn local_orders_of_ten_plus_root() {
        let v = valuations(&QuadElem::int(10, 1));
        assert_eq!(v, IdealSpec { e2: 1, e3: 1, e3p: 0, e5: 1, e7: 0 });
    }

    #[test]
    fn fractional_generator_has_minimal_denominator() {
        let spec = IdealSpec { e3: 1, e7: -5, ..IdealSpec::UNIT };
        let g = ideal_generator(&spec, 10_000).unwrap();
        assert_eq!(g.d, BigInt::from(343));
        let n = g.norm() * Rational::from_integer(BigInt::from(7).pow(5));
        assert_eq!(n.abs(), Rational::from_integer(3.into()));
    }
}
