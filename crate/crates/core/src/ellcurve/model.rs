use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exactmath::{rat_int, Rational};
use crate::{Error, Result};

/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6` with rational
/// coefficients. Singular models are allowed; operations that need a curve
/// check `disc() != 0` themselves.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeierstrassModel {
    pub a1: Rational,
    pub a2: Rational,
    pub a3: Rational,
    pub a4: Rational,
    pub a6: Rational,
}

/// The standard quantities attached to a model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub b2: Rational,
    pub b4: Rational,
    pub b6: Rational,
    pub b8: Rational,
    pub c4: Rational,
    pub c6: Rational,
    pub disc: Rational,
    pub j: Option<Rational>,
}

impl WeierstrassModel {
    pub fn new(a1: Rational, a2: Rational, a3: Rational, a4: Rational, a6: Rational) -> Self {
        WeierstrassModel { a1, a2, a3, a4, a6 }
    }

    pub fn from_ints(a: [i64; 5]) -> Self {
        let [a1, a2, a3, a4, a6] = a.map(rat_int);
        WeierstrassModel { a1, a2, a3, a4, a6 }
    }

    pub fn from_bigints(a: [BigInt; 5]) -> Self {
        let [a1, a2, a3, a4, a6] = a.map(rat_int);
        WeierstrassModel { a1, a2, a3, a4, a6 }
    }

    /// `y^2 = x^3 + a x + b`.
    pub fn short(a: Rational, b: Rational) -> Self {
        let z = Rational::zero();
        WeierstrassModel::new(z.clone(), z.clone(), z, a, b)
    }

    pub fn coeffs(&self) -> [&Rational; 5] {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs().iter().all(|c| c.is_integer())
    }

    /// Integer coefficients, if the model is integral.
    pub fn integer_coeffs(&self) -> Option<[BigInt; 5]> {
        if !self.is_integral() {
            return None;
        }
        Some(self.coeffs().map(|c| c.to_integer()))
    }

    pub fn b2(&self) -> Rational {
        &self.a1 * &self.a1 + &self.a2 * rat_int(4)
    }
    pub fn b4(&self) -> Rational {
        &self.a1 * &self.a3 + &self.a4 * rat_int(2)
    }
    pub fn b6(&self) -> Rational {
        &self.a3 * &self.a3 + &self.a6 * rat_int(4)
    }
    pub fn b8(&self) -> Rational {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        a1 * a1 * a6 + a2 * a6 * rat_int(4) - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    }
    pub fn c4(&self) -> Rational {
        let b2 = self.b2();
        &b2 * &b2 - self.b4() * rat_int(24)
    }
    pub fn c6(&self) -> Rational {
        let (b2, b4, b6) = (self.b2(), self.b4(), self.b6());
        -(&b2 * &b2 * &b2) + &b2 * &b4 * rat_int(36) - b6 * rat_int(216)
    }
    pub fn disc(&self) -> Rational {
        let (b2, b4, b6, b8) = (self.b2(), self.b4(), self.b6(), self.b8());
        -(&b2 * &b2 * &b8) - &b4 * &b4 * &b4 * rat_int(8) - &b6 * &b6 * rat_int(27)
            + &b2 * &b4 * &b6 * rat_int(9)
    }

    pub fn is_singular(&self) -> bool {
        self.disc().is_zero()
    }

    pub fn invariants(&self) -> Invariants {
        let disc = self.disc();
        let c4 = self.c4();
        let j = if disc.is_zero() { None } else { Some(&c4 * &c4 * &c4 / &disc) };
        Invariants {
            b2: self.b2(),
            b4: self.b4(),
            b6: self.b6(),
            b8: self.b8(),
            c4,
            c6: self.c6(),
            disc,
            j,
        }
    }

    pub fn j_invariant(&self) -> Result<Rational> {
        self.invariants().j.ok_or(Error::SingularModel)
    }

    /// The change of variables `x = u^2 x' + r`, `y = u^3 y' + s u^2 x' + t`.
    pub fn transform(&self, u: &Rational, r: &Rational, s: &Rational, t: &Rational) -> Result<Self> {
        if u.is_zero() {
            return Err(Error::InvalidArgument("transform with u = 0".into()));
        }
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let two = rat_int(2);
        let three = rat_int(3);
        let u2 = u * u;
        let u3 = &u2 * u;
        let u4 = &u2 * &u2;
        let u6 = &u3 * &u3;
        let n1 = a1 + s * &two;
        let n2 = a2 - s * a1 + r * &three - s * s;
        let n3 = a3 + r * a1 + t * &two;
        let n4 = a4 - s * a3 + r * a2 * &two - (t + r * s) * a1 + r * r * &three - s * t * &two;
        let n6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
        Ok(WeierstrassModel::new(n1 / u, n2 / u2, n3 / u3, n4 / u4, n6 / u6))
    }

    /// Integral-shift version of [`transform`](Self::transform) with `u = 1`.
    pub fn rst(&self, r: &Rational, s: &Rational, t: &Rational) -> Self {
        self.transform(&Rational::one(), r, s, t).expect("u = 1")
    }

    /// `y^2 = x^3 - 27 c4 x - 54 c6`, isomorphic over `Q` to `self`.
    pub fn short_model(&self) -> Self {
        WeierstrassModel::short(-self.c4() * rat_int(27), -self.c6() * rat_int(54))
    }

    /// A model for the quadratic twist by `d`.
    pub fn quadratic_twist(&self, d: &BigInt) -> Result<Self> {
        if self.is_singular() {
            return Err(Error::SingularModel);
        }
        if d.is_zero() {
            return Err(Error::InvalidArgument("twist by zero".into()));
        }
        let d = rat_int(d.clone());
        Ok(WeierstrassModel::short(
            -self.c4() * &d * &d * rat_int(27),
            -self.c6() * &d * &d * &d * rat_int(54),
        ))
    }

    /// Isomorphism over `Q`: equal `j` and `c4' = u^4 c4`, `c6' = u^6 c6`
    /// for some rational `u`.
    pub fn is_isomorphic(&self, other: &Self) -> bool {
        if self.is_singular() || other.is_singular() {
            return false;
        }
        let (c4, c6) = (self.c4(), self.c6());
        let (d4, d6) = (other.c4(), other.c6());
        if c4.is_zero() != d4.is_zero() || c6.is_zero() != d6.is_zero() {
            return false;
        }
        if c4.is_zero() {
            return is_rational_power(&(d6 / c6), 6);
        }
        if c6.is_zero() {
            return is_rational_power(&(d4 / c4), 4);
        }
        // u^2 = (c6'/c6) / (c4'/c4)
        let u2 = (&d6 / &c6) / (&d4 / &c4);
        is_rational_power(&u2, 2) && &u2 * &u2 * &c4 == d4
    }

    /// Smallest positive integer `m` with `m^i a_i` integral; the model
    /// `transform(1/m, 0, 0, 0)` is then integral.
    pub fn integral_scale(&self) -> BigInt {
        let mut m = BigInt::one();
        for (c, w) in self.coeffs().iter().zip([1u32, 2, 3, 4, 6]) {
            for (p, e) in crate::exactmath::factor_completely(c.denom()) {
                let need = e.div_ceil(w);
                let have = big_val(&m, &p);
                if need > have {
                    m *= num_traits::pow(p.clone(), (need - have) as usize);
                }
            }
        }
        m
    }

    /// An integral model obtained by scaling, together with the scale.
    pub fn integral_model(&self) -> (WeierstrassModel, BigInt) {
        let m = self.integral_scale();
        let inv = Rational::new(BigInt::one(), m.clone());
        let z = Rational::zero();
        (self.transform(&inv, &z, &z, &z).expect("scale nonzero"), m)
    }
}

fn big_val(n: &BigInt, p: &BigInt) -> u32 {
    let mut n = n.clone();
    let mut v = 0;
    while !n.is_zero() && (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    v
}

fn is_rational_power(q: &Rational, k: u32) -> bool {
    if q.is_negative() && k.is_multiple_of(2) {
        return false;
    }
    let root = |n: &BigInt| {
        let r = n.abs().nth_root(k);
        num_traits::pow(r.clone(), k as usize) == n.abs()
    };
    root(q.numer()) && root(q.denom())
}

impl fmt::Display for WeierstrassModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{},{},{}]", self.a1, self.a2, self.a3, self.a4, self.a6)
    }
}

impl fmt::Debug for WeierstrassModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    #[test]
    fn invariants_of_x3_plus_1() {
        let e = WeierstrassModel::from_ints([0, 0, 0, 0, 1]);
        let inv = e.invariants();
        assert_eq!(inv.c4, rat(0, 1));
        assert_eq!(inv.disc, rat(-432, 1));
        assert_eq!(inv.j, Some(rat(0, 1)));
    }

    #[test]
    fn syzygy_and_scaling() {
        let e = WeierstrassModel::new(rat(1, 2), rat(-3, 1), rat(5, 7), rat(2, 3), rat(-11, 1));
        let inv = e.invariants();
        assert_eq!(&inv.c4 * &inv.c4 * &inv.c4 - &inv.c6 * &inv.c6, &inv.disc * rat_int(1728));
        let u = rat(3, 2);
        let f = e.transform(&u, &rat(1, 3), &rat(-2, 1), &rat(5, 1)).unwrap();
        let u12 = num_traits::pow(u.clone(), 12);
        assert_eq!(f.disc() * &u12, e.disc());
        assert_eq!(f.c4() * num_traits::pow(u, 4), e.c4());
        assert_eq!(f.j_invariant().unwrap(), e.j_invariant().unwrap());
        assert!(e.is_isomorphic(&f));
        let id = e.transform(&rat(1, 1), &rat(0, 1), &rat(0, 1), &rat(0, 1)).unwrap();
        assert_eq!(id, e);
        assert!(e.transform(&rat(0, 1), &rat(0, 1), &rat(0, 1), &rat(0, 1)).is_err());
    }

    #[test]
    fn twists() {
        let e = WeierstrassModel::from_ints([0, 1, 1, -2, 0]);
        let t1 = e.quadratic_twist(&BigInt::from(1)).unwrap();
        assert!(t1.is_isomorphic(&e));
        let t5 = e.quadratic_twist(&BigInt::from(5)).unwrap();
        assert_eq!(t5.j_invariant().unwrap(), e.j_invariant().unwrap());
        assert!(!t5.is_isomorphic(&e));
        let back = t5.quadratic_twist(&BigInt::from(5)).unwrap();
        assert!(back.is_isomorphic(&e));
        assert!(WeierstrassModel::from_ints([0, 0, 0, 0, 0]).quadratic_twist(&BigInt::from(2)).is_err());
    }

    #[test]
    fn integral_scaling() {
        let e = WeierstrassModel::new(rat(1, 1), rat(5, 4), rat(0, 1), rat(35, 128), rat(0, 1));
        let (m, s) = e.integral_model();
        assert!(m.is_integral());
        assert_eq!(s, BigInt::from(4));
    }
}
