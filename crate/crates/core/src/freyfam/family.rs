use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::Zero;
use serde::Serialize;

use crate::ellcurve::WeierstrassModel;
use crate::exactmath::{mul_mod, rat, rat_int, PolyQ};
use crate::{Error, Result};

/// Which integers `x` a family may be specialised at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Validity {
    /// `gcd(x, 10) = alpha` and `x != 0`.
    Gcd10(u32),
    /// Any integer.
    Any,
    /// `x` odd.
    Odd,
}

impl Validity {
    pub fn check(&self, x: &BigInt) -> Result<()> {
        match *self {
            Validity::Any => Ok(()),
            Validity::Odd => {
                if x.is_odd() {
                    Ok(())
                } else {
                    Err(Error::NonIntegralModel)
                }
            }
            Validity::Gcd10(alpha) => {
                if x.is_zero() {
                    return Err(Error::SingularFamilyMember);
                }
                let g = x.gcd(&BigInt::from(10));
                if g == BigInt::from(alpha) {
                    Ok(())
                } else {
                    Err(Error::Precondition(format!("gcd({x}, 10) = {g}, not {alpha}")))
                }
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Validity::Any => "any x".into(),
            Validity::Odd => "x odd".into(),
            Validity::Gcd10(a) => format!("gcd(x,10) = {a}, x != 0"),
        }
    }
}

/// A Weierstrass model whose coefficients are polynomials in `x`.
#[derive(Clone, Debug)]
pub struct FreyFamily {
    pub name: String,
    pub a: [PolyQ; 5],
    pub validity: Validity,
}

/// `b2 .. disc, c4, c6` as polynomials in `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolicInvariants {
    pub b2: PolyQ,
    pub b4: PolyQ,
    pub b6: PolyQ,
    pub b8: PolyQ,
    pub c4: PolyQ,
    pub c6: PolyQ,
    pub disc: PolyQ,
}

fn q(cs: &[(i64, i64)]) -> PolyQ {
    PolyQ::new(cs.iter().map(|&(n, d)| rat(n, d)).collect())
}

fn qi(cs: &[i64]) -> PolyQ {
    PolyQ::new(cs.iter().map(|&n| rat_int(n)).collect())
}

/// `3x^4 + 20x^2 + 10`.
pub fn k5_quartic() -> PolyQ {
    qi(&[10, 0, 20, 0, 3])
}

/// `3x^6 + 30x^4 + 30x^2 + 2`.
pub fn k6_sextic() -> PolyQ {
    qi(&[2, 0, 30, 0, 30, 0, 3])
}

impl FreyFamily {
    pub fn specialize(&self, x: &BigInt) -> Result<WeierstrassModel> {
        self.validity.check(x)?;
        let [a1, a2, a3, a4, a6] = self.a.clone().map(|p| p.eval_int(x));
        let e = WeierstrassModel::new(a1, a2, a3, a4, a6);
        if e.is_singular() {
            return Err(Error::SingularFamilyMember);
        }
        Ok(e)
    }

    /// Same as `specialize` but skips the validity predicate (used for probes
    /// such as `F_{0,10}`); singular members are still rejected.
    pub fn specialize_unchecked(&self, x: &BigInt) -> Result<WeierstrassModel> {
        let [a1, a2, a3, a4, a6] = self.a.clone().map(|p| p.eval_int(x));
        let e = WeierstrassModel::new(a1, a2, a3, a4, a6);
        if e.is_singular() {
            return Err(Error::SingularFamilyMember);
        }
        Ok(e)
    }

    pub fn invariants(&self) -> SymbolicInvariants {
        let [a1, a2, a3, a4, a6] = &self.a;
        let k = |n: i64| PolyQ::constant(rat_int(n));
        let b2 = &(a1 * a1) + &(&k(4) * a2);
        let b4 = &(a1 * a3) + &(&k(2) * a4);
        let b6 = &(a3 * a3) + &(&k(4) * a6);
        let b8 = &(&(&(&(a1 * a1) * a6) + &(&(&k(4) * a2) * a6)) - &(&(a1 * a3) * a4))
            + &(&(&(a2 * a3) * a3) - &(a4 * a4));
        let c4 = &(&b2 * &b2) - &(&k(24) * &b4);
        let c6 = &(&(&k(36) * &(&b2 * &b4)) - &(&(&b2 * &b2) * &b2)) - &(&k(216) * &b6);
        let disc = &(&(&k(9) * &(&(&b2 * &b4) * &b6)) - &(&(&b2 * &b2) * &b8))
            - &(&(&k(8) * &(&(&b4 * &b4) * &b4)) + &(&k(27) * &(&b6 * &b6)));
        SymbolicInvariants { b2, b4, b6, b8, c4, c6, disc }
    }

    /// Coefficients at `x = a` reduced mod `p`; `None` if some coefficient
    /// has a denominator divisible by `p`.
    pub fn reduce_at(&self, a: u64, p: u64) -> Option<[u64; 5]> {
        let mut out = [0u64; 5];
        for (o, c) in out.iter_mut().zip(&self.a) {
            *o = c.eval_mod(a, p)?;
        }
        Some(out)
    }

    /// The discriminant polynomial at `x = a`, mod `p`.
    pub fn disc_mod(&self, a: u64, p: u64) -> Option<u64> {
        let [a1, a2, a3, a4, a6] = self.reduce_at(a, p)?;
        let m = |x: u64, y: u64| mul_mod(x, y, p);
        let b2 = (m(a1, a1) + m(4 % p, a2)) % p;
        let b4 = (m(a1, a3) + m(2 % p, a4)) % p;
        let b6 = (m(a3, a3) + m(4 % p, a6)) % p;
        let b8 = (m(m(a1, a1), a6) + m(m(4 % p, a2), a6) + p - m(m(a1, a3), a4) + m(m(a2, a3), a3)
            + p
            - m(a4, a4))
            % p;
        let pos = (m(m(9 % p, b2), m(b4, b6))) % p;
        let neg = (m(m(b2, b2), b8) + m(8 % p, m(m(b4, b4), b4)) + m(27 % p, m(b6, b6))) % p;
        Some((pos + p - neg) % p)
    }
}

/// `E_{x,alpha}` for `alpha in {1, 5, 2, 10}`.
pub fn alpha_family(alpha: u32) -> Result<FreyFamily> {
    let z = PolyQ::zero();
    let one = PolyQ::one();
    let a = match alpha {
        1 => [z.clone(), qi(&[20, 0, 20]), z.clone(), qi(&[100, 0, 200, 0, 30]), z],
        5 => [z.clone(), qi(&[4, 0, 4]), z.clone(), q(&[(4, 1), (0, 1), (8, 1), (0, 1), (6, 5)]), z],
        2 => [one, q(&[(1, 1), (0, 1), (5, 4)]), z.clone(), q(&[(0, 1), (0, 1), (0, 1), (0, 1), (35, 128)]), z],
        10 => [one, q(&[(0, 1), (0, 1), (1, 4)]), z.clone(), q(&[(0, 1), (0, 1), (0, 1), (0, 1), (7, 640)]), z],
        _ => return Err(Error::Precondition(format!("alpha = {alpha} not in {{1,2,5,10}}"))),
    };
    Ok(FreyFamily { name: format!("E_{{x,{alpha}}}"), a, validity: Validity::Gcd10(alpha) })
}

/// `F_{x,alpha} : Y^2 = X^3 + 2(3x^2+10) X^2 + 70 X` (independent of alpha).
pub fn f_family() -> FreyFamily {
    let z = PolyQ::zero();
    FreyFamily {
        name: "F_x".into(),
        a: [z.clone(), qi(&[20, 0, 6]), z.clone(), qi(&[70]), z],
        validity: Validity::Any,
    }
}

/// The `k = 6` curve `E_x`, integral for odd `x`.
pub fn k6_family() -> FreyFamily {
    let z = PolyQ::zero();
    FreyFamily {
        name: "E_x (k=6)".into(),
        a: [
            z.clone(),
            z,
            PolyQ::one(),
            q(&[(-1080, 2), (0, 1), (-1269, 2), (0, 1), (-945, 2)]),
            q(&[(19061, 4), (0, 1), (26730, 4), (0, 1), (-18630, 4), (0, 1), (-15093, 4)]),
        ],
        validity: Validity::Odd,
    }
}

pub fn frey_k5_e(x: &BigInt, alpha: u32) -> Result<WeierstrassModel> {
    alpha_family(alpha)?.specialize(x)
}

/// `F_{x,alpha}`; `alpha` is only checked to be admissible, since the model
/// does not depend on it.
pub fn frey_k5_f(x: &BigInt, alpha: u32) -> Result<WeierstrassModel> {
    if ![1, 2, 5, 10].contains(&alpha) {
        return Err(Error::Precondition(format!("alpha = {alpha} not in {{1,2,5,10}}")));
    }
    f_family().specialize(x)
}

pub fn frey_k6(x: &BigInt) -> Result<WeierstrassModel> {
    k6_family().specialize(x)
}

/// Outcome of the multiplicativity check at 3391.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check3391 {
    pub c4_roots: Vec<u64>,
    pub sextic_vanishes: Vec<bool>,
    pub lifts_mod_square: Vec<bool>,
}

impl Check3391 {
    pub fn holds(&self) -> bool {
        self.c4_roots == [983, 2408]
            && self.sextic_vanishes.iter().all(|&b| b)
            && self.lifts_mod_square.iter().all(|&b| !b)
    }
}

/// Roots of `35x^4 + 47x^2 + 40` mod 3391, whether they are roots of the
/// sextic, and whether they lift to roots of the sextic mod `3391^2`.
pub fn check_3391_multiplicative() -> Check3391 {
    const P: u64 = 3391;
    let quartic = crate::exactmath::PolyZ::from_i64s(&[40, 0, 47, 0, 35]);
    let sextic = crate::exactmath::PolyZ::from_i64s(&[2, 0, 30, 0, 30, 0, 3]);
    let c4_roots: Vec<u64> = (0..P).filter(|&a| quartic.eval_mod(a, P) == 0).collect();
    let sextic_vanishes = c4_roots.iter().map(|&r| sextic.eval_mod(r, P) == 0).collect();
    let lifts_mod_square = c4_roots
        .iter()
        .map(|&r| (0..P).any(|k| sextic.eval_mod(r + k * P, P * P) == 0))
        .collect();
    Check3391 { c4_roots, sextic_vanishes, lifts_mod_square }
}
