//! Tate's algorithm over `Z_p` for integral models.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Zero};
use serde::Serialize;

use super::model::WeierstrassModel;
use crate::exactmath::is_probable_prime;
use crate::{Error, Result};

/// Kodaira symbol of the special fibre.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Kodaira {
    I0,
    In(u32),
    II,
    III,
    IV,
    I0Star,
    InStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kodaira::I0 => write!(f, "I0"),
            Kodaira::In(n) => write!(f, "I{n}"),
            Kodaira::II => write!(f, "II"),
            Kodaira::III => write!(f, "III"),
            Kodaira::IV => write!(f, "IV"),
            Kodaira::I0Star => write!(f, "I0*"),
            Kodaira::InStar(n) => write!(f, "I{n}*"),
            Kodaira::IVStar => write!(f, "IV*"),
            Kodaira::IIIStar => write!(f, "III*"),
            Kodaira::IIStar => write!(f, "II*"),
        }
    }
}

/// Local data at one prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionData {
    #[serde(serialize_with = "crate::exactmath::ser_display")]
    pub p: BigInt,
    pub kodaira: Kodaira,
    /// Exponent of `p` in the conductor.
    pub conductor_exponent: u32,
    /// `v_p` of the minimal discriminant.
    pub min_disc_valuation: u32,
    /// For multiplicative reduction, whether it is split.
    pub split: Option<bool>,
    /// A `p`-minimal integral model reached by the algorithm.
    #[serde(skip)]
    pub minimal_model: WeierstrassModel,
}

impl ReductionData {
    pub fn is_good(&self) -> bool {
        self.conductor_exponent == 0
    }
    pub fn is_multiplicative(&self) -> bool {
        self.conductor_exponent == 1
    }
    pub fn is_additive(&self) -> bool {
        self.conductor_exponent >= 2
    }
}

#[derive(Clone)]
struct M {
    a1: BigInt,
    a2: BigInt,
    a3: BigInt,
    a4: BigInt,
    a6: BigInt,
}

impl M {
    fn b2(&self) -> BigInt {
        &self.a1 * &self.a1 + 4 * &self.a2
    }
    fn b4(&self) -> BigInt {
        &self.a1 * &self.a3 + 2 * &self.a4
    }
    fn b6(&self) -> BigInt {
        &self.a3 * &self.a3 + 4 * &self.a6
    }
    fn b8(&self) -> BigInt {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    }
    fn c4(&self) -> BigInt {
        let b2 = self.b2();
        &b2 * &b2 - 24 * self.b4()
    }
    fn c6(&self) -> BigInt {
        let (b2, b4, b6) = (self.b2(), self.b4(), self.b6());
        -(&b2 * &b2 * &b2) + 36 * &b2 * &b4 - 216 * b6
    }
    fn disc(&self) -> BigInt {
        let (b2, b4, b6, b8) = (self.b2(), self.b4(), self.b6(), self.b8());
        -(&b2 * &b2 * &b8) - 8 * &b4 * &b4 * &b4 - 27 * &b6 * &b6 + 9 * &b2 * &b4 * &b6
    }
    fn rst(&mut self, r: &BigInt, s: &BigInt, t: &BigInt) {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let n1 = a1 + 2 * s;
        let n2 = a2 - s * a1 + 3 * r - s * s;
        let n3 = a3 + r * a1 + 2 * t;
        let n4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
        let n6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
        *self = M { a1: n1, a2: n2, a3: n3, a4: n4, a6: n6 };
    }
    fn to_model(&self) -> WeierstrassModel {
        WeierstrassModel::from_bigints([
            self.a1.clone(),
            self.a2.clone(),
            self.a3.clone(),
            self.a4.clone(),
            self.a6.clone(),
        ])
    }
}

const INF: u32 = u32::MAX;

struct Local {
    p: BigInt,
    two: bool,
}

impl Local {
    fn val(&self, x: &BigInt) -> u32 {
        if x.is_zero() {
            return INF;
        }
        let mut v = 0;
        let mut x = x.clone();
        loop {
            let (q, r) = x.div_rem(&self.p);
            if !r.is_zero() {
                return v;
            }
            x = q;
            v += 1;
        }
    }
    fn divides(&self, x: &BigInt) -> bool {
        x.mod_floor(&self.p).is_zero()
    }
    fn red(&self, x: &BigInt) -> BigInt {
        x.mod_floor(&self.p)
    }
    fn inv(&self, x: &BigInt) -> BigInt {
        let u = self.red(x);
        let e = egcd_inv(&u, &self.p);
        e.mod_floor(&self.p)
    }
    fn has_quad_root(&self, a: &BigInt, b: &BigInt, c: &BigInt) -> bool {
        // a t^2 + b t + c
        if self.two {
            return (0..2).any(|t| self.divides(&(a * t * t + b * t + c)));
        }
        let d = self.red(&(b * b - 4 * a * c));
        let e = (&self.p - 1u32) / 2u32;
        d.is_zero() || d.modpow(&e, &self.p).is_one()
    }
}

fn egcd_inv(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x
}

fn div_exact(a: &BigInt, d: &BigInt) -> BigInt {
    debug_assert!((a % d).is_zero());
    a / d
}

/// Run Tate's algorithm at `p` on an integral model.
pub fn tate_reduction(e: &WeierstrassModel, p: u64) -> Result<ReductionData> {
    tate_reduction_big(e, &BigInt::from(p))
}

/// As [`tate_reduction`] for primes of any size.
pub fn tate_reduction_big(e: &WeierstrassModel, prime: &BigInt) -> Result<ReductionData> {
    let [a1, a2, a3, a4, a6] = e.integer_coeffs().ok_or(Error::NonIntegralModel)?;
    if prime < &BigInt::from(2) || !is_probable_prime(prime) {
        return Err(Error::InvalidArgument(format!("{prime} is not prime")));
    }
    let mut c = M { a1, a2, a3, a4, a6 };
    if c.disc().is_zero() {
        return Err(Error::SingularModel);
    }
    let p2small = prime == &BigInt::from(2);
    let p3small = prime == &BigInt::from(3);
    let lp = Local { p: prime.clone(), two: p2small };
    let pi = lp.p.clone();
    let half = if p2small { BigInt::zero() } else { lp.inv(&BigInt::from(2)) };
    let zero = BigInt::zero();
    let done = |c: &M, k: Kodaira, f: u32, v: u32, split: Option<bool>| ReductionData {
        p: prime.clone(),
        kodaira: k,
        conductor_exponent: f,
        min_disc_valuation: v,
        split,
        minimal_model: c.to_model(),
    };
    loop {
        let vd = lp.val(&c.disc());
        if vd == 0 {
            return Ok(done(&c, Kodaira::I0, 0, 0, None));
        }
        let (b2, b4, b6) = (c.b2(), c.b4(), c.b6());
        let (c4, c6) = (c.c4(), c.c6());
        let (r, t);
        if p2small {
            if lp.divides(&b2) {
                r = lp.red(&c.a4);
                t = lp.red(&(((&r + &c.a2) * &r + &c.a4) * &r + &c.a6));
            } else {
                let temp = lp.inv(&c.a1);
                r = lp.red(&(&temp * &c.a3));
                t = lp.red(&(&temp * (&c.a4 + &r * &r)));
            }
        } else if p3small {
            r = if lp.divides(&b2) { lp.red(&-&b6) } else { lp.red(&(-lp.inv(&b2) * &b4)) };
            t = lp.red(&(&c.a1 * &r + &c.a3));
        } else {
            r = if lp.divides(&c4) {
                lp.red(&(-lp.inv(&BigInt::from(12)) * &b2))
            } else {
                lp.red(&(-lp.inv(&(12 * &c4)) * (&c6 + &b2 * &c4)))
            };
            t = lp.red(&(-&half * (&c.a1 * &r + &c.a3)));
        }
        c.rst(&r, &zero, &t);

        if !lp.divides(&c.b2()) {
            let split = lp.has_quad_root(&BigInt::one(), &c.a1, &-&c.a2);
            return Ok(done(&c, Kodaira::In(vd), 1, vd, Some(split)));
        }
        if lp.val(&c.a6) < 2 {
            return Ok(done(&c, Kodaira::II, vd, vd, None));
        }
        if lp.val(&c.b8()) < 3 {
            return Ok(done(&c, Kodaira::III, vd - 1, vd, None));
        }
        if lp.val(&c.b6()) < 3 {
            return Ok(done(&c, Kodaira::IV, vd - 2, vd, None));
        }

        let (s, t) = if p2small {
            (lp.red(&c.a2), &pi * lp.red(&div_exact(&c.a6, &(&pi * &pi))))
        } else if p3small {
            (c.a1.clone(), c.a3.clone())
        } else {
            (-&c.a1 * &half, -&c.a3 * &half)
        };
        c.rst(&zero, &s, &t);

        let p2 = &pi * &pi;
        let p3 = &p2 * &pi;
        let b = div_exact(&c.a2, &pi);
        let cc = div_exact(&c.a4, &p2);
        let d = div_exact(&c.a6, &p3);
        let w = 27 * &d * &d - &b * &b * &cc * &cc + 4 * &b * &b * &b * &d - 18 * &b * &cc * &d
            + 4 * &cc * &cc * &cc;
        let x = 3 * &cc - &b * &b;
        let sw = if lp.divides(&w) {
            if lp.divides(&x) {
                3
            } else {
                2
            }
        } else {
            1
        };
        if sw == 1 {
            return Ok(done(&c, Kodaira::I0Star, vd - 4, vd, None));
        }
        if sw == 2 {
            let r = if p2small {
                lp.red(&cc)
            } else if p3small {
                lp.red(&(&cc * lp.inv(&b)))
            } else {
                lp.red(&((&b * &cc - 9 * &d) * lp.inv(&(2 * &x))))
            };
            c.rst(&(&pi * r), &zero, &zero);
            let mut ix = 3u32;
            let mut iy = 3u32;
            let mut mx = p2.clone();
            let mut my = p2.clone();
            loop {
                let a3t = div_exact(&c.a3, &my);
                let a6t = div_exact(&c.a6, &(&mx * &my));
                if !lp.divides(&(&a3t * &a3t + 4 * &a6t)) {
                    break;
                }
                let t = if p2small { &my * lp.red(&a6t) } else { &my * lp.red(&(-&a3t * &half)) };
                c.rst(&zero, &zero, &t);
                my *= &pi;
                iy += 1;
                let a2t = div_exact(&c.a2, &pi);
                let a4t = div_exact(&c.a4, &(&pi * &mx));
                let a6t = div_exact(&c.a6, &(&mx * &my));
                if !lp.divides(&(&a4t * &a4t - 4 * &a6t * &a2t)) {
                    break;
                }
                let r = if p2small {
                    &mx * lp.red(&(&a6t * lp.inv(&a2t)))
                } else {
                    &mx * lp.red(&(-&a4t * lp.inv(&(2 * &a2t))))
                };
                c.rst(&r, &zero, &zero);
                mx *= &pi;
                ix += 1;
            }
            let m = ix + iy - 5;
            return Ok(done(&c, Kodaira::InStar(m), vd - m - 4, vd, None));
        }
        // triple root
        let r = if p2small {
            lp.red(&b)
        } else if p3small {
            lp.red(&-&d)
        } else {
            lp.red(&(-&b * lp.inv(&BigInt::from(3))))
        };
        c.rst(&(&pi * r), &zero, &zero);
        let a3t = div_exact(&c.a3, &p2);
        let a6t = div_exact(&c.a6, &(&p2 * &p2));
        if !lp.divides(&(&a3t * &a3t + 4 * &a6t)) {
            return Ok(done(&c, Kodaira::IVStar, vd - 6, vd, None));
        }
        let t = if p2small { -&p2 * lp.red(&a6t) } else { &p2 * lp.red(&(-&a3t * &half)) };
        c.rst(&zero, &zero, &t);
        if lp.val(&c.a4) < 4 {
            return Ok(done(&c, Kodaira::IIIStar, vd - 7, vd, None));
        }
        if lp.val(&c.a6) < 6 {
            return Ok(done(&c, Kodaira::IIStar, vd - 8, vd, None));
        }
        // not minimal: scale down by p and repeat
        let p4 = &p2 * &p2;
        let p6 = &p3 * &p3;
        c = M {
            a1: div_exact(&c.a1, &pi),
            a2: div_exact(&c.a2, &p2),
            a3: div_exact(&c.a3, &p3),
            a4: div_exact(&c.a4, &p4),
            a6: div_exact(&c.a6, &p6),
        };
    }
}
