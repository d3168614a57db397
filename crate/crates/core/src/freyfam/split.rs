use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::exactmath::is_prime_u64;
use crate::{Error, Result};

/// A solution of `(x-1)^k + x^k + (x+1)^k = z^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquationInstance {
    pub k: u32,
    #[serde(serialize_with = "crate::exactmath::ser_display")]
    pub x: BigInt,
    #[serde(serialize_with = "crate::exactmath::ser_display")]
    pub z: BigInt,
    pub n: u32,
}

impl EquationInstance {
    pub fn new(k: u32, x: BigInt, z: BigInt, n: u32) -> Result<Self> {
        if k != 5 && k != 6 {
            return Err(Error::Precondition(format!("k = {k} not in {{5,6}}")));
        }
        if n == 0 {
            return Err(Error::Precondition("n must be at least 1".into()));
        }
        let lhs = num_traits::pow(&x - 1, k as usize)
            + num_traits::pow(x.clone(), k as usize)
            + num_traits::pow(&x + 1, k as usize);
        if lhs != num_traits::pow(z.clone(), n as usize) {
            return Err(Error::NotASolution(format!("x = {x}, z = {z}, n = {n}")));
        }
        Ok(EquationInstance { k, x, z, n })
    }
}

/// `alpha = gcd(x, 10)`, `x = alpha^(p-1) z1^p`, `3x^4+20x^2+10 = alpha z2^p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitData {
    pub alpha: u32,
    #[serde(serialize_with = "crate::exactmath::ser_display")]
    pub z1: BigInt,
    #[serde(serialize_with = "crate::exactmath::ser_display")]
    pub z2: BigInt,
}

fn exact_root(n: &BigInt, p: u32) -> Option<BigInt> {
    if n.is_negative() && p.is_multiple_of(2) {
        return None;
    }
    let r = n.abs().nth_root(p);
    let r = if n.is_negative() { -r } else { r };
    (num_traits::pow(r.clone(), p as usize) == *n).then_some(r)
}

pub fn alpha_split(x: &BigInt, z: &BigInt, p: u32) -> Result<SplitData> {
    if p < 2 || !is_prime_u64(p as u64) {
        return Err(Error::Precondition(format!("exponent {p} is not a prime")));
    }
    let x2 = x * x;
    let quartic: BigInt = 3 * &x2 * &x2 + 20 * &x2 + 10;
    if x * &quartic != num_traits::pow(z.clone(), p as usize) {
        return Err(Error::NotASolution(format!("x = {x}, z = {z}, p = {p}")));
    }
    let alpha: BigInt = x.gcd(&BigInt::from(10));
    let ap = num_traits::pow(alpha.clone(), (p - 1) as usize);
    let fail = |what: &str| Error::SplitFailure(format!("{what} is not a {p}-th power"));
    if !(x % &ap).is_zero() || !(&quartic % &alpha).is_zero() {
        return Err(fail("x / alpha^(p-1)"));
    }
    let z1 = exact_root(&(x / &ap), p).ok_or_else(|| fail("x / alpha^(p-1)"))?;
    let z2 = exact_root(&(&quartic / &alpha), p).ok_or_else(|| fail("(3x^4+20x^2+10) / alpha"))?;
    debug_assert!(z1.is_zero() || (&z1 * &z2).gcd(&BigInt::one()).is_one());
    Ok(SplitData { alpha: u32::try_from(alpha).expect("divides 10"), z1, z2 })
}
