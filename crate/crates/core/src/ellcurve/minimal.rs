//! Global minimal models (Laska–Kraus–Connell) and conductors.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::model::WeierstrassModel;
use super::tate::{tate_reduction, tate_reduction_big, ReductionData};
use crate::exactmath::{factor_completely, rat_int};
use crate::{Error, Result};

/// Primes dividing the discriminant of the integral rescaling of `e`,
/// together with the rescaled model.
pub fn bad_primes(e: &WeierstrassModel) -> Result<(WeierstrassModel, Vec<BigInt>)> {
    let d = e.disc();
    if d.is_zero() {
        return Err(Error::SingularModel);
    }
    let (m, _) = e.integral_model();
    let dm = m.disc().to_integer();
    Ok((m, factor_completely(&dm).into_iter().map(|(p, _)| p).collect()))
}

/// `v_p` of the minimal discriminant.
pub fn minimal_disc_valuation(e: &WeierstrassModel, p: u64) -> Result<u32> {
    let (m, _) = e.integral_model();
    Ok(tate_reduction(&m, p)?.min_disc_valuation)
}

/// Reduction data at every bad prime of `e`.
pub fn local_data(e: &WeierstrassModel) -> Result<(WeierstrassModel, Vec<ReductionData>)> {
    let (m, ps) = bad_primes(e)?;
    let data = ps.iter().map(|p| tate_reduction_big(&m, p)).collect::<Result<Vec<_>>>()?;
    Ok((m, data))
}

/// The conductor, from Tate's algorithm at every bad prime.
pub fn conductor(e: &WeierstrassModel) -> Result<BigInt> {
    let (_, data) = local_data(e)?;
    Ok(data
        .iter()
        .fold(BigInt::one(), |acc, d| acc * num_traits::pow(d.p.clone(), d.conductor_exponent as usize)))
}

/// The reduced global minimal model (`a1, a3 in {0,1}`, `a2 in {-1,0,1}`).
pub fn global_minimal_model(e: &WeierstrassModel) -> Result<WeierstrassModel> {
    let (m, data) = local_data(e)?;
    let disc = m.disc().to_integer();
    let mut u = BigInt::one();
    for d in &data {
        let v = big_valuation(&disc, &d.p);
        let k = (v - d.min_disc_valuation) / 12;
        u *= num_traits::pow(d.p.clone(), k as usize);
    }
    let u2 = &u * &u;
    let u4 = &u2 * &u2;
    let u6 = &u4 * &u2;
    let c4 = m.c4().to_integer();
    let c6 = m.c6().to_integer();
    if !(&c4 % &u4).is_zero() || !(&c6 % &u6).is_zero() {
        return Err(Error::Consistency("minimal scaling does not divide c4, c6".into()));
    }
    let out = from_c4c6(&(c4 / u4), &(c6 / u6))?;
    if !out.is_isomorphic(e) {
        return Err(Error::Consistency("minimal model not isomorphic to input".into()));
    }
    Ok(out)
}

fn big_valuation(n: &BigInt, p: &BigInt) -> u32 {
    let mut n = n.clone();
    let mut v = 0;
    while !n.is_zero() && (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    v
}

/// Integral model with given `c4, c6` (Kraus's conditions are assumed; any
/// failure is reported as a consistency error).
fn from_c4c6(c4: &BigInt, c6: &BigInt) -> Result<WeierstrassModel> {
    let mut b2 = (-c6).mod_floor(&BigInt::from(12));
    if b2 > BigInt::from(6) {
        b2 -= 12;
    }
    let exact = |n: BigInt, d: i64| -> Result<BigInt> {
        let d = BigInt::from(d);
        if (&n % &d).is_zero() {
            Ok(n / d)
        } else {
            Err(Error::Consistency("c4, c6 do not come from an integral model".into()))
        }
    };
    let b4 = exact(&b2 * &b2 - c4, 24)?;
    let b6 = exact(-(&b2 * &b2 * &b2) + 36 * &b2 * &b4 - c6, 216)?;
    let two = BigInt::from(2);
    let a1 = b2.mod_floor(&two);
    let a3 = b6.mod_floor(&two);
    let a2 = exact(&b2 - &a1, 4)?;
    let a4 = exact(&b4 - &a1 * &a3, 2)?;
    let a6 = exact(&b6 - &a3, 4)?;
    debug_assert!(a2.abs() <= BigInt::one());
    Ok(WeierstrassModel::new(rat_int(a1), rat_int(a2), rat_int(a3), rat_int(a4), rat_int(a6)))
}
