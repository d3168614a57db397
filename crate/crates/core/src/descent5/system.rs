//! The quintic systems `f(u,v) = d (3 alpha^8 z1^10 + 10)`, `g(u,v) = d`,
//! and their local solubility sieve.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::quad::{fundamental_unit, ideal_generator, IdealSpec, QuadElem, D};
use crate::exactmath::{primes_in_range, rat_int, BiPolyQ};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuinticSystem {
    pub alpha: u32,
    pub c: i32,
    #[serde(serialize_with = "crate::exactmath::ser_display")]
    pub d: BigInt,
    /// `(r + s sqrt70)/d`, generating `a q^-5`.
    pub generator: QuadElem,
    #[serde(serialize_with = "crate::exactmath::ser_display")]
    pub f: BiPolyQ,
    #[serde(serialize_with = "crate::exactmath::ser_display")]
    pub g: BiPolyQ,
}

/// `a q^-5` for a given `alpha`: `a = p2^ord2(alpha) p5^ord5(alpha) p3`,
/// twisted by `p7^-5` when `a` is not principal.
pub fn descent_ideal(alpha: u32) -> Result<IdealSpec> {
    if ![1, 2, 5, 10].contains(&alpha) {
        return Err(Error::Precondition(format!("alpha = {alpha} not in {{1,2,5,10}}")));
    }
    let a = IdealSpec { e2: alpha.is_multiple_of(2) as i32, e3: 1, e3p: 0, e5: alpha.is_multiple_of(5) as i32, e7: 0 };
    Ok(if a.is_principal() { a } else { a.mul(&IdealSpec { e7: -5, ..IdealSpec::UNIT }) })
}

/// Coordinates `(A, B)` of `(u + v sqrt70)^5 = A + B sqrt70`.
fn fifth_power() -> (BiPolyQ, BiPolyQ) {
    let (mut a, mut b) = (BiPolyQ::constant(rat_int(1)), BiPolyQ::zero());
    let seventy = BiPolyQ::constant(rat_int(D));
    for _ in 0..5 {
        let na = &(&a * &BiPolyQ::u()) + &(&(&b * &BiPolyQ::v()) * &seventy);
        let nb = &(&a * &BiPolyQ::v()) + &(&b * &BiPolyQ::u());
        a = na;
        b = nb;
    }
    (a, b)
}

pub fn build_system(alpha: u32, c: i32) -> Result<QuinticSystem> {
    if !(-2..=2).contains(&c) {
        return Err(Error::Precondition(format!("c = {c} not in -2..2")));
    }
    let gen = ideal_generator(&descent_ideal(alpha)?, super::quad::DEFAULT_GENERATOR_BOUND)?;
    let mult = QuadElem::new(gen.r.clone(), gen.s.clone(), 1).mul(&fundamental_unit().pow(c));
    if !mult.is_integral() {
        return Err(Error::Consistency("unit power is not integral".into()));
    }
    let (a, b) = fifth_power();
    let p = BiPolyQ::constant(rat_int(mult.r.clone()));
    let q = BiPolyQ::constant(rat_int(mult.s.clone()));
    let seventy = BiPolyQ::constant(rat_int(D));
    let f = &(&p * &a) + &(&(&q * &b) * &seventy);
    let g = &(&p * &b) + &(&q * &a);
    if !f.is_integral() || !g.is_integral() {
        return Err(Error::Consistency("non-integral quintic".into()));
    }
    Ok(QuinticSystem { alpha, c, d: gen.d.clone(), generator: gen, f, g })
}

/// `2^6, 3^3, 5^3, 7^3` and the primes `11 <= q < 100`.
pub fn default_moduli() -> Vec<u64> {
    let mut m = vec![64, 27, 125, 343];
    m.extend(primes_in_range(11, 99));
    m
}

fn form_mod(p: &BiPolyQ, q: u64) -> Vec<u64> {
    let qq = BigInt::from(q);
    p.form_coeffs(5).iter().map(|c| c.to_integer().mod_floor(&qq).to_u64().unwrap()).collect()
}

fn eval_form(cs: &[u64], u: u64, v: u64, q: u64) -> u64 {
    let n = cs.len() - 1;
    let mut up = vec![1u64; n + 1];
    let mut vp = vec![1u64; n + 1];
    for i in 1..=n {
        up[i] = up[i - 1] * u % q;
        vp[i] = vp[i - 1] * v % q;
    }
    cs.iter().enumerate().fold(0, |acc, (k, c)| (acc + c * up[n - k] % q * vp[k]) % q)
}

/// Whether the system has a solution modulo `q`.
pub fn soluble_mod(sys: &QuinticSystem, q: u64) -> bool {
    let qq = BigInt::from(q);
    let d = sys.d.mod_floor(&qq).to_u64().unwrap();
    let a8 = (BigInt::from(sys.alpha).pow(8)).mod_floor(&qq).to_u64().unwrap();
    let targets: HashSet<u64> = (0..q)
        .map(|z| {
            let z10 = (0..10).fold(1u64, |acc, _| acc * z % q);
            d * ((3 * a8 % q * z10 + 10) % q) % q
        })
        .collect();
    let (fc, gc) = (form_mod(&sys.f, q), form_mod(&sys.g, q));
    (0..q).any(|u| (0..q).any(|v| eval_form(&gc, u, v, q) == d && targets.contains(&eval_form(&fc, u, v, q))))
}

/// True iff the system is soluble modulo every modulus in the list.
pub fn local_sieve_system(sys: &QuinticSystem, moduli: &[u64]) -> bool {
    moduli.iter().all(|&q| soluble_mod(sys, q))
}

#[derive(Clone, Debug, Serialize)]
pub struct SieveCell {
    pub alpha: u32,
    pub c: i32,
    #[serde(serialize_with = "crate::exactmath::ser_display")]
    pub d: BigInt,
    pub survives: bool,
    /// First modulus without a local solution.
    pub killed_by: Option<u64>,
}

/// The local sieve over every `alpha in {1,2,5,10}` and `-2 <= c <= 2`.
pub fn sieve_grid(moduli: &[u64]) -> Result<Vec<SieveCell>> {
    let cells: Vec<(u32, i32)> = [1u32, 2, 5, 10].iter().flat_map(|&a| (-2..=2).map(move |c| (a, c))).collect();
    cells
        .into_par_iter()
        .map(|(alpha, c)| {
            let sys = build_system(alpha, c)?;
            let killed_by = moduli.iter().copied().find(|&q| !soluble_mod(&sys, q));
            Ok(SieveCell { alpha, c, d: sys.d, survives: killed_by.is_none(), killed_by })
        })
        .collect()
}

impl QuinticSystem {
    /// Check `(r + s sqrt70) eps^c (u + v sqrt70)^5 = f + g sqrt70` at a point.
    pub fn expansion_holds_at(&self, u: i64, v: i64) -> bool {
        let lhs = QuadElem::new(self.generator.r.clone(), self.generator.s.clone(), 1)
            .mul(&fundamental_unit().pow(self.c))
            .mul(&QuadElem::int(u, v).pow(5));
        let (ub, vb) = (BigInt::from(u), BigInt::from(v));
        let f = self.f.eval_int(&ub, &vb);
        let g = self.g.eval_int(&ub, &vb);
        !lhs.d.is_zero() && lhs.is_integral() && rat_int(lhs.r) == f && rat_int(lhs.s) == g
    }
}
