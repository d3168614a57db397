//! Brute-force reimplementation of the bounds, shared by the oracle and
//! acceptance targets.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use superelliptic::exactmath::{primes_in_range, PolyZ, Rational};
use superelliptic::expsieve::{
    heckepoly_bound, multi_frey_tl, multi_frey_u, single_bound_bl, CPrimeVariant, NewformClass,
};
use superelliptic::freyfam::{alpha_family, f_family, k6_family, FreyFamily};

pub fn rat_mod(c: &Rational, l: i64) -> Option<i64> {
    let d = c.denom().mod_floor(&BigInt::from(l)).to_i64().unwrap();
    if d == 0 {
        return None;
    }
    let n = c.numer().mod_floor(&BigInt::from(l)).to_i64().unwrap();
    let inv = (1..l).find(|i| (d * i) % l == 1).unwrap();
    Some(n * inv % l)
}

/// Trace by counting all affine pairs, or `None` when `l` divides the
/// discriminant of the specialised model.
pub fn oracle_trace(fam: &FreyFamily, a: i64, l: i64) -> Option<i64> {
    let x = Rational::from_integer(BigInt::from(a));
    let disc = fam.invariants().disc.eval(&x);
    if rat_mod(&disc, l).unwrap() == 0 {
        return None;
    }
    let c: Vec<i64> = fam.a.iter().map(|p| rat_mod(&p.eval(&x), l).unwrap()).collect();
    let mut n = 1;
    for u in 0..l {
        for v in 0..l {
            let lhs = v * v + c[0] * u * v + c[2] * v;
            let rhs = u * u * u + c[1] * u * u + c[3] * u + c[4];
            if (lhs - rhs).rem_euclid(l) == 0 {
                n += 1;
            }
        }
    }
    Some(l + 1 - n)
}

pub fn eval(m: &PolyZ, t: i64) -> BigInt {
    m.coeffs().iter().rev().fold(BigInt::zero(), |acc, c| acc * t + c)
}

pub fn oracle_r(fam: &FreyFamily, a: i64, l: i64, m: &PolyZ) -> BigInt {
    match oracle_trace(fam, a, l) {
        Some(t) => eval(m, t).abs(),
        None => (eval(m, l + 1) * eval(m, -l - 1)).abs(),
    }
}

pub fn oracle_bl(fam: &FreyFamily, l: i64, m: &PolyZ) -> BigInt {
    (0..l).fold(BigInt::from(l), |acc, a| acc * oracle_r(fam, a, l, m))
}

pub fn oracle_tl(fe: &FreyFamily, ff: &FreyFamily, l: i64, mf: &PolyZ, mg: &PolyZ) -> BigInt {
    (0..l).fold(BigInt::from(l), |acc, a| acc * oracle_r(fe, a, l, mf).gcd(&oracle_r(ff, a, l, mg)))
}

pub fn oracle_hecke(fam: &FreyFamily, l: i64, c: &PolyZ, printed: bool) -> BigInt {
    (0..l).fold(BigInt::from(l), |acc, a| {
        acc * match oracle_trace(fam, a, l) {
            Some(t) => eval(c, t),
            None => eval(c, l + 1) * eval(c, if printed { l - 1 } else { -l - 1 }),
        }
    })
}

pub fn random_minpoly(rng: &mut ChaCha8Rng, l: i64, deg: usize, plant: Option<i64>) -> PolyZ {
    let r = (2.0 * (l as f64).sqrt()).floor() as i64;
    let mut m = PolyZ::one();
    for i in 0..deg {
        let root = match plant {
            Some(t) if i == 0 => t,
            _ => rng.gen_range(-r..=r),
        };
        m = &m * &PolyZ::from_i64s(&[-root, 1]);
    }
    if deg == 2 && plant.is_none() && rng.gen_bool(0.5) {
        // An irreducible quadratic t^2 - D with D < 4l not a square.
        let d = (2..4 * l).filter(|d| ((*d as f64).sqrt() as i64).pow(2) != *d).collect::<Vec<_>>();
        m = PolyZ::from_i64s(&[-*d.choose(rng).unwrap(), 0, 1]);
    }
    m
}

pub fn families() -> Vec<(FreyFamily, Vec<u64>)> {
    let e_ok: Vec<u64> = primes_in_range(3, 40).into_iter().filter(|l| ![5, 7].contains(l)).collect();
    let f_ok: Vec<u64> = primes_in_range(11, 40);
    let k6_ok: Vec<u64> = primes_in_range(5, 40);
    let mut v: Vec<(FreyFamily, Vec<u64>)> = [1, 2, 5, 10].iter().map(|&a| (alpha_family(a).unwrap(), e_ok.clone())).collect();
    v.push((f_family(), f_ok));
    v.push((k6_family(), k6_ok));
    v
}

/// Single, multi-Frey and Hecke polynomial bounds against the brute-force
/// versions on `n` fabricated instances. Panics on the first disagreement.
pub fn fabricated_trials(n: usize, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fams = families();
    let ells_both: Vec<u64> = primes_in_range(11, 32);
    for trial in 0..n {
        match trial % 3 {
            0 => {
                let (fam, ok) = fams.choose(&mut rng).unwrap();
                let l = *ok.choose(&mut rng).unwrap();
                let deg = rng.gen_range(1..=3);
                let plant = rng.gen_bool(0.3).then(|| {
                    let a = rng.gen_range(0..l as i64);
                    oracle_trace(fam, a, l as i64)
                });
                let m = random_minpoly(&mut rng, l as i64, deg, plant.flatten());
                let form = NewformClass::new("fab", 1, deg, [(l, m.clone())].into()).unwrap();
                assert_eq!(single_bound_bl(fam, &form, l).unwrap(), oracle_bl(fam, l as i64, &m), "trial {trial}");
            }
            1 => {
                let alpha = *[1u32, 2, 5, 10].choose(&mut rng).unwrap();
                let (fe, ff) = (alpha_family(alpha).unwrap(), f_family());
                let ells: Vec<u64> = ells_both.choose_multiple(&mut rng, 2).copied().collect();
                let mut mf = Vec::new();
                let mut mg = Vec::new();
                for &l in &ells {
                    let a = rng.gen_range(0..l as i64);
                    let planted = rng.gen_bool(0.5);
                    let pf = if planted { oracle_trace(&fe, a, l as i64) } else { None };
                    let pg = if planted { oracle_trace(&ff, a, l as i64) } else { None };
                    mf.push((l, random_minpoly(&mut rng, l as i64, 1, pf)));
                    mg.push((l, random_minpoly(&mut rng, l as i64, 2, pg)));
                }
                let f = NewformClass::new("f", 1, 1, mf.iter().cloned().collect()).unwrap();
                let g = NewformClass::new("g", 1, 2, mg.iter().cloned().collect()).unwrap();
                let report = multi_frey_u(&fe, &ff, &f, &g, &ells, 7).unwrap();
                let mut u = BigInt::zero();
                for (i, &l) in ells.iter().enumerate() {
                    let t = oracle_tl(&fe, &ff, l as i64, &mf[i].1, &mg[i].1);
                    assert_eq!(multi_frey_tl(&fe, &ff, &f, &g, l).unwrap(), t, "trial {trial}");
                    assert!(u.is_zero() || t.is_zero() || t.is_multiple_of(&u.gcd(&t)));
                    u = u.gcd(&t);
                }
                assert_eq!(report.gcd, u, "trial {trial}");
            }
            _ => {
                let (fam, ok) = fams.choose(&mut rng).unwrap();
                let l = *ok.choose(&mut rng).unwrap();
                let deg = rng.gen_range(0..=4);
                let c = random_minpoly(&mut rng, l as i64, deg, None);
                for (v, printed) in [(CPrimeVariant::Faithful, false), (CPrimeVariant::Printed, true)] {
                    assert_eq!(heckepoly_bound(&c, fam, l, v).unwrap(), oracle_hecke(fam, l as i64, &c, printed), "trial {trial}");
                }
            }
        }
    }
}

/// A form congruent mod `p` to the trace of one planted residue: `p` divides
/// every per-ell bound and their gcd.
pub fn planted_trials(n: usize, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fams = families();
    for trial in 0..n {
        let (fam, _) = fams.choose(&mut rng).unwrap();
        let p = *[7i64, 11, 13].choose(&mut rng).unwrap();
        let ells: Vec<u64> = primes_in_range(53, 98)
            .into_iter()
            .filter(|l| fam.disc_mod(0, *l).is_some())
            .collect::<Vec<_>>()
            .choose_multiple(&mut rng, 3)
            .copied()
            .collect();
        let mut data = Vec::new();
        let mut values = Vec::new();
        for &l in &ells {
            let li = l as i64;
            let r = (2.0 * (li as f64).sqrt()).floor() as i64;
            let a0 = rng.gen_range(0..li);
            let target = oracle_trace(fam, a0, li).unwrap_or(li + 1);
            let cands: Vec<i64> = (-r..=r).filter(|c| (c - target).rem_euclid(p) == 0).collect();
            let c = *cands.choose(&mut rng).expect("window wider than p");
            let m = random_minpoly(&mut rng, li, 2, Some(c));
            data.push((l, m));
        }
        let form = NewformClass::new("planted", 1, 2, data.into_iter().collect()).unwrap();
        for &l in &ells {
            let b = single_bound_bl(fam, &form, l).unwrap();
            assert!(b.is_multiple_of(&BigInt::from(p)), "trial {trial} ell {l}");
            values.push(b);
        }
        let g = values.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
        assert!(g.is_multiple_of(&BigInt::from(p)));
    }
}
