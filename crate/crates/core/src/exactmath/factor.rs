//! Factorisation in `Z[t]` by the Zassenhaus method: factor modulo a small
//! prime, Hensel lift past the Mignotte bound, recombine.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Zero};
use rand::SeedableRng;

use super::modp;
use super::numtheory::primes_up_to;
use super::poly::{PolyQ, PolyZ};
use super::resultant::resultant;
use crate::{Error, Result};

/// True iff `f` has no repeated factor over `Q` (exact resultant test).
pub fn is_squarefree(f: &PolyZ) -> Result<bool> {
    match f.degree() {
        None => Err(Error::ZeroPolynomial),
        Some(0) => Ok(true),
        Some(_) => Ok(!resultant(f, &f.derivative())?.is_zero()),
    }
}

/// Irreducible factorisation over `Z` of a nonconstant polynomial: returns
/// primitive factors (positive leading coefficient) with multiplicities,
/// sorted by degree then coefficients. The integer content is dropped.
pub fn factor_over_z(f: &PolyZ) -> Result<Vec<(PolyZ, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let f = f.primitive_part();
    let mut out = Vec::new();
    for (part, mult) in squarefree_decomposition(&f) {
        for g in factor_squarefree_primitive(&part) {
            out.push((g, mult));
        }
    }
    out.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then_with(|| a.0.coeffs().cmp(b.0.coeffs())));
    Ok(out)
}

fn to_primitive_z(q: &PolyQ) -> PolyZ {
    q.clear_denominators().0.primitive_part()
}

fn gcd_q(a: &PolyQ, b: &PolyQ) -> PolyQ {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = x.div_rem(&y).1;
        x = y;
        y = to_primitive_z(&r).to_q();
    }
    x
}

/// Yun's algorithm; parts are primitive with positive leading coefficient.
fn squarefree_decomposition(f: &PolyZ) -> Vec<(PolyZ, usize)> {
    if f.degree() == Some(0) {
        return Vec::new();
    }
    let fq = f.to_q();
    let d = fq.derivative();
    let a0 = gcd_q(&fq, &d);
    let mut b = fq.div_rem(&a0).0;
    let mut c = d.div_rem(&a0).0;
    let mut dd = &c - &b.derivative();
    let mut out = Vec::new();
    let mut i = 1;
    loop {
        let a = gcd_q(&b, &dd);
        if a.degree().unwrap_or(0) > 0 {
            out.push((to_primitive_z(&a), i));
        }
        b = b.div_rem(&a).0;
        if b.degree().unwrap_or(0) == 0 {
            break;
        }
        c = dd.div_rem(&a).0;
        dd = &c - &b.derivative();
        i += 1;
    }
    out
}

fn factor_squarefree_primitive(f: &PolyZ) -> Vec<PolyZ> {
    let n = f.degree().unwrap();
    if n == 1 {
        return vec![f.primitive_part()];
    }
    let lc = f.leading().unwrap().clone();
    if lc.is_one() {
        return zassenhaus_monic(f);
    }
    // g(t) = lc^(n-1) f(t / lc) is monic; factors map back by t -> lc t.
    let g = monic_transform(f);
    debug_assert!(g.is_monic());
    zassenhaus_monic(&g)
        .into_iter()
        .map(|h| h.compose(&PolyZ::new(vec![BigInt::zero(), lc.clone()])).primitive_part())
        .collect()
}

fn monic_transform(f: &PolyZ) -> PolyZ {
    let n = f.degree().unwrap();
    let lc = f.leading().unwrap().clone();
    PolyZ::new((0..=n).map(|k| if k == n { BigInt::one() } else { f.coeff(k) * num_traits::pow(lc.clone(), n - 1 - k) }).collect())
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn reduce(f: &PolyZ, m: &BigInt) -> PolyZ {
    PolyZ::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

fn lift_modp(f: &[u64]) -> PolyZ {
    PolyZ::new(f.iter().map(|&c| BigInt::from(c)).collect())
}

/// Lift `f = g h mod p` (g monic) to `mod p^k`.
fn hensel_pair(f: &PolyZ, g: &[u64], h: &[u64], p: u64, k: u32) -> (PolyZ, PolyZ) {
    let (_, _, t) = modp::xgcd(g, h, p);
    let pb = BigInt::from(p);
    let mut gz = lift_modp(g);
    let mut hz = lift_modp(h);
    let mut pk = pb.clone();
    for _ in 1..k {
        let e = &(f - &(&gz * &hz));
        let e: Vec<u64> = modp::trim(
            e.coeffs().iter().map(|c| (c / &pk).mod_floor(&pb).try_into().unwrap()).collect(),
        );
        // b = t e mod g, a = (e - h b) / g
        let b = modp::rem(&modp::mul(&t, &e, p), g, p);
        let a = modp::div_rem(&modp::sub(&e, &modp::mul(h, &b, p), p), g, p).0;
        let next = &pk * &pb;
        gz = reduce(&(&gz + &lift_modp(&b).scale(&pk)), &next);
        hz = reduce(&(&hz + &lift_modp(&a).scale(&pk)), &next);
        pk = next;
    }
    (gz, hz)
}

fn zassenhaus_monic(f: &PolyZ) -> Vec<PolyZ> {
    let n = f.degree().unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    // pick the prime among a few good ones giving the fewest modular factors
    let mut best: Option<(u64, Vec<Vec<u64>>)> = None;
    let mut tried = 0;
    for p in primes_up_to(2000).into_iter().skip(1) {
        let fp = f.reduce_mod(p);
        if fp.len() != n + 1 || !modp::is_squarefree(&fp, p) {
            continue;
        }
        let facs = modp::factor_squarefree(&fp, p, &mut rng);
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried >= 5 {
            break;
        }
    }
    let (p, facs) = best.expect("squarefree polynomial has a good prime below 2000");
    if facs.len() == 1 {
        return vec![f.clone()];
    }
    // Mignotte: factor coefficients are bounded by 2^n |f|_2.
    let bound = (BigInt::one() << n) * f.l2_norm_ceil() * 2 + 1;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut pk = pb.clone();
    while pk <= bound {
        pk *= &pb;
        k += 1;
    }

    let mut lifted: Vec<PolyZ> = Vec::new();
    let mut rest_z = f.clone();
    let mut rest_facs = facs;
    while rest_facs.len() > 1 {
        let g = rest_facs.remove(0);
        let h = rest_facs.iter().fold(vec![1u64], |acc, q| modp::mul(&acc, q, p));
        let (gl, hl) = hensel_pair(&rest_z, &g, &h, p, k);
        lifted.push(gl);
        rest_z = hl;
    }
    lifted.push(reduce(&rest_z, &pk));

    recombine(f, lifted, &pk)
}

fn recombine(f: &PolyZ, mut lifted: Vec<PolyZ>, pk: &BigInt) -> Vec<PolyZ> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let r = lifted.len();
        let mut found = false;
        for subset in combinations(r, size) {
            let prod = subset.iter().fold(PolyZ::one(), |acc, &i| reduce(&(&acc * &lifted[i]), pk));
            let cand = PolyZ::new(prod.coeffs().iter().map(|c| symmetric(c, pk)).collect());
            if let Some(q) = rest.div_exact(&cand) {
                out.push(cand);
                rest = q;
                let mut keep = Vec::new();
                for (i, l) in lifted.into_iter().enumerate() {
                    if !subset.contains(&i) {
                        keep.push(l);
                    }
                }
                lifted = keep;
                found = true;
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        out.push(rest);
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}
