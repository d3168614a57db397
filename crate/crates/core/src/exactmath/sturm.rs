//! Exact real-root location by Sturm sequences, used for the Deligne bound.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::poly::{PolyQ, PolyZ};

fn primitive(p: &PolyQ) -> PolyZ {
    // Positive rescaling only, so signs are preserved.
    let z = p.clear_denominators().0;
    let c = z.content();
    if c.is_zero() {
        return z;
    }
    PolyZ::new(z.coeffs().iter().map(|a| a / &c).collect())
}

fn gcd_q(a: &PolyQ, b: &PolyQ) -> PolyQ {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let r = a.div_rem(&b).1;
        a = b;
        b = primitive(&r).to_q();
    }
    a
}

/// Squarefree part of a nonzero polynomial.
pub fn squarefree_part(f: &PolyZ) -> PolyZ {
    let fq = f.to_q();
    let g = gcd_q(&fq, &fq.derivative());
    primitive(&fq.div_rem(&g).0)
}

fn sturm_chain(f: &PolyZ) -> Vec<PolyZ> {
    let mut chain = vec![f.clone(), primitive(&f.derivative().to_q())];
    loop {
        let n = chain.len();
        let r = chain[n - 2].to_q().div_rem(&chain[n - 1].to_q()).1;
        if r.is_zero() {
            break;
        }
        chain.push(-&primitive(&r));
    }
    chain
}

/// Sign of `p(s * sqrt(m))` for `s = +-1`.
fn sign_at_sqrt(p: &PolyZ, m: u64, s: i32) -> i32 {
    let mb = BigInt::from(m);
    // p(s sqrt m) = a + s b sqrt m with a = sum c_{2k} m^k, b = sum c_{2k+1} m^k.
    let mut a = BigInt::zero();
    let mut b = BigInt::zero();
    let mut mk = BigInt::from(1);
    let cs = p.coeffs();
    let mut k = 0;
    while 2 * k < cs.len() {
        a += &cs[2 * k] * &mk;
        if 2 * k + 1 < cs.len() {
            b += &cs[2 * k + 1] * &mk;
        }
        mk *= &mb;
        k += 1;
    }
    if s < 0 {
        b = -b;
    }
    let sg = |x: &BigInt| if x.is_positive() { 1 } else if x.is_negative() { -1 } else { 0 };
    let (sa, sb) = (sg(&a), sg(&b));
    if sa == 0 || sa == sb {
        return sb;
    }
    if sb == 0 {
        return sa;
    }
    // a and b*sqrt(m) have opposite signs: the larger square wins.
    let lhs = &a * &a;
    let rhs = &b * &b * &mb;
    if lhs > rhs {
        sa
    } else if lhs < rhs {
        sb
    } else {
        0
    }
}

fn variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut v = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

fn sign_at_pos_inf(p: &PolyZ) -> i32 {
    if p.leading().unwrap().is_positive() {
        1
    } else {
        -1
    }
}

fn reflect(f: &PolyZ) -> PolyZ {
    PolyZ::new(f.coeffs().iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() }).collect())
}

/// Number of distinct real roots in `(sqrt(m), infinity)`.
fn roots_above_sqrt(sf: &PolyZ, m: u64) -> usize {
    let chain = sturm_chain(sf);
    let at = variations(chain.iter().map(|p| sign_at_sqrt(p, m, 1)));
    let inf = variations(chain.iter().map(sign_at_pos_inf));
    at - inf
}

/// Number of distinct real roots of a nonzero polynomial.
pub fn real_root_count(f: &PolyZ) -> usize {
    let sf = squarefree_part(f);
    if sf.degree() == Some(0) {
        return 0;
    }
    let chain = sturm_chain(&sf);
    let neg = variations(chain.iter().map(|p| {
        let s = sign_at_pos_inf(p);
        if p.degree().unwrap() % 2 == 1 {
            -s
        } else {
            s
        }
    }));
    neg - variations(chain.iter().map(sign_at_pos_inf))
}

/// True iff every complex root of `f` is real with absolute value at most
/// `sqrt(m)`.
pub fn roots_real_within_sqrt(f: &PolyZ, m: u64) -> bool {
    let sf = squarefree_part(f);
    let d = sf.degree().unwrap_or(0);
    if d == 0 {
        return true;
    }
    real_root_count(&sf) == d && roots_above_sqrt(&sf, m) == 0 && roots_above_sqrt(&reflect(&sf), m) == 0
}
