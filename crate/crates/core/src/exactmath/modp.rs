//! Dense polynomials over `F_p` (`p` below `2^63`), ascending coefficients.

use num_bigint::BigUint;
use rand::Rng;

use super::numtheory::{inv_mod, mul_mod};

pub type PolyP = Vec<u64>;

pub fn trim(mut a: PolyP) -> PolyP {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn deg(a: &[u64]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> PolyP {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p).collect())
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> PolyP {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect(),
    )
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> PolyP {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    trim(out)
}

pub fn scale(a: &[u64], c: u64, p: u64) -> PolyP {
    trim(a.iter().map(|&x| mul_mod(x, c, p)).collect())
}

pub fn monic(a: &[u64], p: u64) -> PolyP {
    match a.last() {
        None => Vec::new(),
        Some(&l) => scale(a, inv_mod(l, p).expect("unit leading coefficient"), p),
    }
}

pub fn div_rem(a: &[u64], b: &[u64], p: u64) -> (PolyP, PolyP) {
    let db = deg(b).expect("division by zero polynomial");
    let linv = inv_mod(b[db], p).expect("unit leading coefficient");
    let mut r = trim(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let c = mul_mod(r[dr], linv, p);
        q[dr - db] = c;
        for (j, &bj) in b.iter().enumerate() {
            let v = mul_mod(c, bj, p);
            r[dr - db + j] = (r[dr - db + j] + p - v) % p;
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub fn rem(a: &[u64], b: &[u64], p: u64) -> PolyP {
    div_rem(a, b, p).1
}

pub fn gcd(a: &[u64], b: &[u64], p: u64) -> PolyP {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

/// Extended gcd: `(g, s, t)` with `s a + t b = g`, `g` monic.
pub fn xgcd(a: &[u64], b: &[u64], p: u64) -> (PolyP, PolyP, PolyP) {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = sub(&t0, &mul(&q, &t1, p), p);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let l = inv_mod(*r0.last().unwrap(), p).unwrap();
    (scale(&r0, l, p), scale(&s0, l, p), scale(&t0, l, p))
}

pub fn derivative(a: &[u64], p: u64) -> PolyP {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| mul_mod(c, i as u64 % p, p)).collect())
}

/// `base^e mod f`.
pub fn pow_mod(base: &[u64], e: &BigUint, f: &[u64], p: u64) -> PolyP {
    let mut acc = vec![1u64];
    let b = rem(base, f, p);
    for i in (0..e.bits()).rev() {
        acc = rem(&mul(&acc, &acc, p), f, p);
        if e.bit(i) {
            acc = rem(&mul(&acc, &b, p), f, p);
        }
    }
    rem(&acc, f, p)
}

pub fn is_squarefree(f: &[u64], p: u64) -> bool {
    let d = derivative(f, p);
    if d.is_empty() {
        return deg(f) == Some(0);
    }
    deg(&gcd(f, &d, p)) == Some(0)
}

/// Distinct degree factorisation of a monic squarefree polynomial.
pub fn distinct_degree(f: &[u64], p: u64) -> Vec<(usize, PolyP)> {
    let mut out = Vec::new();
    let mut rest = f.to_vec();
    let x = vec![0u64, 1];
    let mut h = x.clone();
    let pb = BigUint::from(p);
    let mut d = 0;
    while deg(&rest).unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = pow_mod(&h, &pb, &rest, p);
        let g = gcd(&rest, &sub(&h, &x, p), p);
        if deg(&g).unwrap_or(0) > 0 {
            out.push((d, g.clone()));
            rest = div_rem(&rest, &g, p).0;
            h = rem(&h, &rest, p);
        }
    }
    if deg(&rest).unwrap_or(0) > 0 {
        let dr = deg(&rest).unwrap();
        out.push((dr, rest));
    }
    out
}

/// Cantor–Zassenhaus splitting of a product of irreducibles of degree `d` (`p` odd).
pub fn equal_degree<R: Rng>(f: &[u64], d: usize, p: u64, rng: &mut R) -> Vec<PolyP> {
    let n = deg(f).unwrap();
    if n == d {
        return vec![monic(f, p)];
    }
    let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a: PolyP = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if deg(&a).unwrap_or(0) == 0 {
            continue;
        }
        let b = sub(&pow_mod(&a, &e, f, p), &[1], p);
        let g = gcd(f, &b, p);
        let dg = deg(&g).unwrap_or(0);
        if dg > 0 && dg < n {
            let other = div_rem(f, &g, p).0;
            let mut out = equal_degree(&g, d, p, rng);
            out.extend(equal_degree(&other, d, p, rng));
            return out;
        }
    }
}

/// Monic irreducible factors of a monic squarefree polynomial (`p` odd).
pub fn factor_squarefree<R: Rng>(f: &[u64], p: u64, rng: &mut R) -> Vec<PolyP> {
    let mut out = Vec::new();
    for (d, g) in distinct_degree(f, p) {
        out.extend(equal_degree(&g, d, p, rng));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn factor_small() {
        let p = 7;
        // (t-1)(t-2)(t^2+1) over F_7; t^2+1 is irreducible mod 7
        let f = mul(&mul(&[6, 1], &[5, 1], p), &[1, 0, 1], p);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let mut fs = factor_squarefree(&f, p, &mut rng);
        fs.sort();
        assert_eq!(fs, vec![vec![1, 0, 1], vec![5, 1], vec![6, 1]]);
    }

    #[test]
    fn xgcd_identity() {
        let p = 101;
        let a = vec![3, 0, 1, 5];
        let b = vec![7, 2, 1];
        let (g, s, t) = xgcd(&a, &b, p);
        assert_eq!(add(&mul(&s, &a, p), &mul(&t, &b, p), p), g);
    }
}
