use std::collections::BTreeSet;

use num_bigint::{BigInt, Sign};
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(m as i128) as u64)
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller–Rabin with the first twenty prime bases. Exact below `3.3e24`,
/// probabilistic above.
pub fn is_probable_prime(n: &BigInt) -> bool {
    if n.sign() != Sign::Plus {
        return false;
    }
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let bases = primes_up_to(71);
    for &p in &bases {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'witness: for &a in &bases {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Primes `p` with `lo <= p < hi`.
pub fn primes_in_range(lo: u64, hi: u64) -> Vec<u64> {
    if hi == 0 {
        return Vec::new();
    }
    primes_up_to(hi - 1).into_iter().filter(|&p| p >= lo).collect()
}

/// `count` distinct primes just below `2^62`, in decreasing order.
pub fn word_primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut cand = (1u64 << 62) - 1;
    while out.len() < count {
        if is_prime_u64(cand) {
            out.push(cand);
        }
        cand -= 2;
    }
    out
}

/// `p`-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: u64) -> u32 {
    assert!(!n.is_zero(), "valuation of zero");
    let mut v = 0;
    let mut m = n.abs();
    let pb = BigInt::from(p);
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// Least nonnegative residue of `n` modulo `m`.
pub fn mod_big(n: &BigInt, m: u64) -> u64 {
    n.mod_floor(&BigInt::from(m)).to_u64().expect("residue fits")
}

/// Legendre symbol `(a/p)` for an odd prime `p`.
pub fn legendre(a: u64, p: u64) -> i32 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// The set `{ y^n mod q : y in Z/q }`.
pub fn power_residues(q: u64, n: u64) -> BTreeSet<u64> {
    (0..q).map(|y| pow_mod(y, n, q)).collect()
}

fn pollard_rho(n: &BigInt) -> BigInt {
    let one = BigInt::one();
    let mut c = BigInt::one();
    loop {
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut x = BigInt::from(2);
        let mut y = x.clone();
        let mut d = one.clone();
        while d == one {
            x = f(&x);
            y = f(&f(&y));
            d = (&x - &y).abs().gcd(n);
        }
        if &d != n {
            return d;
        }
        c += 1;
    }
}

/// `n = r^k` with `k >= 2` maximal, if any (`n > 1`).
fn perfect_power(n: &BigInt) -> Option<(BigInt, u32)> {
    let bits = n.bits() as u32;
    for k in (2..=bits).rev() {
        let r = n.nth_root(k);
        if r > BigInt::one() && num_traits::pow(r.clone(), k as usize) == *n {
            return Some((r, k));
        }
    }
    None
}

/// Complete factorisation by trial division to `10^5` followed by
/// Pollard rho. Intended for discriminants of moderate size.
pub fn factor_completely(n: &BigInt) -> Vec<(BigInt, u32)> {
    assert!(!n.is_zero());
    let mut m = n.abs();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    for p in primes_up_to(100_000) {
        if m.is_one() {
            break;
        }
        let pb = BigInt::from(p);
        let mut e = 0;
        while (&m % &pb).is_zero() {
            m /= &pb;
            e += 1;
        }
        if e > 0 {
            out.push((pb, e));
        }
    }
    let mut stack = vec![m];
    let mut big: Vec<BigInt> = Vec::new();
    while let Some(c) = stack.pop() {
        if c.is_one() {
            continue;
        }
        if is_probable_prime(&c) {
            big.push(c);
            continue;
        }
        if let Some((r, k)) = perfect_power(&c) {
            stack.extend(std::iter::repeat_n(r, k as usize));
            continue;
        }
        let d = pollard_rho(&c);
        stack.push(&c / &d);
        stack.push(d);
    }
    big.sort();
    for p in big {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_residue_examples() {
        assert_eq!(power_residues(7, 3), [0, 1, 6].into_iter().collect());
        assert_eq!(power_residues(3, 2), [0, 1].into_iter().collect());
        assert_eq!(power_residues(9, 1).len(), 9);
    }

    #[test]
    fn power_residues_closed_under_multiplication() {
        for q in primes_up_to(60) {
            for n in 1..8 {
                let s = power_residues(q, n);
                for a in &s {
                    for b in &s {
                        assert!(s.contains(&mul_mod(*a, *b, q)));
                    }
                }
            }
        }
    }

    #[test]
    fn miller_rabin_agrees_with_sieve() {
        let sieve: BTreeSet<u64> = primes_up_to(5000).into_iter().collect();
        for n in 0..5000 {
            assert_eq!(is_prime_u64(n), sieve.contains(&n), "{n}");
        }
        assert!(is_probable_prime(&BigInt::from(3391u64)));
        let m61 = (BigInt::one() << 127) - 1;
        assert!(is_probable_prime(&m61));
        assert!(!is_probable_prime(&(&m61 * BigInt::from(3))));
    }

    #[test]
    fn complete_factorisation() {
        let n = BigInt::from(2u64).pow(5) * BigInt::from(3391) * BigInt::from(1000003u64).pow(2);
        let f = factor_completely(&n);
        assert_eq!(
            f,
            vec![(BigInt::from(2), 5), (BigInt::from(3391), 1), (BigInt::from(1000003), 2)]
        );
    }

    #[test]
    fn inverses() {
        assert_eq!(inv_mod(3, 7), Some(5));
        assert_eq!(inv_mod(2, 4), None);
        let p = word_primes(1)[0];
        assert_eq!(mul_mod(inv_mod(12345, p).unwrap(), 12345, p), 1);
    }

    #[test]
    fn squares_of_large_primes_factor_quickly() {
        let q = BigInt::from(11920929280598959u64);
        let n = &q * &q * BigInt::from(75);
        assert_eq!(
            factor_completely(&n),
            vec![(BigInt::from(3), 1), (BigInt::from(5), 2), (q, 2)]
        );
    }
}
