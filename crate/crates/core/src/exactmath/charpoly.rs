use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::numtheory::{inv_mod, mod_big, mul_mod, word_primes};
use super::poly::{PolyQ, PolyZ};
use crate::{Error, Result};

/// Characteristic polynomial `det(tI - A)` over `F_p` by reduction to
/// Hessenberg form. Returns ascending coefficients of length `n + 1`.
pub fn charpoly_mod_p(mut h: Vec<Vec<u64>>, p: u64) -> Vec<u64> {
    let n = h.len();
    let sub = |a: u64, b: u64| if a >= b { a - b } else { a + p - b };
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else { continue };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let t_inv = inv_mod(h[m][m - 1], p).expect("nonzero pivot");
        for i in m + 1..n {
            let u = mul_mod(h[i][m - 1], t_inv, p);
            if u == 0 {
                continue;
            }
            #[allow(clippy::needless_range_loop)]
            for j in 0..n {
                let v = mul_mod(u, h[m][j], p);
                h[i][j] = sub(h[i][j], v);
            }
            for row in h.iter_mut() {
                let v = mul_mod(u, row[i], p);
                row[m] = (row[m] + v) % p;
            }
        }
    }
    // polys[m] = charpoly of the leading m x m block
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 0..n {
        let prev = &polys[m];
        let mut next = vec![0u64; m + 2];
        for (k, &c) in prev.iter().enumerate() {
            next[k + 1] = (next[k + 1] + c) % p;
            next[k] = sub(next[k], mul_mod(h[m][m], c, p));
        }
        let mut t = 1u64;
        for i in 1..=m {
            t = mul_mod(t, h[m - i + 1][m - i], p);
            let coef = mul_mod(t, h[m - i][m], p);
            if coef == 0 {
                continue;
            }
            for (k, &c) in polys[m - i].iter().enumerate() {
                next[k] = sub(next[k], mul_mod(coef, c, p));
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

/// Symmetric CRT lift of `residues[i] mod moduli[i]` (pairwise coprime).
pub fn crt_symmetric(residues: &[u64], moduli: &[u64]) -> BigInt {
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for (&r, &p) in residues.iter().zip(moduli) {
        let xm = mod_big(&x, p);
        let minv = inv_mod(mod_big(&m, p), p).expect("coprime moduli");
        let diff = (r + p - xm) % p;
        let k = mul_mod(diff, minv, p);
        x += &m * BigInt::from(k);
        m *= BigInt::from(p);
    }
    if &x * 2 > m {
        x -= &m;
    }
    x
}

/// Bits needed to bound the coefficients of a degree `n` characteristic
/// polynomial whose eigenvalues satisfy `|lambda| <= rho`: every coefficient
/// is at most `(1 + rho)^n` in absolute value.
pub fn charpoly_bound_bits(n: usize, rho: f64) -> u64 {
    ((n as f64) * (1.0 + rho).log2()).ceil() as u64 + 2
}

/// Reconstruct an integral monic characteristic polynomial of degree `n`
/// from its images modulo word-size primes.
///
/// `image(p)` returns the ascending coefficient residues, or `None` when `p`
/// is unsuitable (the caller's reduction is degenerate there). Enough primes
/// are used to exceed twice the coefficient bound, plus one extra prime that
/// must agree with the lift.
pub fn integer_charpoly_from_images<F>(n: usize, bound_bits: u64, image: F) -> Result<PolyZ>
where
    F: Fn(u64) -> Option<Vec<u64>> + Sync,
{
    let need = (bound_bits as usize + 1).div_ceil(61) + 1;
    let mut pool = word_primes(need + 8);
    let mut images: Vec<(u64, Vec<u64>)> = Vec::new();
    while images.len() < need {
        if pool.is_empty() {
            let last = images.last().map(|x| x.0).unwrap_or(1 << 62);
            pool = word_primes(need + 8 + images.len() * 2).into_iter().filter(|&p| p < last).collect();
            if pool.is_empty() {
                return Err(Error::Consistency("ran out of word-size primes".into()));
            }
        }
        let batch: Vec<u64> = pool.drain(..(need - images.len()).min(pool.len())).collect();
        let got: Vec<(u64, Option<Vec<u64>>)> = batch.par_iter().map(|&p| (p, image(p))).collect();
        for (p, im) in got {
            if let Some(v) = im {
                if v.len() != n + 1 {
                    return Err(Error::Consistency(format!(
                        "charpoly image has degree {} instead of {n}",
                        v.len().saturating_sub(1)
                    )));
                }
                images.push((p, v));
            }
        }
    }
    let (check, lift) = images.split_last().unwrap();
    let moduli: Vec<u64> = lift.iter().map(|(p, _)| *p).collect();
    let coeffs: Vec<BigInt> = (0..=n)
        .map(|k| {
            let rs: Vec<u64> = lift.iter().map(|(_, v)| v[k]).collect();
            crt_symmetric(&rs, &moduli)
        })
        .collect();
    let poly = PolyZ::new(coeffs);
    if poly.reduce_mod(check.0) != trim(&check.1) {
        return Err(Error::Consistency("charpoly CRT lift disagrees with check prime".into()));
    }
    Ok(poly)
}

fn trim(v: &[u64]) -> Vec<u64> {
    let mut v = v.to_vec();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Exact characteristic polynomial of a square rational matrix.
///
/// Denominators are cleared, the integral matrix is handled by modular images
/// and CRT under the row-sum bound on the spectral radius.
pub fn charpoly_exact(m: &[Vec<BigRational>]) -> Result<PolyQ> {
    let n = m.len();
    if let Some(bad) = m.iter().find(|r| r.len() != n) {
        return Err(Error::NonSquare { rows: n, cols: bad.len() });
    }
    if n == 0 {
        return Ok(PolyQ::one());
    }
    let den = m.iter().flatten().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let a: Vec<Vec<BigInt>> =
        m.iter().map(|row| row.iter().map(|c| (c * &den).to_integer()).collect()).collect();
    let rho: BigInt = a.iter().map(|row| row.iter().map(|c| c.abs()).sum::<BigInt>()).max().unwrap();
    let bits = n as u64 * (rho.bits() + 1) + 2;
    let chi = integer_charpoly_from_images(n, bits, |p| {
        let red: Vec<Vec<u64>> = a.iter().map(|row| row.iter().map(|c| mod_big(c, p)).collect()).collect();
        Some(charpoly_mod_p(red, p))
    })?;
    // chi_M(t) = den^{-n} chi_A(den t)
    let coeffs = (0..=n)
        .map(|k| BigRational::new(chi.coeff(k), num_traits::pow(den.clone(), n - k)))
        .collect();
    Ok(PolyQ::new(coeffs))
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    fn q(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter().map(|r| r.iter().map(|&c| rat(c, 1)).collect()).collect()
    }

    #[test]
    fn trivial_examples() {
        let id = charpoly_exact(&q(&[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(id, PolyQ::from_i64s(&[1, -2, 1]));
        // companion matrix of t^3 - 2
        let comp = charpoly_exact(&q(&[&[0, 0, 2], &[1, 0, 0], &[0, 1, 0]])).unwrap();
        assert_eq!(comp, PolyQ::from_i64s(&[-2, 0, 0, 1]));
        let zero = charpoly_exact(&q(&[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]])).unwrap();
        assert_eq!(zero, PolyQ::from_i64s(&[0, 0, 0, 1]));
        assert!(matches!(charpoly_exact(&q(&[&[1, 2]])), Err(Error::NonSquare { .. })));
    }

    #[test]
    fn rational_entries() {
        let m = vec![vec![rat(1, 2), rat(1, 3)], vec![rat(0, 1), rat(-1, 4)]];
        let chi = charpoly_exact(&m).unwrap();
        // (t - 1/2)(t + 1/4) = t^2 - t/4 - 1/8
        assert_eq!(chi, PolyQ::new(vec![rat(-1, 8), rat(-1, 4), rat(1, 1)]));
    }

    #[test]
    fn crt_roundtrip() {
        let ps = word_primes(3);
        for v in [-12345678901234567i64, 0, 1, -1, i64::MAX] {
            let b = BigInt::from(v);
            let rs: Vec<u64> = ps.iter().map(|&p| mod_big(&b, p)).collect();
            assert_eq!(crt_symmetric(&rs, &ps), b);
        }
    }
}
