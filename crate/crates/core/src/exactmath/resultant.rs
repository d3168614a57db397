use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Zero};

use super::poly::PolyZ;
use crate::{Error, Result};

/// Resultant of two nonzero integer polynomials by the subresultant PRS.
pub fn resultant(p: &PolyZ, q: &PolyZ) -> Result<BigInt> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (mut a, mut b) = (p.clone(), q.clone());
    let mut sign = BigInt::one();
    let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
    if da < db {
        std::mem::swap(&mut a, &mut b);
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
    }
    let db = b.degree().unwrap();
    if db == 0 {
        return Ok(sign * num_traits::pow(b.leading().unwrap().clone(), a.degree().unwrap()));
    }

    let ca = a.content();
    let cb = b.content();
    let t = num_traits::pow(ca.clone(), b.degree().unwrap()) * num_traits::pow(cb.clone(), a.degree().unwrap());
    a = PolyZ::new(a.coeffs().iter().map(|c| c / &ca).collect());
    b = PolyZ::new(b.coeffs().iter().map(|c| c / &cb).collect());

    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let (dega, degb) = (a.degree().unwrap(), b.degree().unwrap());
        let delta = dega - degb;
        if dega % 2 == 1 && degb % 2 == 1 {
            sign = -sign;
        }
        let r = a.pseudo_rem(&b);
        a = b;
        let divisor = &g * num_traits::pow(h.clone(), delta);
        b = PolyZ::new(r.coeffs().iter().map(|c| exact(c, &divisor)).collect());
        g = a.leading().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            exact(&num_traits::pow(g.clone(), delta), &num_traits::pow(h.clone(), delta - 1))
        };
        match b.degree() {
            None => return Ok(BigInt::zero()),
            Some(0) => {
                let dega = a.degree().unwrap();
                let lb = b.leading().unwrap().clone();
                let hh = if dega == 0 {
                    h
                } else {
                    exact(&num_traits::pow(lb, dega), &num_traits::pow(h, dega - 1))
                };
                return Ok(sign * t * hh);
            }
            Some(_) => {}
        }
    }
}

fn exact(n: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = n.div_rem(d);
    debug_assert!(r.is_zero(), "inexact division in subresultant chain");
    q
}


#[cfg(test)]
mod tests {
    use super::*;

    fn z(cs: &[i64]) -> PolyZ {
        PolyZ::from_i64s(cs)
    }

    #[test]
    fn small_examples() {
        assert_eq!(resultant(&z(&[-1, 1]), &z(&[1, 1])).unwrap(), BigInt::from(2));
        assert_eq!(resultant(&z(&[1, 0, 1]), &z(&[-1, 0, 1])).unwrap(), BigInt::from(4));
        assert_eq!(resultant(&z(&[3]), &z(&[1, 0, 1])).unwrap(), BigInt::from(9));
        assert_eq!(resultant(&z(&[-1, 1]), &z(&[-1, 0, 1])).unwrap(), BigInt::zero());
        assert_eq!(resultant(&PolyZ::zero(), &z(&[1])), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn non_primitive_inputs() {
        // Res(2t - 2, 3t + 3) = 2*3 - (-2)*3 = 12
        assert_eq!(resultant(&z(&[-2, 2]), &z(&[3, 3])).unwrap(), BigInt::from(12));
    }
}
