//! Integral points of bounded height on the curves for `p = 2, 3`, and the
//! substitutions back to `x`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::ellcurve::WeierstrassModel;
use crate::{Error, Result};

/// `Y^2 = X(X^2 + 20 alpha X + 30 alpha^2)` for `p = 2` and
/// `Y^2 = X^3 + 630 alpha^2` for `p = 3`.
pub fn small_exponent_curve(p: u32, alpha: u32) -> Result<WeierstrassModel> {
    if ![1, 2, 5, 10].contains(&alpha) {
        return Err(Error::Precondition(format!("alpha = {alpha} not in {{1,2,5,10}}")));
    }
    let a = alpha as i64;
    Ok(match p {
        2 => WeierstrassModel::from_ints([0, 20 * a, 0, 30 * a * a, 0]),
        3 => WeierstrassModel::from_ints([0, 0, 0, 0, 630 * a * a]),
        _ => return Err(Error::Precondition(format!("p = {p} not in {{2, 3}}"))),
    })
}

/// Every integral point with `|X| <= bound`, found by completing the square.
pub fn bounded_integral_points(e: &WeierstrassModel, bound: u64) -> Result<Vec<(BigInt, BigInt)>> {
    if e.is_singular() {
        return Err(Error::SingularModel);
    }
    let [a1, a2, a3, a4, a6] = e.integer_coeffs().ok_or(Error::NonIntegralModel)?;
    let b = bound as i64;
    let mut pts: Vec<(BigInt, BigInt)> = (-b..=b)
        .into_par_iter()
        .flat_map_iter(|x| {
            let x = BigInt::from(x);
            // (2Y + a1 X + a3)^2 = 4X^3 + b2 X^2 + 2 b4 X + b6
            let lin = &a1 * &x + &a3;
            let rhs = BigInt::from(4) * (&x * &x * &x + &a2 * &x * &x + &a4 * &x + &a6) + &lin * &lin;
            let mut found = Vec::new();
            if !rhs.is_negative() {
                let s = rhs.sqrt();
                if &s * &s == rhs {
                    for t in [s.clone(), -s] {
                        let num = &t - &lin;
                        if num.is_even() {
                            let p = (x.clone(), num / 2);
                            if !found.contains(&p) {
                                found.push(p);
                            }
                        }
                    }
                }
            }
            found
        })
        .collect();
    pts.sort();
    Ok(pts)
}

fn is_perfect_power(n: &BigInt, p: u32) -> bool {
    let r = if n.is_negative() { -(-n).nth_root(p) } else { n.nth_root(p) };
    r.pow(p) == *n
}

/// Values of `x` recovered from points, kept only if `x(3x^4+20x^2+10)` is
/// a `p`-th power and `gcd(x, 10) = alpha`.
pub fn points_to_x(points: &[(BigInt, BigInt)], alpha: u32, p: u32) -> Result<Vec<BigInt>> {
    let a = BigInt::from(alpha);
    let three_a = BigInt::from(3) * &a;
    let mut xs = Vec::new();
    for (px, py) in points {
        let cands: Vec<BigInt> = match p {
            // X = 3 alpha x^2, Y = 3 alpha x z2
            2 => {
                if !px.is_multiple_of(&three_a) {
                    continue;
                }
                let x2 = px / &three_a;
                if x2.is_negative() || x2.sqrt().pow(2) != x2 {
                    continue;
                }
                let x = x2.sqrt();
                if !x.is_zero() && !py.is_multiple_of(&(&three_a * &x)) {
                    continue;
                }
                vec![x.clone(), -x]
            }
            // X = 3 alpha z2, Y = 3 alpha (3x^2 + 10)
            3 => {
                if !px.is_multiple_of(&three_a) || !py.is_multiple_of(&three_a) {
                    continue;
                }
                let t: BigInt = py / &three_a - 10;
                if t.is_negative() || !t.is_multiple_of(&BigInt::from(3)) {
                    continue;
                }
                let x2: BigInt = t / 3;
                if x2.sqrt().pow(2) != x2 {
                    continue;
                }
                let x = x2.sqrt();
                vec![x.clone(), -x]
            }
            _ => return Err(Error::Precondition(format!("p = {p} not in {{2, 3}}"))),
        };
        for x in cands {
            let value = &x * (BigInt::from(3) * x.pow(4) + BigInt::from(20) * &x * &x + 10);
            if x.gcd(&BigInt::from(10)) == a && is_perfect_power(&value, p) && !xs.contains(&x) {
                xs.push(x);
            }
        }
    }
    xs.sort();
    Ok(xs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(i64, i64)]) -> Vec<(BigInt, BigInt)> {
        let mut p: Vec<_> = v.iter().map(|&(x, y)| (BigInt::from(x), BigInt::from(y))).collect();
        p.sort();
        p
    }

    #[test]
    fn small_box() {
        let e = small_exponent_curve(2, 1).unwrap();
        let p = bounded_integral_points(&e, 2000).unwrap();
        assert_eq!(p, pts(&[(-6, 18), (-6, -18), (-5, 15), (-5, -15), (0, 0), (1080, 35820), (1080, -35820)]));
    }

    #[test]
    fn substitution() {
        assert_eq!(points_to_x(&pts(&[(0, 0)]), 10, 2).unwrap(), vec![BigInt::zero()]);
        assert!(points_to_x(&pts(&[(0, 0)]), 1, 2).unwrap().is_empty());
        assert!(points_to_x(&pts(&[(1080, 35820)]), 1, 2).unwrap().is_empty());
        assert_eq!(points_to_x(&pts(&[(30, 300)]), 10, 3).unwrap(), vec![BigInt::zero()]);
    }
}
