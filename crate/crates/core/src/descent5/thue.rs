//! Bounded search for solutions of Thue equations `g(u, v) = m`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::exactmath::BiPolyQ;
use crate::{Error, Result};

/// Roots of `sum c_k t^(n-k)` (with `c_0 != 0`) by Durand-Kerner iteration.
fn complex_roots(c: &[f64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let lead = c[0];
    let eval = |z: Complex64| c.iter().fold(Complex64::zero(), |acc, &a| acc * z + a / lead);
    let mut z: Vec<Complex64> = (0..n).map(|k| Complex64::from_polar(1.0 + k as f64 * 0.1, 0.4 + k as f64 * 1.3)).collect();
    let scale = 1.0 + c.iter().skip(1).map(|a| (a / lead).abs()).fold(0.0, f64::max);
    for zi in z.iter_mut() {
        *zi *= scale;
    }
    for _ in 0..2000 {
        let mut delta: f64 = 0.0;
        for i in 0..n {
            let denom = (0..n).filter(|&j| j != i).fold(Complex64::new(1.0, 0.0), |acc, j| acc * (z[i] - z[j]));
            let step = eval(z[i]) / denom;
            z[i] -= step;
            delta = delta.max(step.norm() / (1.0 + z[i].norm()));
        }
        if delta < 1e-15 {
            break;
        }
    }
    z
}

fn eval_form(c: &[BigInt], u: &BigInt, v: &BigInt) -> BigInt {
    let n = c.len() - 1;
    let mut acc = BigInt::zero();
    for (k, ck) in c.iter().enumerate() {
        acc += ck * u.pow((n - k) as u32) * v.pow(k as u32);
    }
    acc
}

/// All `(u, v)` with `max(|u|, |v|) <= bound` and `g(u, v) = m`.
///
/// For `|v|` below a threshold `V0` every `u` is tried. Beyond it one
/// linear factor `u - theta v` must be smaller than `1/2` and `theta` must
/// be real, so only `round(theta v)` and its neighbours are tried. `V0`
/// comes from `|m| >= |c_0| |u - theta_i v| prod_{j != i} |theta_i - theta_j| |v| / 2`.
/// This is a verification within the bound, not a completeness proof.
pub fn thue_search(g: &BiPolyQ, m: &BigInt, bound: u64) -> Result<Vec<(BigInt, BigInt)>> {
    let n = g.homogeneous_degree().ok_or_else(|| Error::Precondition("form is not homogeneous".into()))?;
    if m.is_zero() {
        return Err(Error::Precondition("right-hand side must be nonzero".into()));
    }
    if !g.is_integral() || n < 2 {
        return Err(Error::Precondition("need an integral form of degree >= 2".into()));
    }
    let mut c: Vec<BigInt> = g.form_coeffs(n).iter().map(|x| x.to_integer()).collect();
    let swapped = c[0].is_zero();
    if swapped {
        c.reverse();
        if c[0].is_zero() {
            return Err(Error::Precondition("form divisible by u v".into()));
        }
    }
    let cf: Vec<f64> = c.iter().map(|x| x.to_f64().unwrap()).collect();
    let roots = complex_roots(&cf);
    let mf = m.to_f64().unwrap().abs();
    let b = bound as i64;
    // Smallest V0 for which the linear-factor argument applies.
    let mut v0: i64 = 1;
    for (i, t) in roots.iter().enumerate() {
        let sep: f64 = roots.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, s)| (t - s).norm()).product();
        if sep == 0.0 {
            return Err(Error::Precondition("form is not squarefree".into()));
        }
        let eps = |v: f64| mf / (cf[0].abs() * sep * (v / 2.0).powi(n as i32 - 1));
        let im = t.im.abs();
        let mut v = 1.0f64;
        while eps(v) >= 0.25 || (im > 1e-9 && im * v <= eps(v) + 1.0) {
            v *= 1.1;
            if v > 1e12 {
                return Err(Error::Precondition("threshold search did not converge".into()));
            }
        }
        v0 = v0.max(v.ceil() as i64);
    }
    let mut out = Vec::new();
    let check = |u: i64, v: i64, out: &mut Vec<(BigInt, BigInt)>| {
        if u.abs() > b || v.abs() > b {
            return;
        }
        let (ub, vb) = (BigInt::from(u), BigInt::from(v));
        if &eval_form(&c, &ub, &vb) == m {
            let p = if swapped { (vb, ub) } else { (ub, vb) };
            if !out.contains(&p) {
                out.push(p);
            }
        }
    };
    for v in -b.min(v0)..=b.min(v0) {
        for u in -b..=b {
            check(u, v, &mut out);
        }
    }
    let real: Vec<f64> = roots.iter().filter(|t| t.im.abs() < 1e-6 * (1.0 + t.re.abs())).map(|t| t.re).collect();
    for v in (v0 + 1)..=b {
        for s in [v, -v] {
            for &t in &real {
                let u0 = (t * s as f64).round() as i64;
                for u in u0 - 1..=u0 + 1 {
                    check(u, s, &mut out);
                }
            }
        }
    }
    out.sort();
    Ok(out)
}
