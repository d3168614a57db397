//! Exponent bounds from congruences between Frey curves and newforms.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::newform::NewformClass;
use crate::ellcurve::{ap_trace, count_points_mod};
use crate::exactmath::{is_prime_u64, trial_factor, FactoredInteger, PolyZ};
use crate::freyfam::{FreyFamily, Validity};
use crate::{Error, Result};

/// Trial division bound used when rendering bounds.
pub const REPORT_TRIAL_BOUND: u64 = 100_000;

/// How the multiplicative case of the Hecke polynomial bound is evaluated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum CPrimeVariant {
    /// `C'(l+1) C'(-l-1)`, matching `+-(l+1) = c_l`.
    #[default]
    Faithful,
    /// `C'(l+1) C'(l-1)`, as printed.
    Printed,
}

impl FromStr for CPrimeVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "faithful" => Ok(CPrimeVariant::Faithful),
            "printed" => Ok(CPrimeVariant::Printed),
            _ => Err(Error::InvalidArgument(format!("variant must be faithful or printed, not {s}"))),
        }
    }
}

/// Reduction of a family member at a residue class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResidueTrace {
    Good(i64),
    Bad,
}

/// Residues `a mod l` that some admissible `x` can reduce to.
pub fn admissible_residues(fam: &FreyFamily, ell: u64) -> Vec<u64> {
    (0..ell)
        .filter(|&a| match fam.validity {
            Validity::Odd => ell != 2 || a == 1,
            Validity::Gcd10(alpha) => {
                let forced = |q: u64| (alpha as u64).is_multiple_of(q) == (a % q == 0);
                (ell != 2 || forced(2)) && (ell != 5 || forced(5))
            }
            Validity::Any => true,
        })
        .collect()
}

/// Trace of `E_a` at `l`, or `Bad` if `l` divides the discriminant of the
/// family model at `a`.
///
/// If the family model is not `l`-integral the trace is taken from the
/// minimal model of the smallest admissible member `x = a (mod l)`; this
/// relies on the trace depending on `x mod l` only.
pub fn family_trace(fam: &FreyFamily, a: u64, ell: u64) -> Result<ResidueTrace> {
    match fam.disc_mod(a, ell) {
        Some(0) => Ok(ResidueTrace::Bad),
        Some(_) => {
            let c = fam.reduce_at(a, ell).expect("integral when disc is");
            Ok(ResidueTrace::Good(ell as i64 + 1 - count_points_mod(c, ell) as i64))
        }
        None => {
            let x = (0..64)
                .map(|k| BigInt::from(a + k * ell))
                .find(|x| fam.validity.check(x).is_ok())
                .ok_or_else(|| Error::Precondition(format!("no admissible x = {a} mod {ell}")))?;
            Ok(ResidueTrace::Good(ap_trace(&fam.specialize(&x)?, ell)?))
        }
    }
}

fn check_ell(form: &NewformClass, ell: u64) -> Result<()> {
    if !is_prime_u64(ell) {
        return Err(Error::InvalidArgument(format!("{ell} is not prime")));
    }
    if form.level.is_multiple_of(ell) {
        return Err(Error::Precondition(format!("{ell} divides the level {} of {}", form.level, form.id)));
    }
    Ok(())
}

/// `|m(t)|` at a good residue and `|m(l+1) m(-l-1)|` at a bad one; this has
/// the prime support of the norm of `a_l(E_a) - c_l`, resp. `(l+1)^2 - c_l^2`.
pub fn local_term(fam: &FreyFamily, a: u64, ell: u64, form: &NewformClass) -> Result<BigInt> {
    check_ell(form, ell)?;
    if a >= ell {
        return Err(Error::InvalidArgument(format!("residue {a} not in 0..{ell}")));
    }
    let m = form.minpoly(ell)?;
    Ok(match family_trace(fam, a, ell)? {
        ResidueTrace::Good(t) => m.eval(&BigInt::from(t)).abs(),
        ResidueTrace::Bad => {
            let l1 = BigInt::from(ell + 1);
            (m.eval(&l1) * m.eval(&-l1)).abs()
        }
    })
}

fn product(v: impl IntoIterator<Item = BigInt>) -> BigInt {
    v.into_iter().fold(BigInt::one(), |acc, x| acc * x)
}

/// `B_l(f) = l * prod_a R_l(f, a)`.
pub fn single_bound_bl(fam: &FreyFamily, form: &NewformClass, ell: u64) -> Result<BigInt> {
    let terms = admissible_residues(fam, ell)
        .into_par_iter()
        .map(|a| local_term(fam, a, ell, form))
        .collect::<Result<Vec<_>>>()?;
    Ok(BigInt::from(ell) * product(terms))
}

/// One row of a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Contribution {
    pub ell: u64,
    #[serde(serialize_with = "crate::exactmath::ser_display")]
    pub value: BigInt,
    pub factored: String,
}

/// Per-prime bounds, their gcd, and which primes at least `threshold` survive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SieveReport {
    pub forms: Vec<String>,
    pub contributions: Vec<Contribution>,
    #[serde(serialize_with = "crate::exactmath::ser_display")]
    pub gcd: BigInt,
    pub gcd_factored: String,
    pub threshold: u64,
    /// `None` when the gcd is zero, i.e. no bound at all.
    pub surviving_primes: Option<Vec<u64>>,
    /// Part of the gcd left after trial division, if any.
    pub unfactored: Option<String>,
}

pub fn render(n: &BigInt) -> String {
    if n.is_zero() {
        "0".into()
    } else {
        trial_factor(n, REPORT_TRIAL_BOUND).expect("nonzero").to_string()
    }
}

impl SieveReport {
    pub fn from_values(forms: Vec<String>, values: Vec<(u64, BigInt)>, threshold: u64) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("empty ell set".into()));
        }
        let gcd = values.iter().fold(BigInt::zero(), |g, (_, v)| g.gcd(v));
        let contributions =
            values.into_iter().map(|(ell, value)| Contribution { ell, factored: render(&value), value }).collect();
        let (surviving, unfactored) = if gcd.is_zero() {
            (None, None)
        } else {
            let f: FactoredInteger = trial_factor(&gcd, REPORT_TRIAL_BOUND)?;
            let rest = (!f.is_fully_factored()).then(|| f.cofactor.to_string());
            (Some(f.primes_at_least(threshold)), rest)
        };
        Ok(SieveReport {
            forms,
            contributions,
            gcd_factored: render(&gcd),
            gcd,
            threshold,
            surviving_primes: surviving,
            unfactored,
        })
    }

    /// True when the gcd is nonzero and every prime factor is below the threshold.
    pub fn eliminates(&self) -> bool {
        self.unfactored.is_none() && self.surviving_primes.as_ref().is_some_and(|s| s.is_empty())
    }
}

/// `B(f) = gcd_l B_l(f)`.
pub fn single_bound_b(fam: &FreyFamily, form: &NewformClass, ells: &[u64], threshold: u64) -> Result<SieveReport> {
    let values = ells
        .iter()
        .map(|&l| single_bound_bl(fam, form, l).map(|v| (l, v)))
        .collect::<Result<Vec<_>>>()?;
    SieveReport::from_values(vec![form.id.clone()], values, threshold)
}

/// `T_l(f, g) = l * prod_a gcd(R_l(f, a), S_l(g, a))`.
pub fn multi_frey_tl(
    fam_e: &FreyFamily,
    fam_f: &FreyFamily,
    f: &NewformClass,
    g: &NewformClass,
    ell: u64,
) -> Result<BigInt> {
    let ra = admissible_residues(fam_e, ell);
    if ra != admissible_residues(fam_f, ell) {
        return Err(Error::Precondition(format!("families admit different residues mod {ell}")));
    }
    let terms = ra
        .into_par_iter()
        .map(|a| Ok(local_term(fam_e, a, ell, f)?.gcd(&local_term(fam_f, a, ell, g)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(BigInt::from(ell) * product(terms))
}

/// `U(f, g) = gcd_l T_l(f, g)`.
pub fn multi_frey_u(
    fam_e: &FreyFamily,
    fam_f: &FreyFamily,
    f: &NewformClass,
    g: &NewformClass,
    ells: &[u64],
    threshold: u64,
) -> Result<SieveReport> {
    let values = ells
        .par_iter()
        .map(|&l| multi_frey_tl(fam_e, fam_f, f, g, l).map(|v| (l, v)))
        .collect::<Result<Vec<_>>>()?;
    SieveReport::from_values(vec![f.id.clone(), g.id.clone()], values, threshold)
}

/// `C'_l = C_l / prod (t - a_l(F_i))`.
pub fn heckepoly_cprime(c: &PolyZ, rational_traces: &[i64]) -> Result<PolyZ> {
    let mut q = c.clone();
    for &a in rational_traces {
        q = q
            .div_exact(&PolyZ::from_i64s(&[-a, 1]))
            .ok_or_else(|| Error::TraceMismatch(format!("t - ({a}) does not divide the Hecke polynomial")))?;
    }
    Ok(q)
}

/// The Hecke polynomial bound `B_l` from `C'_l`; `B_2 = C'_2(a_2)` where the
/// family has constant trace `a_2` at 2.
pub fn heckepoly_bound(cprime: &PolyZ, fam: &FreyFamily, ell: u64, variant: CPrimeVariant) -> Result<BigInt> {
    let residues = admissible_residues(fam, ell);
    let eval = |t: i64| cprime.eval(&BigInt::from(t));
    if ell == 2 {
        let traces = residues.iter().map(|&a| family_trace(fam, a, 2)).collect::<Result<Vec<_>>>()?;
        return match traces.as_slice() {
            [ResidueTrace::Good(t)] => Ok(eval(*t)),
            _ => Err(Error::Precondition("B_2 needs a single good residue at 2".into())),
        };
    }
    let l = ell as i64;
    let terms = residues
        .into_par_iter()
        .map(|a| {
            Ok(match family_trace(fam, a, ell)? {
                ResidueTrace::Good(t) => eval(t),
                ResidueTrace::Bad => match variant {
                    CPrimeVariant::Faithful => eval(l + 1) * eval(-l - 1),
                    CPrimeVariant::Printed => eval(l + 1) * eval(l - 1),
                },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BigInt::from(ell) * product(terms))
}

/// Primes `l <= bound` admissible for a family: the excluded set is fixed by
/// the levels involved.
pub fn admissible_ells(excluded: &[u64], lo: u64, hi: u64) -> Vec<u64> {
    crate::exactmath::primes_in_range(lo, hi).into_iter().filter(|l| !excluded.contains(l)).collect()
}

/// Primes excluded on the `E` side for `k = 5`.
pub const K5_E_EXCLUDED: [u64; 3] = [2, 5, 7];
/// Primes excluded on the `F` side for `k = 5`.
pub const K5_F_EXCLUDED: [u64; 4] = [2, 3, 5, 7];
/// Primes excluded for `k = 6`.
pub const K6_EXCLUDED: [u64; 2] = [3, 3391];

/// Newform levels `(L_alpha, M_alpha)` for the two `k = 5` Frey curves.
pub fn k5_levels(alpha: u32) -> Result<(u64, u64)> {
    match alpha {
        1 => Ok((256 * 25 * 7, 128 * 3 * 5 * 7)),
        5 => Ok((256 * 5 * 7, 128 * 3 * 25 * 7)),
        2 => Ok((2 * 25 * 7, 256 * 3 * 5 * 7)),
        10 => Ok((2 * 5 * 7, 256 * 3 * 25 * 7)),
        _ => Err(Error::Precondition(format!("alpha = {alpha} not in {{1,2,5,10}}"))),
    }
}

/// The four rational newforms of level `3^3 * 3391`, as curves.
pub fn k6_rational_curves() -> [crate::ellcurve::WeierstrassModel; 4] {
    use crate::ellcurve::WeierstrassModel as W;
    [
        W::from_ints([0, 0, 1, 405, 22673]),
        W::from_ints([0, 0, 1, 45, -840]),
        W::from_ints([0, 0, 1, -42, -104]),
        W::from_ints([0, 0, 1, -378, 2801]),
    ]
}

/// Level of the `k = 6` newforms.
pub const K6_LEVEL: u64 = 27 * 3391;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freyfam::{alpha_family, f_family, k6_family};

    #[test]
    fn residues() {
        let k6 = k6_family();
        assert_eq!(admissible_residues(&k6, 2), vec![1]);
        assert_eq!(admissible_residues(&k6, 5).len(), 5);
        let e10 = alpha_family(10).unwrap();
        assert_eq!(admissible_residues(&e10, 2), vec![0]);
        assert_eq!(admissible_residues(&e10, 5), vec![0]);
        assert_eq!(admissible_residues(&alpha_family(1).unwrap(), 5), vec![1, 2, 3, 4]);
        assert_eq!(admissible_residues(&f_family(), 3), vec![0, 1, 2]);
    }

    #[test]
    fn k6_trace_at_two() {
        assert_eq!(family_trace(&k6_family(), 1, 2).unwrap(), ResidueTrace::Good(2));
    }

    #[test]
    fn matching_trace_gives_zero() {
        let fam = k6_family();
        // The sextic is 2 mod 7 at x = 1, so the reduction is good.
        let ResidueTrace::Good(t) = family_trace(&fam, 1, 7).unwrap() else { panic!() };
        let form = NewformClass::rational("x", K6_LEVEL, [(7, t)]).unwrap();
        assert_eq!(local_term(&fam, 1, 7, &form).unwrap(), BigInt::zero());
        assert_eq!(single_bound_bl(&fam, &form, 7).unwrap(), BigInt::zero());
    }

    #[test]
    fn degree_one_bad_term_is_difference_of_squares() {
        let fam = f_family();
        let l = 11u64;
        let a = (0..l).find(|&a| family_trace(&fam, a, l).unwrap() == ResidueTrace::Bad).unwrap();
        let form = NewformClass::rational("g", 1, [(l, 3)]).unwrap();
        assert_eq!(local_term(&fam, a, l, &form).unwrap(), BigInt::from(144 - 9));
    }

    #[test]
    fn cprime_division() {
        let c = &PolyZ::from_i64s(&[-2, 1]) * &PolyZ::from_i64s(&[1, 0, 1]);
        assert_eq!(heckepoly_cprime(&c, &[2]).unwrap(), PolyZ::from_i64s(&[1, 0, 1]));
        assert!(matches!(heckepoly_cprime(&c, &[3]), Err(Error::TraceMismatch(_))));
    }

    #[test]
    fn variants_parse() {
        assert_eq!("printed".parse::<CPrimeVariant>().unwrap(), CPrimeVariant::Printed);
        assert!("other".parse::<CPrimeVariant>().is_err());
    }

    #[test]
    fn empty_ell_set() {
        assert!(SieveReport::from_values(vec![], vec![], 7).is_err());
    }
}
