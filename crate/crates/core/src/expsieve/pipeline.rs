//! End-to-end bound computations over whole levels.

use num_bigint::BigInt;
use rayon::prelude::*;

use super::bounds::{
    heckepoly_bound, heckepoly_cprime, k5_levels, k6_rational_curves, multi_frey_u, CPrimeVariant, SieveReport,
    K5_E_EXCLUDED, K5_F_EXCLUDED, K6_EXCLUDED, K6_LEVEL,
};
use super::newform::NewformClass;
use crate::ellcurve::{ap_trace, WeierstrassModel};
use crate::freyfam::{alpha_family, f_family, k6_family, FreyFamily};
use crate::modsym::ModularSymbolsEngine;
use crate::{Error, Result};

/// `B_l` from `C'_l` at every `l`, where `C'_l` is the Hecke polynomial at
/// `level` with the rational forms of `curves` divided out.
pub fn hecke_bounds(
    engine: &ModularSymbolsEngine,
    level: u64,
    fam: &FreyFamily,
    curves: &[WeierstrassModel],
    ells: &[u64],
    variant: CPrimeVariant,
    threshold: u64,
) -> Result<SieveReport> {
    let values = ells
        .par_iter()
        .map(|&l| {
            let c = engine.new_charpoly(level, l)?;
            let traces = curves.iter().map(|e| ap_trace(e, l)).collect::<Result<Vec<_>>>()?;
            let cp = heckepoly_cprime(&c.poly, &traces)?;
            Ok((l, heckepoly_bound(&cp, fam, l, variant)?))
        })
        .collect::<Result<Vec<(u64, BigInt)>>>()?;
    SieveReport::from_values(vec![format!("irrational part at level {level}")], values, threshold)
}

/// The `k = 6` bound over `{2} and 5 <= l < 100`; needs `C_l` at level
/// `3^3 * 3391` in the engine's cache.
pub fn k6_hecke_report(engine: &ModularSymbolsEngine, variant: CPrimeVariant) -> Result<SieveReport> {
    let ells: Vec<u64> =
        crate::exactmath::primes_up_to(99).into_iter().filter(|l| !K6_EXCLUDED.contains(l)).collect();
    hecke_bounds(engine, K6_LEVEL, &k6_family(), &k6_rational_curves(), &ells, variant, 11)
}

/// `U(f, g)` for every pair of classes at levels `(L_alpha, M_alpha)`.
pub fn k5_multi_frey_table(
    alpha: u32,
    forms_f: &[NewformClass],
    forms_g: &[NewformClass],
    ells: &[u64],
    threshold: u64,
) -> Result<Vec<SieveReport>> {
    let (l, m) = k5_levels(alpha)?;
    for f in forms_f {
        if f.level != l {
            return Err(Error::Precondition(format!("{} has level {}, expected L = {l}", f.id, f.level)));
        }
    }
    for g in forms_g {
        if g.level != m {
            return Err(Error::Precondition(format!("{} has level {}, expected M = {m}", g.id, g.level)));
        }
    }
    if let Some(bad) = ells.iter().find(|e| K5_E_EXCLUDED.contains(e) || K5_F_EXCLUDED.contains(e)) {
        return Err(Error::Precondition(format!("{bad} is not admissible for both curves")));
    }
    let fam_e = alpha_family(alpha)?;
    let fam_f = f_family();
    let pairs: Vec<(&NewformClass, &NewformClass)> =
        forms_f.iter().flat_map(|f| forms_g.iter().map(move |g| (f, g))).collect();
    pairs.into_par_iter().map(|(f, g)| multi_frey_u(&fam_e, &fam_f, f, g, ells, threshold)).collect()
}
