use num_bigint::BigInt;
use superelliptic::ellcurve::ap_trace;
use superelliptic::expsieve::{
    exponent_obstruction, k6_rational_curves, render, single_bound_b, single_bound_bl, NewformClass, K6_LEVEL,
};
use superelliptic::exactmath::PolyZ;
use superelliptic::freyfam::k6_family;

#[test]
fn b11_for_the_first_rational_form() {
    let f1 = NewformClass::from_curve("F1", &k6_rational_curves()[0], &[11]).unwrap();
    assert_eq!(f1.level, K6_LEVEL);
    let b = single_bound_bl(&k6_family(), &f1, 11).unwrap();
    assert_eq!(b, BigInt::from(5u32.pow(4) * 7u32.pow(3) * 11));
    assert_eq!(render(&b), "5^4 * 7^3 * 11");
    let r = single_bound_b(&k6_family(), &f1, &[11], 17).unwrap();
    assert!(r.eliminates());
}

#[test]
fn a31_of_first_rational_form() {
    assert_eq!(ap_trace(&k6_rational_curves()[0], 31).unwrap(), -4);
}

#[test]
fn sextic_obstructions() {
    let s = PolyZ::from_i64s(&[2, 0, 30, 0, 30, 0, 3]);
    assert!(exponent_obstruction(&s, 3, 2));
    assert!(exponent_obstruction(&s, 7, 3));
    assert!(!exponent_obstruction(&PolyZ::from_i64s(&[0, 1]), 7, 1));
}

#[test]
fn second_frey_curve_at_zero_kills_single_bounds() {
    use superelliptic::ellcurve::conductor;
    use superelliptic::expsieve::{admissible_ells, K5_F_EXCLUDED};
    use superelliptic::freyfam::frey_k5_f;
    let f0 = frey_k5_f(&BigInt::from(0), 10).unwrap();
    assert_eq!(conductor(&f0).unwrap(), BigInt::from(134400));
    let ells = admissible_ells(&K5_F_EXCLUDED, 11, 100);
    let g = NewformClass::from_curve("134400-F0", &f0, &ells).unwrap();
    let r = single_bound_b(&superelliptic::freyfam::f_family(), &g, &ells, 7).unwrap();
    assert!(r.contributions.iter().all(|c| c.value == BigInt::from(0)));
    assert_eq!(r.surviving_primes, None);
}

#[test]
fn ingested_level_pipeline_runs_end_to_end() {
    use superelliptic::expsieve::{heckepoly_bound, k6_hecke_report, CPrimeVariant};
    use superelliptic::modsym::{HeckeCache, HeckeCharPoly, ModularSymbolsEngine};
    let extra = PolyZ::from_i64s(&[-3, 0, 1]);
    let cache = HeckeCache::in_memory();
    let ells: Vec<u64> = superelliptic::exactmath::primes_up_to(99).into_iter().filter(|&l| l != 3).collect();
    for &l in &ells {
        let mut c = extra.clone();
        for e in k6_rational_curves() {
            c = &c * &PolyZ::from_i64s(&[-ap_trace(&e, l).unwrap(), 1]);
        }
        cache.insert(&HeckeCharPoly { level: K6_LEVEL, ell: l, poly: c }).unwrap();
    }
    let engine = ModularSymbolsEngine::new(2000, cache);
    let r = k6_hecke_report(&engine, CPrimeVariant::Faithful).unwrap();
    assert_eq!(r.contributions.len(), ells.len());
    assert_eq!(r.contributions[0].value, BigInt::from(1));
    for c in &r.contributions {
        let expect = heckepoly_bound(&extra, &k6_family(), c.ell, CPrimeVariant::Faithful).unwrap();
        assert_eq!(c.value, expect);
    }
    let empty = ModularSymbolsEngine::default();
    assert!(k6_hecke_report(&empty, CPrimeVariant::Faithful).is_err());
}
