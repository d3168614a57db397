use num_bigint::BigInt;
use serde_json::{json, Value};
use superelliptic::descent5::{
    bounded_integral_points, build_system, default_moduli, points_to_x, sieve_grid, small_exponent_curve,
    thue_search,
};
use superelliptic::ellcurve::{conductor, local_data, model_hash, TraceTable, WeierstrassModel};
use superelliptic::exactmath::{factor_over_z, is_squarefree, power_residues, BiPolyQ, PolyZ};
use superelliptic::expsieve::{
    admissible_ells, exponent_obstruction, hecke_bounds, heckepoly_bound, heckepoly_cprime, k5_levels,
    k5_multi_frey_table, k6_rational_curves, load_newforms, render, single_bound_b, value_set, NewformClass,
    SieveReport, K5_E_EXCLUDED, K5_F_EXCLUDED, K6_EXCLUDED, K6_LEVEL,
};
use superelliptic::freyfam::{alpha_family, bd_recipe, f_family, k6_family, FreyFamily};
use superelliptic::modsym::{genus_x0, HeckeCache, ModularSymbolsEngine};

use crate::config::RunConfig;
use crate::report::{Report, DATA_DEPENDENT, WITHIN_BOUND};
use crate::{CliError, Command, DescentCmd, FamilyArg, SieveCmd, SmallexpCmd};

type Res<T> = Result<T, CliError>;

/// Largest degree at which an ingested polynomial is factored for class degrees.
const INGESTED_FACTOR_MAX_DEGREE: usize = 200;

pub fn dispatch(cmd: &Command, cfg: &RunConfig) -> Res<Report> {
    match cmd {
        Command::Frey { family } => frey(*family, cfg),
        Command::Traces { family, curve } => traces(*family, curve.as_deref(), cfg),
        Command::Modsym => modsym(cfg),
        Command::Sieve(SieveCmd::Single { family }) => sieve_single(*family, cfg),
        Command::Sieve(SieveCmd::Multi) => sieve_multi(cfg),
        Command::Sieve(SieveCmd::Heckepoly { family }) => sieve_heckepoly(*family, cfg),
        Command::Descent5(DescentCmd::System { c }) => descent_system(*c, cfg),
        Command::Descent5(DescentCmd::Sieve) => descent_sieve(cfg),
        Command::Descent5(DescentCmd::Thue { c, rhs }) => descent_thue(*c, rhs, cfg),
        Command::Smallexp(SmallexpCmd::Points { p }) => smallexp_points(*p, cfg),
        Command::Obstruct { poly, modulus, n } => obstruct(poly, *modulus, *n, cfg),
        Command::Reproduce { id } => crate::reproduce::reproduce(id, cfg),
    }
}

fn require<T: Clone>(v: &Option<T>, flag: &str) -> Res<T> {
    v.clone().ok_or_else(|| CliError::Usage(format!("--{flag} is required")))
}

/// The cubic form whose recipe curve twists to the `k = 6` Frey curve.
pub fn k6_cubic_form() -> BiPolyQ {
    BiPolyQ::from_form_i64(&[3, 30, 30, 2])
}

pub fn family(arg: FamilyArg, cfg: &RunConfig) -> Res<FreyFamily> {
    Ok(match arg {
        FamilyArg::K5e => alpha_family(require(&cfg.alpha, "alpha")?)?,
        FamilyArg::K5f => f_family(),
        FamilyArg::K6 => k6_family(),
        FamilyArg::Bd => bd_recipe(&k6_cubic_form())?.family_x2(),
    })
}

fn excluded(arg: FamilyArg) -> &'static [u64] {
    match arg {
        FamilyArg::K5e => &K5_E_EXCLUDED,
        FamilyArg::K5f => &K5_F_EXCLUDED,
        FamilyArg::K6 | FamilyArg::Bd => &K6_EXCLUDED,
    }
}

/// `--ell`/`--ell-range` if given, else the admissible primes in `default`.
fn sieve_ells(arg: FamilyArg, cfg: &RunConfig, default: (u64, u64)) -> Vec<u64> {
    if cfg.ell.is_some() || cfg.ell_range.is_some() {
        cfg.ells_or(default)
    } else {
        admissible_ells(excluded(arg), default.0, default.1)
    }
}

pub fn local_json(e: &WeierstrassModel) -> Res<Value> {
    let (min, local) = local_data(e)?;
    let n = conductor(e)?;
    let rows: Vec<Value> = local
        .iter()
        .map(|r| {
            json!({
                "p": r.p.to_string(),
                "kodaira": r.kodaira.to_string(),
                "conductor_exponent": r.conductor_exponent,
                "min_disc_valuation": r.min_disc_valuation,
            })
        })
        .collect();
    Ok(json!({
        "model": e.to_string(),
        "minimal_model": min.to_string(),
        "conductor": n.to_string(),
        "conductor_factored": render(&n),
        "j_invariant": e.j_invariant()?.to_string(),
        "local": rows,
    }))
}

fn frey(arg: FamilyArg, cfg: &RunConfig) -> Res<Report> {
    let fam = family(arg, cfg)?;
    let inv = fam.invariants();
    let mut out = json!({
        "family": fam.name,
        "coefficients": fam.a.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "validity": fam.validity.describe(),
        "c4": inv.c4.to_string(),
        "c6": inv.c6.to_string(),
        "disc": inv.disc.to_string(),
    });
    if arg == FamilyArg::Bd {
        let bd = bd_recipe(&k6_cubic_form())?;
        out["form"] = json!(bd.f.to_string());
        out["H"] = json!(bd.h.to_string());
        out["G"] = json!(bd.g.to_string());
        out["form_disc"] = json!(bd.disc_f.to_string());
        out["disc_identity_holds"] = json!(bd.disc_identity_holds());
    }
    let mut r = Report::new("frey", cfg.as_inputs()).line(format!("{}: disc = {}", fam.name, inv.disc));
    if let Some(x) = &cfg.x {
        let e = fam.specialize(x)?;
        let member = local_json(&e)?;
        r = r.line(format!("x = {x}: {}  conductor {}", e, member["conductor_factored"].as_str().unwrap_or("")));
        out["member"] = member;
    }
    Ok(r.output(out))
}

/// `a1,a2,a3,a4,a6` or `F1`..`F4`.
pub fn parse_curve(spec: &str) -> Res<WeierstrassModel> {
    if let Some(i) = spec.strip_prefix('F').and_then(|s| s.parse::<usize>().ok()) {
        return k6_rational_curves()
            .get(i.wrapping_sub(1))
            .cloned()
            .ok_or_else(|| CliError::Usage(format!("no curve {spec}; use F1..F4")));
    }
    let a: Vec<BigInt> = spec
        .split(',')
        .map(|s| s.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("cannot parse curve {spec:?}")))?;
    let a: [BigInt; 5] = a.try_into().map_err(|_| CliError::Usage("a curve needs five coefficients".into()))?;
    let e = WeierstrassModel::from_bigints(a);
    if e.is_singular() {
        return Err(superelliptic::Error::SingularModel.into());
    }
    Ok(e)
}

fn traces(arg: FamilyArg, curve: Option<&str>, cfg: &RunConfig) -> Res<Report> {
    let e = match curve {
        Some(s) => parse_curve(s)?,
        None => family(arg, cfg)?.specialize(&require(&cfg.x, "x")?)?,
    };
    let table = match &cfg.cache {
        Some(p) => TraceTable::open(p)?,
        None => TraceTable::in_memory(),
    };
    let ells = cfg.ells_or((2, 100));
    let rows = ells
        .iter()
        .map(|&l| table.trace_with_budget(&e, l, cfg.count_budget).map(|a| (l, a)))
        .collect::<superelliptic::Result<Vec<_>>>()?;
    let line = rows.iter().map(|(l, a)| format!("a_{l}={a}")).collect::<Vec<_>>().join(" ");
    Ok(Report::new("traces", cfg.as_inputs())
        .line(format!("{e}"))
        .line(line)
        .output(json!({
            "model": e.to_string(),
            "model_hash": model_hash(&e)?,
            "traces": rows.iter().map(|(l, a)| json!({"ell": l, "a": a})).collect::<Vec<_>>(),
        })))
}

fn open_engine(cfg: &RunConfig) -> Res<ModularSymbolsEngine> {
    let cache = match &cfg.cache {
        Some(p) => HeckeCache::open(p)?,
        None => HeckeCache::in_memory(),
    };
    Ok(ModularSymbolsEngine::new(cfg.level_budget, cache))
}

fn poly_json(ell: u64, p: &PolyZ) -> Value {
    json!({"ell": ell, "deg": p.degree().unwrap_or(0), "coeffs": p.to_csv()})
}

/// Class degrees from the first squarefree polynomial in `polys`.
fn degrees_from(polys: &[(u64, PolyZ)]) -> Res<Option<Vec<usize>>> {
    for (_, p) in polys {
        if p.degree().unwrap_or(0) > INGESTED_FACTOR_MAX_DEGREE {
            continue;
        }
        if is_squarefree(p)? {
            let mut d: Vec<usize> = factor_over_z(p)?.iter().map(|(f, _)| f.degree().unwrap_or(0)).collect();
            d.sort();
            return Ok(Some(d));
        }
    }
    Ok(None)
}

fn modsym(cfg: &RunConfig) -> Res<Report> {
    let n = require(&cfg.level, "level")?;
    let engine = open_engine(cfg)?;
    let inputs = cfg.as_inputs();
    if n > cfg.level_budget {
        let ells = match cfg.ell {
            Some(l) => vec![l],
            None => engine.cache.ells(n),
        };
        let polys: Vec<(u64, PolyZ)> = ells.iter().filter_map(|&l| engine.cache.get(n, l).map(|p| (l, p))).collect();
        if polys.is_empty() {
            return Err(superelliptic::Error::LevelTooLarge { level: n, budget: cfg.level_budget }.into());
        }
        let dims: Vec<usize> = polys.iter().map(|(_, p)| p.degree().unwrap_or(0)).collect();
        if dims.iter().any(|d| *d != dims[0]) {
            return Err(superelliptic::Error::Consistency(format!("ingested polynomials at {n} differ in degree")).into());
        }
        let degrees = degrees_from(&polys)?;
        return Ok(Report::new("modsym", inputs)
            .line(format!("level {n}: {} ingested polynomials of degree {}", polys.len(), dims[0]))
            .note(format!("{DATA_DEPENDENT}: level above budget, values read from the cache"))
            .output(json!({
                "level": n,
                "source": "cache",
                "dim_new": dims[0],
                "class_degrees": degrees,
                "charpolys": polys.iter().map(|(l, p)| poly_json(*l, p)).collect::<Vec<_>>(),
            })));
    }
    let ells: Vec<u64> = match (cfg.ell, cfg.ell_range) {
        (None, None) => superelliptic::exactmath::primes_up_to(200).into_iter().filter(|l| n % l != 0).take(3).collect(),
        _ => cfg.ells_or((2, 2)).into_iter().filter(|l| n % l != 0).collect(),
    };
    let data = engine.cuspidal_new_data(n, &ells)?;
    let mut r = Report::new("modsym", inputs).line(format!(
        "level {n}: cuspidal dim {}, new dim {}, class degrees {:?}",
        data.dim_full_cuspidal, data.dim_new, data.class_degrees
    ));
    for h in &data.charpolys {
        r = r.line(format!("C_{}(t) = {}", h.ell, h.poly));
    }
    if let Some(p) = &cfg.cache {
        r = r.note(format!("Hecke polynomials appended to {}", p.display()));
    }
    Ok(r.output(json!({
        "level": n,
        "source": "modular symbols",
        "genus": genus_x0(n),
        "dim_cuspidal": data.dim_full_cuspidal,
        "dim_new": data.dim_new,
        "class_degrees": data.class_degrees,
        "charpolys": data.charpolys.iter().map(|h| poly_json(h.ell, &h.poly)).collect::<Vec<_>>(),
        "cache_lines": data.charpolys.iter().map(|h| h.to_line()).collect::<Vec<_>>(),
    })))
}

fn report_lines(mut r: Report, reps: &[SieveReport]) -> Report {
    for s in reps {
        r = r.line(format!(
            "{}: gcd = {}  primes >= {}: {}",
            s.forms.join(" x "),
            s.gcd_factored,
            s.threshold,
            match &s.surviving_primes {
                Some(p) => format!("{p:?}"),
                None => "no bound".into(),
            }
        ));
    }
    r
}

fn newforms(cfg: &RunConfig) -> Res<Option<Vec<NewformClass>>> {
    Ok(match &cfg.newforms {
        Some(p) => Some(load_newforms(p)?),
        None => None,
    })
}

fn sieve_single(arg: FamilyArg, cfg: &RunConfig) -> Res<Report> {
    let fam = family(arg, cfg)?;
    let ells = sieve_ells(arg, cfg, (2, 100));
    let forms = match newforms(cfg)? {
        Some(f) => f,
        None if arg == FamilyArg::K6 => k6_rational_curves()
            .iter()
            .enumerate()
            .map(|(i, e)| NewformClass::from_curve(format!("F{}", i + 1), e, &ells))
            .collect::<superelliptic::Result<_>>()?,
        None => return Err(CliError::Usage("--newforms is required for this family".into())),
    };
    let threshold = cfg.threshold.unwrap_or(17);
    let reps = forms
        .iter()
        .map(|f| single_bound_b(&fam, f, &ells, threshold))
        .collect::<superelliptic::Result<Vec<_>>>()?;
    let r = Report::new("sieve single", cfg.as_inputs());
    Ok(report_lines(r, &reps).note(DATA_DEPENDENT).output(&reps))
}

fn sieve_multi(cfg: &RunConfig) -> Res<Report> {
    let alpha = require(&cfg.alpha, "alpha")?;
    let (l, m) = k5_levels(alpha)?;
    let forms = newforms(cfg)?.ok_or_else(|| CliError::Usage("--newforms is required".into()))?;
    let (fs, gs): (Vec<NewformClass>, Vec<NewformClass>) = forms.into_iter().partition(|f| f.level == l);
    if let Some(bad) = gs.iter().find(|g| g.level != m) {
        return Err(CliError::Usage(format!("class {} has level {}, expected {l} or {m}", bad.id, bad.level)));
    }
    let ells = sieve_ells(FamilyArg::K5f, cfg, (11, 100));
    let reps = k5_multi_frey_table(alpha, &fs, &gs, &ells, cfg.threshold.unwrap_or(17))?;
    let r = Report::new("sieve multi", cfg.as_inputs()).line(format!("{} x {} pairs at levels {l}, {m}", fs.len(), gs.len()));
    Ok(report_lines(r, &reps).note(DATA_DEPENDENT).output(&reps))
}

fn sieve_heckepoly(arg: FamilyArg, cfg: &RunConfig) -> Res<Report> {
    let fam = family(arg, cfg)?;
    let engine = open_engine(cfg)?;
    let k6 = matches!(arg, FamilyArg::K6 | FamilyArg::Bd);
    let level = match cfg.level {
        Some(n) => n,
        None if k6 => K6_LEVEL,
        None => return Err(CliError::Usage("--level is required for this family".into())),
    };
    let threshold = cfg.threshold.unwrap_or(if k6 { 11 } else { 17 });
    let ells: Vec<u64> = sieve_ells(arg, cfg, (2, 99)).into_iter().filter(|l| level % l != 0 || *l == 2).collect();
    let forms = newforms(cfg)?;
    let report = match forms {
        None if k6 && level == K6_LEVEL => {
            hecke_bounds(&engine, level, &fam, &k6_rational_curves(), &ells, cfg.variant, threshold)?
        }
        forms => {
            let rational: Vec<NewformClass> =
                forms.unwrap_or_default().into_iter().filter(|f| f.level == level && f.degree == 1).collect();
            let mut values = Vec::new();
            for &l in &ells {
                let c = engine.new_charpoly(level, l)?;
                let traces = rational
                    .iter()
                    .map(|f| f.minpoly(l).map(|m| -m.coeff(0)))
                    .collect::<superelliptic::Result<Vec<BigInt>>>()?;
                let traces: Vec<i64> = traces
                    .iter()
                    .map(|t| i64::try_from(t).map_err(|_| CliError::Usage("trace out of range".into())))
                    .collect::<Res<_>>()?;
                let cp = heckepoly_cprime(&c.poly, &traces)?;
                values.push((l, heckepoly_bound(&cp, &fam, l, cfg.variant)?));
            }
            SieveReport::from_values(vec![format!("irrational part at level {level}")], values, threshold)?
        }
    };
    let r = Report::new("sieve heckepoly", cfg.as_inputs());
    Ok(report_lines(r, std::slice::from_ref(&report)).note(DATA_DEPENDENT).output(&report))
}

fn form_coeffs(f: &BiPolyQ) -> Vec<String> {
    f.form_coeffs(5).iter().map(|c| c.to_string()).collect()
}

fn descent_system(c: i32, cfg: &RunConfig) -> Res<Report> {
    let alpha = require(&cfg.alpha, "alpha")?;
    let s = build_system(alpha, c)?;
    Ok(Report::new("descent5 system", cfg.as_inputs())
        .line(format!("f = {}", s.f))
        .line(format!("g = {}", s.g))
        .line(format!("d = {}", s.d))
        .output(json!({
            "alpha": alpha,
            "c": c,
            "d": s.d.to_string(),
            "generator": s.generator.to_string(),
            "f": form_coeffs(&s.f),
            "g": form_coeffs(&s.g),
        })))
}

fn descent_sieve(cfg: &RunConfig) -> Res<Report> {
    let moduli = cfg.moduli.clone().unwrap_or_else(default_moduli);
    let grid = sieve_grid(&moduli)?;
    let survivors: Vec<(u32, i32)> = grid.iter().filter(|c| c.survives).map(|c| (c.alpha, c.c)).collect();
    Ok(Report::new("descent5 sieve", cfg.as_inputs())
        .line(format!("survivors (alpha, c): {survivors:?}"))
        .output(json!({"moduli": moduli, "cells": grid, "survivors": survivors})))
}

fn descent_thue(c: i32, rhs: &str, cfg: &RunConfig) -> Res<Report> {
    let alpha = require(&cfg.alpha, "alpha")?;
    let s = build_system(alpha, c)?;
    let m: BigInt = match rhs {
        "d" => s.d.clone(),
        _ => rhs.parse().map_err(|_| CliError::Usage(format!("cannot parse --rhs {rhs:?}")))?,
    };
    let bound = cfg.bound.unwrap_or(10_000);
    let sols = thue_search(&s.g, &m, bound)?;
    let pairs: Vec<[String; 2]> = sols.iter().map(|(u, v)| [u.to_string(), v.to_string()]).collect();
    Ok(Report::new("descent5 thue", cfg.as_inputs())
        .line(format!("g(u, v) = {m} with |u|, |v| <= {bound}: {pairs:?}"))
        .note(WITHIN_BOUND)
        .output(json!({"g": form_coeffs(&s.g), "rhs": m.to_string(), "bound": bound, "solutions": pairs})))
}

fn smallexp_points(p: u32, cfg: &RunConfig) -> Res<Report> {
    let alphas: Vec<u32> = match cfg.alpha {
        Some(a) => vec![a],
        None => vec![1, 5, 2, 10],
    };
    let bound = cfg.bound.unwrap_or(1_000_000);
    let mut r = Report::new("smallexp points", cfg.as_inputs()).note(WITHIN_BOUND);
    let mut rows = Vec::new();
    for alpha in alphas {
        let e = small_exponent_curve(p, alpha)?;
        let pts = bounded_integral_points(&e, bound)?;
        let xs = points_to_x(&pts, alpha, p)?;
        let shown: Vec<[String; 2]> = pts.iter().map(|(x, y)| [x.to_string(), y.to_string()]).collect();
        let xs: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
        r = r.line(format!("alpha {alpha}: {e}  points {shown:?}  x {xs:?}"));
        rows.push(json!({"alpha": alpha, "curve": e.to_string(), "points": shown, "x": xs}));
    }
    Ok(r.output(json!({"p": p, "bound": bound, "curves": rows})))
}

fn obstruct(poly: &str, q: u64, n: u64, cfg: &RunConfig) -> Res<Report> {
    if q < 2 || n == 0 {
        return Err(CliError::Usage("--mod must be at least 2 and --n positive".into()));
    }
    let p = PolyZ::from_csv(poly)?;
    let obstructed = exponent_obstruction(&p, q, n);
    let values: Vec<u64> = value_set(&p, q).into_iter().collect();
    let powers: Vec<u64> = power_residues(q, n).into_iter().collect();
    let verdict = if obstructed { "obstructed" } else { "not obstructed" };
    let mut inputs = cfg.as_inputs();
    inputs.insert("poly".into(), poly.into());
    inputs.insert("mod".into(), q.to_string());
    inputs.insert("n".into(), n.to_string());
    Ok(Report::new("obstruct", inputs)
        .line(format!("{p} = z^{n} mod {q}: {verdict}"))
        .output(json!({
            "poly": p.to_csv(),
            "modulus": q,
            "n": n,
            "values": values,
            "nth_powers": powers,
            "obstructed": obstructed,
            "verdict": verdict,
        })))
}
