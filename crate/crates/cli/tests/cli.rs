use std::fs;
use std::process::Command;

use serde_json::Value;
use superelliptic::ellcurve::{ap_trace, model_hash};
use superelliptic::exactmath::PolyZ;
use superelliptic::expsieve::{k6_rational_curves, NewformClass, K6_LEVEL};
use superelliptic::modsym::HeckeCharPoly;
use superelliptic_cli::execute;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_superelliptic"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn argv(args: &[&str]) -> Vec<String> {
    std::iter::once("superelliptic").chain(args.iter().copied()).map(String::from).collect()
}

#[test]
fn exit_codes() {
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 2);
    let (code, _, err) = run(&["modsym", "--level", "99999999"]);
    assert_eq!(code, 3);
    assert!(err.contains("--cache") && err.contains("heckepoly N="), "{err}");
    let (code, _, _) = run(&["reproduce", "lemma-42"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["--help"]);
    assert_eq!(code, 0);
}

#[test]
fn inconsistent_ingested_cache_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.cache");
    fs::write(&path, "heckepoly N=91557 ell=2 deg=1 coeffs=0,1\nheckepoly N=91557 ell=5 deg=2 coeffs=0,0,1\n").unwrap();
    let (code, _, err) = run(&["modsym", "--level", "91557", "--cache", path.to_str().unwrap()]);
    assert_eq!(code, 4, "{err}");
}

#[test]
fn lemma_9_2_report_is_deterministic() {
    let (code, out, err) = run(&["reproduce", "lemma-9.2"]);
    assert_eq!(code, 0);
    assert!(err.contains("B_11 = 5^4 * 7^3 * 11"));
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["outputs"]["B_11_factored"], "5^4 * 7^3 * 11");
    let (_, again, _) = run(&["reproduce", "lemma-9.2"]);
    assert_eq!(out, again);
}

#[test]
fn obstruct_example() {
    let r = execute(argv(&["obstruct", "--poly", "2,0,30,0,30,0,3", "--mod", "7", "--n", "3"])).unwrap();
    assert_eq!(r.outputs["verdict"], "obstructed");
    let values: Vec<u64> = serde_json::from_value(r.outputs["values"].clone()).unwrap();
    assert_eq!(values, vec![2, 3]);
    let r = execute(argv(&["obstruct", "--poly", "2,0,30,0,30,0,3", "--mod", "7", "--n", "2"])).unwrap();
    assert_eq!(r.outputs["verdict"], "not obstructed");
}

#[test]
fn config_file_and_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# level 70 run\nlevel=350\nell=3\n").unwrap();
    let c = cfg.to_str().unwrap();
    let r = execute(argv(&["modsym", "--config", c, "--level", "70"])).unwrap();
    assert_eq!(r.outputs["dim_new"], 1);
    assert_eq!(r.outputs["charpolys"][0]["ell"], 3);
    fs::write(&cfg, "lvl=3\n").unwrap();
    let (code, _, _) = run(&["modsym", "--config", c]);
    assert_eq!(code, 2);
}

#[test]
fn json_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let (code, stdout, _) = run(&["descent5", "system", "--alpha", "10", "--c", "0", "--json", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["outputs"]["g"], serde_json::json!(["1", "50", "700", "7000", "24500", "49000"]));
    assert_eq!(v["outputs"]["f"], serde_json::json!(["10", "350", "7000", "49000", "245000", "343000"]));
}

#[test]
fn modsym_writes_heckepoly_cache() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.cache");
    let p = path.to_str().unwrap();
    let r = execute(argv(&["modsym", "--level", "350", "--ell", "3", "--cache", p])).unwrap();
    assert_eq!(r.outputs["dim_new"], 10);
    assert_eq!(r.outputs["class_degrees"], serde_json::json!([1, 1, 1, 1, 1, 1, 2, 2]));
    let text = fs::read_to_string(&path).unwrap();
    let lines: Vec<HeckeCharPoly> = text.lines().filter_map(HeckeCharPoly::parse_line).collect();
    assert!(lines.iter().any(|h| h.level == 350 && h.ell == 3 && h.poly.degree() == Some(10)));
    // A second run with a budget below the level reads the cache back.
    let r = execute(argv(&["modsym", "--level", "350", "--cache", p, "--level-budget", "100"])).unwrap();
    assert_eq!(r.outputs["source"], "cache");
    assert_eq!(r.outputs["dim_new"], 10);
}

#[test]
fn traces_cache_lines() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.cache");
    let r = execute(argv(&["traces", "--curve", "F1", "--ell", "31", "--cache", path.to_str().unwrap()])).unwrap();
    let f1 = &k6_rational_curves()[0];
    let a = ap_trace(f1, 31).unwrap();
    assert_eq!(r.outputs["traces"][0]["a"], a);
    let text = fs::read_to_string(&path).unwrap();
    assert_eq!(text.trim(), format!("trace {} 31 {a}", model_hash(f1).unwrap()));
    let (code, _, err) = run(&["traces", "--curve", "F1", "--ell", "200003", "--count-budget", "1000"]);
    assert_eq!(code, 3, "{err}");
}

#[test]
fn newform_file_feeds_single_sieve() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("forms.txt");
    let f1 = NewformClass::from_curve("F1", &k6_rational_curves()[0], &[11, 13]).unwrap();
    fs::write(&path, f1.to_text()).unwrap();
    let r = execute(argv(&["sieve", "single", "--family", "k6", "--ell", "11", "--newforms", path.to_str().unwrap()]))
        .unwrap();
    assert_eq!(r.outputs[0]["gcd_factored"], "5^4 * 7^3 * 11");
    assert_eq!(r.outputs[0]["surviving_primes"], serde_json::json!([]));
}

#[test]
fn multi_sieve_pairs_levels() {
    use superelliptic::ellcurve::WeierstrassModel;
    use superelliptic::freyfam::frey_k5_f;
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("forms.txt");
    let ells: Vec<u64> = vec![11, 13, 17, 19, 23];
    // conductor 70 and conductor 134400 rational classes
    let e70 = WeierstrassModel::from_ints([1, -1, 1, 2, -3]);
    let f = NewformClass::from_curve("70a", &e70, &ells).unwrap();
    let g = NewformClass::from_curve("F0", &frey_k5_f(&0.into(), 10).unwrap(), &ells).unwrap();
    assert_eq!((f.level, g.level), (70, 134400));
    fs::write(&path, format!("{}{}", f.to_text(), g.to_text())).unwrap();
    let r = execute(argv(&["sieve", "multi", "--alpha", "10", "--ell-range", "11..23", "--newforms", path.to_str().unwrap()]))
        .unwrap();
    let reps = r.outputs.as_array().unwrap();
    assert_eq!(reps.len(), 1);
    assert_eq!(reps[0]["contributions"].as_array().unwrap().len(), ells.len());
}

fn fabricated_k6_cache(path: &std::path::Path) -> PolyZ {
    let extra = PolyZ::from_i64s(&[-3, 0, 1]);
    let mut text = String::new();
    for l in superelliptic::exactmath::primes_up_to(99).into_iter().filter(|&l| l != 3) {
        let mut c = extra.clone();
        for e in k6_rational_curves() {
            c = &c * &PolyZ::from_i64s(&[-ap_trace(&e, l).unwrap(), 1]);
        }
        text.push_str(&HeckeCharPoly { level: K6_LEVEL, ell: l, poly: c }.to_line());
        text.push('\n');
    }
    fs::write(path, text).unwrap();
    extra
}

#[test]
fn ingested_cache_drives_heckepoly_and_final_gcd() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k6.cache");
    fabricated_k6_cache(&path);
    let p = path.to_str().unwrap();
    let r = execute(argv(&["sieve", "heckepoly", "--cache", p])).unwrap();
    assert_eq!(r.outputs["contributions"].as_array().unwrap().len(), 24);
    let r = execute(argv(&["reproduce", "lemma-9.3", "--cache", p])).unwrap();
    // fabricated data: the pipeline runs, the published gcd is not expected
    assert_eq!(r.outputs["matches_published"], false);
    let printed = execute(argv(&["sieve", "heckepoly", "--cache", p, "--variant", "printed"])).unwrap();
    assert_eq!(printed.inputs["variant"], "printed");
}

#[test]
fn jobs_flag_gives_same_report() {
    let a = execute(argv(&["descent5", "sieve", "--moduli", "64,27,125,11,13"])).unwrap();
    let b = execute(argv(&["descent5", "sieve", "--moduli", "64,27,125,11,13", "--jobs", "1"])).unwrap();
    assert_eq!(a.outputs, b.outputs);
}
