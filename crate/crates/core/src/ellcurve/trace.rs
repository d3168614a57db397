//! Traces of Frobenius by naive point counting, and a persistent cache.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use parking_lot::{Mutex, RwLock};

use super::minimal::global_minimal_model;
use super::model::WeierstrassModel;
use super::tate::tate_reduction;
use crate::exactmath::{is_prime_u64, mod_big, Rational};
use crate::{Error, Result};

/// Largest prime for which point counting is attempted.
pub const DEFAULT_COUNT_BUDGET: u64 = 100_000;

fn rat_mod(c: &Rational, p: u64) -> Option<u64> {
    let d = mod_big(c.denom(), p);
    if d == 0 {
        return None;
    }
    let n = mod_big(c.numer(), p);
    Some(crate::exactmath::mul_mod(n, crate::exactmath::inv_mod(d, p)?, p))
}

/// Number of affine points plus one of the reduction of `a = [a1,a2,a3,a4,a6]`
/// (already reduced mod `p`). No smoothness check is made.
pub fn count_points_mod(a: [u64; 5], p: u64) -> u64 {
    let [a1, a2, a3, a4, a6] = a;
    if p == 2 {
        let mut n = 1;
        for x in 0..2u64 {
            for y in 0..2u64 {
                let lhs = y * y + a1 * x * y + a3 * y;
                let rhs = x * x * x + a2 * x * x + a4 * x + a6;
                if (lhs + rhs) % 2 == 0 {
                    n += 1;
                }
            }
        }
        return n;
    }
    // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
    let m = |x: u64, y: u64| crate::exactmath::mul_mod(x, y, p);
    let b2 = (m(a1, a1) + 4 * a2) % p;
    let b4 = (2 * a4 + m(a1, a3)) % p;
    let b6 = (m(a3, a3) + 4 * a6) % p;
    let mut chi = vec![-1i8; p as usize];
    chi[0] = 0;
    for y in 1..p {
        chi[m(y, y) as usize] = 1;
    }
    let mut sum: i64 = 0;
    for x in 0..p {
        let v = (m(m(4, x), m(x, x)) + m(b2, m(x, x)) + m(2 * b4 % p, x) + b6) % p;
        sum += chi[v as usize] as i64;
    }
    (p as i64 + 1 + sum) as u64
}

/// `a_l(E)`: `l + 1 - #E(F_l)` at good primes, `+1`/`-1` at split/nonsplit
/// multiplicative primes, `0` at additive primes.
pub fn ap_trace(e: &WeierstrassModel, ell: u64) -> Result<i64> {
    ap_trace_with_budget(e, ell, DEFAULT_COUNT_BUDGET)
}

pub fn ap_trace_with_budget(e: &WeierstrassModel, ell: u64, budget: u64) -> Result<i64> {
    if ell > budget {
        return Err(Error::CountingBudget { ell, budget });
    }
    if !is_prime_u64(ell) {
        return Err(Error::InvalidArgument(format!("{ell} is not prime")));
    }
    if e.is_singular() {
        return Err(Error::SingularModel);
    }
    // fast path: ell-integral model with unit discriminant
    if let Some(a) = reduce_coeffs(e, ell) {
        if rat_mod(&e.disc(), ell).is_some_and(|d| d != 0) {
            return Ok(ell as i64 + 1 - count_points_mod(a, ell) as i64);
        }
    }
    let (m, _) = e.integral_model();
    let data = tate_reduction(&m, ell)?;
    if data.is_good() {
        let a = reduce_coeffs(&data.minimal_model, ell).expect("integral");
        return Ok(ell as i64 + 1 - count_points_mod(a, ell) as i64);
    }
    Ok(match data.split {
        Some(true) => 1,
        Some(false) => -1,
        None => 0,
    })
}

fn reduce_coeffs(e: &WeierstrassModel, p: u64) -> Option<[u64; 5]> {
    Some([
        rat_mod(&e.a1, p)?,
        rat_mod(&e.a2, p)?,
        rat_mod(&e.a3, p)?,
        rat_mod(&e.a4, p)?,
        rat_mod(&e.a6, p)?,
    ])
}

/// Canonical id of the isomorphism class: the reduced minimal model's
/// coefficients joined by commas.
pub fn model_hash(e: &WeierstrassModel) -> Result<String> {
    let m = global_minimal_model(e)?;
    Ok(m.coeffs().iter().map(|c| c.to_integer().to_string()).collect::<Vec<_>>().join(","))
}

/// Traces keyed by `(model hash, ell)`, optionally backed by a file of lines
/// `trace <hash> <ell> <a_ell>`. Reads run concurrently; appends are
/// serialised through one writer lock.
pub struct TraceTable {
    entries: RwLock<HashMap<(String, u64), i64>>,
    path: Option<PathBuf>,
    writer: Mutex<()>,
}

impl TraceTable {
    pub fn in_memory() -> Self {
        TraceTable { entries: RwLock::new(HashMap::new()), path: None, writer: Mutex::new(()) }
    }

    /// Open (or start) a cache file.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut entries = HashMap::new();
        if path.exists() {
            for (i, line) in fs::read_to_string(&path)?.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (key, val) = parse_line(line).ok_or_else(|| Error::Parse {
                    line: i + 1,
                    msg: format!("bad trace record: {line}"),
                })?;
                entries.insert(key, val);
            }
        }
        Ok(TraceTable { entries: RwLock::new(entries), path: Some(path), writer: Mutex::new(()) })
    }

    pub fn len(&self) -> usize {
        self.entries.read().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, hash: &str, ell: u64) -> Option<i64> {
        self.entries.read().get(&(hash.to_string(), ell)).copied()
    }

    /// Look up or compute `a_ell(e)`, persisting new values.
    pub fn trace(&self, e: &WeierstrassModel, ell: u64) -> Result<i64> {
        self.trace_with_budget(e, ell, DEFAULT_COUNT_BUDGET)
    }

    /// As [`TraceTable::trace`]; cached values are returned even above `budget`.
    pub fn trace_with_budget(&self, e: &WeierstrassModel, ell: u64, budget: u64) -> Result<i64> {
        let hash = model_hash(e)?;
        if let Some(v) = self.get(&hash, ell) {
            return Ok(v);
        }
        let v = ap_trace_with_budget(e, ell, budget)?;
        self.insert(hash, ell, v)?;
        Ok(v)
    }

    pub fn insert(&self, hash: String, ell: u64, a: i64) -> Result<()> {
        let _w = self.writer.lock();
        if self.entries.read().contains_key(&(hash.clone(), ell)) {
            return Ok(());
        }
        if let Some(path) = &self.path {
            let mut f = fs::OpenOptions::new().create(true).append(true).open(path)?;
            writeln!(f, "trace {hash} {ell} {a}")?;
        }
        self.entries.write().insert((hash, ell), a);
        Ok(())
    }
}

fn parse_line(line: &str) -> Option<((String, u64), i64)> {
    let mut it = line.split_whitespace();
    if it.next()? != "trace" {
        return None;
    }
    let hash = it.next()?.to_string();
    let ell = it.next()?.parse().ok()?;
    let a = it.next()?.parse().ok()?;
    if it.next().is_some() || hash.split(',').count() != 5 || hash.split(',').any(|c| c.parse::<BigInt>().is_err()) {
        return None;
    }
    Some(((hash, ell), a))
}


#[cfg(test)]
mod tests {
    use super::*;

    fn brute(a: [i64; 5], p: u64) -> i64 {
        let r = |c: i64| c.rem_euclid(p as i64);
        let mut n = 1;
        for x in 0..p as i64 {
            for y in 0..p as i64 {
                let lhs = y * y + a[0] * x * y + a[2] * y;
                let rhs = x * x * x + a[1] * x * x + a[3] * x + a[4];
                if r(lhs - rhs) == 0 {
                    n += 1;
                }
            }
        }
        p as i64 + 1 - n
    }

    #[test]
    fn matches_brute_force() {
        for a in [[0, 0, 0, 1, 0], [1, -1, 1, 3, 7], [0, -1, 1, -10, -20], [1, 0, 1, 4, -6]] {
            let e = WeierstrassModel::from_ints(a);
            for p in [2u64, 3, 5, 7, 13, 17, 31] {
                let d = crate::exactmath::mod_big(&e.disc().to_integer(), p);
                if d != 0 {
                    assert_eq!(ap_trace(&e, p).unwrap(), brute(a, p), "{a:?} at {p}");
                }
            }
        }
    }

    #[test]
    fn eleven_a() {
        let e = WeierstrassModel::from_ints([0, -1, 1, -10, -20]);
        let want = [(2, -2), (3, -1), (5, 1), (7, -2), (11, 1), (13, 4)];
        for (p, a) in want {
            assert_eq!(ap_trace(&e, p).unwrap(), a);
        }
    }

    #[test]
    fn budget_enforced() {
        let e = WeierstrassModel::from_ints([0, 0, 0, 1, 0]);
        assert!(matches!(ap_trace(&e, 100_003), Err(Error::CountingBudget { .. })));
    }

    #[test]
    fn cache_roundtrip() {
        let dir = std::env::temp_dir().join(format!("trace-cache-{}", std::process::id()));
        let _ = fs::remove_file(&dir);
        let e = WeierstrassModel::from_ints([0, -1, 1, -10, -20]);
        {
            let t = TraceTable::open(&dir).unwrap();
            assert_eq!(t.trace(&e, 13).unwrap(), 4);
        }
        let t = TraceTable::open(&dir).unwrap();
        assert_eq!(t.get("0,-1,1,-10,-20", 13), Some(4));
        fs::remove_file(&dir).unwrap();
    }
}
