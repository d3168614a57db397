//! New subspaces by recursive characteristic polynomial division, class
//! degrees, and the Hecke polynomial cache.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use parking_lot::{Mutex, RwLock};
use serde::Serialize;

use super::field::PrimeField;
use super::space::{ManinSymbolSpace, Presentation};
use crate::exactmath::{
    charpoly_bound_bits, charpoly_mod_p, factor_over_z, gcd_u64, integer_charpoly_from_images,
    is_prime_u64, word_primes, PolyZ,
};
use crate::{Error, Result};

/// Default largest level built from scratch.
pub const DEFAULT_LEVEL_BUDGET: u64 = 2000;

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn sigma0(n: u64) -> u32 {
    divisors(n).len() as u32
}

fn prime_factors(n: u64) -> Vec<u64> {
    let mut m = n;
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            out.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

fn euler_phi(n: u64) -> u64 {
    prime_factors(n).iter().fold(n, |acc, p| acc / p * (p - 1))
}

/// Genus of `X_0(N)` from `12 g = 12 + mu - 3 nu2 - 4 nu3 - 6 cusps`.
pub fn genus_x0(n: u64) -> u64 {
    assert!(n >= 1);
    let ps = prime_factors(n);
    let mu = ps.iter().fold(n, |acc, p| acc / p * (p + 1)) as i64;
    let nu2 = if n.is_multiple_of(4) {
        0
    } else {
        ps.iter().map(|&p| if p == 2 { 1 } else if p % 4 == 1 { 2 } else { 0 }).product::<i64>()
    };
    let nu3 = if n.is_multiple_of(9) {
        0
    } else {
        ps.iter().map(|&p| if p == 3 { 1 } else if p % 3 == 1 { 2 } else { 0 }).product::<i64>()
    };
    let cusps: i64 = divisors(n).iter().map(|&d| euler_phi(gcd_u64(d, n / d)) as i64).sum();
    let twelve_g = 12 + mu - 3 * nu2 - 4 * nu3 - 6 * cusps;
    debug_assert!(twelve_g >= 0 && twelve_g % 12 == 0);
    (twelve_g / 12) as u64
}

/// Characteristic polynomial of `T_l` on the new subspace at level `N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeckeCharPoly {
    pub level: u64,
    pub ell: u64,
    #[serde(serialize_with = "crate::exactmath::ser_display")]
    pub poly: PolyZ,
}

impl HeckeCharPoly {
    pub fn to_line(&self) -> String {
        format!(
            "heckepoly N={} ell={} deg={} coeffs={}",
            self.level,
            self.ell,
            self.poly.degree().unwrap_or(0),
            self.poly.to_csv()
        )
    }

    pub fn parse_line(line: &str) -> Option<HeckeCharPoly> {
        let mut it = line.split_whitespace();
        if it.next()? != "heckepoly" {
            return None;
        }
        let mut kv = BTreeMap::new();
        for tok in it {
            let (k, v) = tok.split_once('=')?;
            kv.insert(k, v);
        }
        let level = kv.get("N")?.parse().ok()?;
        let ell = kv.get("ell")?.parse().ok()?;
        let deg: usize = kv.get("deg")?.parse().ok()?;
        let poly = PolyZ::from_csv(kv.get("coeffs")?).ok()?;
        if kv.len() != 4 || poly.degree() != Some(deg) || !poly.is_monic() {
            return None;
        }
        Some(HeckeCharPoly { level, ell, poly })
    }
}

/// File of `heckepoly` lines: read at open, appended by a single writer.
pub struct HeckeCache {
    entries: RwLock<HashMap<(u64, u64), PolyZ>>,
    path: Option<PathBuf>,
    writer: Mutex<()>,
}

impl HeckeCache {
    pub fn in_memory() -> Self {
        HeckeCache { entries: RwLock::new(HashMap::new()), path: None, writer: Mutex::new(()) }
    }

    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut entries = HashMap::new();
        if path.exists() {
            for (i, line) in fs::read_to_string(&path)?.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let h = HeckeCharPoly::parse_line(line).ok_or_else(|| Error::Parse {
                    line: i + 1,
                    msg: "bad heckepoly record".into(),
                })?;
                entries.insert((h.level, h.ell), h.poly);
            }
        }
        Ok(HeckeCache { entries: RwLock::new(entries), path: Some(path), writer: Mutex::new(()) })
    }

    pub fn get(&self, level: u64, ell: u64) -> Option<PolyZ> {
        self.entries.read().get(&(level, ell)).cloned()
    }

    pub fn levels(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.entries.read().keys().map(|k| k.0).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Primes with a record at `level`, ascending.
    pub fn ells(&self, level: u64) -> Vec<u64> {
        let mut v: Vec<u64> = self.entries.read().keys().filter(|k| k.0 == level).map(|k| k.1).collect();
        v.sort();
        v
    }

    pub fn insert(&self, h: &HeckeCharPoly) -> Result<()> {
        let _w = self.writer.lock();
        if self.entries.read().contains_key(&(h.level, h.ell)) {
            return Ok(());
        }
        if let Some(path) = &self.path {
            let mut f = fs::OpenOptions::new().create(true).append(true).open(path)?;
            writeln!(f, "{}", h.to_line())?;
        }
        self.entries.write().insert((h.level, h.ell), h.poly.clone());
        Ok(())
    }
}

/// Summary of the new subspace at one level.
#[derive(Clone, Debug, Serialize)]
pub struct CuspidalNewData {
    pub level: u64,
    pub dim_full_cuspidal: usize,
    pub dim_new: usize,
    pub charpolys: Vec<HeckeCharPoly>,
    pub class_degrees: Vec<usize>,
}

type OpKey = Vec<(u64, i64)>;

/// Builds spaces on demand and memoises dimensions and polynomials.
pub struct ModularSymbolsEngine {
    pub budget: u64,
    pres: RwLock<HashMap<u64, Arc<Presentation>>>,
    dims: RwLock<HashMap<u64, usize>>,
    polys: RwLock<HashMap<(u64, OpKey), PolyZ>>,
    pub cache: HeckeCache,
}

impl Default for ModularSymbolsEngine {
    fn default() -> Self {
        Self::new(DEFAULT_LEVEL_BUDGET, HeckeCache::in_memory())
    }
}

impl ModularSymbolsEngine {
    pub fn new(budget: u64, cache: HeckeCache) -> Self {
        ModularSymbolsEngine {
            budget,
            pres: RwLock::new(HashMap::new()),
            dims: RwLock::new(HashMap::new()),
            polys: RwLock::new(HashMap::new()),
            cache,
        }
    }

    fn check_budget(&self, n: u64) -> Result<()> {
        if n == 0 {
            return Err(Error::InvalidArgument("level must be positive".into()));
        }
        if n > self.budget {
            return Err(Error::LevelTooLarge { level: n, budget: self.budget });
        }
        Ok(())
    }

    pub fn presentation(&self, n: u64) -> Result<Arc<Presentation>> {
        self.check_budget(n)?;
        if let Some(p) = self.pres.read().get(&n) {
            return Ok(p.clone());
        }
        let p = Arc::new(Presentation::new(n));
        self.pres.write().insert(n, p.clone());
        Ok(p)
    }

    /// The cuspidal plus space over `F_p`.
    pub fn space_mod(&self, n: u64, p: u64) -> Result<ManinSymbolSpace<PrimeField>> {
        Ok(ManinSymbolSpace::new(self.presentation(n)?, PrimeField { p }))
    }

    /// Dimension of the cuspidal plus space, taken as the minimum over two
    /// large primes (reduction can only enlarge it).
    pub fn cuspidal_dim(&self, n: u64) -> Result<usize> {
        if let Some(d) = self.dims.read().get(&n) {
            return Ok(*d);
        }
        let ps = word_primes(2);
        let d = ps
            .iter()
            .map(|&p| self.space_mod(n, p).map(|s| s.cuspidal_dim()))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .min()
            .unwrap();
        self.dims.write().insert(n, d);
        Ok(d)
    }

    /// `dim S_2^new(N)` from the cuspidal dimensions of all divisors.
    pub fn new_dim(&self, n: u64) -> Result<usize> {
        let mut total = self.cuspidal_dim(n)? as i64;
        for m in divisors(n) {
            if m < n {
                total -= sigma0(n / m) as i64 * self.new_dim(m)? as i64;
            }
        }
        if total < 0 {
            return Err(Error::Consistency(format!("negative new dimension at level {n}")));
        }
        Ok(total as usize)
    }

    fn validate_ops(n: u64, ops: &[(u64, i64)]) -> Result<()> {
        if ops.is_empty() {
            return Err(Error::InvalidArgument("empty Hecke operator".into()));
        }
        for &(l, _) in ops {
            if !is_prime_u64(l) {
                return Err(Error::InvalidArgument(format!("{l} is not prime")));
            }
            if n.is_multiple_of(l) {
                return Err(Error::InvalidArgument(format!("{l} divides the level {n}")));
            }
        }
        Ok(())
    }

    /// Characteristic polynomial of `sum c_i T_{l_i}` on the full cuspidal
    /// plus space, by CRT over word-size primes.
    pub fn full_charpoly(&self, n: u64, ops: &[(u64, i64)]) -> Result<PolyZ> {
        Self::validate_ops(n, ops)?;
        let g = self.cuspidal_dim(n)?;
        if g == 0 {
            return Ok(PolyZ::one());
        }
        let pres = self.presentation(n)?;
        let rho: f64 = ops.iter().map(|&(l, c)| (c.unsigned_abs() as f64) * 2.0 * (l as f64).sqrt()).sum();
        let bits = charpoly_bound_bits(g, rho);
        integer_charpoly_from_images(g, bits, |p| {
            let s = ManinSymbolSpace::new(pres.clone(), PrimeField { p });
            if s.cuspidal_dim() != g {
                return None;
            }
            Some(charpoly_mod_p(s.hecke_matrix_combo(ops), p))
        })
    }

    /// Characteristic polynomial of `sum c_i T_{l_i}` on the new subspace.
    pub fn new_charpoly_combo(&self, n: u64, ops: &[(u64, i64)]) -> Result<PolyZ> {
        Self::validate_ops(n, ops)?;
        let key = (n, ops.to_vec());
        if let Some(p) = self.polys.read().get(&key) {
            return Ok(p.clone());
        }
        if ops.len() == 1 && ops[0].1 == 1 {
            if let Some(p) = self.cache.get(n, ops[0].0) {
                return Ok(p);
            }
        }
        let mut full = self.full_charpoly(n, ops)?;
        for m in divisors(n) {
            if m == n {
                continue;
            }
            let old = self.new_charpoly_combo(m, ops)?;
            for _ in 0..sigma0(n / m) {
                full = full.div_exact(&old).ok_or_else(|| {
                    Error::Consistency(format!("old part from level {m} does not divide at level {n}"))
                })?;
            }
        }
        if !full.is_monic() {
            return Err(Error::Consistency(format!("new charpoly at level {n} is not monic")));
        }
        self.polys.write().insert(key, full.clone());
        Ok(full)
    }

    /// `C_l(t)` on `S_2^new(N)`: from the cache if present, else computed.
    pub fn new_charpoly(&self, n: u64, ell: u64) -> Result<HeckeCharPoly> {
        if let Some(p) = self.cache.get(n, ell) {
            return Ok(HeckeCharPoly { level: n, ell, poly: p });
        }
        if n > self.budget {
            return Err(Error::MissingCharpoly { level: n, ell });
        }
        let poly = self.new_charpoly_combo(n, &[(ell, 1)])?;
        let h = HeckeCharPoly { level: n, ell, poly };
        self.cache.insert(&h)?;
        Ok(h)
    }

    /// Degrees of the Galois orbits of newforms at level `N`.
    pub fn class_degrees(&self, n: u64) -> Result<Vec<usize>> {
        let good: Vec<u64> = crate::exactmath::primes_up_to(200).into_iter().filter(|p| !n.is_multiple_of(*p)).take(4).collect();
        let mut attempts: Vec<OpKey> = Vec::new();
        for &l in &good {
            attempts.push(vec![(l, 1)]);
        }
        for c in 1..=3i64 {
            for i in 0..good.len() {
                for j in i + 1..good.len() {
                    attempts.push(vec![(good[i], 1), (good[j], c)]);
                }
            }
        }
        for ops in attempts {
            let poly = self.new_charpoly_combo(n, &ops)?;
            if poly.degree() == Some(0) {
                return Ok(Vec::new());
            }
            let factors = factor_over_z(&poly)?;
            if factors.iter().all(|(_, e)| *e == 1) {
                let mut d: Vec<usize> = factors.iter().map(|(f, _)| f.degree().unwrap()).collect();
                d.sort();
                return Ok(d);
            }
        }
        Err(Error::Consistency(format!("no squarefree Hecke combination found at level {n}")))
    }

    pub fn cuspidal_new_data(&self, n: u64, ells: &[u64]) -> Result<CuspidalNewData> {
        let charpolys = ells.iter().map(|&l| self.new_charpoly(n, l)).collect::<Result<Vec<_>>>()?;
        Ok(CuspidalNewData {
            level: n,
            dim_full_cuspidal: self.cuspidal_dim(n)?,
            dim_new: self.new_dim(n)?,
            charpolys,
            class_degrees: self.class_degrees(n)?,
        })
    }
}

/// Class degrees with a default engine.
pub fn class_degrees(n: u64) -> Result<Vec<usize>> {
    ModularSymbolsEngine::default().class_degrees(n)
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_values() {
        assert_eq!(genus_x0(1), 0);
        assert_eq!(genus_x0(11), 1);
        assert_eq!(genus_x0(37), 2);
        assert_eq!(genus_x0(70), 9);
        for n in 1..11 {
            assert_eq!(genus_x0(n), 0);
        }
    }

    #[test]
    fn heckepoly_lines() {
        let h = HeckeCharPoly { level: 11, ell: 2, poly: PolyZ::from_i64s(&[2, 1]) };
        assert_eq!(h.to_line(), "heckepoly N=11 ell=2 deg=1 coeffs=2,1");
        assert_eq!(HeckeCharPoly::parse_line(&h.to_line()), Some(h));
        assert_eq!(HeckeCharPoly::parse_line("heckepoly N=11 ell=2 deg=2 coeffs=2,1"), None);
    }

    #[test]
    fn budget() {
        let e = ModularSymbolsEngine::default();
        assert!(matches!(e.cuspidal_dim(99_999_999), Err(Error::LevelTooLarge { .. })));
        assert!(matches!(e.new_charpoly(91557, 2), Err(Error::MissingCharpoly { .. })));
    }
}
