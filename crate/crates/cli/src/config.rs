//! Run configuration: built-in defaults, then a flat `key=value` file, then
//! command line flags.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use superelliptic::ellcurve::DEFAULT_COUNT_BUDGET;
use superelliptic::expsieve::CPrimeVariant;
use superelliptic::modsym::DEFAULT_LEVEL_BUDGET;

use crate::CliError;

/// Keys accepted in a config file. Each matches a long flag.
pub const KEYS: [&str; 15] = [
    "level-budget",
    "count-budget",
    "level",
    "ell",
    "ell-range",
    "alpha",
    "x",
    "bound",
    "moduli",
    "cache",
    "newforms",
    "variant",
    "jobs",
    "json",
    "threshold",
];

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub level_budget: u64,
    pub count_budget: u64,
    pub level: Option<u64>,
    pub ell: Option<u64>,
    pub ell_range: Option<(u64, u64)>,
    pub alpha: Option<u32>,
    pub x: Option<BigInt>,
    pub bound: Option<u64>,
    pub moduli: Option<Vec<u64>>,
    pub cache: Option<PathBuf>,
    pub newforms: Option<PathBuf>,
    pub variant: CPrimeVariant,
    pub jobs: Option<usize>,
    pub json: Option<PathBuf>,
    pub threshold: Option<u64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            level_budget: DEFAULT_LEVEL_BUDGET,
            count_budget: DEFAULT_COUNT_BUDGET,
            level: None,
            ell: None,
            ell_range: None,
            alpha: None,
            x: None,
            bound: None,
            moduli: None,
            cache: None,
            newforms: None,
            variant: CPrimeVariant::Faithful,
            jobs: None,
            json: None,
            threshold: None,
        }
    }
}

/// Parse `key=value` lines; `#` starts a comment, blank lines are skipped.
pub fn parse_flat(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected key=value", i + 1)))?;
        let key = k.trim().replace('_', "-");
        if !KEYS.contains(&key.as_str()) {
            return Err(CliError::Usage(format!("config line {}: unknown key {key}", i + 1)));
        }
        out.insert(key, v.trim().to_string());
    }
    Ok(out)
}

pub fn load_flat(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    parse_flat(&text)
}

fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, CliError> {
    v.parse().map_err(|_| CliError::Usage(format!("{key}: cannot parse {v:?}")))
}

fn positive(key: &str, v: &str) -> Result<u64, CliError> {
    let n: u64 = num(key, v)?;
    if n == 0 {
        return Err(CliError::Usage(format!("{key} must be positive")));
    }
    Ok(n)
}

/// `A..B`, inclusive of both ends.
pub fn parse_range(v: &str) -> Result<(u64, u64), CliError> {
    let (a, b) = v.split_once("..").ok_or_else(|| CliError::Usage(format!("ell-range: expected A..B, got {v:?}")))?;
    let (a, b) = (num::<u64>("ell-range", a.trim())?, num::<u64>("ell-range", b.trim())?);
    if a > b {
        return Err(CliError::Usage(format!("ell-range: empty range {v}")));
    }
    Ok((a, b))
}

pub fn parse_list(key: &str, v: &str) -> Result<Vec<u64>, CliError> {
    v.split(',').map(|s| positive(key, s.trim())).collect()
}

impl RunConfig {
    /// Apply entries over the defaults. Later maps override earlier ones.
    pub fn from_layers(layers: &[BTreeMap<String, String>]) -> Result<Self, CliError> {
        let mut merged = BTreeMap::new();
        for l in layers {
            merged.extend(l.iter().map(|(k, v)| (k.clone(), v.clone())));
        }
        let mut c = RunConfig::default();
        for (k, v) in &merged {
            match k.as_str() {
                "level-budget" => c.level_budget = positive(k, v)?,
                "count-budget" => c.count_budget = positive(k, v)?,
                "level" => c.level = Some(positive(k, v)?),
                "ell" => c.ell = Some(positive(k, v)?),
                "ell-range" => c.ell_range = Some(parse_range(v)?),
                "alpha" => c.alpha = Some(num(k, v)?),
                "x" => c.x = Some(num(k, v)?),
                "bound" => c.bound = Some(positive(k, v)?),
                "moduli" => c.moduli = Some(parse_list(k, v)?),
                "cache" => c.cache = Some(PathBuf::from(v)),
                "newforms" => c.newforms = Some(PathBuf::from(v)),
                "variant" => c.variant = v.parse().map_err(|e: superelliptic::Error| CliError::Usage(e.to_string()))?,
                "jobs" => c.jobs = Some(positive(k, v)? as usize),
                "json" => c.json = Some(PathBuf::from(v)),
                "threshold" => c.threshold = Some(positive(k, v)?),
                _ => return Err(CliError::Usage(format!("unknown key {k}"))),
            }
        }
        Ok(c)
    }

    /// Primes from `--ell` or `--ell-range`, else `default`.
    pub fn ells_or(&self, default: (u64, u64)) -> Vec<u64> {
        if let Some(l) = self.ell {
            return vec![l];
        }
        let (lo, hi) = self.ell_range.unwrap_or(default);
        superelliptic::exactmath::primes_in_range(lo, hi + 1)
    }

    /// Entries echoed into reports, in key order.
    pub fn as_inputs(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        m.insert("level-budget".into(), self.level_budget.to_string());
        m.insert("count-budget".into(), self.count_budget.to_string());
        m.insert("variant".into(), variant_name(self.variant).into());
        let mut opt = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                m.insert(k.into(), v);
            }
        };
        opt("level", self.level.map(|v| v.to_string()));
        opt("ell", self.ell.map(|v| v.to_string()));
        opt("ell-range", self.ell_range.map(|(a, b)| format!("{a}..{b}")));
        opt("alpha", self.alpha.map(|v| v.to_string()));
        opt("x", self.x.as_ref().map(|v| v.to_string()));
        opt("bound", self.bound.map(|v| v.to_string()));
        opt("moduli", self.moduli.as_ref().map(|v| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")));
        opt("cache", self.cache.as_ref().map(|p| p.display().to_string()));
        opt("newforms", self.newforms.as_ref().map(|p| p.display().to_string()));
        opt("threshold", self.threshold.map(|v| v.to_string()));
        m
    }
}

pub fn variant_name(v: CPrimeVariant) -> &'static str {
    match v {
        CPrimeVariant::Faithful => "faithful",
        CPrimeVariant::Printed => "printed",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_flags() {
        let file = parse_flat("# run\nlevel = 70\nell_range=3..20\nvariant=printed\n\n").unwrap();
        let flags = BTreeMap::from([("level".to_string(), "350".to_string())]);
        let c = RunConfig::from_layers(&[file, flags]).unwrap();
        assert_eq!(c.level, Some(350));
        assert_eq!(c.ell_range, Some((3, 20)));
        assert_eq!(c.variant, CPrimeVariant::Printed);
        assert_eq!(c.ells_or((2, 5)), vec![3, 5, 7, 11, 13, 17, 19]);
    }

    #[test]
    fn rejects_bad_entries() {
        assert!(parse_flat("levl=3").is_err());
        assert!(parse_flat("level").is_err());
        let zero = BTreeMap::from([("level-budget".to_string(), "0".to_string())]);
        assert!(RunConfig::from_layers(&[zero]).is_err());
        let v = BTreeMap::from([("variant".to_string(), "other".to_string())]);
        assert!(RunConfig::from_layers(&[v]).is_err());
        assert!(parse_range("9..3").is_err());
    }
}
