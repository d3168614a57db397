//! Galois orbits of newforms, represented by the characteristic polynomial
//! of each eigenvalue on the orbit, and their text file format.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use serde::Serialize;

use crate::ellcurve::{ap_trace, conductor, WeierstrassModel};
use crate::exactmath::{is_prime_u64, roots_real_within_sqrt, PolyZ};
use crate::{Error, Result};

/// Largest orbit degree for which the Deligne bound is checked on load.
pub const DELIGNE_CHECK_MAX_DEGREE: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewformClass {
    pub id: String,
    pub level: u64,
    pub degree: usize,
    /// `ell -> m_ell(t)`, monic of degree `degree`.
    #[serde(serialize_with = "ser_minpolys")]
    pub minpolys: BTreeMap<u64, PolyZ>,
}

fn ser_minpolys<S: serde::Serializer>(
    m: &BTreeMap<u64, PolyZ>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(m.len()))?;
    for (l, p) in m {
        map.serialize_entry(l, &p.to_csv())?;
    }
    map.end()
}

impl NewformClass {
    pub fn new(id: impl Into<String>, level: u64, degree: usize, minpolys: BTreeMap<u64, PolyZ>) -> Result<Self> {
        let id = id.into();
        if degree == 0 || level == 0 {
            return Err(Error::InvalidArgument(format!("class {id}: degree and level must be positive")));
        }
        for (&l, m) in &minpolys {
            if !is_prime_u64(l) {
                return Err(Error::InvalidArgument(format!("class {id}: {l} is not prime")));
            }
            if !m.is_monic() || m.degree() != Some(degree) {
                return Err(Error::InvalidArgument(format!("class {id}: m_{l} is not monic of degree {degree}")));
            }
            if !level.is_multiple_of(l) && degree <= DELIGNE_CHECK_MAX_DEGREE && !roots_real_within_sqrt(m, 4 * l) {
                return Err(Error::InvalidArgument(format!("class {id}: m_{l} violates the Deligne bound")));
            }
        }
        Ok(NewformClass { id, level, degree, minpolys })
    }

    /// A rational class from its traces.
    pub fn rational(id: impl Into<String>, level: u64, traces: impl IntoIterator<Item = (u64, i64)>) -> Result<Self> {
        let m = traces.into_iter().map(|(l, a)| (l, PolyZ::from_i64s(&[-a, 1]))).collect();
        Self::new(id, level, 1, m)
    }

    /// The rational class attached to an elliptic curve, with traces at
    /// every good prime in `ells`.
    pub fn from_curve(id: impl Into<String>, e: &WeierstrassModel, ells: &[u64]) -> Result<Self> {
        let n = conductor(e)?;
        let level = u64::try_from(&n).map_err(|_| Error::InvalidArgument(format!("conductor {n} too large")))?;
        let traces = ells
            .iter()
            .filter(|&&l| level % l != 0)
            .map(|&l| ap_trace(e, l).map(|a| (l, a)))
            .collect::<Result<Vec<_>>>()?;
        Self::rational(id, level, traces)
    }

    pub fn minpoly(&self, ell: u64) -> Result<&PolyZ> {
        self.minpolys
            .get(&ell)
            .ok_or_else(|| Error::InvalidArgument(format!("class {} has no eigenvalue data at {ell}", self.id)))
    }

    pub fn eval(&self, ell: u64, t: i64) -> Result<BigInt> {
        Ok(self.minpoly(ell)?.eval(&BigInt::from(t)))
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("class id={} N={} d={}\n", self.id, self.level, self.degree);
        for (l, m) in &self.minpolys {
            let _ = writeln!(s, "ap ell={l} minpoly={}", m.to_csv());
        }
        s
    }
}

fn fields<'a>(line: &'a str, lineno: usize, keys: &[&str]) -> Result<Vec<&'a str>> {
    let mut kv = BTreeMap::new();
    for tok in line.split_whitespace().skip(1) {
        let (k, v) = tok
            .split_once('=')
            .ok_or_else(|| Error::Parse { line: lineno, msg: format!("expected key=value, got {tok}") })?;
        kv.insert(k, v);
    }
    keys.iter()
        .map(|k| kv.get(k).copied().ok_or_else(|| Error::Parse { line: lineno, msg: format!("missing {k}") }))
        .collect()
}

fn num<T: std::str::FromStr>(s: &str, lineno: usize) -> Result<T> {
    s.parse().map_err(|_| Error::Parse { line: lineno, msg: format!("bad number {s}") })
}

/// Parse `class` headers each followed by `ap` lines.
pub fn parse_newforms(text: &str) -> Result<Vec<NewformClass>> {
    let mut out = Vec::new();
    let mut cur: Option<(String, u64, usize, BTreeMap<u64, PolyZ>)> = None;
    let flush = |cur: &mut Option<(String, u64, usize, BTreeMap<u64, PolyZ>)>, out: &mut Vec<NewformClass>| {
        if let Some((id, n, d, m)) = cur.take() {
            out.push(NewformClass::new(id, n, d, m)?);
        }
        Ok::<(), Error>(())
    };
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match line.split_whitespace().next() {
            Some("class") => {
                flush(&mut cur, &mut out)?;
                let f = fields(line, lineno, &["id", "N", "d"])?;
                cur = Some((f[0].to_string(), num(f[1], lineno)?, num(f[2], lineno)?, BTreeMap::new()));
            }
            Some("ap") => {
                let f = fields(line, lineno, &["ell", "minpoly"])?;
                let c = cur
                    .as_mut()
                    .ok_or_else(|| Error::Parse { line: lineno, msg: "ap line before any class".into() })?;
                let l: u64 = num(f[0], lineno)?;
                let m = PolyZ::from_csv(f[1]).map_err(|_| Error::Parse { line: lineno, msg: "bad minpoly".into() })?;
                if c.3.insert(l, m).is_some() {
                    return Err(Error::Parse { line: lineno, msg: format!("duplicate ell={l}") });
                }
            }
            _ => return Err(Error::Parse { line: lineno, msg: format!("unknown record: {line}") }),
        }
    }
    flush(&mut cur, &mut out)?;
    Ok(out)
}

pub fn load_newforms(path: impl AsRef<Path>) -> Result<Vec<NewformClass>> {
    parse_newforms(&fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "# two classes\nclass id=a N=70 d=1\nap ell=3 minpoly=2,1\nap ell=11 minpoly=0,1\n\
                    class id=b N=350 d=2\nap ell=3 minpoly=-3,0,1\n";
        let cs = parse_newforms(text).unwrap();
        assert_eq!(cs.len(), 2);
        assert_eq!(cs[1].minpolys[&3], PolyZ::from_i64s(&[-3, 0, 1]));
        let again: String = cs.iter().map(|c| c.to_text()).collect();
        assert_eq!(parse_newforms(&again).unwrap(), cs);
    }

    #[test]
    fn rejects_bad_data() {
        assert!(parse_newforms("ap ell=3 minpoly=1,1\n").is_err());
        assert!(parse_newforms("class id=a N=70 d=2\nap ell=3 minpoly=2,1\n").is_err());
        // t - 4 at ell = 3 exceeds 2 sqrt 3.
        assert!(parse_newforms("class id=a N=70 d=1\nap ell=3 minpoly=-4,1\n").is_err());
        assert!(parse_newforms("klass id=a\n").is_err());
    }
}
