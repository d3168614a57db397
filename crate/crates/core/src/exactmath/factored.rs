use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::numtheory::primes_up_to;
use crate::{Error, Result};

/// A nonzero integer split into small prime powers and an unfactored cofactor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactoredInteger {
    pub negative: bool,
    pub primes: BTreeMap<u64, u32>,
    /// Positive part left after trial division (1 if fully factored).
    #[serde(serialize_with = "ser_display")]
    pub cofactor: BigInt,
    pub bound: u64,
}

/// Serialise any `Display` value (big integers, rationals) as a string.
pub fn ser_display<T: std::fmt::Display, S: serde::Serializer>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Extract every prime factor `<= bound` of `n`.
pub fn trial_factor(n: &BigInt, bound: u64) -> Result<FactoredInteger> {
    if n.is_zero() {
        return Err(Error::ZeroInteger);
    }
    if bound < 2 {
        return Err(Error::InvalidArgument("trial division bound must be >= 2".into()));
    }
    let mut m = n.abs();
    let mut primes = BTreeMap::new();
    for p in primes_up_to(bound) {
        if m.is_one() {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = num_integer::Integer::div_rem(&m, &BigInt::from(p));
            if !r.is_zero() {
                break;
            }
            m = q;
            e += 1;
        }
        if e > 0 {
            primes.insert(p, e);
        }
    }
    Ok(FactoredInteger { negative: n.sign() == Sign::Minus, primes, cofactor: m, bound })
}

impl FactoredInteger {
    pub fn value(&self) -> BigInt {
        let mut v = self.cofactor.clone();
        for (&p, &e) in &self.primes {
            v *= BigInt::from(p).pow(e);
        }
        if self.negative {
            -v
        } else {
            v
        }
    }

    pub fn exponent(&self, p: u64) -> u32 {
        self.primes.get(&p).copied().unwrap_or(0)
    }

    pub fn is_fully_factored(&self) -> bool {
        self.cofactor.is_one()
    }

    /// Listed primes at least `threshold`.
    pub fn primes_at_least(&self, threshold: u64) -> Vec<u64> {
        self.primes.keys().copied().filter(|&p| p >= threshold).collect()
    }
}

impl fmt::Display for FactoredInteger {
    /// Renders as `2^27 * 3^28 * 5^3 * 7`, with any cofactor in brackets.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .primes
            .iter()
            .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        if !self.cofactor.is_one() {
            parts.push(format!("[{}]", self.cofactor));
        }
        if parts.is_empty() {
            parts.push("1".into());
        }
        if self.negative {
            write!(f, "-")?;
        }
        write!(f, "{}", parts.join(" * "))
    }
}
