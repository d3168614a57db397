//! The projective line over `Z/N`.

use crate::exactmath::gcd_u64;

/// Representatives `(c:d)` of `P^1(Z/N)` with an `N x N` index table.
#[derive(Clone, Debug)]
pub struct P1List {
    n: u64,
    reps: Vec<(u64, u64)>,
    index: Vec<u32>,
}

const NONE: u32 = u32::MAX;

impl P1List {
    pub fn new(n: u64) -> Self {
        assert!(n >= 1);
        let units: Vec<u64> = (1..=n).filter(|&u| gcd_u64(u % n, n) == 1 || n == 1).map(|u| u % n).collect();
        let sz = (n * n) as usize;
        let mut index = vec![NONE; sz];
        let mut reps = Vec::new();
        for c in 0..n {
            for d in 0..n {
                if index[(c * n + d) as usize] != NONE || gcd_u64(gcd_u64(c, d), n) != 1 {
                    continue;
                }
                let k = reps.len() as u32;
                reps.push((c, d));
                for &u in &units {
                    let (uc, ud) = ((u * c) % n, (u * d) % n);
                    index[(uc * n + ud) as usize] = k;
                }
            }
        }
        P1List { n, reps, index }
    }

    pub fn level(&self) -> u64 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn rep(&self, i: usize) -> (u64, u64) {
        self.reps[i]
    }

    /// Index of `(c:d)` for arbitrary integers, or `None` when
    /// `gcd(c, d, N) > 1`.
    pub fn index_of(&self, c: i64, d: i64) -> Option<usize> {
        let n = self.n as i64;
        let (c, d) = (c.rem_euclid(n) as u64, d.rem_euclid(n) as u64);
        let k = self.index[(c * self.n + d) as usize];
        (k != NONE).then_some(k as usize)
    }
}

/// `#P^1(Z/N) = N prod_{p | N} (1 + 1/p)`.
pub fn p1_size(n: u64) -> u64 {
    let mut m = n;
    let mut out = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            out = out / p * (p + 1);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out = out / m * (m + 1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        for n in 1..60 {
            assert_eq!(P1List::new(n).len() as u64, p1_size(n), "N = {n}");
        }
    }

    #[test]
    fn index_is_projective() {
        let p = P1List::new(12);
        assert_eq!(p.index_of(5, 7), p.index_of(25, 35));
        assert_eq!(p.index_of(2, 4), None);
        assert_eq!(p.index_of(-1, 1), p.index_of(11, 1));
    }
}
