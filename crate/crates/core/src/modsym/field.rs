//! The two coefficient fields used by the modular symbol engine.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactmath::{inv_mod, mul_mod, Rational};

pub trait Field: Send + Sync {
    type E: Clone + PartialEq + Debug + Send + Sync;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn embed(&self, n: i64) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
}

/// `Z/pZ` for a prime `p < 2^62`.
#[derive(Clone, Copy, Debug)]
pub struct PrimeField {
    pub p: u64,
}

impl Field for PrimeField {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn embed(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        inv_mod(*a, self.p).expect("nonzero element")
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
}

/// `Q`, used as an exact oracle at small levels.
#[derive(Clone, Copy, Debug, Default)]
pub struct RationalField;

impl Field for RationalField {
    type E = Rational;
    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn embed(&self, n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Rational {
        a.recip()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
}

/// Sparse row: strictly increasing column indices, no zero entries.
pub type SparseRow<E> = Vec<(usize, E)>;

/// `a + c * b` on sparse rows.
pub fn axpy<F: Field>(f: &F, a: &SparseRow<F::E>, c: &F::E, b: &SparseRow<F::E>) -> SparseRow<F::E> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, f.mul(c, &b[j].1)));
            j += 1;
        } else {
            let v = f.add(&a[i].1, &f.mul(c, &b[j].1));
            if !f.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Reduced row echelon form of a sparse matrix with `ncols` columns.
/// Returns `(pivot column, row)` pairs sorted by pivot, each row monic at its
/// pivot and zero at every other pivot column.
pub fn sparse_rref<F: Field>(f: &F, rows: Vec<SparseRow<F::E>>, ncols: usize) -> Vec<(usize, SparseRow<F::E>)> {
    let mut pivot_of: Vec<Option<usize>> = vec![None; ncols];
    let mut pivots: Vec<SparseRow<F::E>> = Vec::new();
    for row in rows {
        let mut r = row;
        // eliminate existing pivots from the front
        loop {
            let hit = r.iter().find_map(|(c, v)| pivot_of[*c].map(|k| (k, v.clone())));
            match hit {
                Some((k, v)) => {
                    let c = f.neg(&v);
                    r = axpy(f, &r, &c, &pivots[k]);
                }
                None => break,
            }
        }
        if r.is_empty() {
            continue;
        }
        let inv = f.inv(&r[0].1);
        let r: SparseRow<F::E> = r.into_iter().map(|(c, v)| (c, f.mul(&v, &inv))).collect();
        pivot_of[r[0].0] = Some(pivots.len());
        pivots.push(r);
    }
    // back substitution: clear each pivot column from every other row
    let mut order: Vec<usize> = (0..pivots.len()).collect();
    order.sort_by_key(|&k| std::cmp::Reverse(pivots[k][0].0));
    for &k in &order {
        let pc = pivots[k][0].0;
        for other in 0..pivots.len() {
            if other == k {
                continue;
            }
            if let Ok(pos) = pivots[other].binary_search_by_key(&pc, |(c, _)| *c) {
                let c = f.neg(&pivots[other][pos].1);
                let new = axpy(f, &pivots[other], &c, &pivots[k]);
                pivots[other] = new;
            }
        }
    }
    let mut out: Vec<(usize, SparseRow<F::E>)> = pivots.into_iter().map(|r| (r[0].0, r)).collect();
    out.sort_by_key(|(c, _)| *c);
    out
}
