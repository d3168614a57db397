//! Elementary obstructions to the exponent from value sets modulo `q`.

use std::collections::BTreeSet;

use crate::exactmath::{power_residues, PolyZ};

/// Values of `P` on `Z/q`.
pub fn value_set(p: &PolyZ, q: u64) -> BTreeSet<u64> {
    (0..q).map(|t| p.eval_mod(t, q)).collect()
}

/// True iff no value of `P mod q` is an `n`-th power mod `q`, so that
/// `P(x) = z^n` has no solution.
pub fn exponent_obstruction(p: &PolyZ, q: u64, n: u64) -> bool {
    let powers = power_residues(q, n);
    value_set(p, q).is_disjoint(&powers)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sextic() {
        let s = PolyZ::from_i64s(&[2, 0, 30, 0, 30, 0, 3]);
        assert_eq!(value_set(&s, 7), BTreeSet::from([2, 3]));
        assert_eq!(power_residues(7, 3), BTreeSet::from([0, 1, 6]));
        assert!(exponent_obstruction(&s, 7, 3));
        assert!(exponent_obstruction(&s, 3, 2));
        assert!(!exponent_obstruction(&s, 7, 2));
        assert!(!exponent_obstruction(&PolyZ::from_i64s(&[0, 1]), 9, 1));
    }
}
