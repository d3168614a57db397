//! Exact integer, rational and polynomial arithmetic shared by every other
//! module.

mod bipoly;
mod charpoly;
mod factor;
mod factored;
pub mod modp;
mod numtheory;
mod poly;
mod resultant;
mod sturm;

pub use bipoly::{binary_form_disc, BiPolyQ};
pub use charpoly::{
    charpoly_bound_bits, charpoly_exact, charpoly_mod_p, crt_symmetric, integer_charpoly_from_images,
};
pub use factor::{factor_over_z, is_squarefree};
pub use factored::{ser_display, trial_factor, FactoredInteger};
pub use numtheory::{
    factor_completely, gcd_u64, inv_mod, is_prime_u64, is_probable_prime, legendre, mod_big,
    mul_mod, pow_mod, power_residues, primes_in_range, primes_up_to, valuation, word_primes,
};
pub use poly::{Poly, PolyQ, PolyZ};
pub use resultant::resultant;
pub use sturm::{real_root_count, roots_real_within_sqrt, squarefree_part};

/// Arbitrary precision signed integer.
pub type Integer = num_bigint::BigInt;
/// Arbitrary precision rational.
pub type Rational = num_rational::BigRational;

/// Convenience constructor for rationals from small integers.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(Integer::from(n), Integer::from(d))
}

/// Convenience constructor for a rational from an integer.
pub fn rat_int(n: impl Into<Integer>) -> Rational {
    Rational::from_integer(n.into())
}
