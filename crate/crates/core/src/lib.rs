//! Exact arithmetic for the modular method applied to the superelliptic
//! equations `(x-1)^k + x^k + (x+1)^k = z^n` with `k = 5, 6`.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactmath`]: integers, polynomials, resultants, characteristic
//!   polynomials by CRT, polynomial factorisation over `Z`.
//! * [`ellcurve`]: Weierstrass models, Tate's algorithm, conductors and
//!   traces of Frobenius.
//! * [`freyfam`]: the concrete Frey–Hellegouarch families and the cubic form
//!   recipe.
//! * [`modsym`]: weight 2 modular symbols for `Gamma_0(N)` and Hecke
//!   polynomials on the new subspace.
//! * [`expsieve`]: exponent bounds built from trace congruences.
//! * [`descent5`]: the small exponent searches for `k = 5`.

pub mod descent5;
pub mod ellcurve;
mod error;
pub mod exactmath;
pub mod expsieve;
pub mod freyfam;
pub mod modsym;

pub use error::{Error, Result};
