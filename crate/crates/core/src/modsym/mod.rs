//! Weight 2 modular symbols for `Gamma_0(N)` (plus quotient), Hecke
//! operators and characteristic polynomials on the new subspace.

mod field;
mod heilbronn;
mod newspace;
mod p1;
mod space;

pub use field::{sparse_rref, Field, PrimeField, RationalField, SparseRow};
pub use heilbronn::heilbronn_merel;
pub use newspace::{
    class_degrees, genus_x0, HeckeCache, HeckeCharPoly, ModularSymbolsEngine, CuspidalNewData,
    DEFAULT_LEVEL_BUDGET,
};
pub use p1::{p1_size, P1List};
pub use space::{ManinSymbolSpace, Presentation};
