//! The Frey–Hellegouarch families attached to `k = 5` and `k = 6`, the
//! cubic form recipe, and the polynomial identities they rely on.

mod bd;
mod family;
mod split;

pub use bd::{bd_recipe, require_cubic, BdFamily};
pub use family::{
    alpha_family, check_3391_multiplicative, f_family, frey_k5_e, frey_k5_f, frey_k6, k5_quartic,
    k6_family, k6_sextic,
    Check3391, FreyFamily, SymbolicInvariants, Validity,
};
pub use split::{alpha_split, EquationInstance, SplitData};
