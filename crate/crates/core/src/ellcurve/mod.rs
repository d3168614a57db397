//! Weierstrass models over `Q`, their reduction data and traces of
//! Frobenius.

mod minimal;
mod model;
mod tate;
mod trace;

pub use minimal::{bad_primes, conductor, global_minimal_model, local_data, minimal_disc_valuation};
pub use model::{Invariants, WeierstrassModel};
pub use tate::{tate_reduction, tate_reduction_big, Kodaira, ReductionData};
pub use trace::{
    ap_trace, ap_trace_with_budget, count_points_mod, model_hash, TraceTable, DEFAULT_COUNT_BUDGET,
};
