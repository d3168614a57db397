//! Bounding the exponent: single and multi-Frey bounds, bounds from full
//! Hecke polynomials, and value-set obstructions.

mod bounds;
mod newform;
mod obstruct;
mod pipeline;

pub use bounds::{
    admissible_ells, admissible_residues, family_trace, heckepoly_bound, heckepoly_cprime, k5_levels,
    k6_rational_curves, local_term, multi_frey_tl, multi_frey_u, render, single_bound_b, single_bound_bl,
    CPrimeVariant, Contribution, ResidueTrace, SieveReport, K5_E_EXCLUDED, K5_F_EXCLUDED, K6_EXCLUDED,
    K6_LEVEL, REPORT_TRIAL_BOUND,
};
pub use newform::{load_newforms, parse_newforms, NewformClass, DELIGNE_CHECK_MAX_DEGREE};
pub use obstruct::{exponent_obstruction, value_set};
pub use pipeline::{hecke_bounds, k5_multi_frey_table, k6_hecke_report};
