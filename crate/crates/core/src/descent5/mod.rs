//! Small exponents for `k = 5`: integral points for `p = 2, 3` and the
//! descent over `Q(sqrt 70)` for `p = 5`.

mod points;
mod quad;
mod system;
mod thue;

pub use points::{bounded_integral_points, points_to_x, small_exponent_curve};
pub use quad::{
    fundamental_unit, ideal_generator, valuations, IdealSpec, QuadElem, DEFAULT_GENERATOR_BOUND,
};
pub use system::{
    build_system, default_moduli, descent_ideal, local_sieve_system, sieve_grid, soluble_mod, QuinticSystem,
    SieveCell,
};
pub use thue::thue_search;
