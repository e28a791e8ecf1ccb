//! Exact scalars: rationals, roots of unity stored as rational exponents of
//! `e^{iπ·(-)}`, and rational functions in one formal parameter.

mod param;
mod phase;
mod poly;
mod rat;

pub use param::ParamScalar;
pub use phase::{phase_from_weight, phase_mul, phase_pow, Phase};
pub use poly::Poly;
pub use rat::{ParseRatError, Rat};
