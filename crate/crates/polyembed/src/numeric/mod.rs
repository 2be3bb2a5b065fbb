//! Exact scalars: rationals and real quadratic field elements.

mod quad;
mod rational;

pub use quad::{quad_compare, quad_sqrt_of_rational, QuadExt};
pub use rational::{q, Rational};
