//! Scalar, polynomial and 2x2 matrix arithmetic over complex doubles.

mod laurent;
mod mat2;
mod poly;
mod roots;
pub mod dd;

pub use laurent::{laurent_div_exact, LaurentPoly};
pub use mat2::{mat2_geom_sum, mat2_power, Mat2, Mat2L};
pub use poly::Poly;
pub use roots::{aberth_iterate, circle_start, poly_roots, root_radius};

/// Coefficients at most this fraction of the largest one are dropped from
/// the ends of a polynomial.
pub const TRIM_REL: f64 = 1e-12;

pub(crate) fn max_abs(cs: &[crate::C64]) -> f64 {
    cs.iter().map(|c| c.norm()).fold(0.0, f64::max)
}
