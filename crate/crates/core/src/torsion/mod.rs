//! Twisted Alexander polynomials, Reidemeister torsion of the knot
//! exterior and torsion of its Dehn surgeries.

mod omega;
mod surgery;
mod tap;

pub use omega::{omega_matrices, OmegaPair};
pub use surgery::{
    refine_surgery_point, surgery_extension_residual, surgery_torsion, torsion_knot,
    Preconditions, SurgerySlope, TorsionFlag, TorsionKind, TorsionResult,
};
pub use tap::{
    laurent_equal_mod_t2, laurent_shift, tap_closed, tap_oracle, FoxColumn, TapPolynomial,
    TapSource,
};

use crate::C64;

/// `|a - b| <= tol * max(1, |a|, |b|)`
pub fn rel_close(a: C64, b: C64, tol: f64) -> bool {
    (a - b).norm() <= tol * a.norm().max(b.norm()).max(1.0)
}
