use crate::algebra::{LaurentPoly, Mat2, Mat2L};
use crate::chebyshev::{cheb_p_ext, cheb_s};
use crate::riley::NonabelianRep;
use crate::C64;

/// The factors of `det Phi(dr/da) = det(I + omega1 omega2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OmegaPair {
    /// `rho(delta_{n-1}(w^-1) (a^-1 b)^m)`, constant in `t`.
    pub omega1: Mat2,
    /// `(t^-1 rho(delta_{m-1}(b^-1 a) b^-1) - rho(delta_{m-1}(a b^-1))) (I - t rho(a))`
    pub omega2: Mat2L,
    /// `S_m(y) - S_{m-1}(y)`
    pub beta: C64,
    /// `S_m(y) - (y - 1) S_{m-1}(y)`
    pub gamma: C64,
}

impl OmegaPair {
    /// `I + omega1 omega2`
    pub fn relator_matrix(&self) -> Mat2L {
        &Mat2L::identity() + &(&Mat2L::monomial(&self.omega1, 0) * &self.omega2)
    }

    pub fn product(&self) -> Mat2L {
        &Mat2L::monomial(&self.omega1, 0) * &self.omega2
    }
}

fn quad(lo: C64, mid: C64, hi: C64) -> LaurentPoly {
    LaurentPoly::with_scale(-1, vec![lo, mid, hi], 0.0)
}

/// Closed-form entries of both factors in terms of `S` and `P` at `y`, `z`.
pub fn omega_matrices(rep: &NonabelianRep) -> OmegaPair {
    let (m, n, y, z, s) = (rep.m(), rep.n(), rep.y, rep.z, rep.s);
    let si = s.inv();
    let sm = cheb_s(m, y);
    let sm1 = cheb_s(m - 1, y);
    let beta = sm - sm1;
    let gamma = sm - (y - 1.0) * sm1;

    let (pn1, pn2) = (cheb_p_ext(n - 1, z), cheb_p_ext(n - 2, z));
    let omega1 = Mat2::new(
        beta * pn1 - gamma * pn2,
        -sm1 * (si * pn1 - s * pn2),
        (2.0 - y) * sm1 * (s * pn1 - si * pn2),
        gamma * pn1 - beta * pn2,
    );

    let (p1, p2) = (cheb_p_ext(m - 1, y), cheb_p_ext(m - 2, y));
    let q = p1 - p2;
    let two_minus_y = 2.0 - y;
    let omega2 = Mat2L::new(
        quad(si * q, -2.0 * q, s * q),
        quad(p2, -si * p1 - s * p2, p1),
        quad(-two_minus_y * p1, two_minus_y * (s * p1 + si * p2), -two_minus_y * p2),
        quad(s * q, -y * q, si * q),
    );
    OmegaPair {
        omega1,
        omega2,
        beta,
        gamma,
    }
}
