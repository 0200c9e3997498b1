use std::fmt;

use crate::algebra::{laurent_div_exact, LaurentPoly};
use crate::chebyshev::{cheb_d, cheb_s};
use crate::knotgroup::{
    fox_derivative, Generator, GroupRingElement, Letter, PreciseImages, Presentation, Word,
};
use crate::riley::NonabelianRep;
use crate::{Result, C64};

/// Relative tolerance of the exact division in [`tap_oracle`].
const ORACLE_DIV_TOL: f64 = 1e-6;
const SL2_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TapSource {
    ClosedForm,
    OracleDrDa,
    OracleDrDb,
}

/// Which Fox derivative column of the presentation matrix is kept.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FoxColumn {
    Da,
    Db,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TapPolynomial {
    pub poly: LaurentPoly,
    pub source: TapSource,
}

impl TapPolynomial {
    /// Coefficient of `t^k`.
    pub fn coeff(&self, k: i32) -> C64 {
        self.poly.coeff(k)
    }

    pub fn eval(&self, t: C64) -> C64 {
        self.poly.eval(t)
    }

    /// Plain sum of the coefficients, i.e. the value at `t = 1`.
    pub fn coeff_sum(&self) -> C64 {
        self.poly.coeffs().iter().sum()
    }
}

impl fmt::Display for TapPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

/// Twisted Alexander polynomial in closed form,
/// `(t + t^-1 - x) D_m(y) D_n(z) + x S_{m-1}(y) S_{n-1}(z)`.
pub fn tap_closed(rep: &NonabelianRep) -> TapPolynomial {
    let (m, n) = (rep.m(), rep.n());
    let dd = cheb_d(m, rep.y) * cheb_d(n, rep.z);
    let ss = cheb_s(m - 1, rep.y) * cheb_s(n - 1, rep.z);
    let c1 = dd;
    let c0 = -rep.x * dd + rep.x * ss;
    TapPolynomial {
        // trims exact zeros only
        poly: LaurentPoly::with_scale(-1, vec![c1, c0, c1], 0.0),
        source: TapSource::ClosedForm,
    }
}

/// Twisted Alexander polynomial from its definition: the determinant of
/// `Phi` applied to one Fox derivative of the relator, divided by
/// `det Phi(g - 1)` for the other generator `g`.
///
/// Word products and determinants are accumulated in double-double; the
/// Fox sums cancel heavily once `|y|` exceeds 2.
pub fn tap_oracle(rep: &NonabelianRep, column: FoxColumn) -> Result<TapPolynomial> {
    let pres = Presentation::new(rep.m(), rep.n())?;
    let (gen, other, source) = match column {
        FoxColumn::Da => (Generator::A, Letter::B, TapSource::OracleDrDa),
        FoxColumn::Db => (Generator::B, Letter::A, TapSource::OracleDrDb),
    };
    rep.rho_a.check_unimodular(SL2_TOL)?;
    rep.rho_b.check_unimodular(SL2_TOL)?;
    let images = PreciseImages::new(rep.s, rep.y)?;
    let deriv = fox_derivative(&pres.relator, gen);
    let num = images.phi_det(&deriv);
    let g_minus_one = &GroupRingElement::from_word(Word::letter(other)) - &GroupRingElement::one();
    let den = images.phi_det(&g_minus_one);
    Ok(TapPolynomial {
        poly: laurent_div_exact(&num, &den, ORACLE_DIV_TOL)?,
        source,
    })
}

fn trimmed(p: &LaurentPoly, cut: f64) -> Option<(i32, Vec<C64>)> {
    let cs = p.coeffs();
    let lo = cs.iter().position(|c| c.norm() > cut)?;
    let hi = cs.iter().rposition(|c| c.norm() > cut)?;
    Some((p.min_exp() + lo as i32, cs[lo..=hi].to_vec()))
}

/// The `k` with `p = t^k q`, coefficients compared within
/// `tol * max(|p|, |q|)` after dropping end coefficients below that size.
/// Two (numerically) zero polynomials give `Some(0)`.
pub fn laurent_shift(p: &LaurentPoly, q: &LaurentPoly, tol: f64) -> Option<i32> {
    let cut = tol * p.max_abs().max(q.max_abs());
    match (trimmed(p, cut), trimmed(q, cut)) {
        (None, None) => Some(0),
        (Some((pe, pc)), Some((qe, qc))) => {
            let same = pc.len() == qc.len()
                && pc.iter().zip(&qc).all(|(a, b)| (a - b).norm() <= cut);
            same.then_some(pe - qe)
        }
        _ => None,
    }
}

/// Whether `p = t^{2k} q` for some integer `k`, coefficients within
/// `tol * max(|p|, |q|)`.
pub fn laurent_equal_mod_t2(p: &LaurentPoly, q: &LaurentPoly, tol: f64) -> bool {
    laurent_shift(p, q, tol).is_some_and(|k| k % 2 == 0)
}
