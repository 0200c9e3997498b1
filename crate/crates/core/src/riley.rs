//! Nonabelian representations `rho: pi_1(J(2m,2n)) -> SL(2, C)`.
//!
//! Up to conjugation
//! `rho(a) = [[s, 1], [0, 1/s]]`, `rho(b) = [[s, 0], [2 - y, 1/s]]`
//! with `x = s + 1/s = tr rho(a)`, `y = tr rho(a b^-1) != 2`, and `(s, y)`
//! a zero of the Riley polynomial
//! `phi(y) = S_n(z) - alpha S_{n-1}(z)`, where
//! `z = tr rho(w) = 2 + (y - 2)(y + 2 - x^2) S_{m-1}(y)^2` and
//! `alpha = 1 + (y - e) S_{m-1}(y) (S_m(y) - S_{m-1}(y))`, `e = x^2 - 2`.

use std::fmt;

use crate::algebra::{aberth_iterate, circle_start, mat2_power, root_radius, Mat2, Poly};
use crate::chebyshev::{cheb_s, cheb_s_deriv, cheb_s_poly};
use crate::knotgroup::{build_word_w, eval_word, reverse_word, Word};
use crate::{Error, Result, C64};

/// Largest `|m|`, `|n|` for which the Riley polynomial is assembled.
pub const MAX_PARAM: i64 = 8;
/// Roots with `|y - 2|` at most this are reducible candidates, not reps.
pub const Y_EXCLUSION: f64 = 1e-6;
/// Roots closer than this are tagged as one multiplicity cluster.
pub const CLUSTER_DIST: f64 = 1e-6;
/// Bound on the normalised Riley residual of an accepted representation.
pub const RESIDUAL_TOL: f64 = 1e-8;

/// Knot parameters of J(2m,2n), `m n != 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KnotParams {
    m: i64,
    n: i64,
}

impl KnotParams {
    pub fn new(m: i64, n: i64) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::ZeroParameter);
        }
        Ok(KnotParams { m, n })
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn n(&self) -> i64 {
        self.n
    }
}

impl fmt::Display for KnotParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "J({},{})", 2 * self.m, 2 * self.n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RepFlag {
    /// Another root of the Riley polynomial lies within `CLUSTER_DIST`.
    MultiplicityCluster,
}

impl RepFlag {
    pub fn as_str(self) -> &'static str {
        match self {
            RepFlag::MultiplicityCluster => "multiplicity_cluster",
        }
    }
}

/// Meridian eigenvalue on the principal branch, `s = (x + sqrt(x^2 - 4))/2`.
pub fn eigenvalue_s(x: C64) -> C64 {
    (x + (x * x - 4.0).sqrt()) / 2.0
}

fn matrices_for(s: C64, y: C64) -> Result<(Mat2, Mat2)> {
    if s.norm() < 1e-12 {
        return Err(Error::SingularS);
    }
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    let si = s.inv();
    Ok((Mat2::new(s, one, zero, si), Mat2::new(s, zero, 2.0 - y, si)))
}

/// `(rho(a), rho(b), s)` for meridian trace `x` and `y = tr rho(a b^-1)`.
pub fn rep_matrices(x: C64, y: C64) -> Result<(Mat2, Mat2, C64)> {
    let s = eigenvalue_s(x);
    let (a, b) = matrices_for(s, y)?;
    Ok((a, b, s))
}

/// `z = tr rho(w) = 2 + (y - 2)(y + 2 - x^2) S_{m-1}(y)^2`.
pub fn trace_z(m: i64, x: C64, y: C64) -> C64 {
    let sm1 = cheb_s(m - 1, y);
    2.0 + (y - 2.0) * (y + 2.0 - x * x) * sm1 * sm1
}

/// `alpha = 1 + (y - e) S_{m-1}(y) (S_m(y) - S_{m-1}(y))`, `e = x^2 - 2`.
pub fn alpha(m: i64, x: C64, y: C64) -> C64 {
    let e = x * x - 2.0;
    let sm1 = cheb_s(m - 1, y);
    1.0 + (y - e) * sm1 * (cheb_s(m, y) - sm1)
}

/// `phi(x, y) = S_n(z) - alpha S_{n-1}(z)`.
pub fn riley_value(m: i64, n: i64, x: C64, y: C64) -> C64 {
    let z = trace_z(m, x, y);
    cheb_s(n, z) - alpha(m, x, y) * cheb_s(n - 1, z)
}

/// `(phi, dphi/dy, |S_n(z)| + |alpha S_{n-1}(z)|)` at fixed `x`.
pub fn riley_value_deriv(m: i64, n: i64, x: C64, y: C64) -> (C64, C64, f64) {
    let e = x * x - 2.0;
    let (sm1, dsm1) = cheb_s_deriv(m - 1, y);
    let (sm, dsm) = cheb_s_deriv(m, y);
    let u = y + 2.0 - x * x;
    let z = 2.0 + (y - 2.0) * u * sm1 * sm1;
    let dz = (u + y - 2.0) * sm1 * sm1 + 2.0 * (y - 2.0) * u * sm1 * dsm1;
    let alpha = 1.0 + (y - e) * sm1 * (sm - sm1);
    let dalpha = sm1 * (sm - sm1) + (y - e) * (dsm1 * (sm - sm1) + sm1 * (dsm - dsm1));
    let (sn, dsn) = cheb_s_deriv(n, z);
    let (sn1, dsn1) = cheb_s_deriv(n - 1, z);
    let value = sn - alpha * sn1;
    let deriv = dsn * dz - dalpha * sn1 - alpha * dsn1 * dz;
    (value, deriv, sn.norm() + (alpha * sn1).norm())
}

/// Backward error of `y` as a root of `phi`: `|phi|` over the larger of
/// the terms that cancel in it and `|y phi'(y)|`. The second term covers
/// roots that sit within rounding distance of a point where `phi` is 1.
pub fn riley_residual_at(m: i64, n: i64, x: C64, y: C64) -> f64 {
    let (value, deriv, scale) = riley_value_deriv(m, n, x, y);
    value.norm() / scale.max(1.0).max((y * deriv).norm())
}

fn check_bounds(m: i64, n: i64) -> Result<()> {
    if m == 0 || n == 0 {
        return Err(Error::ZeroParameter);
    }
    if m.abs() > MAX_PARAM || n.abs() > MAX_PARAM {
        return Err(Error::ParameterTooLarge { m, n, max: MAX_PARAM });
    }
    Ok(())
}

/// The Riley polynomial as a polynomial in `y` for fixed `x`, assembled by
/// composing `S_n`, `S_{n-1}` with `z(y)`.
pub fn riley_polynomial(m: i64, n: i64, x: C64) -> Result<Poly> {
    check_bounds(m, n)?;
    let e = x * x - 2.0;
    let y = Poly::identity();
    let c = |v: f64| Poly::constant(C64::new(v, 0.0));
    let sm = cheb_s_poly(m)?;
    let sm1 = cheb_s_poly(m - 1)?;
    let sm1_sq = &sm1 * &sm1;

    let y_minus_e = &y - &Poly::constant(e);
    let z = &c(2.0) + &(&(&(&y - &c(2.0)) * &y_minus_e) * &sm1_sq);
    let alpha = &c(1.0) + &(&(&y_minus_e * &sm1) * &(&sm - &sm1));

    let sn_z = cheb_s_poly(n)?.compose(&z);
    let sn1_z = cheb_s_poly(n - 1)?.compose(&z);
    Ok(&sn_z - &(&alpha * &sn1_z))
}

/// A point on the Riley variety with its matrices and derived scalars.
#[derive(Debug, Clone, PartialEq)]
pub struct NonabelianRep {
    pub params: KnotParams,
    pub x: C64,
    pub s: C64,
    pub y: C64,
    /// `s^2 + s^-2 = x^2 - 2`
    pub e: C64,
    pub z: C64,
    pub alpha: C64,
    pub rho_a: Mat2,
    pub rho_b: Mat2,
    /// `rho(w)`, multiplied out letter by letter.
    pub rho_w: Mat2,
    /// `rho` of the reversed word of `w`.
    pub rho_w_rev: Mat2,
    pub riley_residual: f64,
    pub flags: Vec<RepFlag>,
}

impl NonabelianRep {
    /// Builds the representation data at `(x, y)` and checks every
    /// invariant of a genuine nonabelian representation.
    pub fn new(params: KnotParams, x: C64, y: C64) -> Result<Self> {
        let rep = Self::at_point(params, x, y)?;
        rep.validate()?;
        Ok(rep)
    }

    /// Builds the data at `(x, y)` without requiring `phi(x, y) = 0`.
    /// Used for perturbation checks and by the surgery solver.
    pub fn at_point(params: KnotParams, x: C64, y: C64) -> Result<Self> {
        Self::from_eigenvalue(params, eigenvalue_s(x), y)
    }

    /// Same representation on the other eigenvalue branch `s -> 1/s`.
    pub fn with_inverse_branch(&self) -> Result<Self> {
        let mut rep = Self::from_eigenvalue(self.params, self.s.inv(), self.y)?;
        rep.flags = self.flags.clone();
        Ok(rep)
    }

    /// Builds the data from the meridian eigenvalue `s` itself, unchecked.
    pub fn from_eigenvalue(params: KnotParams, s: C64, y: C64) -> Result<Self> {
        let (m, n) = (params.m, params.n);
        let (rho_a, rho_b) = matrices_for(s, y)?;
        let x = s + s.inv();
        let w = build_word_w(m)?;
        Ok(NonabelianRep {
            params,
            x,
            s,
            y,
            e: s * s + (s * s).inv(),
            z: trace_z(m, x, y),
            alpha: alpha(m, x, y),
            rho_a,
            rho_b,
            rho_w: eval_word(&w, &rho_a, &rho_b),
            rho_w_rev: eval_word(&reverse_word(&w), &rho_a, &rho_b),
            riley_residual: riley_residual_at(m, n, x, y),
            flags: Vec::new(),
        })
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidRep(msg));
        if (self.s * self.s - self.x * self.s + 1.0).norm() >= 1e-9 {
            return fail(format!("s = {} is not an eigenvalue for x = {}", self.s, self.x));
        }
        if (self.y - 2.0).norm() <= Y_EXCLUSION {
            return fail(format!("y = {} is too close to 2", self.y));
        }
        if self.s_m_minus_1().norm() <= 1e-9 {
            return fail(format!("S_(m-1)(y) vanishes at y = {}", self.y));
        }
        if self.riley_residual.is_nan() || self.riley_residual >= RESIDUAL_TOL {
            return fail(format!(
                "Riley residual {:e} at y = {}",
                self.riley_residual, self.y
            ));
        }
        Ok(())
    }

    pub fn m(&self) -> i64 {
        self.params.m
    }

    pub fn n(&self) -> i64 {
        self.params.n
    }

    /// `S_{m-1}(y)`
    pub fn s_m_minus_1(&self) -> C64 {
        cheb_s(self.params.m - 1, self.y)
    }

    pub fn has_flag(&self, flag: RepFlag) -> bool {
        self.flags.contains(&flag)
    }
}

/// Roots of the Riley polynomial at a fixed meridian trace.
#[derive(Debug, Clone, PartialEq)]
pub struct RileyRoots {
    /// Representations ordered lexicographically by `(Re y, Im y)`.
    pub reps: Vec<NonabelianRep>,
    /// Roots with `y` numerically equal to 2 (reducible candidates).
    pub excluded: Vec<C64>,
    pub degree: usize,
}

fn round10(v: f64) -> f64 {
    (v * 1e10).round() / 1e10
}

/// Orders complex numbers by `(Re, Im)` after rounding to `1e-10`.
pub fn lex_cmp(a: &C64, b: &C64) -> std::cmp::Ordering {
    round10(a.re)
        .total_cmp(&round10(b.re))
        .then(round10(a.im).total_cmp(&round10(b.im)))
}

/// All nonabelian representations with meridian trace `x`.
pub fn riley_roots(m: i64, n: i64, x: C64) -> Result<RileyRoots> {
    let params = KnotParams::new(m, n)?;
    let poly = riley_polynomial(m, n, x)?;
    let degree = poly.degree().unwrap_or(0);
    if degree == 0 {
        return Ok(RileyRoots {
            reps: Vec::new(),
            excluded: Vec::new(),
            degree,
        });
    }
    // The expanded coefficients fix the degree and a root radius; the roots
    // themselves are found on phi evaluated through the recurrences, since
    // the monomial basis is far too ill-conditioned at high degree.
    let mut ys = circle_start(degree, root_radius(&poly).min(1e3));
    aberth_iterate(|y| riley_value_deriv(m, n, x, y), &mut ys, 2000);
    ys.sort_by(lex_cmp);

    let clustered: Vec<bool> = ys
        .iter()
        .enumerate()
        .map(|(i, a)| {
            ys.iter()
                .enumerate()
                .any(|(j, b)| i != j && (a - b).norm() < CLUSTER_DIST)
        })
        .collect();

    let mut reps = Vec::new();
    let mut excluded = Vec::new();
    for (y, cluster) in ys.into_iter().zip(clustered) {
        if (y - 2.0).norm() <= Y_EXCLUSION {
            excluded.push(y);
            continue;
        }
        let mut rep = NonabelianRep::new(params, x, y).map_err(|e| match e {
            Error::InvalidRep(msg) => Error::NoConvergence(msg),
            other => other,
        })?;
        if cluster {
            rep.flags.push(RepFlag::MultiplicityCluster);
        }
        reps.push(rep);
    }
    Ok(RileyRoots {
        reps,
        excluded,
        degree,
    })
}

/// `max |rho(w^n) rho(a) - rho(b) rho(w^n)|`, with `rho(w^n)` taken as a
/// matrix power of the multiplied-out `rho(w)`. Does not use `phi`.
pub fn rep_residual(rep: &NonabelianRep) -> f64 {
    let w = &rep.rho_w;
    let tol = 1e-6 * w.max_abs().max(1.0).powi(2);
    match mat2_power(w, rep.n(), tol) {
        Ok(wn) => (wn * rep.rho_a - rep.rho_b * wn).max_abs(),
        Err(_) => f64::INFINITY,
    }
}

/// The canonical longitude `lambda = rev(w)^n w^n`.
pub fn longitude_word(m: i64, n: i64) -> Result<Word> {
    if n == 0 {
        return Err(Error::ZeroParameter);
    }
    let w = build_word_w(m)?;
    Ok(&reverse_word(&w).pow(n) * &w.pow(n))
}

/// `tr rho(lambda) = 2 - x^2 (y-2)^2 S^2 / (4 - x^2 + (y + 2 - x^2)(y - 2) S^2)`,
/// `S = S_{m-1}(y)`. Only valid on the Riley variety.
pub fn longitude_trace_closed(rep: &NonabelianRep) -> Result<C64> {
    let (x, y) = (rep.x, rep.y);
    let sq = rep.s_m_minus_1().powi(2);
    let den = 4.0 - x * x + (y + 2.0 - x * x) * (y - 2.0) * sq;
    if den.norm() <= 1e-12 {
        return Err(Error::DegenerateDenominator(den.norm()));
    }
    Ok(2.0 - x * x * (y - 2.0).powi(2) * sq / den)
}

/// Evaluates `rho` on the longitude word, letter by letter.
pub fn longitude_matrix(rep: &NonabelianRep) -> Mat2 {
    let lambda = longitude_word(rep.m(), rep.n()).expect("params are nonzero");
    eval_word(&lambda, &rep.rho_a, &rep.rho_b)
}

/// `tr rho(lambda)` by direct word evaluation.
pub fn longitude_trace_direct(rep: &NonabelianRep) -> C64 {
    longitude_matrix(rep).trace()
}

/// Eigenvalue of `rho(lambda)` on the common eigenvector `e_1` of
/// `rho(a)`, i.e. its (1,1) entry. `rho(lambda)` commutes with `rho(a)`,
/// so it must be upper triangular.
pub fn longitude_eigenvalue(rep: &NonabelianRep) -> Result<C64> {
    let l = longitude_matrix(rep);
    if l.c.norm() >= 1e-6 * l.max_abs().max(1.0) {
        return Err(Error::NotTriangular(l.c.norm()));
    }
    Ok(l.a)
}
