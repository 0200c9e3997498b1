use std::fmt;

use super::{rel_close, tap_closed};
use crate::algebra::{mat2_power, Mat2};
use crate::riley::{
    longitude_matrix, longitude_trace_closed, riley_residual_at, riley_value, KnotParams,
    NonabelianRep,
};
use crate::{Error, Result, C64};

/// `|x - 2|` and `|x|` at or below this count as the excluded values.
pub const MERIDIAN_TOL: f64 = 1e-6;
/// Relative agreement required between the two surgery torsion routes.
pub const DUAL_PATH_TOL: f64 = 1e-8;
/// Extension residual above which a result is flagged.
pub const EXTENSION_TOL: f64 = 1e-6;

const FD_STEP: f64 = 1e-7;
const MAX_NEWTON: usize = 100;
const NEWTON_TARGET: f64 = 1e-10;
const SEED_LIMIT: f64 = 0.5;

/// A Dehn surgery slope `p/q` with `gcd(p, q) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SurgerySlope {
    p: i64,
    q: i64,
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

impl SurgerySlope {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if gcd(p, q) != 1 {
            return Err(Error::InvalidSlope { p, q });
        }
        Ok(SurgerySlope { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }
}

impl fmt::Display for SurgerySlope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorsionKind {
    Knot,
    SurgeredManifold,
}

/// Which of the meridian conditions held for the computed value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Preconditions {
    pub x_not_two: bool,
    pub x_nonzero: bool,
}

impl Preconditions {
    fn at(x: C64) -> Self {
        Preconditions {
            x_not_two: (x - 2.0).norm() > MERIDIAN_TOL,
            x_nonzero: x.norm() > MERIDIAN_TOL,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorsionFlag {
    /// `rho` was not shown to factor through the surgered group.
    ExtensionNotVerified,
}

impl TorsionFlag {
    pub fn as_str(self) -> &'static str {
        match self {
            TorsionFlag::ExtensionNotVerified => "extension_not_verified",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TorsionResult {
    pub value: C64,
    pub kind: TorsionKind,
    pub validity: Preconditions,
    pub slope: Option<SurgerySlope>,
    pub extension_residual: Option<f64>,
    pub flags: Vec<TorsionFlag>,
}

/// Torsion of the knot exterior, the twisted Alexander polynomial at
/// `t = 1`: `(2 - x) D_m(y) D_n(z) + x S_{m-1}(y) S_{n-1}(z)`.
pub fn torsion_knot(rep: &NonabelianRep) -> Result<TorsionResult> {
    let validity = Preconditions::at(rep.x);
    if !validity.x_not_two {
        return Err(Error::ParabolicMeridian);
    }
    Ok(TorsionResult {
        value: tap_closed(rep).coeff_sum(),
        kind: TorsionKind::Knot,
        validity,
        slope: None,
        extension_residual: None,
        flags: Vec::new(),
    })
}

/// Torsion of the `p/q` surgery,
/// `tau_K (4 - x^2 + (y + 2 - x^2)(y - 2) S^2) / (x^2 (y - 2)^2 S^2)`
/// with `S = S_{m-1}(y)`, cross-checked against `tau_K / (2 - tr rho(lambda))`.
///
/// The value does not depend on the slope. Whether `rho` extends over the
/// surgery is reported through `extension_residual` and the flags.
pub fn surgery_torsion(rep: &NonabelianRep, slope: SurgerySlope) -> Result<TorsionResult> {
    let validity = Preconditions::at(rep.x);
    if !(validity.x_not_two && validity.x_nonzero) {
        return Err(Error::MeridianTraceDegenerate);
    }
    let tau_k = torsion_knot(rep)?.value;
    let (x, y) = (rep.x, rep.y);
    let sq = rep.s_m_minus_1().powi(2);
    let num = 4.0 - x * x + (y + 2.0 - x * x) * (y - 2.0) * sq;
    let den = x * x * (y - 2.0).powi(2) * sq;
    if den.norm() <= 1e-300 {
        return Err(Error::DegenerateDenominator(den.norm()));
    }
    let closed = tau_k * num / den;
    let ratio = tau_k / (2.0 - longitude_trace_closed(rep)?);
    if !rel_close(closed, ratio, DUAL_PATH_TOL) {
        return Err(Error::DualPathMismatch(format!(
            "surgery torsion {closed} vs {ratio} at y = {y}"
        )));
    }
    let residual = surgery_extension_residual(rep, slope);
    let mut flags = Vec::new();
    if residual.is_nan() || residual > EXTENSION_TOL {
        flags.push(TorsionFlag::ExtensionNotVerified);
    }
    Ok(TorsionResult {
        value: closed,
        kind: TorsionKind::SurgeredManifold,
        validity,
        slope: Some(slope),
        extension_residual: Some(residual),
        flags,
    })
}

fn powi(v: C64, k: i64) -> C64 {
    match i32::try_from(k) {
        Ok(k) => v.powi(k),
        Err(_) => v.powc(C64::new(k as f64, 0.0)),
    }
}

/// How far `rho` is from killing `a^p lambda^q`:
/// `max(|s^p l^q - 1|, max |rho(a)^p rho(lambda)^q - I|)` with `l` the
/// (1,1) entry of `rho(lambda)`.
pub fn surgery_extension_residual(rep: &NonabelianRep, slope: SurgerySlope) -> f64 {
    let lambda = longitude_matrix(rep);
    let ell = lambda.a;
    let scalar = (powi(rep.s, slope.p) * powi(ell, slope.q) - 1.0).norm();
    let tol = 1e-6 * lambda.max_abs().max(1.0).powi(2);
    let matrix = match (mat2_power(&rep.rho_a, slope.p, 1e-6), mat2_power(&lambda, slope.q, tol)) {
        (Ok(ap), Ok(lq)) => (ap * lq - Mat2::identity()).max_abs(),
        _ => f64::INFINITY,
    };
    scalar.max(matrix)
}

/// The eigenvalue of `x` closest to `s_ref`.
fn branch_near(x: C64, s_ref: C64) -> C64 {
    let s = crate::riley::eigenvalue_s(x);
    let si = s.inv();
    if (s - s_ref).norm() <= (si - s_ref).norm() {
        s
    } else {
        si
    }
}

struct SurgerySystem {
    params: KnotParams,
    slope: SurgerySlope,
}

impl SurgerySystem {
    /// `(phi(x, y), s^p l^q - 1)` on the eigenvalue branch nearest `s_ref`.
    fn eval(&self, x: C64, y: C64, s_ref: C64) -> Result<([C64; 2], C64)> {
        let s = branch_near(x, s_ref);
        let rep = NonabelianRep::from_eigenvalue(self.params, s, y)?;
        let ell = longitude_matrix(&rep).a;
        let f = [
            riley_value(self.params.m(), self.params.n(), x, y),
            powi(s, self.slope.p) * powi(ell, self.slope.q) - 1.0,
        ];
        Ok((f, s))
    }

    fn residual(&self, x: C64, y: C64, f: &[C64; 2]) -> f64 {
        let phi = riley_residual_at(self.params.m(), self.params.n(), x, y);
        phi.max(f[1].norm())
    }
}

/// Damped Newton iteration for a point on the Riley curve whose
/// representation extends over the `p/q` surgery, i.e. `phi(x, y) = 0`
/// and `s^p l^q = 1`. The Jacobian is taken by forward differences.
pub fn refine_surgery_point(
    m: i64,
    n: i64,
    slope: SurgerySlope,
    x0: C64,
    y0: C64,
) -> Result<(C64, C64)> {
    let sys = SurgerySystem {
        params: KnotParams::new(m, n)?,
        slope,
    };
    let (mut x, mut y) = (x0, y0);
    let (mut f, mut s) = sys.eval(x, y, crate::riley::eigenvalue_s(x))?;
    let mut res = sys.residual(x, y, &f);
    if res.is_nan() || res >= SEED_LIMIT {
        return Err(Error::NoConvergence(format!(
            "initial residual {res:e} is not below {SEED_LIMIT}"
        )));
    }
    for _ in 0..MAX_NEWTON {
        if res < NEWTON_TARGET {
            return Ok((x, y));
        }
        let h = C64::new(FD_STEP, 0.0);
        let (fx, _) = sys.eval(x + h, y, s)?;
        let (fy, _) = sys.eval(x, y + h, s)?;
        let j = [
            [(fx[0] - f[0]) / h, (fy[0] - f[0]) / h],
            [(fx[1] - f[1]) / h, (fy[1] - f[1]) / h],
        ];
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        let jmax = j.iter().flatten().map(|v| v.norm()).fold(0.0, f64::max);
        if det.norm().is_nan() || det.norm() <= 1e-14 * jmax * jmax {
            return Err(Error::JacobianSingular);
        }
        let dx = (j[1][1] * f[0] - j[0][1] * f[1]) / det;
        let dy = (j[0][0] * f[1] - j[1][0] * f[0]) / det;

        let mut lambda = 1.0;
        loop {
            let (xn, yn) = (x - dx * lambda, y - dy * lambda);
            let (fnew, snew) = sys.eval(xn, yn, s)?;
            let rnew = sys.residual(xn, yn, &fnew);
            if rnew < res {
                (x, y, f, s, res) = (xn, yn, fnew, snew, rnew);
                break;
            }
            lambda *= 0.5;
            if lambda < 1e-6 {
                return Err(Error::NoConvergence(format!("line search stalled at residual {res:e}")));
            }
        }
    }
    if res < NEWTON_TARGET {
        Ok((x, y))
    } else {
        Err(Error::NoConvergence(format!("residual {res:e} after {MAX_NEWTON} steps")))
    }
}
