use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{max_abs, TRIM_REL};
use crate::{Error, Result, C64};

/// Laurent polynomial in `t` with complex coefficients.
///
/// `coeffs[i]` is the coefficient of `t^(min_exp + i)`. Both end
/// coefficients are nonzero unless the polynomial is zero, in which case
/// `coeffs` is empty and `min_exp` is 0.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LaurentPoly {
    min_exp: i32,
    coeffs: Vec<C64>,
}

impl LaurentPoly {
    pub fn new(min_exp: i32, coeffs: Vec<C64>) -> Self {
        let scale = max_abs(&coeffs);
        Self::with_scale(min_exp, coeffs, scale)
    }

    /// Trims both ends against `TRIM_REL * scale`.
    pub fn with_scale(min_exp: i32, coeffs: Vec<C64>, scale: f64) -> Self {
        let cut = TRIM_REL * scale;
        let keep = |c: &C64| c.norm() > cut;
        let Some(lo) = coeffs.iter().position(keep) else {
            return Self::zero();
        };
        let hi = coeffs.iter().rposition(keep).unwrap();
        LaurentPoly {
            min_exp: min_exp + lo as i32,
            coeffs: coeffs[lo..=hi].to_vec(),
        }
    }

    pub fn zero() -> Self {
        LaurentPoly {
            min_exp: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: C64) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * t^k`.
    pub fn monomial(c: C64, k: i32) -> Self {
        Self::new(k, vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> i32 {
        self.min_exp
    }

    /// Highest exponent; equals `min_exp - 1` for the zero polynomial.
    pub fn max_exp(&self) -> i32 {
        self.min_exp + self.coeffs.len() as i32 - 1
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    /// Coefficient of `t^k` (zero outside the support).
    pub fn coeff(&self, k: i32) -> C64 {
        let i = k - self.min_exp;
        if i < 0 {
            return C64::new(0.0, 0.0);
        }
        self.coeffs
            .get(i as usize)
            .copied()
            .unwrap_or(C64::new(0.0, 0.0))
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.coeffs)
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            min_exp: self.min_exp + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, k: C64) -> Self {
        Self::new(self.min_exp, self.coeffs.iter().map(|&c| c * k).collect())
    }

    pub fn eval(&self, t: C64) -> C64 {
        let body = self
            .coeffs
            .iter()
            .rev()
            .fold(C64::new(0.0, 0.0), |acc, &c| acc * t + c);
        body * t.powi(self.min_exp)
    }

    fn combine(&self, rhs: &Self, sign: f64) -> Self {
        if self.is_zero() {
            return if sign > 0.0 { rhs.clone() } else { -rhs };
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.min_exp.min(rhs.min_exp);
        let hi = self.max_exp().max(rhs.max_exp());
        let out = (lo..=hi)
            .map(|k| self.coeff(k) + rhs.coeff(k) * sign)
            .collect();
        Self::with_scale(lo, out, self.max_abs().max(rhs.max_abs()))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.combine(rhs, 1.0)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.combine(rhs, -1.0)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(|&c| -c).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut out = vec![C64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        LaurentPoly::with_scale(
            self.min_exp + rhs.min_exp,
            out,
            self.max_abs() * rhs.max_abs(),
        )
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| format!("({c})t^{}", self.min_exp + i as i32))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Exact division `num / den` in `C[t, t^-1]`.
///
/// Long division from the top degree down. The remainder must vanish up to
/// `tol * max|num|`, otherwise the quotient is not a Laurent polynomial and
/// [`Error::InexactDivision`] is returned.
pub fn laurent_div_exact(num: &LaurentPoly, den: &LaurentPoly, tol: f64) -> Result<LaurentPoly> {
    if den.is_zero() {
        return Err(Error::InexactDivision {
            remainder: f64::INFINITY,
            bound: 0.0,
        });
    }
    if num.is_zero() {
        return Ok(LaurentPoly::zero());
    }
    let bound = tol * num.max_abs();
    let d = den.coeffs.len() - 1;
    if num.coeffs.len() <= d {
        return Err(Error::InexactDivision {
            remainder: num.max_abs(),
            bound,
        });
    }
    let lead = den.coeffs[d];
    let mut rem = num.coeffs.clone();
    let qlen = rem.len() - d;
    let mut q = vec![C64::new(0.0, 0.0); qlen];
    for i in (0..qlen).rev() {
        let qi = rem[i + d] / lead;
        q[i] = qi;
        for (j, &dc) in den.coeffs.iter().enumerate() {
            rem[i + j] -= qi * dc;
        }
    }
    let remainder = max_abs(&rem[..d]);
    if remainder > bound {
        return Err(Error::InexactDivision { remainder, bound });
    }
    Ok(LaurentPoly::with_scale(
        num.min_exp - den.min_exp,
        q,
        num.max_abs() / lead.norm(),
    ))
}
