use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{max_abs, TRIM_REL};
use crate::C64;

/// Dense univariate polynomial with complex coefficients.
///
/// `coeffs[i]` is the coefficient of `v^i`. The zero polynomial is the
/// empty vector; otherwise the last coefficient is nonzero.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Poly {
    coeffs: Vec<C64>,
}

impl Poly {
    /// Builds a polynomial, trimming high-order coefficients that are
    /// negligible relative to the largest coefficient.
    pub fn new(coeffs: Vec<C64>) -> Self {
        let scale = max_abs(&coeffs);
        Self::with_scale(coeffs, scale)
    }

    /// Like [`Poly::new`], but trims relative to an externally supplied
    /// magnitude. Used when the coefficients come out of a cancellation
    /// whose operands were much larger than the result.
    pub fn with_scale(mut coeffs: Vec<C64>, scale: f64) -> Self {
        let cut = TRIM_REL * scale;
        while let Some(c) = coeffs.last() {
            if c.norm() <= cut {
                coeffs.pop();
            } else {
                break;
            }
        }
        Poly { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| C64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: C64) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `v`.
    pub fn identity() -> Self {
        Poly {
            coeffs: vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
        }
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<C64> {
        self.coeffs.last().copied()
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.coeffs)
    }

    pub fn eval(&self, v: C64) -> C64 {
        self.coeffs
            .iter()
            .rev()
            .fold(C64::new(0.0, 0.0), |acc, &c| acc * v + c)
    }

    /// `sum |c_i| |v|^i`, the natural scale for the rounding error of `eval`.
    pub fn eval_abs(&self, v: C64) -> f64 {
        let r = v.norm();
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * r + c.norm())
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * i as f64)
                .collect(),
        )
    }

    pub fn scale(&self, k: C64) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| c * k).collect())
    }

    /// `self(inner(v))`, by Horner's scheme over polynomials.
    pub fn compose(&self, inner: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for &c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Poly::constant(c);
        }
        acc
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = C64::new(0.0, 0.0);
        let out = (0..n)
            .map(|i| {
                self.coeffs.get(i).copied().unwrap_or(zero) + rhs.coeffs.get(i).copied().unwrap_or(zero)
            })
            .collect();
        Poly::with_scale(out, self.max_abs().max(rhs.max_abs()))
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|&c| -c).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![C64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.norm() > 0.0)
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})v"),
                _ => format!("({c})v^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}
