//! Double-double complex arithmetic for the long word products of the
//! Fox-calculus route, where plain `f64` loses up to nine digits.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex;
use twofloat::TwoFloat;

use super::{LaurentPoly, Mat2};
use crate::C64;

pub type Cdd = Complex<TwoFloat>;

pub fn to_dd(z: C64) -> Cdd {
    Complex::new(TwoFloat::from(z.re), TwoFloat::from(z.im))
}

pub fn to_c64(z: Cdd) -> C64 {
    C64::new(f64::from(z.re), f64::from(z.im))
}

fn dd_zero() -> Cdd {
    to_dd(C64::new(0.0, 0.0))
}

fn dd_one() -> Cdd {
    to_dd(C64::new(1.0, 0.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2Dd {
    pub a: Cdd,
    pub b: Cdd,
    pub c: Cdd,
    pub d: Cdd,
}

impl Mat2Dd {
    pub fn new(a: Cdd, b: Cdd, c: Cdd, d: Cdd) -> Self {
        Mat2Dd { a, b, c, d }
    }

    pub fn identity() -> Self {
        Mat2Dd::new(dd_one(), dd_zero(), dd_zero(), dd_one())
    }

    pub fn zero() -> Self {
        Mat2Dd::new(dd_zero(), dd_zero(), dd_zero(), dd_zero())
    }

    pub fn from_mat2(m: &Mat2) -> Self {
        Mat2Dd::new(to_dd(m.a), to_dd(m.b), to_dd(m.c), to_dd(m.d))
    }

    pub fn to_mat2(&self) -> Mat2 {
        Mat2::new(to_c64(self.a), to_c64(self.b), to_c64(self.c), to_c64(self.d))
    }

    /// Inverse of a determinant-one matrix.
    pub fn unimodular_inverse(&self) -> Self {
        Mat2Dd::new(self.d, -self.b, -self.c, self.a)
    }

    pub fn scale_int(&self, k: i64) -> Self {
        let k = to_dd(C64::new(k as f64, 0.0));
        Mat2Dd::new(self.a * k, self.b * k, self.c * k, self.d * k)
    }
}

impl Add for Mat2Dd {
    type Output = Mat2Dd;
    fn add(self, o: Mat2Dd) -> Mat2Dd {
        Mat2Dd::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl Sub for Mat2Dd {
    type Output = Mat2Dd;
    fn sub(self, o: Mat2Dd) -> Mat2Dd {
        Mat2Dd::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl Mul for Mat2Dd {
    type Output = Mat2Dd;
    fn mul(self, o: Mat2Dd) -> Mat2Dd {
        Mat2Dd::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

/// A 2x2 matrix of Laurent polynomials, one `Mat2Dd` per power of `t`
/// from `min_exp` upwards.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat2LDd {
    pub min_exp: i32,
    pub coeffs: Vec<Mat2Dd>,
}

impl Mat2LDd {
    pub fn zero() -> Self {
        Mat2LDd {
            min_exp: 0,
            coeffs: Vec::new(),
        }
    }

    /// Adds `m t^k`.
    pub fn add_monomial(&mut self, m: Mat2Dd, k: i32) {
        if self.coeffs.is_empty() {
            self.min_exp = k;
            self.coeffs.push(m);
            return;
        }
        if k < self.min_exp {
            let pad = (self.min_exp - k) as usize;
            self.coeffs.splice(0..0, std::iter::repeat_n(Mat2Dd::zero(), pad));
            self.min_exp = k;
        }
        let idx = (k - self.min_exp) as usize;
        if idx >= self.coeffs.len() {
            self.coeffs.resize(idx + 1, Mat2Dd::zero());
        }
        self.coeffs[idx] = self.coeffs[idx] + m;
    }

    /// Determinant, accumulated in double-double and rounded at the end.
    pub fn det(&self) -> LaurentPoly {
        if self.coeffs.is_empty() {
            return LaurentPoly::zero();
        }
        let len = self.coeffs.len();
        let mut out = vec![dd_zero(); 2 * len - 1];
        for (i, p) in self.coeffs.iter().enumerate() {
            for (j, q) in self.coeffs.iter().enumerate() {
                out[i + j] += p.a * q.d - p.b * q.c;
            }
        }
        let cs: Vec<C64> = out.into_iter().map(to_c64).collect();
        let scale = cs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        LaurentPoly::with_scale(2 * self.min_exp, cs, scale)
    }

    pub fn to_entries(&self) -> Vec<(i32, Mat2)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, m)| (self.min_exp + i as i32, m.to_mat2()))
            .collect()
    }
}
