use std::ops::{Add, Mul, Neg, Sub};

use super::LaurentPoly;
use crate::chebyshev::{cheb_p, cheb_s};
use crate::{Error, Result, C64};

/// 2x2 complex matrix, row-major `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
}

impl Mat2 {
    pub const fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn from_real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2::new(
            C64::new(a, 0.0),
            C64::new(b, 0.0),
            C64::new(c, 0.0),
            C64::new(d, 0.0),
        )
    }

    pub fn identity() -> Self {
        Mat2::from_real(1.0, 0.0, 0.0, 1.0)
    }

    pub fn zero() -> Self {
        Mat2::from_real(0.0, 0.0, 0.0, 0.0)
    }

    pub fn det(&self) -> C64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> C64 {
        self.a + self.d
    }

    pub fn entries(&self) -> [C64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn scale(&self, k: C64) -> Mat2 {
        Mat2::new(self.a * k, self.b * k, self.c * k, self.d * k)
    }

    /// `[[d, -b], [-c, a]]`; the inverse when `det = 1`.
    pub fn adjugate(&self) -> Mat2 {
        Mat2::new(self.d, -self.b, -self.c, self.a)
    }

    pub fn inverse(&self) -> Mat2 {
        self.adjugate().scale(self.det().inv())
    }

    pub fn max_abs(&self) -> f64 {
        self.entries().iter().map(|e| e.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise distance.
    pub fn dist(&self, other: &Mat2) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn check_unimodular(&self, tol: f64) -> Result<()> {
        let dev = (self.det() - 1.0).norm();
        if dev < tol {
            Ok(())
        } else {
            Err(Error::NotUnimodular(dev))
        }
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        Mat2::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

/// `V^k` for `V` in SL(2) through the Chebyshev closed form
/// `[[S_k - d S_{k-1}, b S_{k-1}], [c S_{k-1}, S_k - a S_{k-1}]]`, `v = tr V`.
///
/// Valid for every integer `k`; negative indices go through the backward
/// recurrence of [`cheb_s`].
pub fn mat2_power(v: &Mat2, k: i64, tol: f64) -> Result<Mat2> {
    v.check_unimodular(tol)?;
    let tr = v.trace();
    let sk = cheb_s(k, tr);
    let sk1 = cheb_s(k - 1, tr);
    Ok(Mat2::new(sk - v.d * sk1, v.b * sk1, v.c * sk1, sk - v.a * sk1))
}

/// `I + V + ... + V^k` for `V` in SL(2), `k >= 0`, via the partial sums
/// `P_k` of the Chebyshev sequence.
pub fn mat2_geom_sum(v: &Mat2, k: i64, tol: f64) -> Result<Mat2> {
    v.check_unimodular(tol)?;
    if k < 0 {
        return Err(Error::IndexOutOfRange(k));
    }
    let tr = v.trace();
    let pk = cheb_p(k, tr)?;
    let pk1 = cheb_p(k - 1, tr)?;
    Ok(Mat2::new(pk - v.d * pk1, v.b * pk1, v.c * pk1, pk - v.a * pk1))
}

/// 2x2 matrix over `C[t, t^-1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat2L {
    pub a: LaurentPoly,
    pub b: LaurentPoly,
    pub c: LaurentPoly,
    pub d: LaurentPoly,
}

impl Mat2L {
    pub fn new(a: LaurentPoly, b: LaurentPoly, c: LaurentPoly, d: LaurentPoly) -> Self {
        Mat2L { a, b, c, d }
    }

    pub fn zero() -> Self {
        Mat2L::new(
            LaurentPoly::zero(),
            LaurentPoly::zero(),
            LaurentPoly::zero(),
            LaurentPoly::zero(),
        )
    }

    pub fn identity() -> Self {
        Mat2L::monomial(&Mat2::identity(), 0)
    }

    /// `m * t^k`.
    pub fn monomial(m: &Mat2, k: i32) -> Self {
        Mat2L::new(
            LaurentPoly::monomial(m.a, k),
            LaurentPoly::monomial(m.b, k),
            LaurentPoly::monomial(m.c, k),
            LaurentPoly::monomial(m.d, k),
        )
    }

    pub fn det(&self) -> LaurentPoly {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn trace(&self) -> LaurentPoly {
        &self.a + &self.d
    }

    pub fn scale(&self, k: C64) -> Mat2L {
        Mat2L::new(self.a.scale(k), self.b.scale(k), self.c.scale(k), self.d.scale(k))
    }

    /// Evaluates every entry at `t`.
    pub fn eval(&self, t: C64) -> Mat2 {
        Mat2::new(self.a.eval(t), self.b.eval(t), self.c.eval(t), self.d.eval(t))
    }

    pub fn entries(&self) -> [&LaurentPoly; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }
}

impl Add for &Mat2L {
    type Output = Mat2L;
    fn add(self, o: &Mat2L) -> Mat2L {
        Mat2L::new(&self.a + &o.a, &self.b + &o.b, &self.c + &o.c, &self.d + &o.d)
    }
}

impl Sub for &Mat2L {
    type Output = Mat2L;
    fn sub(self, o: &Mat2L) -> Mat2L {
        Mat2L::new(&self.a - &o.a, &self.b - &o.b, &self.c - &o.c, &self.d - &o.d)
    }
}

impl Mul for &Mat2L {
    type Output = Mat2L;
    fn mul(self, o: &Mat2L) -> Mat2L {
        Mat2L::new(
            &(&self.a * &o.a) + &(&self.b * &o.c),
            &(&self.a * &o.b) + &(&self.b * &o.d),
            &(&self.c * &o.a) + &(&self.d * &o.c),
            &(&self.c * &o.b) + &(&self.d * &o.d),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chebyshev::cheb_d;

    fn naive_power(v: &Mat2, k: i64) -> Mat2 {
        let base = if k < 0 { v.inverse() } else { *v };
        (0..k.abs()).fold(Mat2::identity(), |acc, _| acc * base)
    }

    #[test]
    fn power_of_identity() {
        let p = mat2_power(&Mat2::identity(), 5, 1e-12).unwrap();
        assert_eq!(p, Mat2::identity());
    }

    #[test]
    fn power_minus_one_is_adjugate() {
        let v = Mat2::new(
            C64::new(2.0, 1.0),
            C64::new(0.5, 0.0),
            C64::new(-1.0, 0.3),
            C64::new(0.0, 0.0),
        );
        // scale into SL(2)
        let v = v.scale(v.det().sqrt().inv());
        let p = mat2_power(&v, -1, 1e-12).unwrap();
        assert!(p.dist(&v.adjugate()) < 1e-14);
    }

    #[test]
    fn power_three_matches_repeated_product() {
        let v = Mat2::from_real(2.0, 1.0, 1.0, 1.0);
        let p = mat2_power(&v, 3, 1e-12).unwrap();
        assert!(p.dist(&(v * v * v)) < 1e-12);
        assert!(p.dist(&naive_power(&v, 3)) < 1e-12);
    }

    #[test]
    fn power_rejects_non_unimodular() {
        let v = Mat2::from_real(2.0, 0.0, 0.0, 2.0);
        assert!(matches!(mat2_power(&v, 2, 1e-9), Err(Error::NotUnimodular(_))));
    }

    #[test]
    fn geometric_sum_parabolic() {
        let v = Mat2::from_real(1.0, 1.0, 0.0, 1.0);
        let s = mat2_geom_sum(&v, 2, 1e-12).unwrap();
        assert_eq!(s, Mat2::from_real(3.0, 3.0, 0.0, 3.0));
        assert_eq!(s.det(), C64::new(9.0, 0.0));
        assert_eq!(cheb_d(3, C64::new(2.0, 0.0)), C64::new(9.0, 0.0));
        assert_eq!(mat2_geom_sum(&v, 0, 1e-12).unwrap(), Mat2::identity());
    }

    #[test]
    fn laurent_matrix_det() {
        let m = Mat2L::monomial(&Mat2::from_real(2.0, 1.0, 1.0, 1.0), 1);
        let det = m.det();
        assert_eq!(det, LaurentPoly::monomial(C64::new(1.0, 0.0), 2));
        let t = C64::new(0.3, -0.2);
        let prod = &m * &m;
        assert!(prod.eval(t).dist(&(m.eval(t) * m.eval(t))) < 1e-14);
    }
}
