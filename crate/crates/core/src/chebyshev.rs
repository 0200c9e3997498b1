//! Chebyshev polynomials of the second kind in the normalisation
//! `S_0 = 1`, `S_1 = v`, `S_k = v S_{k-1} - S_{k-2}` for all integers `k`,
//! their partial sums `P_k` and the quotient `D_k = (S_k - S_{k-2} - 2)/(v - 2)`.
//!
//! Everything is computed by running the linear recurrence. None of the
//! quotient forms is ever evaluated as a quotient, so all functions are
//! regular at `v = 2`.

use crate::algebra::Poly;
use crate::{Error, Result, C64};

/// Largest `|k|` accepted by [`cheb_s_poly`].
pub const MAX_POLY_INDEX: i64 = 64;

/// `S_k(v)` for any integer `k`. Negative indices run the recurrence
/// backwards, giving `S_{-1} = 0` and `S_{-k} = -S_{k-2}`.
pub fn cheb_s(k: i64, v: C64) -> C64 {
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    if k >= 0 {
        // (S_{i-1}, S_i) starting at i = 0
        let (mut prev, mut cur) = (zero, one);
        for _ in 0..k {
            (prev, cur) = (cur, v * cur - prev);
        }
        cur
    } else {
        // (S_{i+1}, S_i) starting at i = -1
        let (mut next, mut cur) = (one, zero);
        for _ in 0..(-k - 1) {
            (next, cur) = (cur, v * cur - next);
        }
        cur
    }
}

/// `(S_k(v), S_k'(v))` from the differentiated recurrence.
pub fn cheb_s_deriv(k: i64, v: C64) -> (C64, C64) {
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    if k >= 0 {
        let (mut prev, mut cur) = ((zero, zero), (one, zero));
        for _ in 0..k {
            let next = (v * cur.0 - prev.0, cur.0 + v * cur.1 - prev.1);
            (prev, cur) = (cur, next);
        }
        cur
    } else {
        let (mut next, mut cur) = ((one, zero), (zero, zero));
        for _ in 0..(-k - 1) {
            let prev = (v * cur.0 - next.0, cur.0 + v * cur.1 - next.1);
            (next, cur) = (cur, prev);
        }
        cur
    }
}

/// `P_k(v) = S_0(v) + ... + S_k(v)`, with `P_{-1} = 0`.
pub fn cheb_p(k: i64, v: C64) -> Result<C64> {
    if k < -1 {
        return Err(Error::IndexOutOfRange(k));
    }
    Ok(cheb_p_ext(k, v))
}

/// Partial sums extended to every integer so that `I + V + ... + V^k`
/// keeps its closed form for negative `k`: for `k <= -2`,
/// `P_k = -(S_{k+1} + ... + S_{-1})`.
///
/// This is the extension under which `delta_k(u) = (u^{k+1} - 1)/(u - 1)`
/// and it is what the Fox-calculus identities need when `m` or `n` is
/// negative.
pub fn cheb_p_ext(k: i64, v: C64) -> C64 {
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    if k >= -1 {
        let (mut prev, mut cur, mut sum) = (zero, one, zero);
        for _ in 0..=k {
            sum += cur;
            (prev, cur) = (cur, v * cur - prev);
        }
        sum
    } else {
        // walk S_{-1}, S_{-2}, ..., S_{k+1}
        let (mut next, mut cur, mut sum) = (one, zero, zero);
        for _ in 0..(-k - 1) {
            sum += cur;
            (next, cur) = (cur, v * cur - next);
        }
        -sum
    }
}

/// `D_k(v) = (S_k(v) - S_{k-2}(v) - 2)/(v - 2)`, evaluated as
/// `P_{k-1}(v) + P_{k-2}(v)`.
///
/// `D_{-k} = D_k` and `D_0 = 0`; at `v = 2` this gives `D_k = k^2`.
pub fn cheb_d(k: i64, v: C64) -> C64 {
    let k = k.abs();
    if k == 0 {
        return C64::new(0.0, 0.0);
    }
    cheb_p_ext(k - 1, v) + cheb_p_ext(k - 2, v)
}

/// `S_k` as a polynomial in `v`, for `|k| <= 64`.
///
/// The recurrence is run over integers, so the coefficients are exact.
pub fn cheb_s_poly(k: i64) -> Result<Poly> {
    if k.abs() > MAX_POLY_INDEX {
        return Err(Error::IndexOutOfRange(k));
    }
    // exact integers: only trim true zeros
    let to_poly = |cs: &[i64]| {
        Poly::with_scale(cs.iter().map(|&c| C64::new(c as f64, 0.0)).collect(), 0.0)
    };
    // v * p - q over integer coefficient vectors
    let step = |p: &[i64], q: &[i64]| -> Vec<i64> {
        let mut out = vec![0i64; (p.len() + 1).max(q.len())];
        for (i, &c) in p.iter().enumerate() {
            out[i + 1] += c;
        }
        for (i, &c) in q.iter().enumerate() {
            out[i] -= c;
        }
        out
    };
    if k >= 0 {
        let (mut prev, mut cur) = (vec![], vec![1i64]);
        for _ in 0..k {
            let next = step(&cur, &prev);
            (prev, cur) = (cur, next);
        }
        Ok(to_poly(&cur))
    } else {
        let (mut next, mut cur) = (vec![1i64], vec![]);
        for _ in 0..(-k - 1) {
            let prev = step(&cur, &next);
            (next, cur) = (cur, prev);
        }
        Ok(to_poly(&cur))
    }
}
