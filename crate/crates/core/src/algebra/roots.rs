use std::f64::consts::TAU;

use super::Poly;
use crate::{Error, Result, C64};

const MAX_ITER: usize = 500;
const POLISH_STEPS: usize = 3;

/// All complex roots of `p`, with multiplicity.
///
/// Aberth–Ehrlich simultaneous iteration on the monic normalisation,
/// followed by Newton polishing against the original coefficients. Each
/// returned root `r` satisfies
/// `|p(r)| <= tol * max(1 + max|c_i|, sum |c_i| |r|^i)`.
pub fn poly_roots(p: &Poly, tol: f64) -> Result<Vec<C64>> {
    let deg = match p.degree() {
        None | Some(0) => return Err(Error::DegreeZero),
        Some(d) => d,
    };
    let cs = p.coeffs();

    // exact zero roots first
    let zeros = cs.iter().take_while(|c| c.norm() == 0.0).count();
    let reduced = Poly::new(cs[zeros..].to_vec());
    let mut roots = vec![C64::new(0.0, 0.0); zeros];
    if deg > zeros {
        roots.extend(aberth(&reduced)?);
    }

    let dp = p.derivative();
    for r in roots.iter_mut().skip(zeros) {
        polish(p, &dp, r);
    }

    let scale = 1.0 + p.max_abs();
    for r in &roots {
        let res = p.eval(*r).norm();
        let bound = tol * scale.max(p.eval_abs(*r));
        if res > bound {
            return Err(Error::NoConvergence(format!(
                "root {r} has residual {res:e} > {bound:e}"
            )));
        }
    }
    Ok(roots)
}

fn aberth(p: &Poly) -> Result<Vec<C64>> {
    let deg = p.degree().unwrap();
    let lead = p.leading().unwrap();
    let monic = p.scale(lead.inv());
    let cs = monic.coeffs();
    if deg == 1 {
        return Ok(vec![-cs[0]]);
    }
    let dp = monic.derivative();
    let mut z = circle_start(deg, root_radius(&monic));
    aberth_iterate(
        |v| (monic.eval(v), dp.eval(v), monic.eval_abs(v)),
        &mut z,
        MAX_ITER,
    );
    if z.iter().all(|r| r.is_finite()) {
        Ok(z)
    } else {
        Err(Error::NoConvergence("Aberth iteration diverged".into()))
    }
}

/// Fujiwara-type bound on the moduli of the roots of `p`.
pub fn root_radius(p: &Poly) -> f64 {
    let deg = match p.degree() {
        None | Some(0) => return 1.0,
        Some(d) => d,
    };
    let lead = p.leading().unwrap().norm();
    let cs = p.coeffs();
    (0..deg)
        .map(|i| (cs[i].norm() / lead).powf(1.0 / (deg - i) as f64))
        .fold(0.0, f64::max)
        .max(1e-3)
}

/// `count` starting points spread evenly on a circle.
pub fn circle_start(count: usize, radius: f64) -> Vec<C64> {
    (0..count)
        .map(|k| C64::from_polar(radius, TAU * k as f64 / count as f64 + 0.4))
        .collect()
}

/// Aberth–Ehrlich simultaneous iteration for the zeros of an analytic
/// function with exactly `z.len()` zeros. `eval(v)` returns
/// `(f(v), f'(v), s)` with `s` the size of the terms summed in `f(v)`;
/// a point is settled once `|f| <= 4 eps s` or its step stalls.
/// Returns whether every point settled.
pub fn aberth_iterate<F>(eval: F, z: &mut [C64], max_iter: usize) -> bool
where
    F: Fn(C64) -> (C64, C64, f64),
{
    let deg = z.len();
    let mut done = vec![false; deg];
    for _ in 0..max_iter {
        for k in 0..deg {
            if done[k] {
                continue;
            }
            let (f, df, scale) = eval(z[k]);
            if f.norm() <= 4.0 * f64::EPSILON * scale {
                done[k] = true;
                continue;
            }
            let ratio = f / df;
            let repulsion: C64 = (0..deg)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let step = ratio / (C64::new(1.0, 0.0) - ratio * repulsion);
            if !step.is_finite() {
                // coincident estimates; nudge apart
                let bump = C64::new(1e-8, 1e-8) * (1.0 + z[k].norm());
                z[k] += bump;
                continue;
            }
            z[k] -= step;
            if step.norm() <= 2.0 * f64::EPSILON * z[k].norm() {
                done[k] = true;
            }
        }
        if done.iter().all(|&d| d) {
            return true;
        }
    }
    // Multiple roots converge only linearly; the caller decides by residual.
    false
}

fn polish(p: &Poly, dp: &Poly, r: &mut C64) {
    for _ in 0..POLISH_STEPS {
        let f = p.eval(*r);
        let df = dp.eval(*r);
        if df.norm() == 0.0 {
            return;
        }
        let cand = *r - f / df;
        if cand.is_finite() && p.eval(cand).norm() <= f.norm() {
            *r = cand;
        } else {
            return;
        }
    }
}
