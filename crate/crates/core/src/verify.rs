//! Self-verification: runs every identity and dual-route check over a grid
//! of knots and meridian traces and collects the failures.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{mat2_geom_sum, mat2_power, Mat2};
use crate::chebyshev::{cheb_d, cheb_p, cheb_s};
use crate::riley::{
    longitude_trace_closed, longitude_trace_direct, rep_residual, riley_roots, NonabelianRep,
};
use crate::torsion::{
    laurent_equal_mod_t2, laurent_shift, omega_matrices, rel_close, surgery_torsion, tap_closed,
    tap_oracle, torsion_knot, FoxColumn, SurgerySlope,
};
use crate::knotgroup::{fox_derivative, Generator, PreciseImages, Presentation};
use crate::{Result, C64};

/// Random instances per Chebyshev identity.
pub const CHEB_SAMPLES: usize = 100;
/// The closed form equals the Fox-calculus quotient times this power of `t`.
pub const ORACLE_UNIT_EXPONENT: i32 = 1;

/// Meridian traces sampled by default.
pub fn default_xs() -> Vec<C64> {
    vec![
        C64::new(0.5, 0.0),
        C64::new(1.0, 0.0),
        C64::new(2.4, 0.0),
        C64::new(1.0, 0.7),
        C64::new(-0.3, 1.1),
    ]
}

/// All `(m, n)` with `m, n` in `{-3, .., -1, 1, .., 3}`.
pub fn default_pairs() -> Vec<(i64, i64)> {
    let ks = [-3, -2, -1, 1, 2, 3];
    ks.iter()
        .flat_map(|&m| ks.iter().map(move |&n| (m, n)))
        .collect()
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub pairs: Vec<(i64, i64)>,
    pub xs: Vec<C64>,
    /// Shift applied to every root `y` before the checks run.
    pub perturb: Option<f64>,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            pairs: default_pairs(),
            xs: default_xs(),
            perturb: None,
            seed: 0x5eed,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckFailure {
    pub check: &'static str,
    pub point: Option<(i64, i64, C64, C64)>,
    pub detail: String,
}

impl fmt::Display for CheckFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.point {
            Some((m, n, x, y)) => write!(
                f,
                "{} at m={m} n={n} x={x} y={y}: {}",
                self.check, self.detail
            ),
            None => write!(f, "{}: {}", self.check, self.detail),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct CheckTally {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub tallies: Vec<CheckTally>,
    pub failures: Vec<CheckFailure>,
}

impl VerifyReport {
    pub fn total(&self) -> usize {
        self.tallies.iter().map(|t| t.passed + t.failed).sum()
    }

    pub fn failed(&self) -> usize {
        self.failures.len()
    }

    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, name: &'static str, point: Option<(i64, i64, C64, C64)>, outcome: std::result::Result<(), String>) {
        let idx = match self.tallies.iter().position(|t| t.name == name) {
            Some(i) => i,
            None => {
                self.tallies.push(CheckTally {
                    name,
                    ..Default::default()
                });
                self.tallies.len() - 1
            }
        };
        match outcome {
            Ok(()) => self.tallies[idx].passed += 1,
            Err(detail) => {
                self.tallies[idx].failed += 1;
                self.failures.push(CheckFailure {
                    check: name,
                    point,
                    detail,
                });
            }
        }
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.tallies {
            writeln!(f, "{:<28} {:>6} passed {:>6} failed", t.name, t.passed, t.failed)?;
        }
        for fail in &self.failures {
            writeln!(f, "FAILED {fail}")?;
        }
        if self.all_passed() {
            write!(f, "all {} checks passed", self.total())
        } else {
            write!(f, "{} of {} checks failed", self.failed(), self.total())
        }
    }
}

fn ensure(ok: bool, detail: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(detail())
    }
}

fn random_c64(rng: &mut ChaCha8Rng, r: f64) -> C64 {
    C64::new(rng.gen_range(-r..r), rng.gen_range(-r..r))
}

fn random_sl2(rng: &mut ChaCha8Rng) -> Mat2 {
    let a = C64::from_polar(rng.gen_range(0.5..1.5), rng.gen_range(0.0..std::f64::consts::TAU));
    let b = random_c64(rng, 1.0);
    let c = random_c64(rng, 1.0);
    Mat2::new(a, b, c, (1.0 + b * c) / a)
}

/// Chebyshev identities at random points.
pub fn check_chebyshev(report: &mut VerifyReport, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..CHEB_SAMPLES {
        let k = rng.gen_range(-10..=10i64);
        let v = random_c64(&mut rng, 2.5);
        let (sk, sk1) = (cheb_s(k, v), cheb_s(k - 1, v));
        let lhs = sk * sk - v * sk * sk1 + sk1 * sk1;
        let bound = 1e-9 * (1.0 + v.norm()).powi(2 * k.abs() as i32);
        report.record(
            "chebyshev_unit_identity",
            None,
            ensure((lhs - 1.0).norm() < bound, || format!("k={k} v={v}: {lhs}")),
        );
    }
    for _ in 0..CHEB_SAMPLES {
        let k = rng.gen_range(-1..=12i64);
        let v = loop {
            let v = random_c64(&mut rng, 2.5);
            if (v - 2.0).norm() > 0.1 {
                break v;
            }
        };
        let p = cheb_p(k, v).expect("k >= -1");
        let q = (cheb_s(k + 1, v) - cheb_s(k, v) - 1.0) / (v - 2.0);
        report.record(
            "chebyshev_partial_sum",
            None,
            ensure(rel_close(p, q, 1e-9), || format!("k={k} v={v}: {p} vs {q}")),
        );
    }
    for _ in 0..CHEB_SAMPLES {
        let k = rng.gen_range(-8..=8i64);
        let v = random_sl2(&mut rng);
        let step = if k >= 0 { v } else { v.inverse() };
        let direct = (0..k.abs()).fold(Mat2::identity(), |acc, _| acc * step);
        let outcome = match mat2_power(&v, k, 1e-9) {
            Ok(p) => ensure(p.dist(&direct) <= 1e-9 * direct.max_abs().max(1.0), || {
                format!("k={k}: distance {:e}", p.dist(&direct))
            }),
            Err(e) => Err(e.to_string()),
        };
        report.record("matrix_power", None, outcome);
    }
    for _ in 0..CHEB_SAMPLES {
        let k = rng.gen_range(0..=8i64);
        let v = random_sl2(&mut rng);
        let mut sum = Mat2::zero();
        let mut pow = Mat2::identity();
        for _ in 0..=k {
            sum = sum + pow;
            pow = pow * v;
        }
        let d = cheb_d(k + 1, v.trace());
        let closed_sum = mat2_geom_sum(&v, k, 1e-9);
        let outcome = match closed_sum {
            Ok(cs) => ensure(
                rel_close(sum.det(), d, 1e-9) && cs.dist(&sum) <= 1e-9 * sum.max_abs().max(1.0),
                || format!("k={k}: det {} vs {d}", sum.det()),
            ),
            Err(e) => Err(e.to_string()),
        };
        report.record("geometric_sum_determinant", None, outcome);
    }
}

/// All checks that need a point on the Riley variety.
pub fn check_rep(report: &mut VerifyReport, rep: &NonabelianRep) {
    let (m, n, x, y) = (rep.m(), rep.n(), rep.x, rep.y);
    let pt = Some((m, n, x, y));

    let res = rep_residual(rep);
    report.record(
        "relation_residual",
        pt,
        ensure(res < 1e-8, || format!("residual {res:e}")),
    );

    let sm1 = rep.s_m_minus_1();
    let e = x * x - 2.0;
    let ident = cheb_s(n - 1, rep.z).powi(2)
        * (y - e)
        * sm1
        * sm1
        * (2.0 - e + (y - e) * (y - 2.0) * sm1 * sm1);
    report.record(
        "riley_square_identity",
        pt,
        ensure((ident - 1.0).norm() < 1e-7 && sm1.norm() > 1e-9, || {
            format!("value {ident}, |S_(m-1)| = {:e}", sm1.norm())
        }),
    );

    let closed = tap_closed(rep);
    let oracles: Vec<_> = [FoxColumn::Da, FoxColumn::Db]
        .into_iter()
        .map(|col| tap_oracle(rep, col))
        .collect();
    let outcome = match &oracles[0] {
        Ok(o) => {
            let shift = laurent_shift(&closed.poly, &o.poly, 1e-6);
            ensure(shift == Some(ORACLE_UNIT_EXPONENT), || {
                format!("closed {closed} vs oracle {o} (shift {shift:?})")
            })
        }
        Err(err) => Err(err.to_string()),
    };
    report.record("closed_form_vs_fox", pt, outcome);

    let outcome = match (&oracles[0], &oracles[1]) {
        (Ok(a), Ok(b)) => ensure(laurent_equal_mod_t2(&a.poly, &b.poly, 1e-6), || {
            format!("da {a} vs db {b}")
        }),
        (Err(e), _) | (_, Err(e)) => Err(e.to_string()),
    };
    report.record("fox_columns", pt, outcome);

    let pres = Presentation::new(m, n).expect("nonzero params");
    let outcome = PreciseImages::new(rep.s, rep.y)
        .map_err(|e| e.to_string())
        .and_then(|images| {
            let fox = images.phi_det(&fox_derivative(&pres.relator, Generator::A));
            let om = omega_matrices(rep).relator_matrix().det();
            let diff = (&fox - &om).max_abs();
            let scale = om.max_abs().max(1.0);
            ensure(diff <= 1e-8 * scale, || format!("difference {diff:e}"))
        });
    report.record("omega_factorisation", pt, outcome);

    if (x - 2.0).norm() > 0.1 {
        let outcome = match (torsion_knot(rep), &oracles[0]) {
            (Ok(t), Ok(o)) => {
                let at_one = o.eval(C64::new(1.0, 0.0));
                ensure(
                    t.value == closed.coeff_sum() && rel_close(t.value, at_one, 1e-7),
                    || format!("torsion {} vs oracle {at_one}", t.value),
                )
            }
            (Err(e), _) => Err(e.to_string()),
            (_, Err(e)) => Err(e.to_string()),
        };
        report.record("torsion_at_one", pt, outcome);
    }

    let outcome = longitude_trace_closed(rep)
        .map_err(|e| e.to_string())
        .and_then(|c| {
            let d = longitude_trace_direct(rep);
            ensure(rel_close(c, d, 1e-6), || format!("closed {c} vs word {d}"))
        });
    report.record("longitude_trace", pt, outcome);

    if x.norm() > 0.1 && (x - 2.0).norm() > 0.1 {
        let slope = SurgerySlope::new(1, 1).expect("coprime");
        let outcome = surgery_torsion(rep, slope).map(|_| ()).map_err(|e| e.to_string());
        report.record("surgery_torsion_routes", pt, outcome);
    }
}

/// Runs the Chebyshev suite and every representation check on the grid.
pub fn run_verify(cfg: &VerifyConfig) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    check_chebyshev(&mut report, cfg.seed);
    for &(m, n) in &cfg.pairs {
        for &x in &cfg.xs {
            let roots = riley_roots(m, n, x)?;
            for rep in roots.reps {
                let rep = match cfg.perturb {
                    Some(d) => NonabelianRep::at_point(rep.params, x, rep.y + d)?,
                    None => rep,
                };
                check_rep(&mut report, &rep);
            }
        }
    }
    Ok(report)
}
