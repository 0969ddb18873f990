use std::time::Instant;

use rayon::prelude::*;

use super::functions::{
    bessel_bound_sides, h_derivative_parts, h_minus_one, h_value, kernel_w, poly_bound_lhs,
    poly_bound_margin,
};
use super::{CheckEntry, CheckReport, Grid, GridSpec, SuiteId};
use crate::error::{domain, Result};
use crate::polygamma::{bernoulli_gf, trigamma};
use crate::quadrature::{laplace_integral_with, Envelope, IntegrandSpec, Tolerance};
use crate::series::{
    bessel_i_scaled, bessel_kernel, exp_tail_h, factorial, hyper_1f2, FULL_PRECISION,
    MAX_DERIVATIVE_ORDER,
};
use crate::Real;

/// Rounding allowance for the polynomial bound, whose margin tends to 0 at 0+.
pub const POLYBOUND_GUARD: f64 = -1e-14;

/// Relative agreement required between the Laplace and direct paths.
pub const CM_AGREEMENT: f64 = 1e-6;

/// Smallest decay rate accepted by the quadrature-based suites.
const MIN_LAPLACE_RATE: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InequalitySuite {
    /// `ψ'(t) < e^{1/t} - 1`
    Ineq1,
    /// `I_1(t) > (t/2)^3 / (1 - e^{-(t/2)^2})`
    Thm13,
    /// `1 + u/2 + u^2/12 >= u / (1 - e^{-u})`
    Polybound,
    /// `I_1(2√u)/√u > u / (1 - e^{-u})`
    KernelPos,
}

impl InequalitySuite {
    pub fn id(self) -> SuiteId {
        match self {
            InequalitySuite::Ineq1 => SuiteId::Ineq1,
            InequalitySuite::Thm13 => SuiteId::Thm13,
            InequalitySuite::Polybound => SuiteId::Polybound,
            InequalitySuite::KernelPos => SuiteId::KernelPos,
        }
    }

    fn threshold(self) -> f64 {
        match self {
            InequalitySuite::Polybound => POLYBOUND_GUARD,
            _ => 0.0,
        }
    }

    fn evaluate(self, x: f64) -> Result<CheckEntry> {
        let r = Real::new(x);
        let (lhs, rhs, margin) = match self {
            InequalitySuite::Ineq1 => (exp_tail_h(0, r)?, trigamma(r)?, h_minus_one(r)?),
            InequalitySuite::Thm13 => {
                let (lhs, rhs) = bessel_bound_sides(r)?;
                (lhs, rhs, lhs - rhs)
            }
            InequalitySuite::Polybound => {
                (poly_bound_lhs(r), bernoulli_gf(r), poly_bound_margin(r)?)
            }
            InequalitySuite::KernelPos => (
                bessel_kernel(r, FULL_PRECISION)?.value,
                bernoulli_gf(r),
                kernel_w(r)?,
            ),
        };
        Ok(entry(x, None, lhs, rhs, margin))
    }
}

fn entry(t: f64, k: Option<u32>, lhs: Real, rhs: Real, margin: Real) -> CheckEntry {
    CheckEntry {
        t,
        k,
        lhs: lhs.to_f64(),
        rhs: rhs.to_f64(),
        margin: margin.to_f64(),
    }
}

struct Outcome {
    entries: Vec<CheckEntry>,
    failures: Vec<String>,
}

impl Outcome {
    fn collect(results: Vec<(f64, Option<u32>, Result<CheckEntry>)>) -> Outcome {
        let mut entries = Vec::with_capacity(results.len());
        let mut failures = Vec::new();
        for (t, k, r) in results {
            match r {
                Ok(e) => entries.push(e),
                Err(err) => {
                    failures.push(match k {
                        Some(k) => format!("t = {t}, k = {k}: {err}"),
                        None => format!("t = {t}: {err}"),
                    });
                    entries.push(CheckEntry {
                        t,
                        k,
                        lhs: f64::NAN,
                        rhs: f64::NAN,
                        margin: f64::NAN,
                    });
                }
            }
        }
        Outcome { entries, failures }
    }

    fn into_report(
        self,
        suite: SuiteId,
        grid: GridSpec,
        k_max: Option<u32>,
        tol: f64,
        threshold: f64,
        started: Instant,
    ) -> CheckReport {
        // an entry that failed to evaluate has no margin, and neither does the suite
        let min_margin = self
            .entries
            .iter()
            .map(|e| e.margin)
            .reduce(|a, b| {
                if a.is_nan() || b.is_nan() {
                    f64::NAN
                } else {
                    a.min(b)
                }
            })
            .unwrap_or(f64::NAN);
        let pass = self.failures.is_empty()
            && !self.entries.is_empty()
            && self.entries.iter().all(|e| e.margin > threshold);
        CheckReport {
            suite,
            grid,
            k_max,
            tol,
            entries: self.entries,
            min_margin,
            pass,
            elapsed_seconds: started.elapsed().as_secs_f64(),
            failures: self.failures,
        }
    }
}

/// Evaluates one of the pointwise inequalities on `grid`.
pub fn check_inequality(suite: InequalitySuite, grid: &Grid) -> CheckReport {
    let started = Instant::now();
    let results = grid
        .points()
        .par_iter()
        .map(|&x| (x, None, suite.evaluate(x)))
        .collect();
    Outcome::collect(results).into_report(
        suite.id(),
        grid.spec(),
        None,
        FULL_PRECISION,
        suite.threshold(),
        started,
    )
}

fn check_k_max(k_max: u32) -> Result<()> {
    if k_max > MAX_DERIVATIVE_ORDER {
        Err(domain(format!(
            "k_max must be at most {MAX_DERIVATIVE_ORDER}, got {k_max}"
        )))
    } else {
        Ok(())
    }
}

fn order_grid_pairs(k_max: u32, grid: &Grid) -> Vec<(u32, f64)> {
    (0..=k_max)
        .flat_map(|k| grid.points().iter().map(move |&t| (k, t)))
        .collect()
}

/// `(-1)^k h^(k)(t) > 0` from exact derivatives of `e^{1/t}` and the
/// series polygamma, for `k = 0..=k_max`.
pub fn check_cm_direct(k_max: u32, grid: &Grid) -> Result<CheckReport> {
    check_k_max(k_max)?;
    let started = Instant::now();
    let results = order_grid_pairs(k_max, grid)
        .into_par_iter()
        .map(|(k, t)| {
            let r = Real::new(t);
            let value = if k == 0 {
                let e = r.recip().exp();
                trigamma(r).and_then(|psi| Ok(entry(t, Some(0), e, psi, h_value(r)?)))
            } else {
                h_derivative_parts(k, r).map(|(a, b)| entry(t, Some(k), a, b, a - b))
            };
            (t, Some(k), value)
        })
        .collect();
    Ok(Outcome::collect(results).into_report(
        SuiteId::CmDirect,
        grid.spec(),
        Some(k_max),
        FULL_PRECISION,
        0.0,
        started,
    ))
}

/// `(-1)^k h^(k)(t) = [k = 0] + ∫_0^∞ w(u) u^k e^{-tu} du`, with positivity
/// required and the value cross-checked against [`check_cm_direct`]'s path.
pub fn check_cm_laplace(k_max: u32, grid: &Grid, tol: f64) -> Result<CheckReport> {
    check_k_max(k_max)?;
    if grid.points()[0] < MIN_LAPLACE_RATE {
        return Err(domain(format!(
            "cm_laplace grid must start at t >= {MIN_LAPLACE_RATE}, got {}",
            grid.points()[0]
        )));
    }
    let started = Instant::now();
    let results: Vec<_> = order_grid_pairs(k_max, grid)
        .into_par_iter()
        .map(|(k, t)| {
            let r = Real::new(t);
            let value = (|| {
                let direct = super::functions::h_derivative_signed(k, r)?;
                let spec = IntegrandSpec {
                    evaluator: |u: Real| {
                        kernel_w(u).unwrap_or(Real::new(f64::NAN)) * u.powi(k as i32)
                    },
                    envelope: Envelope::new(1.0, 2.0, k as f64),
                };
                let q = laplace_integral_with(&spec, r, Tolerance { abs: 0.0, rel: tol })?;
                let laplace = if k == 0 { q.value + 1.0 } else { q.value };
                Ok(entry(t, Some(k), laplace, direct, laplace))
            })();
            (t, Some(k), value)
        })
        .collect();
    let mut outcome = Outcome::collect(results);
    for e in &outcome.entries {
        let gap = (e.lhs - e.rhs).abs();
        if gap > CM_AGREEMENT * e.rhs.abs() {
            outcome.failures.push(format!(
                "t = {}, k = {:?}: Laplace path {} differs from direct path {} by {gap:e}",
                e.t, e.k, e.lhs, e.rhs
            ));
        }
    }
    Ok(outcome.into_report(
        SuiteId::CmLaplace,
        grid.spec(),
        Some(k_max),
        tol,
        0.0,
        started,
    ))
}

/// Integral representations of the exponential tails `H_k(z)`:
/// the `₁F₂` form, the `I_{k+2}` form and, for `k = 0`, the two
/// representations of `e^{1/z}` itself. Entries come in that order for each
/// `(k, z)`; the margin is `tol * max(1, |lhs|) - |lhs - rhs|`.
pub fn check_representations(k_max: u32, z_grid: &Grid, tol: f64) -> Result<CheckReport> {
    check_k_max(k_max)?;
    if z_grid.points()[0] < MIN_LAPLACE_RATE {
        return Err(domain(format!(
            "representation grid must start at z >= {MIN_LAPLACE_RATE}, got {}",
            z_grid.points()[0]
        )));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(domain(format!("tol must be positive, got {tol}")));
    }
    let started = Instant::now();
    let quad_tol = Tolerance {
        abs: 0.0,
        rel: tol / 10.0,
    };
    let kernel_envelope = Envelope::new(1.0, 2.0, 0.0);
    let results: Vec<Vec<_>> = order_grid_pairs(k_max, z_grid)
        .into_par_iter()
        .map(|(k, z)| {
            let r = Real::new(z);
            let compare = |lhs: Real, rhs: Real| {
                let allowed = Real::new(tol) * lhs.abs().max(Real::ONE);
                entry(z, Some(k), lhs, rhs, allowed - (lhs - rhs).abs())
            };
            let laplace = |f: &(dyn Fn(Real) -> Real + Sync)| {
                let spec = IntegrandSpec {
                    evaluator: f,
                    envelope: kernel_envelope,
                };
                laplace_integral_with(&spec, r, quad_tol).map(|q| q.value)
            };
            let nan = Real::new(f64::NAN);
            let norm = (factorial(k) * factorial(k + 1)).recip();
            let mut out = Vec::new();
            let h = exp_tail_h(k, r);
            out.push((
                z,
                Some(k),
                h.clone().and_then(|h| {
                    let integral = laplace(&|s: Real| {
                        hyper_1f2(k, s, FULL_PRECISION).map_or(nan, |v| v.value)
                            * s.powi(k as i32)
                            * norm
                    })?;
                    Ok(compare(h, integral))
                }),
            ));
            out.push((
                z,
                Some(k),
                h.clone().and_then(|h| {
                    let integral = laplace(&|s: Real| {
                        bessel_i_scaled(k + 2, s, FULL_PRECISION).map_or(nan, |v| v.value)
                    })?;
                    let bracket = factorial(k + 1).recip() + integral;
                    Ok(compare(h, bracket * r.powi(-(k as i32 + 1))))
                }),
            ));
            if k == 0 {
                let e = h.clone().map(|h| h + 1.0);
                out.push((
                    z,
                    Some(0),
                    e.clone().and_then(|e| {
                        let integral = laplace(&|s: Real| {
                            bessel_kernel(s, FULL_PRECISION).map_or(nan, |v| v.value)
                        })?;
                        Ok(compare(e, integral + 1.0))
                    }),
                ));
                out.push((
                    z,
                    Some(0),
                    e.and_then(|e| {
                        let integral = laplace(&|s: Real| {
                            bessel_i_scaled(2, s, FULL_PRECISION).map_or(nan, |v| v.value)
                        })?;
                        Ok(compare(e, (integral + 1.0) / r + 1.0))
                    }),
                ));
            }
            out
        })
        .collect();
    let results = results.into_iter().flatten().collect();
    Ok(Outcome::collect(results).into_report(
        SuiteId::Representations,
        z_grid.spec(),
        Some(k_max),
        tol,
        0.0,
        started,
    ))
}

/// `h(t) -> 1` with `h(t) - 1 ≈ 1/(24 t^4)`: per point `lhs = (h-1)·24t^4`,
/// `rhs = 1` and margin `min(5/t - |lhs - 1|, 2 - |lhs|)`; `|h - 1|` must also
/// decrease along the grid.
pub fn check_limit(t_grid: &Grid) -> Result<CheckReport> {
    let (first, last) = (t_grid.points()[0], *t_grid.points().last().unwrap());
    if first < 10.0 || last > 1e4 {
        return Err(domain(format!(
            "limit grid must lie within [10, 1e4], got {first}..{last}"
        )));
    }
    let started = Instant::now();
    let results: Vec<_> = t_grid
        .points()
        .par_iter()
        .map(|&t| {
            let value = h_minus_one(Real::new(t)).map(|d| {
                let scaled = (d * (24.0 * t.powi(4))).to_f64();
                let margin = (5.0 / t - (scaled - 1.0).abs()).min(2.0 - scaled.abs());
                (
                    d.abs().to_f64(),
                    CheckEntry {
                        t,
                        k: None,
                        lhs: scaled,
                        rhs: 1.0,
                        margin,
                    },
                )
            });
            (t, value)
        })
        .collect();
    let gaps: Vec<Option<f64>> = results
        .iter()
        .map(|(_, r)| r.as_ref().ok().map(|(d, _)| *d))
        .collect();
    let mut outcome = Outcome::collect(
        results
            .into_iter()
            .map(|(t, r)| (t, None, r.map(|(_, e)| e)))
            .collect(),
    );
    for (i, w) in gaps.windows(2).enumerate() {
        if let [Some(a), Some(b)] = w {
            if b >= a {
                outcome.failures.push(format!(
                    "|h - 1| does not decrease between t = {} and t = {}",
                    t_grid.points()[i],
                    t_grid.points()[i + 1]
                ));
            }
        }
    }
    Ok(outcome.into_report(
        SuiteId::Limit,
        t_grid.spec(),
        None,
        FULL_PRECISION,
        0.0,
        started,
    ))
}

/// Runs `suite` on an explicit grid, or on its default grid when `grid` is
/// `None`; `k_max` and `tol` fall back to the suite defaults likewise.
pub fn run_suite(
    suite: SuiteId,
    grid: Option<&Grid>,
    k_max: Option<u32>,
    tol: Option<f64>,
) -> Result<CheckReport> {
    let default_grid;
    let grid = match grid {
        Some(g) => g,
        None => {
            default_grid = Grid::new(suite.default_grid())?;
            &default_grid
        }
    };
    let k_max = k_max.or(suite.default_k_max()).unwrap_or(0);
    let tol = tol.unwrap_or(suite.default_tol());
    match suite {
        SuiteId::Ineq1 => Ok(check_inequality(InequalitySuite::Ineq1, grid)),
        SuiteId::Thm13 => Ok(check_inequality(InequalitySuite::Thm13, grid)),
        SuiteId::Polybound => Ok(check_inequality(InequalitySuite::Polybound, grid)),
        SuiteId::KernelPos => Ok(check_inequality(InequalitySuite::KernelPos, grid)),
        SuiteId::CmDirect => check_cm_direct(k_max, grid),
        SuiteId::CmLaplace => check_cm_laplace(k_max, grid, tol),
        SuiteId::Representations => check_representations(k_max, grid, tol),
        SuiteId::Limit => check_limit(grid),
    }
}
