//! Polygamma functions `ψ^(m)` on the positive reals.
//!
//! The series path shifts the argument upward with the recurrence
//! `ψ^(m)(t) = ψ^(m)(t+1) + (-1)^{m+1} m! t^{-(m+1)}` and then applies the
//! Euler–Maclaurin asymptotic expansion with `B_2 ..= B_20`. The integral path
//! `(-1)^{m+1} ∫_0^∞ u^m e^{-tu} / (1 - e^{-u}) du` goes through the
//! quadrature module and serves as an independent check.

mod bernoulli;

pub use bernoulli::{bernoulli_gf, BernoulliTable, GF_SERIES_SWITCH};
pub(crate) use bernoulli::{
    bernoulli_numbers, generating_coefficients_exact, generating_series_from,
};

use crate::error::{domain, Result};
use crate::quadrature::{laplace_integral, Envelope, IntegrandSpec, QuadratureValue};
use crate::series::{factorial, MAX_DERIVATIVE_ORDER};
use crate::Real;

/// Smallest argument at which the asymptotic expansion is applied.
pub const ASYMPTOTIC_THRESHOLD: f64 = 20.0;

/// Relative size of the first omitted asymptotic term that is accepted.
const ASYMPTOTIC_TARGET: f64 = 1e-20;

/// Largest polygamma order served (`MAX_DERIVATIVE_ORDER + 1`).
pub const MAX_POLYGAMMA_ORDER: u32 = MAX_DERIVATIVE_ORDER + 1;

/// Order `m >= 1` of a polygamma function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PolygammaOrder(u32);

impl PolygammaOrder {
    pub const TRIGAMMA: PolygammaOrder = PolygammaOrder(1);

    pub fn new(m: u32) -> Result<Self> {
        if (1..=MAX_POLYGAMMA_ORDER).contains(&m) {
            Ok(PolygammaOrder(m))
        } else {
            Err(domain(format!(
                "polygamma order must lie in 1..={MAX_POLYGAMMA_ORDER}, got {m}"
            )))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl TryFrom<u32> for PolygammaOrder {
    type Error = crate::Error;

    fn try_from(m: u32) -> Result<Self> {
        PolygammaOrder::new(m)
    }
}

fn check_argument(t: Real) -> Result<()> {
    if t.is_finite() && t > Real::ZERO {
        Ok(())
    } else {
        Err(domain(format!(
            "polygamma requires finite t > 0, got t = {t}"
        )))
    }
}

/// Smallest `x >= ASYMPTOTIC_THRESHOLD` at which the `B_22` term, the first
/// one left out, is below `ASYMPTOTIC_TARGET` relative to the leading term.
fn asymptotic_start(m: u32) -> f64 {
    // |B_22| (m)(m+1)...(m+20) / 22! / x^21
    let b22: f64 = 6_192.123_188_405_797;
    let mut log_ratio = b22.ln();
    for i in 0..=20 {
        log_ratio += ((m + i) as f64).ln();
    }
    log_ratio -= factorial(22).to_f64().ln();
    let x = ((log_ratio - ASYMPTOTIC_TARGET.ln()) / 21.0).exp();
    x.max(ASYMPTOTIC_THRESHOLD)
}

/// `(-1)^{m+1} ψ^(m)(x)` by the asymptotic expansion, for large `x`.
fn asymptotic_magnitude(m: u32, x: Real) -> Real {
    let inv = x.recip();
    let inv_m = inv.powi(m as i32);
    let mut sum = factorial(m - 1) * inv_m + factorial(m) * inv_m * inv * 0.5;
    let inv_sq = inv.sqr();
    // running (2k+m-1)! / (2k)! and x^{-(2k+m)}
    let mut ratio = factorial(m - 1);
    let mut power = inv_m;
    for (n, b) in BernoulliTable::standard().iter() {
        let n = n as f64;
        ratio = ratio * ((n + m as f64 - 2.0) * (n + m as f64 - 1.0)) / ((n - 1.0) * n);
        power *= inv_sq;
        sum += Real::from_rational(b) * ratio * power;
    }
    sum
}

/// `ψ^(m)(t)` for `t > 0`, to full working precision.
pub fn polygamma(order: PolygammaOrder, t: Real) -> Result<Real> {
    check_argument(t)?;
    let m = order.get();
    let start = asymptotic_start(m);
    let mut x = t;
    let mut shifted = Real::ZERO;
    let exponent = -(m as i32 + 1);
    while x < Real::new(start) {
        shifted += x.powi(exponent);
        x += 1.0;
    }
    let magnitude = factorial(m) * shifted + asymptotic_magnitude(m, x);
    Ok(if m % 2 == 1 { magnitude } else { -magnitude })
}

/// The trigamma function `ψ'(t)`.
pub fn trigamma(t: Real) -> Result<Real> {
    polygamma(PolygammaOrder::TRIGAMMA, t)
}

/// `ψ^(m)(t)` from its Laplace representation
/// `(-1)^{m+1} ∫_0^∞ u^m e^{-tu} / (1 - e^{-u}) du`.
pub fn polygamma_integral(order: PolygammaOrder, t: Real, tol: f64) -> Result<QuadratureValue> {
    check_argument(t)?;
    let m = order.get();
    // u^m / (1 - e^{-u}) = u^{m-1} * u / (1 - e^{-u}) <= (1+u)^m
    let spec = IntegrandSpec {
        evaluator: |u: Real| u.powi(m as i32 - 1) * bernoulli_gf(u),
        envelope: Envelope::new(1.0, 0.0, m as f64),
    };
    let mut q = laplace_integral(&spec, t, tol)?;
    if m.is_multiple_of(2) {
        q.value = -q.value;
    }
    Ok(q)
}
