//! Series-defined functions: modified Bessel `I_n`, the `₁F₂(1; k+1, k+2; t)`
//! family, the exponential tails `H_k`, the `Q` polynomial-exponential family
//! and exact derivatives of `e^{1/t}`.
//!
//! Every all-positive-term series goes through [`sum_positive`], which applies
//! one stop rule: the first omitted term `T` must satisfy `T <= tol * S / 4`
//! (with `S` the partial sum) and the term ratio from there on must be at most
//! `1/2`. The tail is then bounded by the geometric series `2T`, which is what
//! [`SeriesValue::error_bound`] reports.

mod bessel;
mod derivative;
mod exp_tail;
mod hyper;
mod q;

use std::sync::OnceLock;

use num_bigint::BigUint;

use crate::error::{domain, Result};
use crate::Real;

pub use bessel::{bessel_i, bessel_i_scaled, bessel_kernel};
pub use derivative::{
    exp_inv_derivative, exp_inv_derivative_coeffs, DerivativeCoeffs, MAX_DERIVATIVE_ORDER,
};
pub use exp_tail::{exp_tail_h, exp_tail_h_subtractive};
pub use hyper::hyper_1f2;
pub use q::{q_family, QValues, Q_SERIES_SWITCH};

/// Tolerance that drives a series to the working precision of [`Real`].
pub const FULL_PRECISION: f64 = 1e-33;

const MAX_TERMS: usize = 1_000_000;

/// A series value together with a bound on its truncation error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: Real,
    /// Absolute, nonnegative bound on the omitted tail.
    pub error_bound: Real,
    pub terms_used: usize,
}

/// Sums `T_0 + T_1 + ...` with `T_{k+1} = T_k * ratio(k)`.
///
/// `first` must be nonnegative and `ratio` nonnegative and non-increasing in
/// `k`; every series in this crate has that shape.
pub(crate) fn sum_positive(first: Real, ratio: impl Fn(usize) -> Real, tol: f64) -> SeriesValue {
    let mut sum = first;
    let mut term = first;
    let mut k = 0;
    loop {
        let next = term * ratio(k);
        if !next.is_finite() || !sum.is_finite() {
            let inf = Real::new(f64::INFINITY);
            return SeriesValue {
                value: inf,
                error_bound: inf,
                terms_used: k + 1,
            };
        }
        // A zero term zeroes every later term.
        let converged =
            next == Real::ZERO || (next <= sum * (tol / 4.0) && ratio(k + 1) <= Real::new(0.5));
        if converged || k >= MAX_TERMS {
            return SeriesValue {
                value: sum,
                error_bound: next * 2.0,
                terms_used: k + 1,
            };
        }
        sum += next;
        term = next;
        k += 1;
    }
}

pub(crate) fn check_tol(tol: f64) -> Result<()> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(domain(format!(
            "tol must be a positive finite number, got {tol}"
        )))
    }
}

/// Largest `n` with a finite `n!` in double precision.
pub const MAX_FACTORIAL: u32 = 170;

fn factorial_table() -> &'static [Real] {
    static TABLE: OnceLock<Vec<Real>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut acc = BigUint::from(1u32);
        let mut out = Vec::with_capacity(MAX_FACTORIAL as usize + 1);
        out.push(Real::ONE);
        for n in 1..=MAX_FACTORIAL {
            acc *= n;
            out.push(Real::from_biguint(&acc));
        }
        out
    })
}

/// `n!`, correctly rounded to a [`Real`]; infinite beyond 170.
pub fn factorial(n: u32) -> Real {
    factorial_table()
        .get(n as usize)
        .copied()
        .unwrap_or(Real::new(f64::INFINITY))
}

/// Pochhammer symbol `(a)_n = a (a+1) ... (a+n-1)`, with `(a)_0 = 1`.
pub fn shifted_factorial(a: Real, n: u32) -> Real {
    (0..n).fold(Real::ONE, |acc, i| acc * (a + i as f64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shifted_factorial_examples() {
        assert_eq!(shifted_factorial(Real::new(7.3), 0), Real::ONE);
        assert_eq!(shifted_factorial(Real::new(1.0), 3).to_f64(), 6.0);
        assert_eq!(shifted_factorial(Real::new(3.0), 2).to_f64(), 12.0);
        // (1)_n = n!
        assert_eq!(shifted_factorial(Real::ONE, 20), factorial(20));
    }

    #[test]
    fn factorial_table_is_exact_where_representable() {
        assert_eq!(factorial(0), Real::ONE);
        assert_eq!(factorial(10).to_f64(), 3_628_800.0);
        let f25 = factorial(25);
        let exact: i128 = 15_511_210_043_330_985_984_000_000;
        assert_eq!(f25, Real::from(exact));
        assert!(factorial(170).is_finite());
        assert!(!factorial(171).is_finite());
    }

    #[test]
    fn stop_rule_bounds_geometric_tail() {
        // sum of 2^-k is 2; the stop rule must leave at most the reported bound
        let s = sum_positive(Real::ONE, |_| Real::new(0.5), 1e-12);
        let err = (Real::new(2.0) - s.value).to_f64();
        assert!(err >= 0.0 && err <= s.error_bound.to_f64());
        assert!(s.error_bound.to_f64() <= 1e-12 * 2.0);
    }

    #[test]
    fn zero_series_stops_immediately() {
        let s = sum_positive(Real::ZERO, |_| Real::ONE, 1e-10);
        assert_eq!(s.value, Real::ZERO);
        assert_eq!(s.terms_used, 1);
        assert_eq!(s.error_bound, Real::ZERO);
    }
}
