use super::{check_tol, sum_positive, SeriesValue};
use crate::error::{domain, Result};
use crate::Real;

/// `₁F₂(1; k+1, k+2; t) = sum_n (1)_n / ((k+1)_n (k+2)_n) t^n / n!` for `t >= 0`.
///
/// Since `(1)_n = n!`, consecutive terms have ratio `t / ((k+1+n)(k+2+n))`.
pub fn hyper_1f2(k: u32, t: Real, tol: f64) -> Result<SeriesValue> {
    if !t.is_finite() || (t.is_sign_negative() && t != Real::ZERO) {
        return Err(domain(format!(
            "hyper_1f2 requires finite t >= 0, got t = {t}"
        )));
    }
    check_tol(tol)?;
    let k = k as f64;
    Ok(sum_positive(
        Real::ONE,
        |n| t / ((k + 1.0 + n as f64) * (k + 2.0 + n as f64)),
        tol,
    ))
}
