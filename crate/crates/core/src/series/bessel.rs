use super::{check_tol, sum_positive, SeriesValue};
use crate::error::{domain, Result};
use crate::Real;

/// Modified Bessel function of the first kind `I_n(z)` for integer order and
/// real `z >= 0`, by its defining power series
/// `sum_k (z/2)^{2k+n} / (k! (n+k)!)`.
pub fn bessel_i(n: u32, z: Real, tol: f64) -> Result<SeriesValue> {
    if !z.is_finite() {
        return Err(domain(format!(
            "bessel_i requires a finite argument, got z = {z}"
        )));
    }
    if z.is_sign_negative() && z != Real::ZERO {
        return Err(domain(format!("bessel_i requires z >= 0, got z = {z}")));
    }
    check_tol(tol)?;
    let half = z * 0.5;
    // (z/2)^n / n! as a running product so that neither factor overflows
    let first = (1..=n).fold(Real::ONE, |acc, j| acc * half / j as f64);
    let quarter_sq = half.sqr();
    Ok(sum_positive(
        first,
        |k| quarter_sq / ((k as f64 + 1.0) * (n as f64 + k as f64 + 1.0)),
        tol,
    ))
}

/// `I_n(2 sqrt(u)) / u^{n/2} = sum_j u^j / (j! (j+n)!)`, evaluated directly in
/// powers of `u` so the removable singularity at `u = 0` never appears.
pub fn bessel_i_scaled(n: u32, u: Real, tol: f64) -> Result<SeriesValue> {
    if !u.is_finite() || (u.is_sign_negative() && u != Real::ZERO) {
        return Err(domain(format!(
            "scaled Bessel series requires finite u >= 0, got u = {u}"
        )));
    }
    check_tol(tol)?;
    let first = (1..=n).fold(Real::ONE, |acc, j| acc / j as f64);
    Ok(sum_positive(
        first,
        |k| u / ((k as f64 + 1.0) * (n as f64 + k as f64 + 1.0)),
        tol,
    ))
}

/// The kernel `I_1(2 sqrt(u)) / sqrt(u) = sum_k u^k / (k! (k+1)!)`.
pub fn bessel_kernel(u: Real, tol: f64) -> Result<SeriesValue> {
    if u.is_sign_negative() && u != Real::ZERO {
        return Err(domain(format!(
            "bessel_kernel requires u >= 0, got u = {u}"
        )));
    }
    bessel_i_scaled(1, u, tol)
}
