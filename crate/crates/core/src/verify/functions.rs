//! The functions the checks are phrased in: `h`, its signed derivatives, the
//! kernel `w(u)` and the polynomial-bound margin.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{domain, Result};
use crate::polygamma::{
    bernoulli_gf, bernoulli_numbers, generating_coefficients_exact, generating_series_from,
    polygamma, trigamma, PolygammaOrder, GF_SERIES_SWITCH,
};
use crate::series::{bessel_i, bessel_kernel, exp_inv_derivative, exp_tail_h, FULL_PRECISION};
use crate::Real;

/// From here on `h(t) - 1` is taken from the merged asymptotic expansion.
pub const H_MERGE_THRESHOLD: f64 = 20.0;

/// Below this `u` the kernel `w(u)` is summed as one power series.
pub const KERNEL_SERIES_SWITCH: f64 = 0.5;

fn check_positive(name: &str, x: Real) -> Result<()> {
    if x.is_finite() && x > Real::ZERO {
        Ok(())
    } else {
        Err(domain(format!(
            "{name} requires a finite positive argument, got {x}"
        )))
    }
}

fn rational_factorial(n: usize) -> BigRational {
    BigRational::from_integer((1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k)))
}

/// Coefficients `a_j` (index `j`, from `j = 0`) of
/// `h(t) - 1 ~ sum_j a_j t^{-j}`: `1/j!` from `e^{1/t}` minus the
/// trigamma expansion `1/t + 1/(2t^2) + sum_k B_{2k} t^{-(2k+1)}`.
fn merged_limit_coefficients() -> &'static [Real] {
    static TABLE: OnceLock<Vec<Real>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let bern = bernoulli_numbers();
        (0..=22usize)
            .map(|j| {
                let mut a = if j == 0 {
                    BigRational::from_integer(0.into())
                } else {
                    rational_factorial(j).recip()
                };
                if j == 1 {
                    a -= BigRational::one();
                } else if j == 2 {
                    a -= BigRational::new(1.into(), 2.into());
                } else if j % 2 == 1 && j <= 21 {
                    a -= bern[j - 1].clone();
                }
                Real::from_rational(&a)
            })
            .collect()
    })
}

/// `h(t) - 1 = e^{1/t} - 1 - ψ'(t)` without cancelling the two `≈ 1/t` parts.
pub fn h_minus_one(t: Real) -> Result<Real> {
    check_positive("h", t)?;
    if t < Real::new(H_MERGE_THRESHOLD) {
        return Ok(exp_tail_h(0, t)? - trigamma(t)?);
    }
    let inv = t.recip();
    let coeffs = merged_limit_coefficients();
    let mut sum = Real::ZERO;
    for c in coeffs.iter().rev() {
        sum = sum * inv + *c;
    }
    Ok(sum)
}

/// `h(t) = e^{1/t} - ψ'(t)`.
pub fn h_value(t: Real) -> Result<Real> {
    check_positive("h", t)?;
    if t < Real::new(H_MERGE_THRESHOLD) {
        Ok(t.recip().exp() - trigamma(t)?)
    } else {
        Ok(h_minus_one(t)? + 1.0)
    }
}

/// `(-1)^k h^(k)(t)`, from exact derivatives of `e^{1/t}` and polygammas.
pub fn h_derivative_signed(k: u32, t: Real) -> Result<Real> {
    if k == 0 {
        return h_value(t);
    }
    let (exp_part, psi_part) = h_derivative_parts(k, t)?;
    Ok(exp_part - psi_part)
}

/// `((-1)^k d^k e^{1/t}, (-1)^k ψ^(k+1)(t))`.
pub(crate) fn h_derivative_parts(k: u32, t: Real) -> Result<(Real, Real)> {
    check_positive("h", t)?;
    let exp_part = exp_inv_derivative(k, t)?;
    let psi_part = polygamma(PolygammaOrder::new(k + 1)?, t)?;
    Ok(if k.is_multiple_of(2) {
        (exp_part, psi_part)
    } else {
        (-exp_part, -psi_part)
    })
}

/// Coefficients of `w(u) = sum_k (1/(k!(k+1)!) - B_k^+/k!) u^k`; entries
/// `k < 3` vanish.
fn kernel_coefficients() -> &'static [Real] {
    static TABLE: OnceLock<Vec<Real>> = OnceLock::new();
    TABLE.get_or_init(|| {
        generating_coefficients_exact()
            .iter()
            .enumerate()
            .map(|(k, b)| {
                let kern = (rational_factorial(k) * rational_factorial(k + 1)).recip();
                Real::from_rational(&(kern - b))
            })
            .collect()
    })
}

/// `w(u) = I_1(2√u)/√u - u/(1 - e^{-u})`, the kernel of the Laplace
/// representation of `h - 1`.
pub fn kernel_w(u: Real) -> Result<Real> {
    check_positive("kernel_w", u)?;
    if u < Real::new(KERNEL_SERIES_SWITCH) {
        let coeffs = kernel_coefficients();
        let mut power = u.powi(3);
        let mut sum = Real::ZERO;
        let mut previous_small = false;
        for c in &coeffs[3..] {
            let term = *c * power;
            sum += term;
            let small = term.abs().to_f64() <= Real::EPSILON * 1e-3 * sum.abs().to_f64();
            if small && previous_small {
                break;
            }
            previous_small = small;
            power *= u;
        }
        return Ok(sum);
    }
    Ok(bessel_kernel(u, FULL_PRECISION)?.value - bernoulli_gf(u))
}

/// `1 + u/2 + u^2/12 - u/(1 - e^{-u})`, which behaves like `u^4/720` near 0.
pub fn poly_bound_margin(u: Real) -> Result<Real> {
    if !u.is_finite() || u.is_sign_negative() {
        return Err(domain(format!("polybound requires finite u >= 0, got {u}")));
    }
    if u < Real::new(GF_SERIES_SWITCH) {
        return Ok(-generating_series_from(3, u));
    }
    Ok(poly_bound_lhs(u) - bernoulli_gf(u))
}

pub(crate) fn poly_bound_lhs(u: Real) -> Real {
    u.sqr() / 12.0 + u * 0.5 + 1.0
}

/// Both sides of `I_1(t) > (t/2)^3 / (1 - e^{-(t/2)^2})`.
pub(crate) fn bessel_bound_sides(t: Real) -> Result<(Real, Real)> {
    check_positive("thm13", t)?;
    let lhs = bessel_i(1, t, FULL_PRECISION)?.value;
    let half = t * 0.5;
    let rhs = half.powi(3) / -(-half.sqr()).exp_m1();
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    const E: f64 = std::f64::consts::E;
    const ZETA2: f64 = 1.644_934_066_848_226_4;

    #[test]
    fn h_examples() {
        let h1 = h_value(Real::ONE).unwrap().to_f64();
        assert!((h1 - (E - ZETA2)).abs() < 1e-15);
        assert!((h1 - 1.073_347_761_610_819).abs() < 1e-15);
        let h10 = h_value(Real::new(10.0)).unwrap().to_f64();
        assert!(h10 > 1.0 && h10 < 1.00001);
        assert!(h_value(Real::new(0.05)).unwrap() > Real::ZERO);
    }

    #[test]
    fn merged_expansion_matches_direct_difference() {
        // leading coefficients 1/24 at t^-4 and t^-5, and t^-3 cancels
        let c = merged_limit_coefficients();
        assert_eq!(c[0], Real::ZERO);
        assert_eq!(c[1], Real::ZERO);
        assert_eq!(c[2], Real::ZERO);
        assert_eq!(c[3], Real::ZERO);
        assert!((c[4].to_f64() - 1.0 / 24.0).abs() < 1e-17);
        assert!((c[5].to_f64() - 1.0 / 24.0).abs() < 1e-17);
        for &t in &[20.0, 25.0, 60.0] {
            let tr = Real::new(t);
            let merged = h_minus_one(tr).unwrap();
            let direct = exp_tail_h(0, tr).unwrap() - trigamma(tr).unwrap();
            assert!(((merged - direct) / merged).abs().to_f64() < 1e-18, "t={t}");
        }
    }

    #[test]
    fn limit_reference_values() {
        // mpmath: (h(t) - 1) * 24 t^4
        for (t, want) in [
            (10.0, 1.099_774_550_850_885_5),
            (100.0, 1.010_002_766_752_607_5),
            (1e4, 1.000_100_000_332_766_7),
        ] {
            let v = (h_minus_one(Real::new(t)).unwrap() * (24.0 * t.powi(4))).to_f64();
            assert!((v - want).abs() < 1e-14, "t={t} got {v}");
        }
    }

    #[test]
    fn kernel_examples() {
        let w1 = kernel_w(Real::ONE).unwrap().to_f64();
        assert!((w1 - 0.008_660_147_768_002_639).abs() < 1e-17);
        let tiny = kernel_w(Real::new(1e-4)).unwrap().to_f64();
        assert!((tiny - 6.944_618_055_671_264e-15).abs() < 1e-29);
        assert!(((tiny * 144.0 / 1e-12) - 1.0).abs() < 1e-3);
        // both sides of the series switch, mpmath values
        let w03 = kernel_w(Real::new(0.3)).unwrap().to_f64();
        assert!(((w03 - 2.015_667_739_487_873_9e-4) / w03).abs() < 1e-15);
        let w05 = kernel_w(Real::new(0.5)).unwrap().to_f64();
        assert!(((w05 - 9.764_150_437_379_687e-4) / w05).abs() < 1e-15);
        let w200 = kernel_w(Real::new(200.0)).unwrap().to_f64();
        assert!(((w200 - 10_056_860_239.881_459) / w200).abs() < 1e-15);
        assert!(kernel_w(Real::ZERO).is_err());
    }

    #[test]
    fn poly_bound_examples() {
        let m = poly_bound_margin(Real::new(1e-3)).unwrap().to_f64();
        assert!((m - 1.388_888_855_820_106_6e-15).abs() < 1e-30);
        let m6 = poly_bound_margin(Real::new(1e-6)).unwrap().to_f64();
        assert!((0.0..=1e-20).contains(&m6));
        assert!((m6 - 1.388_888_888_888_869_7e-27).abs() < 1e-40);
        let m2 = poly_bound_margin(Real::new(2.0)).unwrap().to_f64();
        assert!((m2 - 0.020_298_047_834_002_03).abs() < 1e-16);
        assert_eq!(poly_bound_margin(Real::ZERO).unwrap(), Real::ZERO);
    }

    #[test]
    fn signed_derivatives_at_one() {
        let zeta3 = 1.202_056_903_159_594_3;
        let d1 = h_derivative_signed(1, Real::ONE).unwrap().to_f64();
        assert!((d1 - (E - 2.0 * zeta3)).abs() < 1e-14);
        let d2 = h_derivative_signed(2, Real::ONE).unwrap().to_f64();
        assert!((d2 - 1.660_906_083_110_306_6).abs() < 1e-14);
    }

    #[test]
    fn bessel_bound_at_small_t() {
        // mpmath: I_1(0.01) - rhs
        let (lhs, rhs) = bessel_bound_sides(Real::new(0.01)).unwrap();
        let margin = (lhs - rhs).to_f64();
        assert!(((margin - 5.425_381_130_648_012e-19) / margin).abs() < 1e-10);
    }
}
