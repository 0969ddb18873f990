use super::{factorial, sum_positive, FULL_PRECISION};
use crate::error::{domain, Result};
use crate::Real;

fn check_positive(z: Real) -> Result<()> {
    if z.is_finite() && z > Real::ZERO {
        Ok(())
    } else {
        Err(domain(format!(
            "exp_tail_h requires finite z > 0, got z = {z}"
        )))
    }
}

/// `H_k(z) = e^{1/z} - sum_{m=0}^{k} z^{-m} / m!`, summed as the positive tail
/// `sum_{m>k} z^{-m} / m!` so large `z` does not cancel.
pub fn exp_tail_h(k: u32, z: Real) -> Result<Real> {
    check_positive(z)?;
    let inv = z.recip();
    let first = (1..=k + 1).fold(Real::ONE, |acc, m| acc * inv / m as f64);
    let next_index = k as f64 + 2.0;
    let tail = sum_positive(first, |j| inv / (next_index + j as f64), FULL_PRECISION);
    Ok(tail.value)
}

/// The subtractive form of `H_k`. Loses digits as `z` grows; kept for
/// cross-checking the tail evaluation at small `z`.
pub fn exp_tail_h_subtractive(k: u32, z: Real) -> Result<Real> {
    check_positive(z)?;
    let inv = z.recip();
    let partial: Real = (0..=k).map(|m| inv.powi(m as i32) / factorial(m)).sum();
    Ok(inv.exp() - partial)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// e by partial sums of 1/m! with the tail bounded by twice the last term.
    fn e_oracle() -> (f64, f64) {
        let mut term = 1.0;
        let mut sum = 1.0;
        for m in 1..30 {
            term /= m as f64;
            sum += term;
        }
        (sum, 2.0 * term)
    }

    #[test]
    fn h0_and_h1_at_one() {
        let (e, rem) = e_oracle();
        assert!(rem < 1e-30);
        let h0 = exp_tail_h(0, Real::ONE).unwrap().to_f64();
        let h1 = exp_tail_h(1, Real::ONE).unwrap().to_f64();
        assert!((h0 - (e - 1.0)).abs() < 4e-16);
        assert!((h1 - (e - 2.0)).abs() < 4e-16);
        assert!((h0 - 1.718281828459045).abs() < 1e-15);
        assert!((h1 - 0.718281828459045).abs() < 1e-15);
    }

    #[test]
    fn large_argument_keeps_relative_accuracy() {
        // expm1(1e-6) from mpmath
        let want = 1.000_000_500_000_166_7e-6;
        let got = exp_tail_h(0, Real::new(1e6)).unwrap().to_f64();
        assert!(got > 0.0);
        assert!(((got - want) / want).abs() < 1e-12);
        assert!(((got - 1e-6) / 1e-6).abs() < 1e-6);
        // the subtractive form in f64 has nothing left
        let naive = (1e-6f64).exp() - 1.0;
        assert!(((naive - want) / want).abs() > 1e-12);
    }

    #[test]
    fn tail_agrees_with_subtractive_form_for_small_z() {
        for k in 0..6 {
            for &z in &[0.1, 0.3, 0.5, 1.0, 1.7, 2.0] {
                let a = exp_tail_h(k, Real::new(z)).unwrap();
                let b = exp_tail_h_subtractive(k, Real::new(z)).unwrap();
                assert!(((a - b) / a).abs().to_f64() < 1e-25, "k={k} z={z}");
            }
        }
    }

    #[test]
    fn reference_values() {
        let h1 = exp_tail_h(1, Real::new(2.0)).unwrap().to_f64();
        assert!((h1 - 0.148_721_270_700_128_15).abs() < 1e-17);
        let h3 = exp_tail_h(3, Real::new(0.2)).unwrap().to_f64();
        assert!(((h3 - 109.079_825_769_243_23) / h3).abs() < 2e-16);
    }

    #[test]
    fn rejects_nonpositive_z() {
        assert!(exp_tail_h(0, Real::ZERO).is_err());
        assert!(exp_tail_h(0, Real::new(-2.0)).is_err());
        assert!(exp_tail_h_subtractive(1, Real::ZERO).is_err());
    }
}
