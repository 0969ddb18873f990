use super::{sum_positive, FULL_PRECISION};
use crate::error::{domain, Result};
use crate::Real;

/// Below this `u` the `Q` family is summed as power series; the closed forms
/// cancel to order `u^5` near zero.
pub const Q_SERIES_SWITCH: f64 = 0.25;

/// `Q(u) = e^u (12 - 6u + u^2) - 12 - 6u - u^2` and its first three derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QValues {
    pub q: Real,
    pub q1: Real,
    pub q2: Real,
    pub q3: Real,
}

/// `sum_{j >= a+2} (j-a)(j-a-1) u^j / j!`.
///
/// With `a = 3, 2, 1, 0` this is `Q, Q', Q'', Q'''`.
fn shifted_series(a: u32, u: Real) -> Real {
    let start = a + 2;
    let first = (1..=start).fold(Real::new(2.0), |acc, j| acc * u / j as f64);
    let a = a as f64;
    let start = start as f64;
    sum_positive(
        first,
        |n| {
            let j = start + n as f64;
            u * ((j + 1.0 - a) / ((j - a - 1.0) * (j + 1.0)))
        },
        FULL_PRECISION,
    )
    .value
}

pub fn q_family(u: Real) -> Result<QValues> {
    if !u.is_finite() || (u.is_sign_negative() && u != Real::ZERO) {
        return Err(domain(format!(
            "q_family requires finite u >= 0, got u = {u}"
        )));
    }
    let eu = u.exp();
    let u2 = u.sqr();
    let q3 = u2 * eu;
    if u < Real::new(Q_SERIES_SWITCH) {
        return Ok(QValues {
            q: shifted_series(3, u),
            q1: shifted_series(2, u),
            q2: shifted_series(1, u),
            q3,
        });
    }
    let q = eu * (u2 - u * 6.0 + 12.0) - u2 - u * 6.0 - 12.0;
    let q1 = eu * (u2 - u * 4.0 + 6.0) - (u + 3.0) * 2.0;
    let q2 = eu * (u2 - u * 2.0 + 2.0) - 2.0;
    Ok(QValues { q, q1, q2, q3 })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Closed form in the crate's double-double arithmetic, no switching.
    fn closed_q(u: f64) -> f64 {
        let u = Real::new(u);
        let u2 = u.sqr();
        (u.exp() * (u2 - u * 6.0 + 12.0) - u2 - u * 6.0 - 12.0).to_f64()
    }

    #[test]
    fn all_zero_at_origin() {
        let v = q_family(Real::ZERO).unwrap();
        assert_eq!([v.q, v.q1, v.q2, v.q3], [Real::ZERO; 4]);
    }

    #[test]
    fn values_at_one() {
        let e = std::f64::consts::E;
        let v = q_family(Real::ONE).unwrap();
        assert!((v.q3.to_f64() - e).abs() < 1e-15);
        assert!((v.q.to_f64() - (7.0 * e - 19.0)).abs() < 1e-15);
        assert!((v.q.to_f64() - 0.027_972_799_213_316_65).abs() < 1e-17);
        // 30-term series oracle in f64
        let mut series = 0.0;
        let mut fact = 1.0;
        for m in 1..30u32 {
            fact *= m as f64;
            if m >= 5 {
                series += ((m - 3) * (m - 4)) as f64 / fact;
            }
        }
        assert!((series - v.q.to_f64()).abs() < 1e-16);
    }

    #[test]
    fn series_branch_is_continuous_with_closed_form() {
        // mpmath values
        let q01 = 1.752_431_393_991_016e-7;
        let q025 = 1.846_376_426_942_552_6e-5;
        let v = q_family(Real::new(0.1)).unwrap().q.to_f64();
        assert!(((v - q01) / q01).abs() < 1e-15);
        let below = q_family(Real::new(0.25 - 1e-12)).unwrap().q.to_f64();
        let at = q_family(Real::new(0.25)).unwrap().q.to_f64();
        assert!(((below - q025) / q025).abs() < 1e-10);
        assert!(((at - q025) / q025).abs() < 1e-15);
        assert!((closed_q(3.0) - 21.256_610_769_563_003).abs() < 1e-13);
    }

    #[test]
    fn tiny_u_stays_positive() {
        let v = q_family(Real::new(1e-8)).unwrap();
        // leading behaviour u^5/60, u^4/12, u^3/3, u^2
        assert!(((v.q.to_f64() / 1e-40) * 60.0 - 1.0).abs() < 1e-6);
        assert!(((v.q1.to_f64() / 1e-32) * 12.0 - 1.0).abs() < 1e-6);
        assert!(((v.q2.to_f64() / 1e-24) * 3.0 - 1.0).abs() < 1e-6);
        assert!((v.q3.to_f64() / 1e-16 - 1.0).abs() < 1e-6);
    }

    #[test]
    fn rejects_negative() {
        assert!(q_family(Real::new(-0.5)).is_err());
    }
}
