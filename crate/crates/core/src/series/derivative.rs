use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::error::{domain, Result};
use crate::Real;

/// Highest derivative order served. Coefficients stay below 2^106 up to this
/// order, so they convert to [`Real`] exactly.
pub const MAX_DERIVATIVE_ORDER: u32 = 24;

/// Exact coefficients of `R_n(t) = sum_j c_{n,j} t^{-j}`, where
/// `d^n/dt^n e^{1/t} = e^{1/t} R_n(t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivativeCoeffs {
    order: u32,
    coeffs: BTreeMap<u32, i128>,
}

impl DerivativeCoeffs {
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coefficient of `t^{-j}`, zero when absent.
    pub fn coeff(&self, j: u32) -> i128 {
        self.coeffs.get(&j).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, i128)> + '_ {
        self.coeffs.iter().map(|(&j, &c)| (j, c))
    }

    pub fn min_exponent(&self) -> u32 {
        *self.coeffs.keys().next().expect("never empty")
    }

    pub fn max_exponent(&self) -> u32 {
        *self.coeffs.keys().next_back().expect("never empty")
    }

    fn differentiate(&self) -> Option<DerivativeCoeffs> {
        let mut next = BTreeMap::new();
        for (&j, &c) in &self.coeffs {
            // d/dt [c t^{-j} e^{1/t}] = (-j c t^{-j-1} - c t^{-j-2}) e^{1/t}
            let a = c.checked_mul(-(j as i128))?;
            if a != 0 {
                let slot = next.entry(j + 1).or_insert(0i128);
                *slot = slot.checked_add(a)?;
            }
            let slot = next.entry(j + 2).or_insert(0i128);
            *slot = slot.checked_sub(c)?;
        }
        next.retain(|_, c| *c != 0);
        Some(DerivativeCoeffs {
            order: self.order + 1,
            coeffs: next,
        })
    }
}

fn table() -> &'static [DerivativeCoeffs] {
    static TABLE: OnceLock<Vec<DerivativeCoeffs>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = vec![DerivativeCoeffs {
            order: 0,
            coeffs: BTreeMap::from([(0, 1)]),
        }];
        for _ in 0..MAX_DERIVATIVE_ORDER {
            let next = out
                .last()
                .unwrap()
                .differentiate()
                .expect("coefficients fit in i128 up to MAX_DERIVATIVE_ORDER");
            out.push(next);
        }
        out
    })
}

fn check_order(n: u32) -> Result<()> {
    if n > MAX_DERIVATIVE_ORDER {
        Err(domain(format!(
            "derivative order {n} exceeds the maximum {MAX_DERIVATIVE_ORDER}"
        )))
    } else {
        Ok(())
    }
}

pub fn exp_inv_derivative_coeffs(n: u32) -> Result<DerivativeCoeffs> {
    check_order(n)?;
    Ok(table()[n as usize].clone())
}

/// `d^n/dt^n e^{1/t}` at `t > 0`.
pub fn exp_inv_derivative(n: u32, t: Real) -> Result<Real> {
    check_order(n)?;
    if !t.is_finite() || t <= Real::ZERO {
        return Err(domain(format!(
            "exp_inv_derivative requires finite t > 0, got t = {t}"
        )));
    }
    let coeffs = &table()[n as usize];
    let s = t.recip();
    // Horner in s = 1/t from the top exponent down to zero
    let mut poly = Real::ZERO;
    for j in (0..=coeffs.max_exponent()).rev() {
        poly = poly * s + Real::from(coeffs.coeff(j));
    }
    Ok(s.exp() * poly)
}
