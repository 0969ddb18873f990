//! Bernoulli numbers as exact rationals, and the generating function
//! `u / (1 - e^{-u}) = sum_n B_n^+ u^n / n!` (with `B_1^+ = +1/2`).

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::Real;

/// Highest index computed for the shared Bernoulli sequence.
pub(crate) const MAX_INDEX: usize = 64;

/// `B_0 ..= B_MAX_INDEX` with the `B_1 = -1/2` convention.
pub(crate) fn bernoulli_numbers() -> &'static [BigRational] {
    static TABLE: OnceLock<Vec<BigRational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // sum_{k=0}^{n} C(n+1, k) B_k = 0 for n >= 1
        let mut b: Vec<BigRational> = vec![BigRational::one()];
        for n in 1..=MAX_INDEX {
            let mut binom = BigInt::one(); // C(n+1, 0)
            let mut acc = BigRational::zero();
            for (k, bk) in b.iter().enumerate() {
                acc += bk * BigRational::from_integer(binom.clone());
                binom = binom * BigInt::from(n + 1 - k) / BigInt::from(k + 1);
            }
            b.push(-acc / BigRational::from_integer(BigInt::from(n + 1)));
        }
        b
    })
}

/// Even-index Bernoulli numbers `B_2, B_4, ..., B_{2K}` as exact rationals.
#[derive(Debug, Clone)]
pub struct BernoulliTable {
    even: Vec<BigRational>,
}

impl BernoulliTable {
    /// Table holding `B_2 ..= B_{max_index}` (rounded down to an even index).
    pub fn new(max_index: usize) -> Self {
        assert!(
            max_index <= MAX_INDEX,
            "Bernoulli index {max_index} above {MAX_INDEX}"
        );
        let all = bernoulli_numbers();
        BernoulliTable {
            even: (2..=max_index).step_by(2).map(|n| all[n].clone()).collect(),
        }
    }

    /// `B_2 ..= B_20`, the table used by the polygamma asymptotic expansion.
    pub fn standard() -> &'static BernoulliTable {
        static TABLE: OnceLock<BernoulliTable> = OnceLock::new();
        TABLE.get_or_init(|| BernoulliTable::new(20))
    }

    /// `B_n`, or `None` for odd `n` and indices outside the table.
    pub fn get(&self, n: usize) -> Option<&BigRational> {
        if n < 2 || n % 2 == 1 {
            return None;
        }
        self.even.get(n / 2 - 1)
    }

    pub fn max_index(&self) -> usize {
        2 * self.even.len()
    }

    /// `(n, B_n)` pairs in increasing `n`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigRational)> {
        self.even.iter().enumerate().map(|(i, b)| (2 * i + 2, b))
    }
}

/// Taylor coefficients `B_n^+ / n!` of `u / (1 - e^{-u})`, exact rationals.
pub(crate) fn generating_coefficients_exact() -> &'static [BigRational] {
    static TABLE: OnceLock<Vec<BigRational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut fact = BigInt::one();
        bernoulli_numbers()
            .iter()
            .enumerate()
            .map(|(n, b)| {
                if n > 0 {
                    fact *= BigInt::from(n);
                }
                let b_plus = if n == 1 { -b.clone() } else { b.clone() };
                b_plus / BigRational::from_integer(fact.clone())
            })
            .collect()
    })
}

fn generating_coefficients() -> &'static [Real] {
    static TABLE: OnceLock<Vec<Real>> = OnceLock::new();
    TABLE.get_or_init(|| {
        generating_coefficients_exact()
            .iter()
            .map(Real::from_rational)
            .collect()
    })
}

/// Below this `|u|` the generating function is summed from its Taylor series.
pub const GF_SERIES_SWITCH: f64 = 0.5;

/// Sums `sum_{n >= from} c_n u^n` for the Bernoulli generating coefficients.
/// Valid for `|u| <= 1/2`, where terms shrink at least like `(1/(4 pi))^n`.
pub(crate) fn generating_series_from(from: usize, u: Real) -> Real {
    let coeffs = generating_coefficients();
    let mut power = u.powi(from as i32);
    let mut sum = Real::ZERO;
    for c in &coeffs[from..] {
        let term = *c * power;
        sum += term;
        if term.abs().to_f64() <= Real::EPSILON * 1e-3 * sum.abs().to_f64() && *c != Real::ZERO {
            break;
        }
        power *= u;
    }
    sum
}

/// `u / (1 - e^{-u})`, equal to 1 at `u = 0`.
pub fn bernoulli_gf(u: Real) -> Real {
    if u.abs() < Real::new(GF_SERIES_SWITCH) {
        generating_series_from(0, u)
    } else {
        u / -(-u).exp_m1()
    }
}
