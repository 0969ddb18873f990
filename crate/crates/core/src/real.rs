//! Double-double real numbers.
//!
//! A [`Real`] is an unevaluated sum `hi + lo` of two `f64` values with
//! `|lo| <= ulp(hi) / 2`, giving roughly 106 bits of mantissa. The error-free
//! transformations follow the usual Dekker/Knuth constructions; products use
//! a fused multiply-add for the exact low part.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{FromPrimitive, ToPrimitive, Zero};

/// Working precision of [`Real`] in mantissa bits.
pub const PRECISION_BITS: u32 = 106;

#[derive(Clone, Copy, Default, PartialEq)]
pub struct Real {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// ln 2 to double-double accuracy.
const LN_2: Real = Real {
    hi: std::f64::consts::LN_2,
    lo: 2.319_046_813_846_299_6e-17,
};

impl Real {
    pub const ZERO: Real = Real { hi: 0.0, lo: 0.0 };
    pub const ONE: Real = Real { hi: 1.0, lo: 0.0 };
    /// 2^-104, the relative spacing of double-double numbers.
    pub const EPSILON: f64 = 4.930_380_657_631_324e-32;

    pub const fn new(x: f64) -> Self {
        Real { hi: x, lo: 0.0 }
    }

    /// Builds a value from two components, renormalizing them.
    pub fn from_parts(hi: f64, lo: f64) -> Self {
        let (hi, lo) = two_sum(hi, lo);
        Real { hi, lo }
    }

    #[inline]
    pub fn hi(self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn lo(self) -> f64 {
        self.lo
    }

    /// Nearest `f64`.
    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    pub fn is_nan(self) -> bool {
        self.hi.is_nan() || self.lo.is_nan()
    }

    pub fn is_sign_negative(self) -> bool {
        self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0)
    }

    pub fn abs(self) -> Self {
        if self.is_sign_negative() {
            -self
        } else {
            self
        }
    }

    pub fn max(self, other: Real) -> Real {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Real) -> Real {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn recip(self) -> Self {
        Real::ONE / self
    }

    pub fn sqr(self) -> Self {
        let (p1, mut p2) = two_prod(self.hi, self.hi);
        p2 += 2.0 * self.hi * self.lo;
        p2 += self.lo * self.lo;
        let (hi, lo) = quick_two_sum(p1, p2);
        Real { hi, lo }
    }

    /// Multiplication by `2^k`, exact barring overflow and underflow.
    pub fn ldexp(self, k: i32) -> Self {
        // Split the scaling so that 2^k itself never overflows.
        let mut out = self;
        let mut k = k;
        while k != 0 {
            let step = k.clamp(-1000, 1000);
            let f = 2f64.powi(step);
            out = Real {
                hi: out.hi * f,
                lo: out.lo * f,
            };
            k -= step;
        }
        out
    }

    pub fn powi(self, n: i32) -> Self {
        if n == 0 {
            return Real::ONE;
        }
        let mut base = self;
        let mut e = n.unsigned_abs();
        let mut acc = Real::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    pub fn sqrt(self) -> Self {
        if self.hi == 0.0 {
            return Real::ZERO;
        }
        if self.hi < 0.0 {
            return Real::new(f64::NAN);
        }
        // One Newton step on the f64 reciprocal square root.
        let x = 1.0 / self.hi.sqrt();
        let ax = self.hi * x;
        let correction = (self - Real::new(ax).sqr()).hi * (x * 0.5);
        Real::from_parts(ax, correction)
    }

    /// `e^r - 1` for `|r| <= 1/1024`, by Taylor series.
    fn exp_m1_small(r: Real) -> Real {
        let mut term = r;
        let mut sum = r;
        let mut n = 2.0;
        loop {
            term = term * r / n;
            sum += term;
            if term.hi.abs() <= Real::EPSILON * 1e-3 * sum.hi.abs() {
                break;
            }
            n += 1.0;
        }
        sum
    }

    /// `e^x - 1` with full relative accuracy near zero.
    pub fn exp_m1(self) -> Self {
        if !self.is_finite() {
            return if self.hi == f64::NEG_INFINITY {
                Real::new(-1.0)
            } else {
                self
            };
        }
        if self.hi.abs() >= 0.5 {
            return self.exp() - Real::ONE;
        }
        const SQUARINGS: i32 = 10;
        let mut s = Real::exp_m1_small(self.ldexp(-SQUARINGS));
        for _ in 0..SQUARINGS {
            // e^{2r} - 1 = (e^r - 1)(e^r + 1)
            s = s * (s + 2.0);
        }
        s
    }

    pub fn exp(self) -> Self {
        if self.hi.is_nan() {
            return self;
        }
        if self.hi > 709.78 {
            return Real::new(f64::INFINITY);
        }
        if self.hi < -745.2 {
            return Real::ZERO;
        }
        if self.hi == 0.0 {
            return Real::ONE;
        }
        let k = (self.hi / LN_2.hi).round();
        let r = self - LN_2 * k;
        let em1 = if r.hi == 0.0 { Real::ZERO } else { r.exp_m1() };
        (em1 + 1.0).ldexp(k as i32)
    }

    /// Correctly rounded (to within a few units of the last place) conversion
    /// of an exact rational.
    pub fn from_rational(q: &BigRational) -> Self {
        let hi = q.to_f64().unwrap_or(f64::NAN);
        if !hi.is_finite() || hi == 0.0 {
            return Real::new(hi);
        }
        let hi_exact = BigRational::from_f64(hi).expect("finite");
        let lo = (q - hi_exact).to_f64().unwrap_or(0.0);
        Real::from_parts(hi, lo)
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        let hi = n.to_f64().unwrap_or(f64::NAN);
        if !hi.is_finite() {
            return Real::new(hi);
        }
        let hi_exact = BigInt::from_f64(hi).expect("finite");
        let rest = n - hi_exact;
        let lo = if rest.is_zero() {
            0.0
        } else {
            rest.to_f64().unwrap_or(0.0)
        };
        Real::from_parts(hi, lo)
    }

    pub fn from_biguint(n: &BigUint) -> Self {
        Real::from_bigint(&BigInt::from(n.clone()))
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({:e} + {:e})", self.hi, self.lo)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_f64(), f)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi)? {
            Ordering::Equal => self.lo.partial_cmp(&other.lo),
            ord => Some(ord),
        }
    }
}

impl From<f64> for Real {
    fn from(x: f64) -> Self {
        Real::new(x)
    }
}

impl From<u32> for Real {
    fn from(x: u32) -> Self {
        Real::new(x as f64)
    }
}

impl From<i32> for Real {
    fn from(x: i32) -> Self {
        Real::new(x as f64)
    }
}

impl From<u64> for Real {
    fn from(x: u64) -> Self {
        Real::from(x as i128)
    }
}

impl From<i128> for Real {
    /// Exact for `|x| < 2^106`.
    fn from(x: i128) -> Self {
        let hi = x as f64;
        let rest = x.wrapping_sub(hi as i128);
        Real::from_parts(hi, rest as f64)
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for Real {
    type Output = Real;
    #[inline]
    fn add(self, b: Real) -> Real {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Real { hi, lo }
    }
}

impl Add<f64> for Real {
    type Output = Real;
    #[inline]
    fn add(self, b: f64) -> Real {
        let (s1, s2) = two_sum(self.hi, b);
        let (hi, lo) = quick_two_sum(s1, s2 + self.lo);
        Real { hi, lo }
    }
}

impl Sub for Real {
    type Output = Real;
    #[inline]
    fn sub(self, b: Real) -> Real {
        self + (-b)
    }
}

impl Sub<f64> for Real {
    type Output = Real;
    #[inline]
    fn sub(self, b: f64) -> Real {
        self + (-b)
    }
}

impl Mul for Real {
    type Output = Real;
    #[inline]
    fn mul(self, b: Real) -> Real {
        let (p1, mut p2) = two_prod(self.hi, b.hi);
        p2 += self.hi * b.lo + self.lo * b.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Real { hi, lo }
    }
}

impl Mul<f64> for Real {
    type Output = Real;
    #[inline]
    fn mul(self, b: f64) -> Real {
        let (p1, mut p2) = two_prod(self.hi, b);
        p2 += self.lo * b;
        let (hi, lo) = quick_two_sum(p1, p2);
        Real { hi, lo }
    }
}

impl Div for Real {
    type Output = Real;
    fn div(self, b: Real) -> Real {
        let q1 = self.hi / b.hi;
        if !q1.is_finite() {
            return Real::new(q1);
        }
        let r = self - b * q1;
        let q2 = r.hi / b.hi;
        let r = r - b * q2;
        let q3 = r.hi / b.hi;
        let (q1, q2) = quick_two_sum(q1, q2);
        Real { hi: q1, lo: q2 } + q3
    }
}

impl Div<f64> for Real {
    type Output = Real;
    fn div(self, b: f64) -> Real {
        let q1 = self.hi / b;
        if !q1.is_finite() {
            return Real::new(q1);
        }
        let (p1, p2) = two_prod(q1, b);
        let (s, e) = two_sum(self.hi, -p1);
        let q2 = (s + (e - p2 + self.lo)) / b;
        let (hi, lo) = quick_two_sum(q1, q2);
        Real { hi, lo }
    }
}

macro_rules! assign_ops {
    ($($trait:ident $method:ident $op:tt),*) => {$(
        impl $trait for Real {
            #[inline]
            fn $method(&mut self, rhs: Real) { *self = *self $op rhs; }
        }
        impl $trait<f64> for Real {
            #[inline]
            fn $method(&mut self, rhs: f64) { *self = *self $op rhs; }
        }
    )*};
}

assign_ops!(AddAssign add_assign +, SubAssign sub_assign -, MulAssign mul_assign *, DivAssign div_assign /);

impl Sum for Real {
    fn sum<I: Iterator<Item = Real>>(iter: I) -> Real {
        iter.fold(Real::ZERO, |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference pairs (hi, lo) from 50-digit mpmath evaluations.
    const E: (f64, f64) = (std::f64::consts::E, 1.4456468917292502e-16);

    fn close(x: Real, (hi, lo): (f64, f64), rel: f64) -> bool {
        let want = Real::from_parts(hi, lo);
        ((x - want) / want).abs().to_f64() <= rel
    }

    #[test]
    fn arithmetic_keeps_low_word() {
        let third = Real::ONE / 3.0;
        let back = third * 3.0 - 1.0;
        assert!(back.abs().to_f64() < 1e-31);
        let x = Real::new(1.0) + 1e-20;
        assert_eq!(x.hi(), 1.0);
        assert_eq!(x.lo(), 1e-20);
        assert_eq!((x - 1.0).to_f64(), 1e-20);
    }

    #[test]
    fn sqrt_two() {
        let s = Real::new(2.0).sqrt();
        assert!(close(
            s,
            (std::f64::consts::SQRT_2, -9.667293313452913e-17),
            1e-31
        ));
        assert!((s.sqr() - 2.0).abs().to_f64() < 1e-30);
    }

    #[test]
    fn exp_reference_values() {
        assert!(close(Real::ONE.exp(), E, 1e-31));
        assert!(close(
            Real::new(0.5).exp(),
            (1.6487212707001282, -4.731568479435833e-17),
            1e-31
        ));
        assert!(close(
            Real::new(-10.0).exp(),
            (4.5399929762484854e-05, -2.637554055327531e-21),
            1e-30
        ));
        assert!(close(
            Real::new(100.0).exp(),
            (2.6881171418161356e+43, -1.6101271449201627e+27),
            1e-30
        ));
        assert!(close(
            Real::new(3.7).exp(),
            (40.4473043600674, -1.2179541332469429e-15),
            1e-30
        ));
        assert!(Real::new(800.0).exp().to_f64().is_infinite());
        assert_eq!(Real::new(-800.0).exp(), Real::ZERO);
    }

    #[test]
    fn exp_m1_near_zero() {
        assert!(close(
            Real::new(1e-10).exp_m1(),
            (1.00000000005e-10, 3.3900133221217734e-27),
            1e-30
        ));
        assert!(close(
            Real::new(1e-6).exp_m1(),
            (1.0000005000001665e-06, 1.05053184358979e-22),
            1e-30
        ));
        assert!(close(
            Real::new(-0.3).exp_m1(),
            (-0.2591817793182821, -1.805530505953e-18),
            1e-30
        ));
        assert_eq!(Real::ZERO.exp_m1(), Real::ZERO);
    }

    #[test]
    fn integer_conversions_are_exact() {
        let big: i128 = 620_448_401_733_239_439_360_000; // 24!
        let r = Real::from(big);
        assert_eq!(r.hi() as i128 + r.lo() as i128, big);
        let n = BigInt::from(big) * BigInt::from(1_000_003u64);
        let r = Real::from_bigint(&n);
        let back = BigInt::from_f64(r.hi()).unwrap() + BigInt::from_f64(r.lo()).unwrap();
        assert_eq!(back, n);
    }

    #[test]
    fn rational_conversion() {
        let q = BigRational::new(BigInt::from(1), BigInt::from(3));
        assert!(((Real::from_rational(&q) * 3.0) - 1.0).abs().to_f64() < 1e-31);
    }

    #[test]
    fn powi_and_ordering() {
        assert_eq!(Real::new(2.0).powi(10).to_f64(), 1024.0);
        assert_eq!(Real::new(2.0).powi(-2).to_f64(), 0.25);
        assert!(Real::new(1.0) + 1e-25 > Real::ONE);
        assert!(Real::new(1.0) - 1e-25 < Real::ONE);
    }
}
