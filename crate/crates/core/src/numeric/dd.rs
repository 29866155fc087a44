//! Double-word ("double-double") arithmetic.
//!
//! A value is the unevaluated sum `hi + lo` with `|lo| ≤ ulp(hi)/2`, giving
//! roughly 106 bits of significand. Only the operations the series and
//! summation code needs are provided.

use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DoubleWord {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
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

impl DoubleWord {
    pub const ZERO: DoubleWord = DoubleWord { hi: 0.0, lo: 0.0 };
    pub const ONE: DoubleWord = DoubleWord { hi: 1.0, lo: 0.0 };
    /// Euler–Mascheroni constant.
    pub const EULER_GAMMA: DoubleWord = DoubleWord {
        hi: 0.577_215_664_901_532_9,
        lo: -4.942_915_152_430_645e-18,
    };
    pub const FRAC_1_PI: DoubleWord = DoubleWord {
        hi: 0.318_309_886_183_790_7,
        lo: -1.967_867_667_518_248_6e-17,
    };

    pub const fn from_f64(x: f64) -> Self {
        DoubleWord { hi: x, lo: 0.0 }
    }

    /// Builds a normalized value from an arbitrary pair.
    pub fn from_parts(hi: f64, lo: f64) -> Self {
        let (h, l) = two_sum(hi, lo);
        DoubleWord { hi: h, lo: l }
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    pub fn recip(self) -> Self {
        DoubleWord::ONE / self
    }

    pub fn powi(self, n: u32) -> Self {
        let mut acc = DoubleWord::ONE;
        let mut base = self;
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base *= base;
            e >>= 1;
        }
        acc
    }
}

impl From<f64> for DoubleWord {
    fn from(x: f64) -> Self {
        DoubleWord::from_f64(x)
    }
}

impl Neg for DoubleWord {
    type Output = Self;
    fn neg(self) -> Self {
        DoubleWord { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for DoubleWord {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let (t, f) = two_sum(self.lo, rhs.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DoubleWord { hi, lo }
    }
}

impl Add<f64> for DoubleWord {
    type Output = Self;
    fn add(self, rhs: f64) -> Self {
        let (s, e) = two_sum(self.hi, rhs);
        let (hi, lo) = quick_two_sum(s, e + self.lo);
        DoubleWord { hi, lo }
    }
}

impl Sub for DoubleWord {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Sub<f64> for DoubleWord {
    type Output = Self;
    fn sub(self, rhs: f64) -> Self {
        self + (-rhs)
    }
}

impl Mul for DoubleWord {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + (self.hi * rhs.lo + self.lo * rhs.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DoubleWord { hi, lo }
    }
}

impl Mul<f64> for DoubleWord {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        let (p, e) = two_prod(self.hi, rhs);
        let (hi, lo) = quick_two_sum(p, e + self.lo * rhs);
        DoubleWord { hi, lo }
    }
}

impl Div for DoubleWord {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        // Long division: two correction steps.
        let q1 = self.hi / rhs.hi;
        let r = self - rhs * q1;
        let q2 = r.hi / rhs.hi;
        let r = r - rhs * q2;
        let q3 = r.hi / rhs.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        DoubleWord { hi, lo } + q3
    }
}

impl Div<f64> for DoubleWord {
    type Output = Self;
    fn div(self, rhs: f64) -> Self {
        self / DoubleWord::from_f64(rhs)
    }
}

impl AddAssign for DoubleWord {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl AddAssign<f64> for DoubleWord {
    fn add_assign(&mut self, rhs: f64) {
        *self = *self + rhs;
    }
}

impl SubAssign for DoubleWord {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl MulAssign for DoubleWord {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl MulAssign<f64> for DoubleWord {
    fn mul_assign(&mut self, rhs: f64) {
        *self = *self * rhs;
    }
}

impl std::iter::Sum for DoubleWord {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(DoubleWord::ZERO, |a, b| a + b)
    }
}

/// Compensated sum of `f64` values in iteration order.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    values
        .into_iter()
        .fold(DoubleWord::ZERO, |acc, v| acc + v)
        .to_f64()
}
