//! Double-double arithmetic.
//!
//! A value is an unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`, giving
//! roughly 106 bits of precision. The squared MMD of a Farey sequence is a
//! difference of O(1) quantities that cancel down to about `1e-9` at
//! `n = 250`, so Gram sums and the recurrences of the linear-time path are
//! carried in this form and rounded once at the end.

use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
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

const LN2: DoubleDouble = DoubleDouble { hi: std::f64::consts::LN_2, lo: 2.319_046_813_846_299_6e-17 };

impl DoubleDouble {
    pub const ZERO: DoubleDouble = DoubleDouble { hi: 0.0, lo: 0.0 };
    pub const ONE: DoubleDouble = DoubleDouble { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn new(x: f64) -> Self {
        DoubleDouble { hi: x, lo: 0.0 }
    }

    /// `a - b` without rounding.
    #[inline]
    pub fn diff(a: f64, b: f64) -> Self {
        let (hi, lo) = two_sum(a, -b);
        DoubleDouble { hi, lo }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn add_f64(self, b: f64) -> Self {
        let (s, e) = two_sum(self.hi, b);
        let (hi, lo) = quick_two_sum(s, e + self.lo);
        DoubleDouble { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        DoubleDouble { hi, lo }
    }

    pub fn div_f64(self, b: f64) -> Self {
        let q1 = self.hi / b;
        let r = self - DoubleDouble::new(b).mul_f64(q1);
        let q2 = r.hi / b;
        let r = r - DoubleDouble::new(b).mul_f64(q2);
        let q3 = r.hi / b;
        let (hi, lo) = quick_two_sum(q1, q2);
        DoubleDouble { hi, lo }.add_f64(q3)
    }

    pub fn powi(self, k: u32) -> Self {
        (0..k).fold(DoubleDouble::ONE, |acc, _| acc * self)
    }

    /// `e^x`, accurate to a few units of `2^-104` relative.
    ///
    /// Reduces `x = k ln 2 + r` with `|r| <= ln 2 / 2`, evaluates `e^{r/1024} - 1`
    /// by Taylor series and undoes the scaling with `(p + 1)^2 - 1 = p (p + 2)`.
    pub fn exp(self) -> Self {
        if self.hi < -745.0 {
            return DoubleDouble::ZERO;
        }
        if self.hi == 0.0 && self.lo == 0.0 {
            return DoubleDouble::ONE;
        }
        let k = (self.hi / LN2.hi).round();
        let r = (self - LN2.mul_f64(k)).mul_f64(1.0 / 1024.0);
        // |r| < 3.4e-4, so ten terms reach well below 2^-106
        let mut p = DoubleDouble::ZERO;
        for j in (1..=10u32).rev() {
            p = (p + DoubleDouble::ONE).div_f64(f64::from(j)) * r;
        }
        for _ in 0..10 {
            p = p * p.add_f64(2.0);
        }
        let e = p.add_f64(1.0);
        let scale = 2f64.powi(k as i32);
        if scale == 0.0 || !scale.is_finite() {
            let half = 2f64.powi(k as i32 / 2);
            let rest = 2f64.powi(k as i32 - k as i32 / 2);
            return DoubleDouble { hi: e.hi * half * rest, lo: e.lo * half * rest };
        }
        DoubleDouble { hi: e.hi * scale, lo: e.lo * scale }
    }
}

impl Add for DoubleDouble {
    type Output = Self;

    #[inline]
    fn add(self, o: Self) -> Self {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DoubleDouble { hi, lo }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;

    #[inline]
    fn neg(self) -> Self {
        DoubleDouble { hi: -self.hi, lo: -self.lo }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;

    #[inline]
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;

    #[inline]
    fn mul(self, o: Self) -> Self {
        let (p, e) = two_prod(self.hi, o.hi);
        let (hi, lo) = quick_two_sum(p, e + (self.hi * o.lo + self.lo * o.hi));
        DoubleDouble { hi, lo }
    }
}

impl std::iter::Sum<f64> for DoubleDouble {
    fn sum<I: Iterator<Item = f64>>(iter: I) -> Self {
        iter.fold(DoubleDouble::ZERO, DoubleDouble::add_f64)
    }
}

impl std::iter::Sum for DoubleDouble {
    fn sum<I: Iterator<Item = DoubleDouble>>(iter: I) -> Self {
        iter.fold(DoubleDouble::ZERO, Add::add)
    }
}
