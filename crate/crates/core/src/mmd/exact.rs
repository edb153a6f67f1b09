//! Exact discrepancy statistics of rational point sets.
//!
//! Sums are grouped by denominator: for each `q` the integer numerators are
//! accumulated in `u128` (spilling to a big integer if that ever overflows),
//! and only the per-denominator totals are combined as big rationals. The
//! result is an exact rational, so the order of summation cannot matter.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::MmdError;
use crate::farey::Rational;

/// Rational statistics of a sorted point set against the uniform measure.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscrepancyStats {
    /// `Σ_i (i/N - x_i)²`
    pub franel_sum: BigRational,
    /// `sqrt(franel_sum / N)`
    pub l2_discretized: f64,
    /// `|1/3 - (1/N) Σ_i x_i²|`
    pub mikolas_error_x2: BigRational,
}

#[derive(Default)]
struct Accumulator {
    small: u128,
    big: BigUint,
}

impl Accumulator {
    fn add(&mut self, v: u128) {
        match self.small.checked_add(v) {
            Some(s) => self.small = s,
            None => {
                self.big += self.small;
                self.small = v;
            }
        }
    }

    fn add_square(&mut self, d: u128) {
        match d.checked_mul(d) {
            Some(sq) => self.add(sq),
            None => self.big += BigUint::from(d) * d,
        }
    }

    fn total(self) -> BigInt {
        BigInt::from(self.big + self.small)
    }
}

/// `Σ_q acc_q / q²` as an exact rational.
fn combine(groups: BTreeMap<u64, Accumulator>) -> BigRational {
    groups.into_iter().fold(BigRational::zero(), |sum, (q, acc)| {
        let q = BigInt::from(q);
        sum + BigRational::new(acc.total(), &q * &q)
    })
}

pub(crate) fn check_sorted(points: &[Rational]) -> Result<(), MmdError> {
    match points.windows(2).position(|w| w[1] < w[0]) {
        Some(i) => Err(MmdError::Unsorted(i + 1)),
        None => Ok(()),
    }
}

/// The Franel sum `Σ_{i=1}^N (i/N - x_i)²` of a sorted point set, exactly.
pub fn franel_sum(points: &[Rational]) -> Result<BigRational, MmdError> {
    if points.is_empty() {
        return Err(MmdError::Empty);
    }
    check_sorted(points)?;
    let n = points.len() as u128;
    let mut groups: BTreeMap<u64, Accumulator> = BTreeMap::new();
    for (i, x) in (1u128..).zip(points) {
        // (i/N - p/q)² = (i q - N p)² / (N q)²
        let a = i * u128::from(x.den());
        let b = n * u128::from(x.num());
        groups.entry(x.den()).or_default().add_square(a.abs_diff(b));
    }
    let n = BigInt::from(points.len());
    Ok(combine(groups) / BigRational::from_integer(&n * &n))
}

/// `sqrt(franel_sum / N)`, the discretised L2 discrepancy.
pub fn l2_discretized(points: &[Rational]) -> Result<f64, MmdError> {
    let franel = franel_sum(points)?;
    Ok(l2_from_franel(&franel, points.len()))
}

fn l2_from_franel(franel: &BigRational, len: usize) -> f64 {
    to_f64(&(franel / BigRational::from_integer(BigInt::from(len)))).sqrt()
}

/// Farey-quadrature error of `f(x) = x²`: `|1/3 - (1/N) Σ x_i²|`, exactly.
pub fn mikolas_error_x2(points: &[Rational]) -> Result<BigRational, MmdError> {
    if points.is_empty() {
        return Err(MmdError::Empty);
    }
    let mut groups: BTreeMap<u64, Accumulator> = BTreeMap::new();
    for x in points {
        groups.entry(x.den()).or_default().add_square(u128::from(x.num()));
    }
    let mean = combine(groups) / BigRational::from_integer(BigInt::from(points.len()));
    Ok((BigRational::new(1.into(), 3.into()) - mean).abs())
}

/// All three statistics, sharing one Franel sum.
pub fn discrepancy_stats(points: &[Rational]) -> Result<DiscrepancyStats, MmdError> {
    let franel_sum = franel_sum(points)?;
    Ok(DiscrepancyStats {
        l2_discretized: l2_from_franel(&franel_sum, points.len()),
        mikolas_error_x2: mikolas_error_x2(points)?,
        franel_sum,
    })
}

/// Nearest `f64` to an exact rational.
pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
