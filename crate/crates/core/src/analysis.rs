//! Rate diagnostics for MMDs of Farey sequences.
//!
//! If all non-trivial zeros of ζ lie on the critical line, `MMD(F_n)` decays
//! like `n^{-3/2+ε}` for every `ε > 0`, for any kernel whose RKHS sits inside
//! `W^{1,2}[0,1]` and contains `x²`. Nothing computed here can decide that;
//! these are empirical diagnostics: the normalised curve `MMD(F_n) · n^{3/2}`
//! and a least-squares slope of `log MMD` against `log n`.

use rayon::prelude::*;

use crate::error::{AnalysisError, FareyError};
use crate::farey::{check_order, farey_sequence, farey_size, FareySequence};
use crate::kernels::{Kernel, KernelSpec};
use crate::mmd::{lemma1_applies, mmd_lemma1, mmd_squared_fast, mmd_squared_naive, supports_fast, MmdResult};

/// Exponent of `n` the rate statement predicts for the MMD itself.
pub const TARGET_SLOPE: f64 = -1.5;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvePoint {
    pub n: u32,
    /// `N = |F_n|`
    pub len: u64,
    /// `MMD(F_n)`
    pub value: f64,
    /// `MMD(F_n) · n^{3/2}`
    pub normalized: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RateFit {
    pub slope: f64,
    pub intercept: f64,
    pub residual_l2: f64,
    pub n_lo: u32,
    pub n_hi: u32,
    /// Number of curve points inside the window.
    pub points: usize,
    pub quantity: String,
}

/// `n^{3/2}`
pub fn rate_scale(n: u32) -> f64 {
    let n = f64::from(n);
    n * n.sqrt()
}

/// MMD of a Farey sequence by the cheapest exact-enough route: the closed
/// form for the Brownian shift kernel, the linear-time recurrence where the
/// kernel allows it, and the Gram sum otherwise.
pub fn farey_mmd(kernel: &Kernel, seq: &FareySequence) -> Result<MmdResult, AnalysisError> {
    let result = if lemma1_applies(kernel.spec(), seq.points()) {
        mmd_lemma1(seq.points())?
    } else if supports_fast(kernel) {
        mmd_squared_fast(kernel, &seq.to_f64())?
    } else {
        mmd_squared_naive(kernel, &seq.to_f64())?
    };
    Ok(result.with_order(seq.order()))
}

/// `MMD(F_n)` and `MMD(F_n) · n^{3/2}` for `n = 2..=n_max`.
///
/// Each `n` is independent and evaluated in parallel; the output order and
/// values do not depend on the schedule.
pub fn normalized_curve(spec: &KernelSpec, n_max: u32) -> Result<Vec<CurvePoint>, AnalysisError> {
    if n_max < 2 {
        return Err(AnalysisError::Window { lo: 2, hi: n_max });
    }
    check_order(n_max)?;
    let kernel = Kernel::new(*spec)?;
    (2..=n_max)
        .into_par_iter()
        .map(|n| {
            let seq = farey_sequence(n)?;
            let r = farey_mmd(&kernel, &seq)?;
            Ok(CurvePoint { n, len: seq.len() as u64, value: r.mmd, normalized: r.mmd * rate_scale(n) })
        })
        .collect()
}

/// `[max(50, n_max/5), n_max]`, or all of `[2, n_max]` when that window would
/// hold fewer than three points.
pub fn default_fit_window(n_max: u32) -> (u32, u32) {
    let lo = (n_max / 5).max(50);
    if lo + 2 <= n_max {
        (lo, n_max)
    } else {
        (2, n_max)
    }
}

/// Ordinary least squares of `log value` on `log n` over `n ∈ [n_lo, n_hi]`.
pub fn rate_fit(curve: &[CurvePoint], n_lo: u32, n_hi: u32) -> Result<RateFit, AnalysisError> {
    rate_fit_quantity(curve, n_lo, n_hi, "mmd")
}

pub fn rate_fit_quantity(
    curve: &[CurvePoint],
    n_lo: u32,
    n_hi: u32,
    quantity: &str,
) -> Result<RateFit, AnalysisError> {
    if n_lo >= n_hi {
        return Err(AnalysisError::Window { lo: n_lo, hi: n_hi });
    }
    let window: Vec<&CurvePoint> = curve.iter().filter(|p| (n_lo..=n_hi).contains(&p.n)).collect();
    if window.len() < 3 {
        return Err(AnalysisError::TooFewPoints(window.len()));
    }
    if let Some(p) = window.iter().find(|p| p.value.is_nan() || p.value <= 0.0) {
        return Err(AnalysisError::NonPositive { n: p.n, value: p.value });
    }
    let xs: Vec<f64> = window.iter().map(|p| f64::from(p.n).ln()).collect();
    let ys: Vec<f64> = window.iter().map(|p| p.value.ln()).collect();
    let m = xs.len() as f64;
    let x_mean = xs.iter().sum::<f64>() / m;
    let y_mean = ys.iter().sum::<f64>() / m;
    let (sxy, sxx) = xs.iter().zip(&ys).fold((0.0, 0.0), |(sxy, sxx), (x, y)| {
        let dx = x - x_mean;
        (sxy + dx * (y - y_mean), sxx + dx * dx)
    });
    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;
    let residual_l2 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum::<f64>()
        .sqrt();
    Ok(RateFit { slope, intercept, residual_l2, n_lo, n_hi, points: window.len(), quantity: quantity.to_owned() })
}

/// `|F_n| π² / (3 n²)`, which tends to 1.
pub fn mertens_ratio(n: u32) -> Result<f64, FareyError> {
    let size = farey_size(n)? as f64;
    let n = f64::from(n);
    Ok(size * std::f64::consts::PI.powi(2) / (3.0 * n * n))
}
