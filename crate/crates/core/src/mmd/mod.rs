//! Squared maximum mean discrepancy between the uniform measure on `[0, 1]`
//! and the empirical measure of a point set.
//!
//! With `X = (x_1, ..., x_N)` and kernel `K`,
//!
//! ```text
//! MMD(X)² = ∫∫ K  -  (2/N) Σ_i ∫ K(x, x_i) dx  +  (1/N²) Σ_{i,j} K(x_i, x_j).
//! ```
//!
//! Three evaluation routes are provided:
//!
//! * [`mmd_squared_naive`] evaluates the Gram sum directly, O(N²).
//! * [`mmd_squared_fast`] uses forward recurrences over sorted points for
//!   kernels of the form `Σ_t q_t(x) r_t(y) e^{-α(y - x)}` on `x ≤ y`, O(N).
//! * [`mmd_lemma1`] is exact for `K(x, y) = 1 + min(x, y)` on odd, symmetric
//!   point sets containing `1/2`, where `MMD² = (1/N) Σ (i/N - x_i)² - 1/(6N²)`.
//!
//! At `n = 250` the squared MMD of `F_n` is around `1e-9` while the three
//! terms above are O(1), so all sums and the final combination are carried in
//! double-double precision and rounded once.

mod exact;

pub use exact::{
    discrepancy_stats, franel_sum, l2_discretized, mikolas_error_x2, to_f64, DiscrepancyStats,
};

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::compensated::DoubleDouble;
use crate::error::{KernelError, MmdError};
use crate::farey::Rational;
use crate::kernels::{Kernel, KernelSpec};

/// Squared MMDs below this are treated as a numerical failure rather than
/// rounding noise around zero.
pub const NEGATIVE_TOLERANCE: f64 = -1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Naive,
    Fast,
    Lemma1,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Naive => "naive",
            Method::Fast => "fast",
            Method::Lemma1 => "lemma1",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MmdResult {
    pub mmd_squared: f64,
    /// `sqrt(max(mmd_squared, 0))`
    pub mmd: f64,
    pub method: Method,
    pub kernel_id: String,
    /// Farey index, when the points are a Farey sequence.
    pub order: Option<u32>,
    /// Number of points `N`.
    pub len: usize,
}

impl MmdResult {
    fn new(mmd_squared: f64, method: Method, kernel_id: String, len: usize) -> Result<Self, MmdError> {
        if mmd_squared.is_nan() || mmd_squared < NEGATIVE_TOLERANCE {
            return Err(MmdError::Negative(mmd_squared));
        }
        Ok(MmdResult { mmd_squared, mmd: mmd_squared.max(0.0).sqrt(), method, kernel_id, order: None, len })
    }

    /// Tags the result with the Farey index it was computed for.
    pub fn with_order(mut self, n: u32) -> Self {
        self.order = Some(n);
        self
    }
}

fn check_points(points: &[f64]) -> Result<(), MmdError> {
    if points.is_empty() {
        return Err(MmdError::Empty);
    }
    match points.iter().find(|x| !(0.0..=1.0).contains(*x)) {
        Some(&x) => Err(KernelError::Domain(x).into()),
        None => Ok(()),
    }
}

fn diagonal(kernel: &Kernel, points: &[f64]) -> DoubleDouble {
    points.iter().map(|&x| kernel.eval_compensated(x, x)).sum()
}

/// Combines the three terms as `(N² ∫∫K - 2N Σ ∫K(·, x_i) + Σ K(x_i, x_j)) / N²`.
fn combine(kernel: &Kernel, points: &[f64], gram: DoubleDouble, method: Method) -> Result<MmdResult, MmdError> {
    let n = points.len() as f64;
    let embeddings: DoubleDouble = points.iter().map(|&x| kernel.mean_embedding_unchecked(x)).sum();
    let numerator = DoubleDouble::new(kernel.double_integral()).mul_f64(n * n) - embeddings.mul_f64(2.0 * n) + gram;
    let value = numerator.div_f64(n * n).to_f64();
    MmdResult::new(value, method, kernel.id(), points.len())
}

/// Squared MMD via the full O(N²) Gram sum.
///
/// Uses the symmetry of the Gram matrix (diagonal plus twice the strict
/// upper triangle). Rows are evaluated in parallel and reduced in a fixed
/// order, so the result does not depend on the thread count.
pub fn mmd_squared_naive(kernel: &Kernel, points: &[f64]) -> Result<MmdResult, MmdError> {
    check_points(points)?;
    let rows: Vec<DoubleDouble> = (0..points.len())
        .into_par_iter()
        .map(|i| {
            let xi = points[i];
            points[i + 1..].iter().map(|&xj| kernel.eval_compensated(xi, xj)).sum()
        })
        .collect();
    let upper: DoubleDouble = rows.into_iter().sum();
    let gram = diagonal(kernel, points) + upper.mul_f64(2.0);
    combine(kernel, points, gram, Method::Naive)
}

/// Whether [`mmd_squared_fast`] accepts this kernel.
pub fn supports_fast(kernel: &Kernel) -> bool {
    kernel.separable_form().is_some()
}

/// Squared MMD in O(N) for sorted points.
///
/// For `x_i ≤ x_j` the kernel is `Σ_t c_t x_j^{a_t} x_i^{b_t} (x_j - x_i)^{g_t} e^{-α(x_j - x_i)}`.
/// The moments `M_j(g, b) = Σ_{i<j} (x_j - x_i)^g x_i^b e^{-α(x_j - x_i)}` obey
///
/// ```text
/// M_j(g, b) = e^{-α h} Σ_{m≤g} C(g, m) h^{g-m} (M_{j-1}(m, b) + [m = 0] x_{j-1}^b),   h = x_j - x_{j-1},
/// ```
///
/// so the strict upper triangle is `Σ_j Σ_t c_t x_j^{a_t} M_j(g_t, b_t)`. All
/// exponentials have non-positive arguments and every term is non-negative.
///
/// Supported: Brownian shift, half-integer Matérn, integrated Brownian
/// motion with `m ≤ 2`, and `exp(xy)` (through its Taylor series, truncated
/// below double-double resolution).
pub fn mmd_squared_fast(kernel: &Kernel, points: &[f64]) -> Result<MmdResult, MmdError> {
    check_points(points)?;
    if let Some(i) = points.windows(2).position(|w| w[1] < w[0]) {
        return Err(MmdError::Unsorted(i + 1));
    }
    let (alpha, terms) = kernel.separable_form().ok_or_else(|| MmdError::Unsupported(kernel.id()))?;

    let max_lo = terms.iter().map(|t| t.pow_lo).max().unwrap_or(0) as usize;
    let max_hi = terms.iter().map(|t| t.pow_hi).max().unwrap_or(0) as usize;
    let max_gap = terms.iter().map(|t| t.gap).max().unwrap_or(0) as usize;
    // moment slots indexed by x_i power, each holding gap orders 0..=slot_gap
    let mut slot_gap: Vec<Option<usize>> = vec![None; max_lo + 1];
    for t in &terms {
        let g = slot_gap[t.pow_lo as usize].get_or_insert(0);
        *g = (*g).max(t.gap as usize);
    }
    let mut moments: Vec<Vec<DoubleDouble>> =
        slot_gap.iter().map(|g| vec![DoubleDouble::ZERO; g.map_or(0, |g| g + 1)]).collect();
    let binom: Vec<Vec<f64>> = (0..=max_gap)
        .map(|g| {
            let mut row = vec![1.0; g + 1];
            for (m, cell) in row.iter_mut().enumerate().take(g).skip(1) {
                *cell = binom_f64(g, m);
            }
            row
        })
        .collect();

    let powers = |x: f64, k: usize| {
        let mut out = Vec::with_capacity(k + 1);
        let mut p = DoubleDouble::ONE;
        for _ in 0..=k {
            out.push(p);
            p = p.mul_f64(x);
        }
        out
    };

    let mut upper = DoubleDouble::ZERO;
    for j in 1..points.len() {
        let (prev, x) = (points[j - 1], points[j]);
        let h = DoubleDouble::diff(x, prev);
        let decay = if alpha == 0.0 { None } else { Some((-h.mul_f64(alpha)).exp()) };
        let hpow = {
            let mut v = Vec::with_capacity(max_gap + 1);
            let mut p = DoubleDouble::ONE;
            for _ in 0..=max_gap {
                v.push(p);
                p = p * h;
            }
            v
        };
        let prev_pow = powers(prev, max_lo);
        for (b, slot) in moments.iter_mut().enumerate() {
            // descending, so slot[..g] still holds the previous step
            for g in (0..slot.len()).rev() {
                let mut acc = DoubleDouble::ZERO;
                for m in 0..=g {
                    let base = if m == 0 { slot[0] + prev_pow[b] } else { slot[m] };
                    acc = acc + (base * hpow[g - m]).mul_f64(binom[g][m]);
                }
                slot[g] = match decay {
                    Some(d) => acc * d,
                    None => acc,
                };
            }
        }
        let x_pow = powers(x, max_hi);
        for t in &terms {
            upper = upper + t.coef * x_pow[t.pow_hi as usize] * moments[t.pow_lo as usize][t.gap as usize];
        }
    }

    let gram = diagonal(kernel, points) + upper.mul_f64(2.0);
    combine(kernel, points, gram, Method::Fast)
}

fn binom_f64(n: usize, k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * (n + 1 - i) as f64 / i as f64)
}

/// Checks the closed-form preconditions exactly: odd `N`, sorted, contains
/// `1/2`, and `x_i + x_{N+1-i} = 1` for every `i`.
fn check_lemma1(points: &[Rational]) -> Result<(), MmdError> {
    if points.is_empty() {
        return Err(MmdError::Empty);
    }
    if points.len().is_multiple_of(2) {
        return Err(MmdError::Precondition("point count must be odd"));
    }
    exact::check_sorted(points)?;
    let half = Rational::new(1, 2).expect("nonzero denominator");
    if points.binary_search(&half).is_err() {
        return Err(MmdError::Precondition("points must contain 1/2"));
    }
    let symmetric = points.iter().zip(points.iter().rev()).all(|(x, y)| x.reflect() == Some(*y));
    if !symmetric {
        return Err(MmdError::Precondition("points must be symmetric about 1/2"));
    }
    Ok(())
}

/// Exact squared MMD for `K(x, y) = 1 + min(x, y)`:
/// `(1/N) Σ (i/N - x_i)² - 1/(6N²)`.
pub fn lemma1_exact(points: &[Rational]) -> Result<BigRational, MmdError> {
    check_lemma1(points)?;
    let franel = franel_sum(points)?;
    let n = BigInt::from(points.len());
    Ok(franel / BigRational::from_integer(n.clone()) - BigRational::new(1.into(), BigInt::from(6) * &n * &n))
}

/// [`lemma1_exact`] rounded to `f64` once at the end.
pub fn mmd_lemma1(points: &[Rational]) -> Result<MmdResult, MmdError> {
    let exact = lemma1_exact(points)?;
    MmdResult::new(to_f64(&exact), Method::Lemma1, KernelSpec::BrownianShift.id(), points.len())
}

/// Whether the exact closed form applies to this kernel and point set.
pub fn lemma1_applies(spec: &KernelSpec, points: &[Rational]) -> bool {
    matches!(spec, KernelSpec::BrownianShift) && check_lemma1(points).is_ok()
}
