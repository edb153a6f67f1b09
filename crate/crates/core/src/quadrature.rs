//! Adaptive Gauss-Legendre quadrature.
//!
//! This is the numerical oracle the closed-form kernel integrals are tested
//! against, so it deliberately shares no antiderivatives with
//! [`crate::kernels`]. Each panel is integrated with a fixed 20-point rule and
//! compared with the sum over its two halves; panels that disagree by more
//! than their share of the tolerance are bisected.

use std::cell::Cell;
use std::sync::OnceLock;

use crate::error::QuadratureError;

const ORDER: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureConfig {
    /// Target absolute error for the whole integral.
    pub abs_tol: f64,
    /// Maximum bisection depth for any panel.
    pub max_depth: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig { abs_tol: 1e-12, max_depth: 40 }
    }
}

impl QuadratureConfig {
    fn validate(&self) -> Result<(), QuadratureError> {
        if self.abs_tol.is_nan() || self.abs_tol <= 0.0 {
            return Err(QuadratureError::Config("abs_tol must be positive"));
        }
        if self.max_depth == 0 {
            return Err(QuadratureError::Config("max_depth must be at least 1"));
        }
        Ok(())
    }
}

/// Nodes and weights on `[-1, 1]`, by Newton iteration on `P_n`.
fn rule() -> &'static ([f64; ORDER], [f64; ORDER]) {
    static RULE: OnceLock<([f64; ORDER], [f64; ORDER])> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = ORDER;
        let mut nodes = [0.0; ORDER];
        let mut weights = [0.0; ORDER];
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                // P_n(x) and P_n'(x) by the three-term recurrence
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        (nodes, weights)
    })
}

fn panel<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Result<f64, QuadratureError> {
    let (nodes, weights) = rule();
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut sum = 0.0;
    for (x, w) in nodes.iter().zip(weights) {
        let t = mid + half * x;
        let v = f(t);
        if !v.is_finite() {
            return Err(QuadratureError::NonFinite(t));
        }
        sum += w * v;
    }
    Ok(sum * half)
}

fn adapt<F: FnMut(f64) -> f64>(
    f: &mut F,
    a: f64,
    b: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    max_depth: u32,
) -> Result<f64, QuadratureError> {
    let mid = 0.5 * (a + b);
    let left = panel(f, a, mid)?;
    let right = panel(f, mid, b)?;
    let split = left + right;
    // rounding floor: differences at the last few ulps are noise, not error
    if (whole - split).abs() <= tol.max(32.0 * f64::EPSILON * split.abs()) {
        return Ok(split);
    }
    if depth >= max_depth {
        return Err(QuadratureError::MaxDepth { a, b, max_depth });
    }
    Ok(adapt(f, a, mid, left, 0.5 * tol, depth + 1, max_depth)?
        + adapt(f, mid, b, right, 0.5 * tol, depth + 1, max_depth)?)
}

/// `∫_a^b f` to within `cfg.abs_tol` (estimated).
pub fn integrate<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<f64, QuadratureError> {
    cfg.validate()?;
    if a > b {
        return Err(QuadratureError::Reversed { a, b });
    }
    if a == b {
        return Ok(0.0);
    }
    let whole = panel(&mut f, a, b)?;
    adapt(&mut f, a, b, whole, cfg.abs_tol, 1, cfg.max_depth)
}

/// Like [`integrate`], but splits `[a, b]` at the given interior points first
/// so that kinks there are panel edges. The tolerance is shared evenly.
pub fn integrate_with_breaks<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    cfg: &QuadratureConfig,
) -> Result<f64, QuadratureError> {
    cfg.validate()?;
    if a > b {
        return Err(QuadratureError::Reversed { a, b });
    }
    let mut edges = vec![a];
    edges.extend(breaks.iter().copied().filter(|&t| t > a && t < b));
    edges.push(b);
    edges.sort_by(f64::total_cmp);
    edges.dedup();
    let share = QuadratureConfig { abs_tol: cfg.abs_tol / (edges.len() - 1).max(1) as f64, ..*cfg };
    edges.windows(2).try_fold(0.0, |acc, w| Ok(acc + integrate(&mut f, w[0], w[1], &share)?))
}

/// `∫₀¹∫₀¹ f(x, y) dx dy` by nested [`integrate`], half the tolerance per axis.
///
/// The inner integral over `x` is split at `x = y`, so integrands with a kink
/// on the diagonal (functions of `|x - y|`) converge without relying on
/// adaptivity to find it.
pub fn integrate2d<F: Fn(f64, f64) -> f64>(f: F, cfg: &QuadratureConfig) -> Result<f64, QuadratureError> {
    cfg.validate()?;
    let half = QuadratureConfig { abs_tol: 0.5 * cfg.abs_tol, ..*cfg };
    let failure: Cell<Option<QuadratureError>> = Cell::new(None);
    let outer = integrate(
        |y| match integrate_with_breaks(|x| f(x, y), 0.0, 1.0, &[y], &half) {
            Ok(v) => v,
            Err(e) => {
                failure.set(Some(e));
                f64::NAN
            }
        },
        0.0,
        1.0,
        &half,
    );
    match failure.into_inner() {
        Some(e) => Err(e),
        None => outer,
    }
}
