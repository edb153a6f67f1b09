//! Positive-semidefinite kernels on `[0, 1]` with closed-form integrals.
//!
//! Each [`Kernel`] exposes its pointwise value, its mean embedding
//! `y -> ∫₀¹ K(x, y) dx` and its double integral `∫₀¹∫₀¹ K(x, y) dx dy`.
//! These are the three ingredients of the squared MMD against the uniform
//! measure.
//!
//! # Closed forms
//!
//! **Brownian shift**, `K(x, y) = 1 + min(x, y)`: the embedding is
//! `1 + y - y²/2` and the double integral is `4/3`.
//!
//! **Half-integer Matérn**, with `α = √(2ν)/λ` and `r = α|x - y|`, reduces to
//! `K = P(r) e^{-r}` where `P(r) = 1`, `1 + r`, or `1 + r + r²/3` for
//! `ν = 1/2, 3/2, 5/2`. Writing `γ(j + 1, s) = ∫₀^s r^j e^{-r} dr` and
//! `G(s) = Σ_j c_j γ(j + 1, s)` for `P = Σ_j c_j r^j`, splitting the
//! embedding integral at `x = y` gives
//!
//! ```text
//! ∫₀¹ K(x, y) dx = (G(α y) + G(α (1 - y))) / α.
//! ```
//!
//! The double integral of a stationary kernel is `2 ∫₀¹ (1 - d) k(d) dd`;
//! substituting `r = α d`,
//!
//! ```text
//! ∫₀¹∫₀¹ K = (2/α) Σ_j c_j [γ(j + 1, α) - γ(j + 2, α)/α].
//! ```
//!
//! For `ν = 1/2` this is `2λ(1 - λ(1 - e^{-1/λ}))`.
//!
//! **Released m-fold integrated Brownian motion**,
//! `K(x, y) = Σ_{k≤m} (xy)^k/(k!)² + ∫₀¹ (x - t)₊^m (y - t)₊^m dt/(m!)²`.
//! For `x ≤ y` put `δ = y - x` and `u = x - t`; binomial expansion gives
//!
//! ```text
//! ∫₀^x (x-t)^m (y-t)^m dt = Σ_{l≤m} C(m,l) δ^{m-l} x^{m+l+1} / (m+l+1).
//! ```
//!
//! Integrating over `x` first, the embedding's integral part is
//! `∫₀^y (y-t)^m (1-t)^{m+1} dt / ((m+1)(m!)²)`, and with `1 - t = (1 - y) + (y - t)`
//!
//! ```text
//! ∫₀¹ K(x, y) dx = Σ_{k≤m} y^k/((k!)²(k+1))
//!                + Σ_{l≤m+1} C(m+1,l) (1-y)^{m+1-l} y^{m+l+1} / ((m+l+1)(m+1)(m!)²).
//! ```
//!
//! The double integral is `Σ_{k≤m} 1/((k!)²(k+1)²) + 1/((m+1)²(2m+3)(m!)²)`.
//! Every term is non-negative on `[0, 1]`, so none of these sums cancel.
//! For `m = 0` the kernel is the Brownian shift kernel.
//!
//! **Exponential product**, `K(x, y) = e^{xy}`: the embedding is
//! `(e^y - 1)/y` (with limit 1 at `y = 0`) and the double integral is
//! `Σ_{k≥1} 1/(k·k!)`.
//!
//! Every closed form here is checked against an independent adaptive
//! Gauss-Legendre oracle in the test suite.

use std::fmt;
use std::str::FromStr;

use crate::compensated::DoubleDouble;
use crate::error::KernelError;

/// Largest fold count accepted for the integrated Brownian motion kernel.
pub const MAX_IBM_FOLD: u32 = 10;

/// Half-integer Matérn smoothness orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MaternOrder {
    Half,
    ThreeHalves,
    FiveHalves,
}

impl MaternOrder {
    pub fn nu(self) -> f64 {
        match self {
            MaternOrder::Half => 0.5,
            MaternOrder::ThreeHalves => 1.5,
            MaternOrder::FiveHalves => 2.5,
        }
    }

    /// Correlation length that makes `√(2ν)/λ = 1`.
    pub fn default_lambda(self) -> f64 {
        match self {
            MaternOrder::Half => 1.0,
            MaternOrder::ThreeHalves => 3f64.sqrt(),
            MaternOrder::FiveHalves => 5f64.sqrt(),
        }
    }

    /// Coefficients of `P` in `K = P(r) e^{-r}`.
    fn poly(self) -> &'static [f64] {
        match self {
            MaternOrder::Half => &[1.0],
            MaternOrder::ThreeHalves => &[1.0, 1.0],
            MaternOrder::FiveHalves => &[1.0, 1.0, 1.0 / 3.0],
        }
    }

    fn id(self) -> &'static str {
        match self {
            MaternOrder::Half => "matern12",
            MaternOrder::ThreeHalves => "matern32",
            MaternOrder::FiveHalves => "matern52",
        }
    }
}

/// A kernel family with its parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum KernelSpec {
    /// `1 + min(x, y)`.
    BrownianShift,
    Matern { order: MaternOrder, lambda: f64 },
    /// Released m-fold integrated Brownian motion.
    IntegratedBm { m: u32 },
    /// `exp(x y)`.
    ExpProduct,
}

impl KernelSpec {
    pub fn matern(order: MaternOrder) -> Self {
        KernelSpec::Matern { order, lambda: order.default_lambda() }
    }

    /// Identifier used on the command line and in CSV output.
    pub fn id(&self) -> String {
        match self {
            KernelSpec::BrownianShift => "brownian".into(),
            KernelSpec::Matern { order, .. } => order.id().into(),
            KernelSpec::IntegratedBm { m } => format!("ibm{m}"),
            KernelSpec::ExpProduct => "expxy".into(),
        }
    }

    pub fn lambda(&self) -> Option<f64> {
        match self {
            KernelSpec::Matern { lambda, .. } => Some(*lambda),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<(), KernelError> {
        match *self {
            KernelSpec::Matern { lambda, .. } if !(lambda > 0.0 && lambda.is_finite()) => {
                Err(KernelError::Parameter(format!("correlation length must be positive, got {lambda}")))
            }
            KernelSpec::IntegratedBm { m } if m > MAX_IBM_FOLD => Err(KernelError::Parameter(format!(
                "fold count {m} exceeds {MAX_IBM_FOLD}"
            ))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for KernelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.lambda() {
            Some(l) => write!(f, "{}:{}", self.id(), l),
            None => f.write_str(&self.id()),
        }
    }
}

/// Parses `<id>[:lambda]`, e.g. `matern32`, `matern12:0.5`, `ibm2`.
impl FromStr for KernelSpec {
    type Err = KernelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (id, lambda) = match s.split_once(':') {
            Some((id, l)) => {
                let l: f64 = l
                    .trim()
                    .parse()
                    .map_err(|_| KernelError::Parameter(format!("bad correlation length {l:?}")))?;
                (id.trim(), Some(l))
            }
            None => (s.trim(), None),
        };
        let order = match id {
            "matern12" => Some(MaternOrder::Half),
            "matern32" => Some(MaternOrder::ThreeHalves),
            "matern52" => Some(MaternOrder::FiveHalves),
            _ => None,
        };
        let spec = if let Some(order) = order {
            KernelSpec::Matern { order, lambda: lambda.unwrap_or_else(|| order.default_lambda()) }
        } else {
            if lambda.is_some() {
                return Err(KernelError::Parameter(format!("kernel {id} takes no correlation length")));
            }
            match id {
                "brownian" => KernelSpec::BrownianShift,
                "expxy" => KernelSpec::ExpProduct,
                _ => match id.strip_prefix("ibm").map(str::parse::<u32>) {
                    Some(Ok(m)) => KernelSpec::IntegratedBm { m },
                    _ => return Err(KernelError::UnknownId(s.to_owned())),
                },
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// One product term `coef · hi^p_hi · lo^p_lo · (hi - lo)^gap` of a kernel
/// restricted to `lo ≤ hi`, sharing the kernel-wide factor `e^{-α(hi - lo)}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct SeparableTerm {
    pub coef: DoubleDouble,
    pub pow_hi: u32,
    pub pow_lo: u32,
    pub gap: u32,
}

/// Number of Taylor terms used when `e^{xy}` is summed in linear time.
/// The tail after `x^k y^k / k!` for `k < 21` is below `e/21! ≈ 5.3e-20`.
const EXP_PRODUCT_TERMS: u32 = 21;

#[derive(Clone, Debug)]
enum Family {
    Brownian,
    Matern { poly: &'static [f64], alpha: f64 },
    Ibm {
        m: u32,
        /// `1/(k!)²`, k = 0..=m
        poly: Vec<f64>,
        /// `C(m,l)/((m+l+1)(m!)²)`, l = 0..=m
        tail: Vec<f64>,
    },
    ExpProduct,
}

/// An immutable kernel evaluator with precomputed constants.
#[derive(Clone, Debug)]
pub struct Kernel {
    spec: KernelSpec,
    family: Family,
}

fn factorial(k: u32) -> u128 {
    (1..=u128::from(k)).product()
}

fn binomial(n: u32, k: u32) -> u128 {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `num/den` with both parts exactly representable, so one rounding.
fn ratio(num: u128, den: u128) -> f64 {
    debug_assert!(num < (1 << 53) && den < (1 << 53));
    num as f64 / den as f64
}

impl Kernel {
    pub fn new(spec: KernelSpec) -> Result<Self, KernelError> {
        spec.validate()?;
        let family = match spec {
            KernelSpec::BrownianShift => Family::Brownian,
            KernelSpec::Matern { order, lambda } => {
                Family::Matern { poly: order.poly(), alpha: (2.0 * order.nu()).sqrt() / lambda }
            }
            KernelSpec::IntegratedBm { m } => {
                let mf2 = factorial(m).pow(2);
                Family::Ibm {
                    m,
                    poly: (0..=m).map(|k| ratio(1, factorial(k).pow(2))).collect(),
                    tail: (0..=m)
                        .map(|l| ratio(binomial(m, l), u128::from(m + l + 1) * mf2))
                        .collect(),
                }
            }
            KernelSpec::ExpProduct => Family::ExpProduct,
        };
        Ok(Kernel { spec, family })
    }

    pub fn spec(&self) -> &KernelSpec {
        &self.spec
    }

    pub fn id(&self) -> String {
        self.spec.id()
    }

    /// `K(x, y)`.
    pub fn eval(&self, x: f64, y: f64) -> Result<f64, KernelError> {
        check_unit(x)?;
        check_unit(y)?;
        Ok(self.eval_unchecked(x, y))
    }

    pub(crate) fn eval_unchecked(&self, x: f64, y: f64) -> f64 {
        self.eval_compensated(x, y).to_f64()
    }

    /// `K(x, y)` with the polynomial factors summed in double-double.
    ///
    /// Rounding the sum of a polynomial to double leaves errors that do not
    /// average out over a Gram matrix of Farey points. Keeping the sum
    /// unrounded removes that bias; the exponential factor is left in double.
    pub(crate) fn eval_compensated(&self, x: f64, y: f64) -> DoubleDouble {
        let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
        match &self.family {
            Family::Brownian => DoubleDouble::ONE.add_f64(lo),
            Family::Matern { poly, alpha } => {
                let r = DoubleDouble::diff(hi, lo).mul_f64(*alpha);
                let p = poly.iter().rev().fold(DoubleDouble::ZERO, |acc, c| (acc * r).add_f64(*c));
                let pe = p.mul_f64((-r.hi).exp());
                // e^{-(r_hi + r_lo)} ≈ e^{-r_hi} (1 - r_lo)
                pe.add_f64(-pe.hi * r.lo)
            }
            Family::Ibm { m, poly, tail } => {
                let xy = lo * hi;
                let delta = hi - lo;
                let mut s = DoubleDouble::ZERO;
                let mut p = 1.0;
                for c in poly {
                    s = s.add_f64(c * p);
                    p *= xy;
                }
                // Σ_l tail_l δ^{m-l} lo^{m+l+1}
                let mut lo_pow = lo.powi(*m as i32 + 1);
                for (l, c) in tail.iter().enumerate() {
                    s = s.add_f64(c * lo_pow * delta.powi((*m as usize - l) as i32));
                    lo_pow *= lo;
                }
                s
            }
            Family::ExpProduct => DoubleDouble::new((x * y).exp()),
        }
    }

    /// `∫₀¹ K(x, y) dx`.
    pub fn mean_embedding(&self, y: f64) -> Result<f64, KernelError> {
        check_unit(y)?;
        Ok(self.mean_embedding_unchecked(y))
    }

    pub(crate) fn mean_embedding_unchecked(&self, y: f64) -> f64 {
        match &self.family {
            Family::Brownian => 1.0 + 0.5 * (2.0 - y) * y,
            Family::Matern { poly, alpha } => {
                (matern_primitive(poly, alpha * y) + matern_primitive(poly, alpha * (1.0 - y))) / alpha
            }
            Family::Ibm { m, .. } => ibm_mean_embedding(*m, y),
            Family::ExpProduct => {
                if y.abs() < 1e-4 {
                    1.0 + y * (0.5 + y * (1.0 / 6.0 + y / 24.0))
                } else {
                    y.exp_m1() / y
                }
            }
        }
    }

    /// `∫₀¹∫₀¹ K(x, y) dx dy`.
    pub fn double_integral(&self) -> f64 {
        match &self.family {
            Family::Brownian => 4.0 / 3.0,
            Family::Matern { poly, alpha } => {
                let a = *alpha;
                let mut first = 0.0;
                let mut second = 0.0;
                for (j, c) in poly.iter().enumerate() {
                    first += c * lower_gamma_int(j as u32 + 1, a);
                    second += c * lower_gamma_int(j as u32 + 2, a);
                }
                2.0 / a * (first - second / a)
            }
            Family::Ibm { m, .. } => {
                let m = *m;
                let poly: f64 = (0..=m)
                    .map(|k| ratio(1, (factorial(k) * u128::from(k + 1)).pow(2)))
                    .sum();
                poly + ratio(1, u128::from((m + 1).pow(2) * (2 * m + 3)) * factorial(m).pow(2))
            }
            Family::ExpProduct => {
                let mut sum = 0.0;
                let mut fact = 1.0;
                for k in 1..40u32 {
                    fact *= f64::from(k);
                    let term = 1.0 / (f64::from(k) * fact);
                    sum += term;
                    if term < f64::EPSILON * sum * 1e-2 {
                        break;
                    }
                }
                sum
            }
        }
    }

    /// Decay rate `α` and product terms when `K(lo, hi)` for `lo ≤ hi` is a
    /// finite sum of [`SeparableTerm`]s times `e^{-α(hi - lo)}`.
    ///
    /// `None` for kernels without such a form.
    pub(crate) fn separable_form(&self) -> Option<(f64, Vec<SeparableTerm>)> {
        match &self.family {
            Family::Brownian => Some((
                0.0,
                vec![
                    SeparableTerm { coef: DoubleDouble::ONE, pow_hi: 0, pow_lo: 0, gap: 0 },
                    SeparableTerm { coef: DoubleDouble::ONE, pow_hi: 0, pow_lo: 1, gap: 0 },
                ],
            )),
            Family::Matern { poly, alpha } => {
                let mut scale = DoubleDouble::ONE;
                let terms = poly
                    .iter()
                    .enumerate()
                    .map(|(j, c)| {
                        let t = SeparableTerm { coef: scale.mul_f64(*c), pow_hi: 0, pow_lo: 0, gap: j as u32 };
                        scale = scale.mul_f64(*alpha);
                        t
                    })
                    .collect();
                Some((*alpha, terms))
            }
            Family::Ibm { m, poly, tail } if *m <= 2 => {
                let mut terms: Vec<_> = poly
                    .iter()
                    .enumerate()
                    .map(|(k, c)| SeparableTerm { coef: DoubleDouble::new(*c), pow_hi: k as u32, pow_lo: k as u32, gap: 0 })
                    .collect();
                terms.extend(tail.iter().enumerate().map(|(l, c)| SeparableTerm {
                    coef: DoubleDouble::new(*c),
                    pow_hi: 0,
                    pow_lo: m + l as u32 + 1,
                    gap: m - l as u32,
                }));
                Some((0.0, terms))
            }
            Family::Ibm { .. } => None,
            Family::ExpProduct => {
                let mut inv_fact = DoubleDouble::ONE;
                let terms = (0..EXP_PRODUCT_TERMS)
                    .map(|k| {
                        if k > 0 {
                            inv_fact = inv_fact.div_f64(f64::from(k));
                        }
                        SeparableTerm { coef: inv_fact, pow_hi: k, pow_lo: k, gap: 0 }
                    })
                    .collect();
                Some((0.0, terms))
            }
        }
    }
}

fn check_unit(x: f64) -> Result<(), KernelError> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(KernelError::Domain(x))
    }
}

/// `G(s) = Σ_j c_j γ(j + 1, s)`.
fn matern_primitive(poly: &[f64], s: f64) -> f64 {
    poly.iter()
        .enumerate()
        .map(|(j, c)| c * lower_gamma_int(j as u32 + 1, s))
        .sum()
}

/// Lower incomplete gamma `γ(a, s) = ∫₀^s r^{a-1} e^{-r} dr` for integer `a ≥ 1`, `s ≥ 0`.
///
/// Small `s` uses the series `s^a e^{-s} Σ_k s^k / (a (a+1) ... (a+k))`, which
/// has only positive terms; larger `s` uses `(a-1)! (1 - e^{-s} Σ_{i<a} s^i/i!)`.
pub(crate) fn lower_gamma_int(a: u32, s: f64) -> f64 {
    if s <= 0.0 {
        return 0.0;
    }
    let af = f64::from(a);
    if s < af + 2.0 {
        let mut term = 1.0 / af;
        let mut sum = term;
        let mut k = 1.0;
        while term > sum * 1e-17 {
            term *= s / (af + k);
            sum += term;
            k += 1.0;
        }
        s.powi(a as i32) * (-s).exp() * sum
    } else {
        let mut partial = 0.0;
        let mut term = 1.0;
        for i in 0..a {
            if i > 0 {
                term *= s / f64::from(i);
            }
            partial += term;
        }
        let fact = factorial(a - 1) as f64;
        fact * (1.0 - (-s).exp() * partial)
    }
}

fn ibm_mean_embedding(m: u32, y: f64) -> f64 {
    let mut poly = 0.0;
    let mut yk = 1.0;
    for k in 0..=m {
        poly += yk * ratio(1, factorial(k).pow(2) * u128::from(k + 1));
        yk *= y;
    }
    let mf2 = factorial(m).pow(2) * u128::from(m + 1);
    let w = 1.0 - y;
    let tail: f64 = (0..=m + 1)
        .map(|l| {
            let c = ratio(binomial(m + 1, l), u128::from(m + l + 1) * mf2);
            c * w.powi((m + 1 - l) as i32) * y.powi((m + l + 1) as i32)
        })
        .sum();
    poly + tail
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(spec: KernelSpec) -> Kernel {
        Kernel::new(spec).unwrap()
    }

    #[test]
    fn pointwise_examples() {
        assert_eq!(k(KernelSpec::BrownianShift).eval(0.3, 0.7).unwrap(), 1.3);
        assert_eq!(k(KernelSpec::matern(MaternOrder::Half)).eval(0.4, 0.4).unwrap(), 1.0);
        let m32 = k(KernelSpec::matern(MaternOrder::ThreeHalves));
        assert!((m32.eval(0.0, 1.0).unwrap() - 2.0 * (-1f64).exp()).abs() < 1e-15);
        let ibm0 = k(KernelSpec::IntegratedBm { m: 0 });
        let bm = k(KernelSpec::BrownianShift);
        for &(x, y) in &[(0.1, 0.9), (0.7, 0.2), (0.5, 0.5), (0.0, 1.0)] {
            assert_eq!(ibm0.eval(x, y).unwrap(), bm.eval(x, y).unwrap());
        }
    }

    #[test]
    fn domain_checks() {
        let bm = k(KernelSpec::BrownianShift);
        assert_eq!(bm.eval(-0.1, 0.5), Err(KernelError::Domain(-0.1)));
        assert_eq!(bm.mean_embedding(1.5), Err(KernelError::Domain(1.5)));
        assert!(bm.eval(f64::NAN, 0.5).is_err());
    }

    #[test]
    fn embedding_examples() {
        let bm = k(KernelSpec::BrownianShift);
        assert_eq!(bm.mean_embedding(0.0).unwrap(), 1.0);
        assert_eq!(bm.mean_embedding(1.0).unwrap(), 1.5);
        let m12 = k(KernelSpec::matern(MaternOrder::Half));
        let want = 2.0 * (1.0 - (-0.5f64).exp());
        assert!((m12.mean_embedding(0.5).unwrap() - want).abs() < 1e-15);
        let ex = k(KernelSpec::ExpProduct);
        assert_eq!(ex.mean_embedding(0.0).unwrap(), 1.0);
        // both sides of the series cutoff
        for y in [0.99e-4, 1.01e-4, -0.5e-4] {
            let series = 1.0 + y / 2.0 + y * y / 6.0 + y * y * y / 24.0;
            assert!((ex.mean_embedding_unchecked(y) - series).abs() <= 4.0 * f64::EPSILON, "{y}");
        }
    }

    #[test]
    fn double_integral_examples() {
        assert_eq!(k(KernelSpec::BrownianShift).double_integral(), 4.0 / 3.0);
        let m12 = k(KernelSpec::matern(MaternOrder::Half)).double_integral();
        assert!((m12 - 2.0 * (-1f64).exp()).abs() < 1e-15);
        assert!((k(KernelSpec::IntegratedBm { m: 0 }).double_integral() - 4.0 / 3.0).abs() <= f64::EPSILON);
        // 2λ(1 - λ(1 - e^{-1/λ}))
        for lambda in [0.05, 0.3, 2.0, 40.0] {
            let got = k(KernelSpec::Matern { order: MaternOrder::Half, lambda }).double_integral();
            let want = 2.0 * lambda * (1.0 - lambda * (1.0 - (-1.0 / lambda).exp()));
            assert!((got - want).abs() < 1e-12 * want.max(1.0), "λ={lambda}: {got} vs {want}");
        }
    }

    #[test]
    fn incomplete_gamma_branches_meet() {
        for a in 1..=4 {
            let s = f64::from(a) + 2.0;
            let below = lower_gamma_int(a, s * (1.0 - 1e-12));
            let above = lower_gamma_int(a, s);
            assert!((above - below).abs() < 1e-9, "a={a}");
        }
        assert!((lower_gamma_int(1, 1.0) - (1.0 - (-1f64).exp())).abs() < 4.0 * f64::EPSILON);
        assert!((lower_gamma_int(2, 1.0) - (1.0 - 2.0 * (-1f64).exp())).abs() < 4.0 * f64::EPSILON);
    }

    #[test]
    fn parse_ids() {
        assert_eq!("brownian".parse::<KernelSpec>().unwrap(), KernelSpec::BrownianShift);
        assert_eq!("expxy".parse::<KernelSpec>().unwrap(), KernelSpec::ExpProduct);
        assert_eq!("ibm3".parse::<KernelSpec>().unwrap(), KernelSpec::IntegratedBm { m: 3 });
        assert_eq!(
            "matern12:0.5".parse::<KernelSpec>().unwrap(),
            KernelSpec::Matern { order: MaternOrder::Half, lambda: 0.5 }
        );
        assert_eq!("matern52".parse::<KernelSpec>().unwrap().lambda(), Some(5f64.sqrt()));
        assert!(matches!("gauss".parse::<KernelSpec>(), Err(KernelError::UnknownId(_))));
        assert!(matches!("matern32:-1".parse::<KernelSpec>(), Err(KernelError::Parameter(_))));
        assert!(matches!("brownian:2".parse::<KernelSpec>(), Err(KernelError::Parameter(_))));
        assert!(matches!("ibm11".parse::<KernelSpec>(), Err(KernelError::Parameter(_))));
        assert!("ibm".parse::<KernelSpec>().is_err());
    }

    #[test]
    fn separable_form_matches_eval() {
        let specs = [
            KernelSpec::BrownianShift,
            KernelSpec::matern(MaternOrder::Half),
            KernelSpec::matern(MaternOrder::ThreeHalves),
            KernelSpec::Matern { order: MaternOrder::FiveHalves, lambda: 0.3 },
            KernelSpec::IntegratedBm { m: 1 },
            KernelSpec::IntegratedBm { m: 2 },
            KernelSpec::ExpProduct,
        ];
        for spec in specs {
            let kern = k(spec);
            let (alpha, terms) = kern.separable_form().unwrap();
            for &(lo, hi) in &[(0.0, 0.0), (0.1, 0.35), (0.2, 0.9), (0.0, 1.0), (0.6, 0.6)] {
                let gap: f64 = hi - lo;
                let sep: f64 = terms
                    .iter()
                    .map(|t| {
                        t.coef.to_f64() * hi.powi(t.pow_hi as i32) * lo.powi(t.pow_lo as i32) * gap.powi(t.gap as i32)
                    })
                    .sum::<f64>()
                    * (-alpha * gap).exp();
                let direct = kern.eval(lo, hi).unwrap();
                assert!((sep - direct).abs() < 1e-14, "{spec}: {sep} vs {direct}");
            }
        }
        assert!(k(KernelSpec::IntegratedBm { m: 3 }).separable_form().is_none());
    }
}
