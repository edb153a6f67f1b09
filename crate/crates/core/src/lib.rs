//! Farey sequences and their maximum mean discrepancies.
//!
//! The crate generates Farey sequences exactly, evaluates the squared MMD
//! between the uniform measure on `[0, 1]` and a point set for several
//! reproducing kernels, and computes the exact rational discrepancy
//! statistics (Franel sum, discretised L2 discrepancy, quadrature error of
//! `x²`) that are tied to the Riemann hypothesis through their decay rates.
//!
//! ```
//! use farey_mmd::{farey_sequence, mmd_lemma1, mmd_squared_fast, Kernel, KernelSpec};
//!
//! let f3 = farey_sequence(3).unwrap();
//! let exact = mmd_lemma1(f3.points()).unwrap();
//! let kernel = Kernel::new(KernelSpec::BrownianShift).unwrap();
//! let fast = mmd_squared_fast(&kernel, &f3.to_f64()).unwrap();
//! assert!((exact.mmd_squared - 7.0 / 900.0).abs() < 1e-17);
//! assert!((fast.mmd_squared - exact.mmd_squared).abs() < 1e-15);
//! ```

pub mod analysis;
pub mod compensated;
pub mod error;
pub mod farey;
pub mod kernels;
pub mod mmd;
pub mod quadrature;

pub use num_rational::BigRational;

pub use analysis::{
    default_fit_window, farey_mmd, mertens_ratio, normalized_curve, rate_fit, CurvePoint, RateFit,
};
pub use error::{AnalysisError, FareyError, KernelError, MmdError, QuadratureError};
pub use farey::{check_neighbors, check_order, farey_sequence, farey_size, totient_sieve, FareySequence, Rational, MAX_ORDER};
pub use kernels::{Kernel, KernelSpec, MaternOrder};
pub use mmd::{
    discrepancy_stats, franel_sum, l2_discretized, lemma1_exact, mikolas_error_x2, mmd_lemma1,
    mmd_squared_fast, mmd_squared_naive, DiscrepancyStats, Method, MmdResult,
};
pub use quadrature::{integrate, integrate2d, integrate_with_breaks, QuadratureConfig};
