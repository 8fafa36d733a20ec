//! Truncated power-series computation for holomorphic PDE boundary analysis.
//!
//! Given a strictly pseudoconvex domain germ `{rho < 0}` and a linear
//! holomorphic partial differential operator at a boundary point, this crate
//! classifies the point (non-characteristic / simply characteristic), tests a
//! Hermitian positivity condition on the restricted cotangent form, and, when
//! the test passes, constructs an everywhere-characteristic analytic
//! hypersurface touching the closed domain only at the point, together with
//! numeric certificates (spectra, residual norms, contact samples).
//!
//! All values are immutable after construction and all operations are pure
//! functions, so everything here can be shared freely across threads.

// Index-based loops over small matrices read better than iterator chains in
// the numeric kernels.
#![allow(clippy::needless_range_loop)]

pub mod cksolve;
pub mod hypersurface;
pub mod linalg;
pub mod normalize;
pub mod operators;
pub mod pipeline;
pub mod posform;
pub mod problem;
pub mod report;
pub mod rng;
pub mod selftest;
pub mod series;

pub use num_complex::Complex64;

/// Error type shared by the whole crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("series is not a unit: constant term {0} has magnitude below tolerance")]
    NotAUnit(Complex64),
    #[error("inner series has nonzero constant term {0} and re-expansion was not requested")]
    NonzeroInnerConstant(Complex64),
    #[error("holomorphic gradient of the defining function vanishes at the point")]
    DegenerateGradient,
    #[error("the point is not on the hypersurface: rho(p) = {0}")]
    PointNotOnBoundary(f64),
    #[error("Levi form is not positive definite: pivot {index} is {value}")]
    NotStrictlyPseudoconvex { index: usize, value: f64 },
    #[error("boundary is not simply characteristic: |b(0)| = {0}")]
    NotSimplyCharacteristic(f64),
    #[error("point is not characteristic: |P_m(p, d rho)| = {0} exceeds tolerance")]
    NotCharacteristic(f64),
    #[error("verdict is within the tolerance band and cannot be classified: {0}")]
    IndeterminateVerdict(String),
    #[error("implicit function solve is degenerate: |dB/dx_{slot}| = {value} at the anchor")]
    ImplicitDegenerate { slot: usize, value: f64 },
    #[error("no admissible root of the anchor polynomial was found")]
    NoAnchorRoot,
    #[error("root choice {chosen} out of range: {available} roots available")]
    RootChoiceOutOfRange { chosen: usize, available: usize },
    #[error("symbol value is not divisible by the defining function: remainder norm {0}")]
    DivisibilityFailed(f64),
    #[error("Cauchy solve residual {0} exceeds tolerance; problem data is inconsistent")]
    InconsistentCauchyData(f64),
    #[error("eigenvalue iteration did not converge: off-diagonal norm {0}")]
    EigenNoConvergence(f64),
    #[error("matrix is singular and cannot be inverted")]
    SingularMatrix,
    #[error("invalid problem: {0}")]
    Validation(String),
    #[error("internal residual check failed: {0}")]
    ResidualFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Numeric thresholds used across the pipeline.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// General zero-test threshold for residuals and verdicts.
    pub eps: f64,
    /// Coefficients with magnitude at or below this floor are pruned from series.
    pub eps_drop: f64,
    /// Positivity margin for the Hermitian form verdicts, relative to the
    /// largest eigenvalue magnitude.
    pub eps_pos: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            eps: 1e-9,
            eps_drop: 1e-14,
            eps_pos: 1e-7,
        }
    }
}

impl Tolerances {
    pub fn with_eps(eps: f64) -> Self {
        Tolerances {
            eps,
            ..Tolerances::default()
        }
    }
}
