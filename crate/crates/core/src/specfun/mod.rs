//! Gamma-product special functions evaluated by Mellin–Barnes quadrature.
//!
//! Every function here is written in the `z^{-s}` convention,
//!
//! ```text
//! G(z) = 1/(2πi) ∫_L Φ(s) z^{-s} ds,
//! Φ(s) = Π_{j<=m} Γ(b_j + B_j s) Π_{j<=n} Γ(1 - a_j - A_j s)
//!        / ( Π_{j>m} Γ(1 - b_j - B_j s) Π_{j>n} Γ(a_j + A_j s) ),
//! ```
//!
//! with Meijer's G being the special case where all scales are one. The
//! contour is the vertical line `Re s = c` with `c` strictly between the
//! left and right pole families, placed at the saddle of the real-axis
//! envelope; the line integral is done with the trapezoid rule, halving the
//! step until two successive estimates agree.

mod bivariate;
mod gamma;
mod kernel;
mod univariate;

pub use bivariate::{fox_h_bivariate, fox_h_bivariate_with, FoxHBivarSpec, JointParam};
pub use gamma::{binomial, factorial, gamma, ln_gamma, ln_gamma_abs};
pub use univariate::{
    fox_h, fox_h_with, meijer_g, meijer_g_large_argument, meijer_g_with, FoxHSpec, MeijerGSpec,
    ScaledParam,
};

pub(crate) use gamma::ln_gamma_unchecked;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecFunError {
    #[error("gamma function pole at {0}")]
    GammaPole(f64),
    #[error("invalid parameter specification: {0}")]
    InvalidSpec(String),
    #[error("no vertical contour separates the pole families (left bound {left}, right bound {right})")]
    ContourSeparation { left: f64, right: f64 },
    #[error("argument must be positive, got {0}")]
    NonPositiveArgument(f64),
    #[error("quadrature did not converge: estimate {estimate:e}, error {error:e} after {nodes} nodes")]
    NotConverged { estimate: f64, error: f64, nodes: usize },
    #[error("asymptotic expansion is degenerate: {0}")]
    DegenerateExpansion(String),
}

/// Where the vertical contour is placed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Abscissa {
    /// Minimize the real-axis envelope `|Φ(c)| z^{-c}` inside the separating strip.
    Saddle,
    /// Midpoint of the separating strip (one unit right of the left family when
    /// the strip is unbounded).
    Midpoint,
}

/// Quadrature controls for the contour integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourConfig {
    pub abscissa: Abscissa,
    /// Maximum number of integrand evaluations along one line (per variable
    /// for the bivariate case).
    pub node_budget: usize,
    /// Largest admissible truncation of the imaginary axis.
    pub max_half_length: f64,
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl ContourConfig {
    pub fn univariate() -> Self {
        Self {
            abscissa: Abscissa::Saddle,
            node_budget: 1 << 17,
            max_half_length: 400.0,
            abs_tol: 1e-10,
            rel_tol: 1e-8,
        }
    }

    pub fn bivariate() -> Self {
        Self {
            abscissa: Abscissa::Saddle,
            node_budget: 6000,
            max_half_length: 200.0,
            abs_tol: 1e-8,
            rel_tol: 1e-6,
        }
    }

    pub fn with_tolerances(mut self, abs_tol: f64, rel_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self.rel_tol = rel_tol;
        self
    }

    pub(crate) fn validate(&self) -> Result<(), SpecFunError> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(SpecFunError::InvalidSpec("tolerances must be positive".into()));
        }
        if self.node_budget < 64 {
            return Err(SpecFunError::InvalidSpec("node budget must be at least 64".into()));
        }
        if !(self.max_half_length > 0.0) {
            return Err(SpecFunError::InvalidSpec("truncation half-length must be positive".into()));
        }
        Ok(())
    }

    fn accepts(&self, value: f64, diff: f64) -> bool {
        diff <= self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// A value with the quadrature's own error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub value: f64,
    pub error: f64,
    pub nodes: usize,
}
