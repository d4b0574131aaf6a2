//! Scalar parameters of the Cauchy problem
//!
//! ```text
//! u_tt - Δu + μ1/(1+t)^β u_t - μ2/(1+t)^{α+1} u = |u|^p
//! u(x,0) = ε f(x),  u_t(x,0) = ε g(x)
//! ```
//!
//! β > 1 puts the damping in the scattering range; α > 1 keeps the negative
//! mass term integrable in time.

use serde::Serialize;

use crate::error::{Error, Result};

/// All scalar parameters of the Cauchy problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProblemParams {
    /// Spatial dimension (1, 2 or 3).
    pub n: u32,
    /// Nonlinearity power, > 1.
    pub p: f64,
    /// Damping coefficient μ1 ≥ 0.
    pub mu1: f64,
    /// Mass coefficient μ2 ≥ 0.
    pub mu2: f64,
    /// Mass decay exponent α (the mass coefficient is μ2/(1+t)^{α+1}).
    pub alpha: f64,
    /// Damping decay exponent β (the damping coefficient is μ1/(1+t)^β).
    pub beta: f64,
    /// Initial support radius R ≥ 1, so t + R ≤ R(1+t) for t ≥ 0.
    pub support_radius: f64,
    /// Data amplitude ε > 0.
    pub eps: f64,
}

impl ProblemParams {
    /// Check the basic invariants shared by every run.
    pub fn validate(&self) -> Result<()> {
        if !(1..=3).contains(&self.n) {
            return Err(Error::InvalidParameter(format!(
                "n = {} outside the supported range 1..=3",
                self.n
            )));
        }
        if !(self.p > 1.0) {
            return Err(Error::InvalidParameter(format!("p = {} must be > 1", self.p)));
        }
        if !(self.eps > 0.0) {
            return Err(Error::InvalidParameter(format!("eps = {} must be > 0", self.eps)));
        }
        if !(self.support_radius >= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "support radius R = {} must be >= 1",
                self.support_radius
            )));
        }
        if self.mu1 < 0.0 || self.mu2 < 0.0 {
            return Err(Error::InvalidParameter(
                "mu1 and mu2 must be nonnegative".into(),
            ));
        }
        Ok(())
    }

    /// Additionally require the scattering regime β > 1, α > 1.
    pub fn validate_scattering(&self) -> Result<()> {
        self.validate()?;
        if !(self.beta > 1.0) {
            return Err(Error::InvalidParameter(format!(
                "beta = {} must be > 1 (scattering damping)",
                self.beta
            )));
        }
        if !(self.alpha > 1.0) {
            return Err(Error::InvalidParameter(format!(
                "alpha = {} must be > 1",
                self.alpha
            )));
        }
        Ok(())
    }

    /// Damping coefficient μ1/(1+t)^β.
    pub fn damping_coeff(&self, t: f64) -> f64 {
        self.mu1 * (1.0 + t).powf(-self.beta)
    }

    /// Mass coefficient μ2/(1+t)^{α+1} (enters the equation with a minus sign,
    /// i.e. it drives growth).
    pub fn mass_coeff(&self, t: f64) -> f64 {
        self.mu2 * (1.0 + t).powf(-self.alpha - 1.0)
    }
}
