//! Critical-exponent and parameter algebra.
//!
//! The classification of long-time behaviour for damped semilinear waves
//! runs through a handful of closed forms:
//!
//! ```text
//! γ(p,n) = 2 + (n+1)p - (n-1)p²          (Strauss quadratic)
//! p_S(n) = positive root of γ(·,n)        (wave-like critical power)
//! p_F(n) = 1 + 2/n                        (heat-like critical power)
//! δ      = (μ1-1)² - 4μ2²                 (scale-invariant discriminant)
//! ```
//!
//! plus the lifespan exponents of the blow-up bounds T ≲ ε^{-k} and the
//! implicit amplitude scale a(ε) solving a²ε²log(1+a) = 1.

use serde::Serialize;

use crate::error::{Error, Result};

/// γ(p, n) = 2 + (n+1)p − (n−1)p².  `n` may be fractional (shifted
/// dimensions n + μ1 appear in the scale-invariant critical power).
pub fn gamma(p: f64, n: f64) -> f64 {
    2.0 + (n + 1.0) * p - (n - 1.0) * p * p
}

/// Positive root of γ(p, n) = 0.
///
/// For n ≤ 1 the quadratic degenerates (γ(p,1) = 2 + 2p has no positive
/// root) and the critical power is +∞ by convention; the sentinel is the
/// IEEE infinity, so comparisons against it are exact.
pub fn strauss_exponent(n: f64) -> f64 {
    if n <= 1.0 {
        return f64::INFINITY;
    }
    (n + 1.0 + (n * n + 10.0 * n - 7.0).sqrt()) / (2.0 * (n - 1.0))
}

/// Fujita power p_F(n) = 1 + 2/n; `n` may be fractional.
pub fn fujita_exponent(n: f64) -> f64 {
    1.0 + 2.0 / n
}

/// Discriminant δ = (μ1 − 1)² − 4μ2² of the scale-invariant case.
pub fn delta_scale_invariant(mu1: f64, mu2: f64) -> f64 {
    (mu1 - 1.0).powi(2) - 4.0 * mu2 * mu2
}

/// Critical power max{p_S(n+μ1), p_F(n + μ1/2 − √δ/2)} of the
/// scale-invariant problem with positive mass.  Only stated for
/// δ ∈ (0, 1]; anything else is rejected rather than extrapolated.
pub fn critical_power_scale_invariant(n: u32, mu1: f64, mu2: f64) -> Result<f64> {
    let delta = delta_scale_invariant(mu1, mu2);
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "delta = {delta} outside (0, 1]"
        )));
    }
    let wave = strauss_exponent(n as f64 + mu1);
    let heat = fujita_exponent(n as f64 + mu1 / 2.0 - delta.sqrt() / 2.0);
    Ok(wave.max(heat))
}

/// Mass coefficient (1 − δ)/(4(1+t)²) of the equation obtained from the
/// scale-invariant problem by the substitution v = (1+t)^{μ1/2} u.
pub fn mass_transform_coefficient(t: f64, mu1: f64, mu2: f64) -> f64 {
    (1.0 - delta_scale_invariant(mu1, mu2)) / (4.0 * (1.0 + t) * (1.0 + t))
}

/// Behaviour class of the linear damping μ/(1+t)^β.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DampingClass {
    /// β < −1: the damping grows so fast that waves freeze.
    Overdamping,
    /// β ∈ [−1, 1): heat-like behaviour.
    Effective,
    /// β = 1: invariant under the hyperbolic rescaling; small μ behaves
    /// like no damping at all.
    ScaleInvariant { non_effective: bool },
    /// β > 1: the damping is integrable and the free wave dominates.
    Scattering,
}

impl std::fmt::Display for DampingClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DampingClass::Overdamping => write!(f, "overdamping"),
            DampingClass::Effective => write!(f, "effective"),
            DampingClass::ScaleInvariant { non_effective: true } => {
                write!(f, "scale-invariant (non-effective)")
            }
            DampingClass::ScaleInvariant { non_effective: false } => {
                write!(f, "scale-invariant")
            }
            DampingClass::Scattering => write!(f, "scattering"),
        }
    }
}

/// Classify the damping by its decay exponent; μ only matters at β = 1.
pub fn classify_damping(beta: f64, mu: f64) -> DampingClass {
    if beta < -1.0 {
        DampingClass::Overdamping
    } else if beta < 1.0 {
        DampingClass::Effective
    } else if beta == 1.0 {
        DampingClass::ScaleInvariant {
            non_effective: mu > 0.0 && mu < 1.0,
        }
    } else {
        DampingClass::Scattering
    }
}

/// Which upper lifespan bound is being quoted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LifespanBound {
    /// T ≤ C ε^{−2p(p−1)/γ(p,n)}, valid for 1 < p < p_S(n).
    General,
    /// n = 2, 1 < p < 2 with ∫g > 0: T ≤ C ε^{−(p−1)/(3−p)}.
    ImprovedDim2,
    /// n = 1, p > 1 with ∫g > 0: T ≤ C ε^{−(p−1)/2}.
    ImprovedDim1,
}

impl std::fmt::Display for LifespanBound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LifespanBound::General => write!(f, "general"),
            LifespanBound::ImprovedDim2 => write!(f, "improved-n2"),
            LifespanBound::ImprovedDim1 => write!(f, "improved-n1"),
        }
    }
}

/// Exponent k of the lifespan bound T ≤ C ε^{−k}, rejecting (p, n) outside
/// the range where the bound is stated.
pub fn lifespan_exponent(p: f64, n: u32, bound: LifespanBound) -> Result<f64> {
    match bound {
        LifespanBound::General => {
            let ps = strauss_exponent(n as f64);
            if !(p > 1.0 && p < ps) {
                return Err(Error::InvalidParameter(format!(
                    "p = {p} outside (1, p_S({n}) = {ps})"
                )));
            }
            Ok(2.0 * p * (p - 1.0) / gamma(p, n as f64))
        }
        LifespanBound::ImprovedDim2 => {
            if n != 2 || !(p > 1.0 && p < 2.0) {
                return Err(Error::InvalidParameter(format!(
                    "improved n=2 bound needs n = 2 and p in (1, 2), got n = {n}, p = {p}"
                )));
            }
            Ok((p - 1.0) / (3.0 - p))
        }
        LifespanBound::ImprovedDim1 => {
            if n != 1 || !(p > 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "improved n=1 bound needs n = 1 and p > 1, got n = {n}, p = {p}"
                )));
            }
            Ok((p - 1.0) / 2.0)
        }
    }
}

/// Solve a²ε²log(1+a) = 1 for a > 0 by bracketed bisection.
///
/// The left side is continuous and strictly increasing in a, from 0 to ∞,
/// so the root exists and is unique; it is driven to a residual below 1e-12.
pub fn solve_a_of_eps(eps: f64) -> f64 {
    assert!(eps > 0.0, "eps must be positive");
    let h = |a: f64| a * a * eps * eps * (1.0 + a).ln() - 1.0;
    let mut hi = 1.0;
    while h(hi) < 0.0 {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if h(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The curvature profile Q of the transformed unknown w = λ(t) u at n = p = 2,
///
/// ```text
/// Q(t) = μ1²/(4(1+t)^{2β}) − βμ1/(2(1+t)^{β+1}) + μ2/(1+t)^{α+1}
///      = Q̃(t)/(1+t)^{β+1},
/// Q̃(t) = μ1²/(4(1+t)^{β−1}) − βμ1/2 + μ2/(1+t)^{α−β}.
/// ```
///
/// Positivity of Q for all t ≥ 0 is what allows the kernel comparison
/// argument to run; it reduces to positivity of Q̃.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QProfile {
    pub mu1: f64,
    pub mu2: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl QProfile {
    pub fn new(mu1: f64, mu2: f64, alpha: f64, beta: f64) -> Self {
        Self { mu1, mu2, alpha, beta }
    }

    /// Q(t).
    pub fn q(&self, t: f64) -> f64 {
        let s = 1.0 + t;
        self.mu1 * self.mu1 / (4.0 * s.powf(2.0 * self.beta))
            - self.beta * self.mu1 / (2.0 * s.powf(self.beta + 1.0))
            + self.mu2 / s.powf(self.alpha + 1.0)
    }

    /// Q̃(t) = Q(t)·(1+t)^{β+1}.
    pub fn q_tilde(&self, t: f64) -> f64 {
        let s = 1.0 + t;
        self.mu1 * self.mu1 / (4.0 * s.powf(self.beta - 1.0)) - self.beta * self.mu1 / 2.0
            + self.mu2 / s.powf(self.alpha - self.beta)
    }

    /// Q written as a completed square; algebraically identical to `q` and
    /// used as a cross-check of the transcription:
    /// Q(t) = [ (μ1/(1+t)^{β−1} − β)² + 4μ2/(1+t)^{α−1} − β² ] / (4(1+t)²).
    pub fn q_square_form(&self, t: f64) -> f64 {
        let s = 1.0 + t;
        let d = self.mu1 / s.powf(self.beta - 1.0) - self.beta;
        (d * d + 4.0 * self.mu2 / s.powf(self.alpha - 1.0) - self.beta * self.beta)
            / (4.0 * s * s)
    }

    /// Location of the minimum of Q̃ when α < β:
    /// t0 = −1 + (μ1²(β−1)/(4μ2(β−α)))^{1/(2β−α−1)}.
    /// May be negative; `None` when α ≥ β or when degenerate (μ1 μ2 = 0).
    pub fn q_tilde_minimizer(&self) -> Option<f64> {
        if !(self.alpha < self.beta) || self.mu1 == 0.0 || self.mu2 == 0.0 {
            return None;
        }
        let k = self.mu1 * self.mu1 * (self.beta - 1.0)
            / (4.0 * self.mu2 * (self.beta - self.alpha));
        Some(-1.0 + k.powf(1.0 / (2.0 * self.beta - self.alpha - 1.0)))
    }

    /// Decide whether Q stays nonnegative for all t ≥ 0.
    ///
    /// For α = β this is μ2 ≥ βμ1/2 (Q̃ decreases to μ2 − βμ1/2).  For
    /// α < β it is the closed-form statement of Q̃(t0) ≥ 0 at the interior
    /// minimizer.  α > β is rejected: Q̃ then decreases to −βμ1/2 < 0 and
    /// positivity is unattainable.
    pub fn positivity_condition(&self) -> Result<bool> {
        if self.alpha > self.beta {
            return Err(Error::InvalidParameter(format!(
                "alpha = {} > beta = {}: Q tends to a negative limit",
                self.alpha, self.beta
            )));
        }
        if self.mu1 == 0.0 {
            return Ok(self.mu2 > 0.0);
        }
        if self.alpha == self.beta {
            return Ok(self.mu2 >= self.beta * self.mu1 / 2.0);
        }
        // alpha < beta: mu2 >= (beta mu1/2) ((beta-1)/(2beta-alpha-1))
        //                      (4 (mu2/mu1^2) (beta-alpha)/(beta-1))^theta
        // with theta = (beta-alpha)/(2beta-alpha-1); equivalent to
        // Qtilde(t0) >= 0 for the minimizer above.
        let theta = (self.beta - self.alpha) / (2.0 * self.beta - self.alpha - 1.0);
        let rhs = (self.beta * self.mu1 / 2.0)
            * ((self.beta - 1.0) / (2.0 * self.beta - self.alpha - 1.0))
            * (4.0 * (self.mu2 / (self.mu1 * self.mu1)) * (self.beta - self.alpha)
                / (self.beta - 1.0))
                .powf(theta);
        Ok(self.mu2 >= rhs)
    }
}
