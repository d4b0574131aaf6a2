//! The iteration frames that turn the functional lower bounds into
//! explicit lifespan predictions.
//!
//! The self-improving estimate F₀ ≥ C₃∬(1+r)^{−n(p−1)}F₀^p propagates the
//! ansatz
//!
//! ```text
//! F₀(t) ≥ D_j (1+t)^{−a_j} (t−1)^{b_j},      a_{j+1} = p a_j + n(p−1),
//!                                            b_{j+1} = p b_j + 2,
//!                                            D_{j+1} = C₃ D_j^p/(p b_j + 2)²,
//! ```
//!
//! whose exponents grow geometrically while log D_j stays above
//! p^{j−1}(log D₁ − S_p(∞)).  The divergence of the resulting gap function
//! J(t) past the threshold time forces blow-up, which is the lifespan bound
//! T ≤ C₇ ε^{−2p(p−1)/γ(p,n)} for ε ≤ ε₀.
//!
//! The improved variant seeds the same recurrences from the linear-growth
//! route F₀ ≥ C₈εt (available when ∫g > 0); its gap function J̃ sharpens
//! the exponent to (p−1)/(3−p) in n = 2 and (p−1)/2 in n = 1.
//!
//! Constants are assembled in log space: near p = 1 the exponent 2/(p−1)
//! makes the plain products overflow long before the bounds lose meaning.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exponents::{gamma, strauss_exponent};
use crate::functionals::ChainConstants;
use crate::params::ProblemParams;

/// Which seed feeds the recurrences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum IterationVariant {
    /// Seeded by the weighted test-function bound; valid for any
    /// nonnegative, not identically zero data.
    Standard,
    /// Seeded by the linear-growth bound; needs ∫g > 0 and n ∈ {1, 2}
    /// (with p < 2 when n = 2).
    Improved,
}

/// Closed-form term of the exponent sequences together with the
/// propagated lower bound on log D_j.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SequenceTerm {
    pub j: u32,
    pub a: f64,
    pub b: f64,
    /// p^{j−1} (log D₁ − S_p(j)).
    pub ln_d_lower: f64,
}

/// Predicted lifespan bound with its smallness threshold.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LifespanPrediction {
    pub t_bound: f64,
    pub eps0: f64,
    /// Exponent k of T ≤ C ε^{−k}.
    pub exponent: f64,
}

/// One fully assembled iteration frame.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct IterationFrame {
    pub variant: IterationVariant,
    pub p: f64,
    pub n: u32,
    pub eps: f64,
    /// γ(p, n).
    pub gamma: f64,
    /// Seed exponents a₁, b₁.
    pub a1: f64,
    pub b1: f64,
    /// log of the seed constant D₁ (depends on ε).
    pub ln_d1: f64,
    /// C₃ = C₂ m(0), the recurrence constant.
    pub c3: f64,
    /// log C₅ = log(C₃/(n+1+2/(p−1))²) (standard) or log C₁₁ (improved).
    pub ln_c_geo: f64,
    /// S_p(∞) of the geometric recurrence.
    pub sp_infty: f64,
    /// The additive constant of the gap-function estimate (C₆ standard,
    /// C₁₂ improved).
    pub gap_const: f64,
    /// log C₇ of the lifespan bound.
    pub ln_c7: f64,
    /// Smallness threshold ε₀.
    pub eps0: f64,
    /// Exponent of ε⁻¹ in the bound.
    pub exponent: f64,
}

impl IterationFrame {
    /// Frame seeded by the weighted test-function bound:
    /// D₁ = C₄ε^p/(n(n+1)), a₁ = (n−1)p/2, b₁ = n+1.
    pub fn standard(params: &ProblemParams, consts: &ChainConstants) -> Result<Self> {
        params.validate_scattering()?;
        let p = params.p;
        let n = params.n as f64;
        let gam = gamma(p, n);
        if !(p < strauss_exponent(n)) {
            return Err(Error::InvalidParameter(format!(
                "iteration frame needs p < p_S({n}) = {}",
                strauss_exponent(n)
            )));
        }
        let a1 = (n - 1.0) * p / 2.0;
        let b1 = n + 1.0;
        let ln_d1 = consts.c4.ln() + p * params.eps.ln() - (n * (n + 1.0)).ln();
        let ln_c_geo = consts.c3.ln() - 2.0 * (n + 1.0 + 2.0 / (p - 1.0)).ln();
        let sp_infty = sp_limit_ln(p, ln_c_geo);
        let gap_const =
            ((n - 1.0) * p / 2.0 + 2.0 * n + 1.0 + 2.0 / (p - 1.0)) * 2f64.ln() + sp_infty;
        // C₇ = (n(n+1) e^{C₆+1}/C₄)^{2(p−1)/γ}
        let ln_c7 = 2.0 * (p - 1.0) / gam
            * ((n * (n + 1.0)).ln() + gap_const + 1.0 - consts.c4.ln());
        // bound meaningful only past t = 2, so ε₀ = (C₇/2)^{γ/(2p(p−1))}
        let eps0 = ((ln_c7 - 2f64.ln()) * gam / (2.0 * p * (p - 1.0))).exp();
        Ok(Self {
            variant: IterationVariant::Standard,
            p,
            n: params.n,
            eps: params.eps,
            gamma: gam,
            a1,
            b1,
            ln_d1,
            c3: consts.c3,
            ln_c_geo,
            sp_infty,
            gap_const,
            ln_c7,
            eps0,
            exponent: 2.0 * p * (p - 1.0) / gam,
        })
    }

    /// Frame seeded by the linear-growth bound: D̃₁ = C₁₀ε^p,
    /// ã₁ = n(p−1), b̃₁ = p+2.  Requires ∫g > 0 and the low-dimensional
    /// range n = 1, p > 1 or n = 2, 1 < p < 2.
    pub fn improved(params: &ProblemParams, consts: &ChainConstants) -> Result<Self> {
        params.validate_scattering()?;
        let p = params.p;
        let n = params.n as f64;
        if consts.g_integral <= 0.0 {
            return Err(Error::InvalidParameter(
                "improved frame needs data with ∫g > 0".into(),
            ));
        }
        let in_range = (params.n == 1 && p > 1.0) || (params.n == 2 && p > 1.0 && p < 2.0);
        if !in_range {
            return Err(Error::InvalidParameter(format!(
                "improved frame needs n = 1, p > 1 or n = 2, 1 < p < 2; got n = {}, p = {p}",
                params.n
            )));
        }
        let gam = gamma(p, n);
        let a1 = n * (p - 1.0);
        let b1 = p + 2.0;
        let ln_d1 = consts.c10.ln() + p * params.eps.ln();
        // C₁₁ = C₃ (p−1)²/[p(p+1)]²
        let ln_c_geo = consts.c3.ln() + 2.0 * (p - 1.0).ln() - 2.0 * (p * (p + 1.0)).ln();
        let sp_infty = sp_limit_ln(p, ln_c_geo);
        let gap_const = sp_infty + n * p * 2f64.ln();
        // T̃ ≤ (e^{C₁₂+1}/C₁₀)^{(p−1)/(γ−2)} ε^{−p(p−1)/(γ−2)}
        let gm2 = gam - 2.0;
        let ln_c7 = (p - 1.0) / gm2 * (gap_const + 1.0 - consts.c10.ln());
        // the gap estimate holds from t = 1, so ε₀ makes the bound ≥ 1
        let eps0 = (ln_c7 * gm2 / (p * (p - 1.0))).exp();
        Ok(Self {
            variant: IterationVariant::Improved,
            p,
            n: params.n,
            eps: params.eps,
            gamma: gam,
            a1,
            b1,
            ln_d1,
            c3: consts.c3,
            ln_c_geo,
            sp_infty,
            gap_const,
            ln_c7,
            eps0,
            exponent: p * (p - 1.0) / gm2,
        })
    }

    /// Closed-form a_j, b_j and the propagated lower bound on log D_j.
    pub fn sequence_term(&self, j: u32) -> SequenceTerm {
        assert!(j >= 1);
        let p = self.p;
        let n = self.n as f64;
        let pj = p.powi(j as i32 - 1);
        let (a, b) = match self.variant {
            IterationVariant::Standard => (
                pj * ((n - 1.0) * p / 2.0 + n) - n,
                pj * (n + 1.0 + 2.0 / (p - 1.0)) - 2.0 / (p - 1.0),
            ),
            IterationVariant::Improved => (
                n * p.powi(j as i32) - n,
                (p + 1.0) / (p - 1.0) * p.powi(j as i32) - 2.0 / (p - 1.0),
            ),
        };
        SequenceTerm {
            j,
            a,
            b,
            ln_d_lower: pj * (self.ln_d1 - self.sp_partial(j)),
        }
    }

    /// Recurrence values a_{j+1} = p a_j + n(p−1), b_{j+1} = p b_j + 2
    /// propagated numerically from the seed; the cross-check for the closed
    /// forms.
    pub fn sequence_by_recurrence(&self, j: u32) -> (f64, f64) {
        let n = self.n as f64;
        let mut a = self.a1;
        let mut b = self.b1;
        for _ in 1..j {
            a = self.p * a + n * (self.p - 1.0);
            b = self.p * b + 2.0;
        }
        (a, b)
    }

    /// log D_j propagated with equality through the sharp recurrence
    /// D_{j+1} = C₃ D_j^p/(p b_j + 2)².
    pub fn ln_d_by_sharp_recurrence(&self, j: u32) -> f64 {
        let mut ln_d = self.ln_d1;
        let mut b = self.b1;
        for _ in 1..j {
            ln_d = self.c3.ln() + self.p * ln_d - 2.0 * (self.p * b + 2.0).ln();
            b = self.p * b + 2.0;
        }
        ln_d
    }

    /// log D_j propagated with equality through the geometric recurrence
    /// D_{j+1} = C₅ D_j^p/p^{2j}.
    pub fn ln_d_by_geometric_recurrence(&self, j: u32) -> f64 {
        let mut ln_d = self.ln_d1;
        for k in 1..j {
            ln_d = self.ln_c_geo + self.p * ln_d - 2.0 * k as f64 * self.p.ln();
        }
        ln_d
    }

    /// Partial sum S_p(j) = Σ_{k=1}^{j−1} (2k log p − log C)/p^k.
    pub fn sp_partial(&self, j: u32) -> f64 {
        let mut s = 0.0;
        for k in 1..j {
            s += (2.0 * k as f64 * self.p.ln() - self.ln_c_geo) / self.p.powi(k as i32);
        }
        s
    }

    /// The gap function driving divergence.
    ///
    /// Standard: J(t) = −((n−1)p/2+n) log(1+t) + (n+1+2/(p−1)) log(t−1)
    ///                  + log D₁ − S_p(∞), for t > 1.
    pub fn j_of_t(&self, t: f64) -> Result<f64> {
        if self.variant != IterationVariant::Standard {
            return Err(Error::InvalidParameter(
                "j_of_t belongs to the standard frame; use j_tilde_of_t".into(),
            ));
        }
        if !(t > 1.0) {
            return Err(Error::OutOfDomain { t, min: 1.0 });
        }
        let n = self.n as f64;
        let p = self.p;
        Ok(-((n - 1.0) * p / 2.0 + n) * (1.0 + t).ln()
            + (n + 1.0 + 2.0 / (p - 1.0)) * (t - 1.0).ln()
            + self.ln_d1
            - self.sp_infty)
    }

    /// Improved: J̃(t) = −np log(1+t) + p(p+1)/(p−1) log t + log D̃₁ − S̃_p(∞),
    /// for t > 0.
    pub fn j_tilde_of_t(&self, t: f64) -> Result<f64> {
        if self.variant != IterationVariant::Improved {
            return Err(Error::InvalidParameter(
                "j_tilde_of_t belongs to the improved frame; use j_of_t".into(),
            ));
        }
        if !(t > 0.0) {
            return Err(Error::OutOfDomain { t, min: 0.0 });
        }
        let n = self.n as f64;
        let p = self.p;
        Ok(-n * p * (1.0 + t).ln() + p * (p + 1.0) / (p - 1.0) * t.ln() + self.ln_d1
            - self.sp_infty)
    }

    /// The lifespan bound T ≤ C₇ ε^{−k} at the given amplitude; refuses
    /// amplitudes above the smallness threshold ε₀.
    pub fn predicted_lifespan(&self, eps: f64) -> Result<LifespanPrediction> {
        if !(eps > 0.0) {
            return Err(Error::InvalidParameter(format!("eps = {eps} must be > 0")));
        }
        if eps > self.eps0 {
            return Err(Error::EpsAboveThreshold {
                eps,
                eps0: self.eps0,
            });
        }
        Ok(LifespanPrediction {
            t_bound: (self.ln_c7 - self.exponent * eps.ln()).exp(),
            eps0: self.eps0,
            exponent: self.exponent,
        })
    }
}

/// Closed-form limit S_p(∞) = lim_j Σ_{k=1}^{j−1}(2k log p − log C)/p^k
///                          = 2p log p/(p−1)² − log C/(p−1).
///
/// (Geometric series: Σ k/p^k = p/(p−1)², Σ 1/p^k = 1/(p−1).)
pub fn sp_limit(p: f64, c: f64) -> f64 {
    assert!(p > 1.0 && c > 0.0);
    sp_limit_ln(p, c.ln())
}

fn sp_limit_ln(p: f64, ln_c: f64) -> f64 {
    2.0 * p * p.ln() / ((p - 1.0) * (p - 1.0)) - ln_c / (p - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functionals::ChainConstants;
    use crate::solver::{InitialData, RadialProfile};

    fn frame_pair(n: u32, p: f64, eps: f64) -> (IterationFrame, Option<IterationFrame>) {
        let params = ProblemParams {
            n,
            p,
            mu1: 1.0,
            mu2: 1.0,
            alpha: 2.0,
            beta: 2.0,
            support_radius: 1.0,
            eps,
        };
        let data = InitialData {
            f: RadialProfile::Zero,
            g: RadialProfile::SmoothBump {
                amplitude: 1.0,
                radius: 1.0,
            },
        };
        let consts = ChainConstants::compute(&params, &data).unwrap();
        let std = IterationFrame::standard(&params, &consts).unwrap();
        let imp = IterationFrame::improved(&params, &consts).ok();
        (std, imp)
    }

    #[test]
    fn seed_terms_match_closed_forms() {
        let (std, imp) = frame_pair(2, 1.8, 0.3);
        let t1 = std.sequence_term(1);
        assert!((t1.a - (2.0 - 1.0) * 1.8 / 2.0).abs() < 1e-14);
        assert!((t1.b - 3.0).abs() < 1e-14);
        let imp = imp.unwrap();
        let t1 = imp.sequence_term(1);
        assert!((t1.a - 2.0 * 0.8).abs() < 1e-14);
        assert!((t1.b - 3.8).abs() < 1e-14);
    }

    #[test]
    fn closed_forms_satisfy_recurrences() {
        for &(n, p) in &[(1u32, 2.0), (1, 3.0), (2, 1.7), (3, 2.2)] {
            let (std, imp) = frame_pair(n, p, 0.4);
            for frame in std::iter::once(&std).chain(imp.iter()) {
                for j in 1..=50 {
                    let cf = frame.sequence_term(j);
                    let (ar, br) = frame.sequence_by_recurrence(j);
                    let sa = cf.a.abs().max(ar.abs()).max(1.0);
                    let sb = cf.b.abs().max(br.abs()).max(1.0);
                    assert!((cf.a - ar).abs() / sa < 1e-12, "a mismatch at j={j}");
                    assert!((cf.b - br).abs() / sb < 1e-12, "b mismatch at j={j}");
                    // exact recurrence step on the closed form
                    let next = frame.sequence_term(j + 1);
                    assert!(
                        (next.a - (p * cf.a + n as f64 * (p - 1.0))).abs() / sa.max(next.a.abs())
                            < 1e-12
                    );
                    assert!((next.b - (p * cf.b + 2.0)).abs() / sb.max(next.b.abs()) < 1e-12);
                    assert!(cf.b > 0.0);
                    assert!(j == 1 || cf.a > 0.0 || frame.a1 == 0.0);
                }
            }
        }
    }

    #[test]
    fn sp_limit_matches_partial_sums() {
        // C = 1 kills the C-term: S_p(∞) = 2p log p/(p−1)²; at p = 2 that
        // is 4 log 2
        assert!((sp_limit(2.0, 1.0) - 4.0 * 2f64.ln()).abs() < 1e-14);
        for &p in &[1.5f64, 2.0, 3.0] {
            for &c in &[1e-3, 0.3, 1.0, 7.0, 1e3] {
                let limit = sp_limit(p, c);
                let mut partial = 0.0;
                for k in 1..200 {
                    partial += (2.0 * k as f64 * p.ln() - c.ln()) / p.powi(k);
                }
                assert!(
                    (partial - limit).abs() < 1e-10,
                    "p={p} c={c}: partial {partial} vs {limit}"
                );
            }
        }
        // C-dependence is the plain geometric series: S(∞;C) − S(∞;1) =
        // −log C/(p−1)
        for &p in &[1.5f64, 2.0, 4.0] {
            let c = 5.0f64;
            let diff = sp_limit(p, c) - sp_limit(p, 1.0);
            assert!((diff + c.ln() / (p - 1.0)).abs() < 1e-13);
        }
    }

    #[test]
    fn log_d_bound_holds_along_recurrences() {
        let (std, imp) = frame_pair(1, 2.0, 0.5);
        for frame in std::iter::once(&std).chain(imp.iter()) {
            let floor = |j: u32| frame.p.powi(j as i32 - 1) * (frame.ln_d1 - frame.sp_infty);
            for j in 1..=60 {
                let geo = frame.ln_d_by_geometric_recurrence(j);
                let sharp = frame.ln_d_by_sharp_recurrence(j);
                // the sharp recurrence dominates the geometric one, which
                // dominates the closed lower bound
                assert!(
                    sharp >= geo - 1e-9 * geo.abs().max(1.0),
                    "j={j}: sharp {sharp} < geometric {geo}"
                );
                assert!(
                    geo >= floor(j) - 1e-9 * floor(j).abs().max(1.0),
                    "j={j}: geometric {geo} < floor {}",
                    floor(j)
                );
                // and the exact identity geo = p^{j-1}(ln D1 - S_p(j))
                let cf = frame.sequence_term(j);
                assert!(
                    (geo - cf.ln_d_lower).abs() / geo.abs().max(1.0) < 1e-12,
                    "j={j}"
                );
            }
        }
    }

    #[test]
    fn j_function_domains_and_monotonicity() {
        let (std, imp) = frame_pair(2, 1.8, 0.3);
        assert!(std.j_of_t(1.0).is_err());
        assert!(std.j_of_t(1.0 + 1e-12).unwrap() < -20.0); // log(t−1) divergence
        let imp = imp.unwrap();
        assert!(imp.j_tilde_of_t(0.0).is_err());
        assert!(std.j_tilde_of_t(2.0).is_err());
        assert!(imp.j_of_t(2.0).is_err());
        // J increasing on [2, 1e6] when gamma > 0
        let mut prev = std.j_of_t(2.0).unwrap();
        for k in 1..=60 {
            let t = 2.0 * 10f64.powf(k as f64 / 10.0);
            let j = std.j_of_t(t).unwrap();
            assert!(j > prev, "J not increasing at t={t}");
            prev = j;
        }
    }

    #[test]
    fn gap_estimate_lower_bounds_j() {
        // J(t) ≥ log(t^{γ/(2(p−1))} D₁) − C₆ for t ≥ 2
        let (std, _) = frame_pair(2, 1.8, 0.25);
        for k in 0..=50 {
            let t = 2.0 + 2.0 * k as f64;
            let j = std.j_of_t(t).unwrap();
            let floor = std.gamma / (2.0 * (std.p - 1.0)) * t.ln() + std.ln_d1 - std.gap_const;
            assert!(
                j >= floor - 1e-12 * j.abs().max(1.0),
                "t={t}: J {j} below floor {floor}"
            );
        }
    }

    #[test]
    fn gamma_minus_two_identity() {
        // γ(p,2) − 2 = p(3−p) and γ(p,1) − 2 = 2p
        for k in 0..20 {
            let p = 1.05 + 0.14 * k as f64;
            assert!((gamma(p, 2.0) - 2.0 - p * (3.0 - p)).abs() < 1e-12);
            assert!((gamma(p, 1.0) - 2.0 - 2.0 * p).abs() < 1e-12);
        }
    }

    #[test]
    fn predicted_lifespan_scaling_and_divergence() {
        let (std, imp) = frame_pair(2, 2.0, 0.3);
        // the improved route is stated only for p < 2 at n = 2
        assert!(imp.is_none());
        // exponent at n = p = 2 is 1 (the ε⁻¹ law)
        assert!((std.exponent - 1.0).abs() < 1e-14);
        // power-law scaling is exact
        let eps = (0.01f64).min(std.eps0);
        let t1 = std.predicted_lifespan(eps).unwrap().t_bound;
        let t2 = std.predicted_lifespan(eps / 2.0).unwrap().t_bound;
        let expected = 2f64.powf(2.0 * std.p * (std.p - 1.0) / std.gamma);
        assert!((t2 / t1 - expected).abs() < 1e-10);
        // past the bound the gap function exceeds 1
        let t = 1.01 * t1;
        assert!(std.j_of_t(t).unwrap() > 1.0);
        // improved variant at n=1: exponent (p−1)/2
        let (_, imp1) = frame_pair(1, 2.0, 0.3);
        let imp1 = imp1.unwrap();
        assert!((imp1.exponent - 0.5).abs() < 1e-14);
        // eps above the threshold is refused
        let err = std.predicted_lifespan(std.eps0 * 1.5);
        assert!(matches!(err, Err(Error::EpsAboveThreshold { .. })));
    }

    #[test]
    fn improved_frame_rejects_out_of_range() {
        let (_, imp) = frame_pair(2, 2.5, 0.3);
        assert!(imp.is_none());
        let (_, imp) = frame_pair(3, 2.0, 0.3);
        assert!(imp.is_none());
    }
}
