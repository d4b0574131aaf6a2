//! ε-sweep orchestration and lifespan-scaling fits.
//!
//! One solver run per amplitude, identical grid policy across the sweep,
//! ordinary least squares on (log ε, log T_num) over the blown-up entries,
//! and a comparison row against the applicable theoretical exponent.

use serde::Serialize;

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::exponents::{lifespan_exponent, solve_a_of_eps, strauss_exponent, LifespanBound, QProfile};
use crate::params::ProblemParams;
use crate::solver::{solve, BlowupReport, DetectionReason};

/// Outcome of a single run within the sweep.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SweepEntry {
    pub eps: f64,
    pub t_num: f64,
    pub blew_up: bool,
    pub reason: DetectionReason,
    pub dt_at_detection: f64,
}

/// Ordinary least-squares fit of log T against log ε.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    /// ℓ² norm of the log-space residuals.
    pub residual_norm: f64,
    pub points: usize,
}

/// Which theoretical exponent the sweep is compared against.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TheoreticalExponent {
    pub bound: LifespanBound,
    /// Slope of log T vs log ε implied by T ≤ C ε^{−k}, i.e. −k.
    pub slope: f64,
}

/// Full sweep result.
#[derive(Debug, Clone, Serialize)]
pub struct SweepResult {
    /// Sorted by ε descending.
    pub entries: Vec<SweepEntry>,
    /// Present when ≥ 3 blown-up entries span at least a decade.
    pub fit: Option<SlopeFit>,
    pub theoretical: Option<TheoreticalExponent>,
    /// (ε, a(ε)) pairs for comparing against the implicit amplitude scale;
    /// emitted when the n = p = 2 positivity condition holds.
    pub a_curve: Option<Vec<(f64, f64)>>,
}

/// OLS slope of log T vs log ε.  Requires at least three blown-up entries
/// spanning at least one decade of ε.
pub fn fit_slope(entries: &[(f64, f64)]) -> Result<SlopeFit> {
    if entries.len() < 3 {
        return Err(Error::InsufficientFitData {
            needed: ">= 3 blown-up entries".into(),
            got: format!("{}", entries.len()),
        });
    }
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for &(eps, _) in entries {
        lo = lo.min(eps);
        hi = hi.max(eps);
    }
    if hi / lo < 10.0 {
        return Err(Error::InsufficientFitData {
            needed: ">= 1 decade of eps".into(),
            got: format!("{:.3} decades", (hi / lo).log10()),
        });
    }
    let xs: Vec<f64> = entries.iter().map(|&(e, _)| e.ln()).collect();
    let ys: Vec<f64> = entries.iter().map(|&(_, t)| t.ln()).collect();
    let m = xs.len() as f64;
    let xbar = xs.iter().sum::<f64>() / m;
    let ybar = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - xbar) * (x - xbar)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - xbar) * (y - ybar)).sum();
    let slope = sxy / sxx;
    let intercept = ybar - slope * xbar;
    let residual_norm = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let r = y - (intercept + slope * x);
            r * r
        })
        .sum::<f64>()
        .sqrt();
    Ok(SlopeFit {
        slope,
        intercept,
        residual_norm,
        points: entries.len(),
    })
}

/// Pick the sharpest applicable lifespan bound for the configuration.
fn theoretical_for(config: &RunConfig) -> Option<TheoreticalExponent> {
    let p = &config.params;
    let g_present = !config.data.g.is_zero();
    let candidates: &[LifespanBound] = if g_present {
        &[
            LifespanBound::ImprovedDim1,
            LifespanBound::ImprovedDim2,
            LifespanBound::General,
        ]
    } else {
        &[LifespanBound::General]
    };
    for &bound in candidates {
        if let Ok(k) = lifespan_exponent(p.p, p.n, bound) {
            return Some(TheoreticalExponent { bound, slope: -k });
        }
    }
    None
}

/// Run the sweep: one deterministic solve per ε (optionally each on its own
/// thread), entries merged in descending-ε order.  A run that aborts on
/// boundary contamination fails the whole sweep, naming the ε.
pub fn run_sweep(config: &RunConfig) -> Result<SweepResult> {
    let spec = config.sweep.as_ref().ok_or_else(|| {
        Error::InvalidParameter("config has no [sweep] section".into())
    })?;
    let mut eps_values = spec.eps_values.clone();
    eps_values.sort_by(|a, b| b.partial_cmp(a).unwrap());
    eps_values.dedup();

    let one = |eps: f64| -> Result<SweepEntry> {
        let params = ProblemParams {
            eps,
            ..config.params
        };
        let mut opts = crate::solver::SolveOptions::new(config.horizon, config.mode)
            .with_threshold(config.threshold);
        opts.sample_interval = None;
        let (_, report): (_, BlowupReport) =
            solve(&params, &config.data, &config.grid, &opts).map_err(|e| match e {
                Error::BoundaryContamination { t } => Error::InvalidParameter(format!(
                    "sweep aborted: eps = {eps} hit the boundary at t = {t:.4}"
                )),
                other => other,
            })?;
        Ok(SweepEntry {
            eps,
            t_num: report.t_num,
            blew_up: report.blew_up,
            reason: report.reason,
            dt_at_detection: report.dt_at_detection,
        })
    };

    let entries: Vec<SweepEntry> = if spec.parallel {
        std::thread::scope(|scope| {
            let handles: Vec<_> = eps_values
                .iter()
                .map(|&eps| scope.spawn(move || one(eps)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("sweep worker panicked"))
                .collect::<Result<Vec<_>>>()
        })?
    } else {
        eps_values.iter().map(|&eps| one(eps)).collect::<Result<Vec<_>>>()?
    };

    let blown: Vec<(f64, f64)> = entries
        .iter()
        .filter(|e| e.blew_up)
        .map(|e| (e.eps, e.t_num))
        .collect();
    let fit = fit_slope(&blown).ok();

    let a_curve = {
        let p = &config.params;
        let applicable = p.n == 2
            && p.p == 2.0
            && QProfile::new(p.mu1, p.mu2, p.alpha, p.beta)
                .positivity_condition()
                .unwrap_or(false);
        applicable.then(|| {
            entries
                .iter()
                .map(|e| (e.eps, solve_a_of_eps(e.eps)))
                .collect()
        })
    };

    Ok(SweepResult {
        entries,
        fit,
        theoretical: theoretical_for(config),
        a_curve,
    })
}

/// Convenience: does the configured power sit below the wave-like critical
/// exponent at all?
pub fn subcritical(params: &ProblemParams) -> bool {
    params.p < strauss_exponent(params.n as f64)
}
