//! Command-line front end.
//!
//! Subcommands: `exponents` (closed-form tables), `solve` (single run),
//! `verify` (inequality suite on a run), `iterate` (iteration frames and
//! predicted lifespan bounds), `sweep` (ε sweep with slope fit).
//!
//! Exit codes: 0 success, 1 configuration error, 2 numerical abort,
//! 3 verification failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use wavespan::config::RunConfig;
use wavespan::error::Error;
use wavespan::exponents::{
    classify_damping, critical_power_scale_invariant, delta_scale_invariant, fujita_exponent,
    gamma, lifespan_exponent, solve_a_of_eps, strauss_exponent, LifespanBound, QProfile,
};
use wavespan::functionals::{
    track, verify_f0_lower_bounds, verify_f1_lower_bound, verify_pointwise_w_bound,
    verify_positivity, verify_q_tilde_nonnegative, verify_w_consistency, ChainConstants,
    InequalityVerdict, Tolerances,
};
use wavespan::iteration::IterationFrame;
use wavespan::output;
use wavespan::solver::{solve, BlowupReport, RadialGrid, SolutionTrace, SolveOptions};
use wavespan::sweep::run_sweep;

#[derive(Parser)]
#[command(
    name = "wavespan",
    about = "Radial solver and verification harness for damped semilinear waves",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Run configuration file (key = value sections).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory for CSV/JSON artifacts.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// Also dump the sampled radial fields as CSV.
    #[arg(long, global = true)]
    dump_fields: bool,
    /// Override the [run] mode of the config.
    #[arg(long, global = true, value_enum)]
    mode: Option<ModeArg>,
    /// Override the blow-up amplitude threshold of the config.
    #[arg(long, global = true)]
    threshold: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Full,
    Linear,
    Free,
}

#[derive(Subcommand)]
enum Command {
    /// Print the critical-exponent tables (parameter-specific with --config).
    Exponents,
    /// Integrate a single run and persist its lifespan report.
    Solve,
    /// Run the inequality suite along a computed solution.
    Verify,
    /// Assemble the iteration frames and predicted lifespan bounds.
    Iterate,
    /// Run an ε sweep and fit the lifespan-scaling slope.
    Sweep,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            let code = match err.downcast_ref::<Error>() {
                Some(Error::BoundaryContamination { .. }) => 2,
                Some(_) => 1,
                None => 1,
            };
            ExitCode::from(code)
        }
    }
}

fn dispatch(cli: &Cli) -> anyhow::Result<ExitCode> {
    std::fs::create_dir_all(&cli.out)?;
    match cli.command {
        Command::Exponents => cmd_exponents(cli),
        Command::Solve => cmd_solve(cli),
        Command::Verify => cmd_verify(cli),
        Command::Iterate => cmd_iterate(cli),
        Command::Sweep => cmd_sweep(cli),
    }
}

fn load_config(cli: &Cli) -> anyhow::Result<RunConfig> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| anyhow::anyhow!("this subcommand needs --config PATH"))?;
    let mut config = RunConfig::from_file(path)?;
    if let Some(mode) = cli.mode {
        config.mode = match mode {
            ModeArg::Full => wavespan::solver::SolveMode::Full,
            ModeArg::Linear => wavespan::solver::SolveMode::Linear,
            ModeArg::Free => wavespan::solver::SolveMode::Free,
        };
    }
    if let Some(threshold) = cli.threshold {
        config.threshold = threshold;
    }
    Ok(config)
}

fn run_once(config: &RunConfig) -> anyhow::Result<(SolutionTrace, BlowupReport)> {
    let mut opts = SolveOptions::new(config.horizon, config.mode)
        .with_threshold(config.threshold);
    opts.sample_interval = config.sample_interval;
    Ok(solve(&config.params, &config.data, &config.grid, &opts)?)
}

fn cmd_exponents(cli: &Cli) -> anyhow::Result<ExitCode> {
    let mut rows: Vec<(String, String)> = Vec::new();
    for n in 1..=10u32 {
        rows.push((format!("p_S({n})"), format!("{}", strauss_exponent(n as f64))));
        rows.push((format!("p_F({n})"), format!("{}", fujita_exponent(n as f64))));
    }
    if let Some(path) = cli.config.as_ref() {
        let config = RunConfig::from_file(path)?;
        let p = &config.params;
        rows.push(("n".into(), format!("{}", p.n)));
        rows.push(("p".into(), format!("{}", p.p)));
        rows.push(("gamma(p,n)".into(), format!("{}", gamma(p.p, p.n as f64))));
        rows.push((
            "damping_class".into(),
            format!("{}", classify_damping(p.beta, p.mu1)),
        ));
        rows.push((
            "delta_scale_invariant".into(),
            format!("{}", delta_scale_invariant(p.mu1, p.mu2)),
        ));
        if let Ok(pc) = critical_power_scale_invariant(p.n, p.mu1, p.mu2) {
            rows.push(("critical_power_scale_invariant".into(), format!("{pc}")));
        }
        for bound in [
            LifespanBound::General,
            LifespanBound::ImprovedDim2,
            LifespanBound::ImprovedDim1,
        ] {
            if let Ok(k) = lifespan_exponent(p.p, p.n, bound) {
                rows.push((format!("lifespan_exponent_{bound}"), format!("{k}")));
            }
        }
        rows.push(("a(eps)".into(), format!("{}", solve_a_of_eps(p.eps))));
        let qp = QProfile::new(p.mu1, p.mu2, p.alpha, p.beta);
        if let Some(t0) = qp.q_tilde_minimizer() {
            rows.push(("q_tilde_minimizer".into(), format!("{t0}")));
        }
        if let Ok(ok) = qp.positivity_condition() {
            rows.push(("q_positivity_condition".into(), format!("{ok}")));
        }
    }
    for (k, v) in &rows {
        println!("{k} = {v}");
    }
    output::write_kv_csv(&cli.out.join("exponents.csv"), &rows)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct SolveSummary<'a> {
    params: &'a wavespan::ProblemParams,
    grid: &'a RadialGrid,
    mode: String,
    threshold: f64,
    report: &'a BlowupReport,
    support_check: Option<bool>,
}

fn cmd_solve(cli: &Cli) -> anyhow::Result<ExitCode> {
    let config = load_config(cli)?;
    let (trace, report) = run_once(&config)?;
    println!(
        "t_num = {:.6}  blew_up = {}  reason = {}  dt = {:.3e}",
        report.t_num, report.blew_up, report.reason, report.dt_at_detection
    );
    let support = (!trace.snapshots.is_empty()).then(|| wavespan::support_check(&trace));
    output::write_json(
        &cli.out.join("solve_summary.json"),
        &SolveSummary {
            params: &config.params,
            grid: &config.grid,
            mode: format!("{}", config.mode),
            threshold: config.threshold,
            report: &report,
            support_check: support,
        },
    )?;
    output::write_steps_csv(&cli.out.join("steps.csv"), &trace)?;
    if cli.dump_fields {
        output::write_fields_csv(&cli.out.join("fields.csv"), &trace)?;
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct VerifySummary<'a> {
    params: &'a wavespan::ProblemParams,
    t_num: f64,
    t_end: f64,
    constants: &'a ChainConstants,
    tolerances: &'a Tolerances,
    verdicts: &'a [InequalityVerdict],
    all_passed: bool,
}

fn verification_window(report: &BlowupReport, horizon: f64) -> f64 {
    if report.blew_up {
        0.9 * report.t_num
    } else {
        0.9 * horizon
    }
}

fn cmd_verify(cli: &Cli) -> anyhow::Result<ExitCode> {
    let config = load_config(cli)?;
    if config.sample_interval.is_none() {
        anyhow::bail!("verify needs [run] sample_interval so the trace can be tracked");
    }
    let (trace, report) = run_once(&config)?;
    let t_end = verification_window(&report, config.horizon);

    // half-resolution rerun for the tolerance band
    let mut half = config.clone();
    half.grid = RadialGrid::new(config.grid.r_max, config.grid.nr / 2, config.grid.cfl);
    let (half_trace, _) = run_once(&half)?;

    let ft = track(&trace);
    let ft_half = track(&half_trace);
    let tol = Tolerances::from_refinement(&ft, &ft_half).with_field_band(&trace, &half_trace);
    let consts = ChainConstants::compute(&config.params, &config.data)?;

    let mut verdicts: Vec<InequalityVerdict> = Vec::new();
    verdicts.extend(verify_positivity(&ft, t_end));
    verdicts.extend(verify_f0_lower_bounds(
        &ft,
        &config.params,
        &consts,
        t_end,
        &tol,
    )?);
    verdicts.push(verify_f1_lower_bound(
        &ft,
        &config.params,
        &consts,
        &config.data,
        t_end,
        &tol,
    ));
    verdicts.push(verify_w_consistency(&ft, &config.params));
    let p = &config.params;
    if p.n == 2 && p.p == 2.0 && p.alpha <= p.beta {
        let qp = QProfile::new(p.mu1, p.mu2, p.alpha, p.beta);
        if qp.positivity_condition().unwrap_or(false) {
            verdicts.push(verify_q_tilde_nonnegative(p));
            verdicts.extend(verify_pointwise_w_bound(&trace, &consts, t_end, &tol)?);
        }
    }

    let all_passed = verdicts.iter().all(|v| v.passed);
    for v in &verdicts {
        println!(
            "{:<24} margin {:+.3e}  tol {:.3e}  {}{}",
            v.name,
            v.margin,
            v.tol,
            if v.passed { "pass" } else { "FAIL" },
            if v.vacuous { " (vacuous)" } else { "" }
        );
    }

    // cone-integral table of the run's (n, p, R)
    let yz_rows: Vec<(f64, f64, f64)> = (0..=100)
        .map(|k| {
            let t = k as f64;
            let b = wavespan::yz_bound_check(t, p.p, p.n, p.support_radius);
            (t, b.lhs, b.ratio)
        })
        .collect();
    output::write_yz_csv(&cli.out.join("yz_table.csv"), &yz_rows)?;
    output::write_verdicts_csv(&cli.out.join("verdicts.csv"), &verdicts)?;
    output::write_json(
        &cli.out.join("verify_summary.json"),
        &VerifySummary {
            params: &config.params,
            t_num: report.t_num,
            t_end,
            constants: &consts,
            tolerances: &tol,
            verdicts: &verdicts,
            all_passed,
        },
    )?;
    if cli.dump_fields {
        output::write_fields_csv(&cli.out.join("fields.csv"), &trace)?;
    }
    if all_passed {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("verification failed");
        Ok(ExitCode::from(3))
    }
}

#[derive(Serialize)]
struct IterateSummary<'a> {
    params: &'a wavespan::ProblemParams,
    constants: &'a ChainConstants,
    standard: Option<FrameSummary>,
    improved: Option<FrameSummary>,
}

#[derive(Serialize)]
struct FrameSummary {
    frame: IterationFrame,
    predicted_t_bound: Option<f64>,
    prediction_note: String,
}

fn frame_summary(frame: IterationFrame, eps: f64) -> FrameSummary {
    match frame.predicted_lifespan(eps) {
        Ok(pred) => FrameSummary {
            frame,
            predicted_t_bound: Some(pred.t_bound),
            prediction_note: format!("T <= {:.6e} for eps = {eps}", pred.t_bound),
        },
        Err(e) => FrameSummary {
            frame,
            predicted_t_bound: None,
            prediction_note: format!("{e}"),
        },
    }
}

fn cmd_iterate(cli: &Cli) -> anyhow::Result<ExitCode> {
    let config = load_config(cli)?;
    let consts = ChainConstants::compute(&config.params, &config.data)?;
    let standard = IterationFrame::standard(&config.params, &consts)?;
    let improved = IterationFrame::improved(&config.params, &consts).ok();

    let mut rows = Vec::new();
    for (label, frame) in std::iter::once(("standard", &standard))
        .chain(improved.iter().map(|f| ("improved", f)))
    {
        for j in 1..=20 {
            let term = frame.sequence_term(j);
            rows.push((label.to_string(), j, term.a, term.b, term.ln_d_lower));
        }
    }
    output::write_iteration_csv(&cli.out.join("iteration.csv"), &rows)?;

    let summary = IterateSummary {
        params: &config.params,
        constants: &consts,
        standard: Some(frame_summary(standard, config.params.eps)),
        improved: improved.map(|f| frame_summary(f, config.params.eps)),
    };
    if let Some(s) = &summary.standard {
        println!(
            "standard frame: exponent {:.6}, eps0 {:.4e}, {}",
            s.frame.exponent, s.frame.eps0, s.prediction_note
        );
    }
    if let Some(s) = &summary.improved {
        println!(
            "improved frame: exponent {:.6}, eps0 {:.4e}, {}",
            s.frame.exponent, s.frame.eps0, s.prediction_note
        );
    }
    output::write_json(&cli.out.join("iterate_summary.json"), &summary)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct SweepSummary<'a> {
    params: &'a wavespan::ProblemParams,
    grid: &'a RadialGrid,
    threshold: f64,
    result: &'a wavespan::SweepResult,
}

fn cmd_sweep(cli: &Cli) -> anyhow::Result<ExitCode> {
    let config = load_config(cli)?;
    let result = run_sweep(&config)?;
    for e in &result.entries {
        println!(
            "eps = {:<12.6} t_num = {:<10.4} {} ({})",
            e.eps, e.t_num, if e.blew_up { "blow-up" } else { "survived" }, e.reason
        );
    }
    if let Some(fit) = &result.fit {
        println!(
            "fitted slope = {:.4} (residual {:.3e}, {} points)",
            fit.slope, fit.residual_norm, fit.points
        );
    }
    if let Some(th) = &result.theoretical {
        println!("theoretical slope = {:.4} ({})", th.slope, th.bound);
    }
    output::write_sweep_csv(
        &cli.out.join("sweep.csv"),
        &result,
        config.grid.dr(),
        config.threshold,
    )?;
    output::write_json(
        &cli.out.join("sweep_summary.json"),
        &SweepSummary {
            params: &config.params,
            grid: &config.grid,
            threshold: config.threshold,
            result: &result,
        },
    )?;
    Ok(ExitCode::SUCCESS)
}
