//! Simulation and verification harness for semilinear wave equations with
//! scattering damping and a negative mass term,
//!
//! ```text
//! u_tt − Δu + μ1/(1+t)^β u_t − μ2/(1+t)^{α+1} u = |u|^p,
//! u(x,0) = ε f(x),   u_t(x,0) = ε g(x),
//! ```
//!
//! with β, α > 1 and radially symmetric data in n = 1, 2, 3.
//!
//! The crate has three layers:
//!
//! * closed-form algebra of critical exponents, lifespan exponents and the
//!   positivity profile of the transformed problem ([`exponents`],
//!   [`special`]);
//! * a radial finite-difference solver with blow-up detection and exact
//!   free-wave oracles ([`solver`]);
//! * diagnostics that track the averaged functionals of a computed run,
//!   verify the chain of lower bounds along it, assemble the iteration
//!   frames with concrete constants, and fit lifespan-scaling exponents
//!   from ε-sweeps ([`functionals`], [`iteration`], [`sweep`]).

pub mod config;
pub mod error;
pub mod exponents;
pub mod functionals;
pub mod iteration;
pub mod output;
pub mod params;
pub mod quadrature;
pub mod solver;
pub mod special;
pub mod sweep;

pub use config::RunConfig;
pub use error::{Error, Result};
pub use exponents::{
    classify_damping, critical_power_scale_invariant, delta_scale_invariant, fujita_exponent,
    gamma, lifespan_exponent, mass_transform_coefficient, solve_a_of_eps, strauss_exponent,
    DampingClass, LifespanBound, QProfile,
};
pub use functionals::{track, ChainConstants, FunctionalTrace, InequalityVerdict};
pub use iteration::{sp_limit, IterationFrame, IterationVariant};
pub use params::ProblemParams;
pub use solver::{
    solve, support_check, BlowupReport, DetectionReason, InitialData, RadialGrid, RadialProfile,
    SolutionTrace, SolveMode, SolveOptions,
};
pub use special::{phi1, psi1, yz_bound_check, yz_empirical_constant, Multiplier};
pub use sweep::{fit_slope, run_sweep, SweepResult};
