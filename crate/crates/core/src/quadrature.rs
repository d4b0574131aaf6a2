//! Quadrature helpers shared by the solver diagnostics and the functional
//! tracker.
//!
//! Radial integrals over R^n of a function of |x| reduce to weighted line
//! integrals: ∫ f(|x|) dx = σ_{n-1} ∫_0^∞ f(r) r^{n-1} dr, where σ_{n-1} is
//! the surface measure of the unit sphere.  For n = 1 the weight is the
//! constant 2 so that an even function integrates over the whole line.

use std::f64::consts::PI;

/// Surface measure of the unit sphere S^{n-1} (2, 2π, 4π for n = 1, 2, 3).
pub fn sphere_surface(n: u32) -> f64 {
    match n {
        1 => 2.0,
        2 => 2.0 * PI,
        3 => 4.0 * PI,
        _ => panic!("dimension {n} not supported"),
    }
}

/// Volume of the unit ball in R^n (2, π, 4π/3 for n = 1, 2, 3).
pub fn ball_volume(n: u32) -> f64 {
    match n {
        1 => 2.0,
        2 => PI,
        3 => 4.0 * PI / 3.0,
        _ => panic!("dimension {n} not supported"),
    }
}

/// Trapezoidal rule on uniformly sampled values.
pub fn trapezoid(values: &[f64], dx: f64) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let interior: f64 = values[1..values.len() - 1].iter().sum();
    dx * (0.5 * (values[0] + values[values.len() - 1]) + interior)
}

/// ∫ f(|x|) dx over R^n from samples of f on the uniform grid r_i = i·dr.
pub fn radial_integral(values: &[f64], dr: f64, n: u32) -> f64 {
    let sigma = sphere_surface(n);
    if values.len() < 2 {
        return 0.0;
    }
    let mut acc = 0.0;
    for (i, &v) in values.iter().enumerate() {
        let r = i as f64 * dr;
        let w = if i == 0 || i == values.len() - 1 { 0.5 } else { 1.0 };
        acc += w * v * r.powi(n as i32 - 1);
    }
    sigma * dr * acc
}

/// Cumulative trapezoid of samples y(x) on a (possibly nonuniform) grid; the
/// result has the same length and starts at 0.
pub fn cumulative_trapezoid(xs: &[f64], ys: &[f64]) -> Vec<f64> {
    assert_eq!(xs.len(), ys.len());
    let mut out = Vec::with_capacity(xs.len());
    let mut acc = 0.0;
    out.push(0.0);
    for i in 1..xs.len() {
        acc += 0.5 * (ys[i] + ys[i - 1]) * (xs[i] - xs[i - 1]);
        out.push(acc);
    }
    out
}

/// Composite Simpson rule with `panels` subintervals (rounded up to even).
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    if b <= a {
        return 0.0;
    }
    let m = if panels % 2 == 0 { panels } else { panels + 1 };
    let h = (b - a) / m as f64;
    let mut acc = f(a) + f(b);
    for i in 1..m {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}
