//! Exact free-wave solutions for solver validation.
//!
//! n = 1 uses d'Alembert on the even extension of the radial data,
//!
//! ```text
//! u(x,t) = ½[f(x−t) + f(x+t)] + ½ ∫_{x−t}^{x+t} g(s) ds,
//! ```
//!
//! n = 3 uses the spherical-means solution; for radial data the mean over
//! the sphere of radius t centered at radius r collapses to a line
//! integral, giving
//!
//! ```text
//! u(r,t) = [(r+t) f(r+t) + (r−t) f(|r−t|)] / (2r) + (1/(2r)) ∫_{|r−t|}^{r+t} s g(s) ds.
//! ```

use super::InitialData;
use crate::quadrature::simpson;

/// Exact solution of u_tt = Δu with radial data (f, g) scaled by eps,
/// evaluated at radius x ≥ 0 and time t ≥ 0.  Supported for n ∈ {1, 3}.
pub fn free_wave(data: &InitialData, eps: f64, x: f64, t: f64, n: u32) -> f64 {
    match n {
        1 => dalembert(data, eps, x, t),
        3 => spherical_means(data, eps, x, t),
        _ => panic!("free-wave oracle supports n = 1 and n = 3, got {n}"),
    }
}

fn dalembert(data: &InitialData, eps: f64, x: f64, t: f64) -> f64 {
    let f = |y: f64| data.f.eval(y.abs());
    let half_fg = 0.5 * (f(x - t) + f(x + t));
    // ∫_{x-t}^{x+t} g(|s|) ds = G(x+t) - G(x-t) with G the odd primitive
    let g_part = 0.5 * (odd_primitive(data, x + t) - odd_primitive(data, x - t));
    eps * (half_fg + g_part)
}

/// G(y) = sign(y) ∫_0^{|y|} g(s) ds, clipped at the support radius.
fn odd_primitive(data: &InitialData, y: f64) -> f64 {
    let upper = y.abs().min(data.g.support_radius());
    if upper == 0.0 {
        return 0.0;
    }
    let v = simpson(|s| data.g.eval(s), 0.0, upper, 2000);
    v * y.signum()
}

fn spherical_means(data: &InitialData, eps: f64, r: f64, t: f64) -> f64 {
    if t == 0.0 {
        return eps * data.f.eval(r);
    }
    if r < 1e-9 {
        // r → 0 limit: u(0,t) = d/dt [t f(t)] + t g(t); differentiate the
        // f part numerically
        let h = 1e-6 * (1.0 + t);
        let tf = |s: f64| s * data.f.eval(s);
        return eps * ((tf(t + h) - tf(t - h)) / (2.0 * h) + t * data.g.eval(t));
    }
    let lo = (r - t).abs();
    let hi = r + t;
    let f_part = ((r + t) * data.f.eval(hi) + (r - t) * data.f.eval(lo)) / (2.0 * r);
    let g_lo = lo.min(data.g.support_radius());
    let g_hi = hi.min(data.g.support_radius());
    let g_part = if g_hi > g_lo {
        simpson(|s| s * data.g.eval(s), g_lo, g_hi, 2000) / (2.0 * r)
    } else {
        0.0
    };
    eps * (f_part + g_part)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::radial_integral;
    use crate::solver::RadialProfile;

    fn bump(radius: f64) -> RadialProfile {
        RadialProfile::SmoothBump {
            amplitude: 1.0,
            radius,
        }
    }

    #[test]
    fn zero_data_gives_zero() {
        let data = InitialData {
            f: RadialProfile::Zero,
            g: RadialProfile::Zero,
        };
        for n in [1, 3] {
            assert_eq!(free_wave(&data, 1.0, 0.5, 2.0, n), 0.0);
        }
    }

    #[test]
    fn dalembert_velocity_part_is_half_integral() {
        let data = InitialData {
            f: RadialProfile::Zero,
            g: bump(1.0),
        };
        // once the cone covers the whole support, u = ½ ∫ g over the line
        let full = simpson(|s| data.g.eval(s), 0.0, 1.0, 4000);
        let u = free_wave(&data, 1.0, 0.3, 5.0, 1);
        assert!((u - full).abs() < 1e-10, "u={u} vs {full}");
        // and at short times, u(x, t) = ½ ∫_{x-t}^{x+t} g
        let x = 0.4;
        let t = 0.2;
        let direct = 0.5 * simpson(|s| data.g.eval(s.abs()), x - t, x + t, 4000);
        let u = free_wave(&data, 1.0, x, t, 1);
        assert!((u - direct).abs() < 1e-10);
    }

    #[test]
    fn spherical_means_match_mean_value_formula() {
        let data = InitialData {
            f: RadialProfile::Zero,
            g: bump(1.0),
        };
        // u(r, t) = t · (average of g over the sphere of radius t centered
        // at distance r); evaluate that average by polar quadrature
        let r: f64 = 0.7;
        let t: f64 = 1.3;
        let mean = simpson(
            |theta| {
                let dist = (r * r + t * t + 2.0 * r * t * theta.cos()).sqrt();
                data.g.eval(dist) * theta.sin()
            },
            0.0,
            std::f64::consts::PI,
            4000,
        ) / 2.0;
        let expected = t * mean;
        let got = free_wave(&data, 1.0, r, t, 3);
        assert!(
            (got - expected).abs() < 1e-9,
            "got {got}, mean-value {expected}"
        );
        // r = 0: u(0, t) = t g(t)
        let got0 = free_wave(&data, 1.0, 0.0, 0.6, 3);
        assert!((got0 - 0.6 * data.g.eval(0.6)).abs() < 1e-9);
    }

    #[test]
    fn huygens_principle_in_3d() {
        // strong Huygens: after t > r + support the solution vanishes
        let data = InitialData {
            f: bump(1.0),
            g: bump(1.0),
        };
        let u = free_wave(&data, 1.0, 0.5, 4.0, 3);
        assert!(u.abs() < 1e-12);
    }

    #[test]
    fn conserved_average_in_1d() {
        // F0(t) = ∫ u dx is affine in t for the free line wave:
        // F0(t) = ∫f + t ∫g
        let data = InitialData {
            f: bump(1.0),
            g: bump(1.0),
        };
        let nr = 4000;
        let r_max = 8.0;
        let dr = r_max / nr as f64;
        let f_int = radial_integral(
            &(0..=nr).map(|i| data.f.eval(i as f64 * dr)).collect::<Vec<_>>(),
            dr,
            1,
        );
        let g_int = radial_integral(
            &(0..=nr).map(|i| data.g.eval(i as f64 * dr)).collect::<Vec<_>>(),
            dr,
            1,
        );
        for &t in &[0.5, 1.5, 3.0] {
            let vals: Vec<f64> = (0..=nr)
                .map(|i| free_wave(&data, 1.0, i as f64 * dr, t, 1))
                .collect();
            let f0 = radial_integral(&vals, dr, 1);
            assert!(
                (f0 - (f_int + t * g_int)).abs() < 1e-6,
                "t={t}: {f0} vs {}",
                f_int + t * g_int
            );
        }
    }
}
