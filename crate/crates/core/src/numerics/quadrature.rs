use std::f64::consts::PI;

use crate::{Error, Result};

/// Trapezoidal rule for a 2π-periodic function sampled at `θ_m = 2πm/M`.
pub fn periodic_quadrature(samples: &[f64]) -> Result<f64> {
    let m = samples.len();
    if m < 8 {
        return Err(Error::TooFewNodes { got: m, need: 8 });
    }
    Ok(samples.iter().sum::<f64>() * (2.0 * PI / m as f64))
}

/// Uniform nodes `θ_m = 2πm/M`.
pub fn periodic_nodes(m: usize) -> Vec<f64> {
    (0..m).map(|i| 2.0 * PI * i as f64 / m as f64).collect()
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let half = n.div_ceil(2);
    for i in 0..half {
        // Tricomi initial guess, then Newton on P_n.
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, z);
        if d != 0.0 {
            dp = d;
        }
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    if n % 2 == 1 {
        x[n / 2] = 0.0;
    }
    (x, w)
}

fn legendre(n: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, dp)
}

/// Gauss–Legendre in `ρ ∈ [0, r_max]` times trapezoidal in `φ ∈ [0, 2π)`.
pub fn quad2d_polar<F>(f: F, r_max: f64, n_r: usize, n_theta: usize) -> Result<f64>
where
    F: Fn(f64, f64) -> f64,
{
    if n_r < 64 {
        return Err(Error::TooFewNodes { got: n_r, need: 64 });
    }
    if n_theta < 64 {
        return Err(Error::TooFewNodes {
            got: n_theta,
            need: 64,
        });
    }
    let (x, w) = gauss_legendre(n_r);
    let phis = periodic_nodes(n_theta);
    let dphi = 2.0 * PI / n_theta as f64;
    let mut total = 0.0;
    for (xi, wi) in x.iter().zip(&w) {
        let rho = 0.5 * r_max * (xi + 1.0);
        let ring: f64 = phis.iter().map(|&p| f(rho, p)).sum();
        total += wi * ring;
    }
    Ok(total * 0.5 * r_max * dphi)
}
