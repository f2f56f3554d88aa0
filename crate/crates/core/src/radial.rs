//! Separated harmonic modes `g_k(r) cos kθ`, `g_k(r) sin kθ`.
//!
//! The radial factor solves `(S g')' = k² g / S` with `S = sqrt(B/A)`; for an
//! `n`-dimensional warped space it solves `(h^{n-1} g')' = λ_k h^{n-3} g` with
//! `λ_k = k(k+n-2)`. Both are integrated in Riccati form for the
//! log-derivative `w = g'/g`, starting just off the pole at `ε` with the
//! regular branch `w(ε) = k/ε`. The singular linearisation about that branch
//! is strongly contracting, so the start-up error decays away from the pole.

use crate::geometry::SurfaceMetric;
use crate::numerics::ode::hermite;
use crate::numerics::{ode_solve, OdeOptions};
use crate::{Error, Result};

pub const DEFAULT_RTOL: f64 = 1e-11;
pub const DEFAULT_GRID: usize = 512;
/// Relative start radius `ε = START_FACTOR · min(R, 1)`.
pub const START_FACTOR: f64 = 1e-6;

/// Riccati right-hand side `w' = -w² - c(r) w + λ / S(r)²`.
#[derive(Debug, Clone, Copy)]
struct Riccati<'a> {
    surface: &'a SurfaceMetric,
    /// `(n-1)` for warped spaces of dimension `n`; 1 on the paraboloid.
    damping: f64,
    lambda: f64,
}

impl<'a> Riccati<'a> {
    fn new(surface: &'a SurfaceMetric, k: usize, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "dimension must be >= 2, got {n}"
            )));
        }
        if n != 2 && matches!(surface, SurfaceMetric::Paraboloid) {
            return Err(Error::InvalidArgument(
                "the paraboloid is two-dimensional".into(),
            ));
        }
        let kf = k as f64;
        Ok(Self {
            surface,
            damping: (n - 1) as f64,
            lambda: kf * (kf + n as f64 - 2.0),
        })
    }

    fn rhs(&self, r: f64, w: f64) -> f64 {
        let s = self.surface.s(r);
        -w * w - self.damping * self.surface.ds(r) / s * w + self.lambda / (s * s)
    }
}

fn check_range(surface: &SurfaceMetric, r: f64) -> Result<()> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "radius must be positive, got {r}"
        )));
    }
    if r > surface.domain_max() {
        return Err(Error::DomainExceeded {
            r,
            max: surface.domain_max(),
        });
    }
    Ok(())
}

fn check_rtol(rtol: f64) -> Result<()> {
    if !(1e-13..=1e-6).contains(&rtol) {
        return Err(Error::InvalidArgument(format!(
            "rtol {rtol} outside [1e-13, 1e-6]"
        )));
    }
    Ok(())
}

fn check_w(r: f64, w: f64) -> Result<()> {
    if w > 0.0 && w.is_finite() {
        Ok(())
    } else {
        Err(Error::LogDerivativeOutOfRange { r, w })
    }
}

/// `w(R) = g_k'(R)/g_k(R)` with the default start radius.
pub fn radial_log_derivative(
    surface: &SurfaceMetric,
    k: usize,
    radius: f64,
    n: usize,
    rtol: f64,
) -> Result<f64> {
    log_derivative_from(surface, k, radius, n, rtol, START_FACTOR * radius.min(1.0))
}

/// As [`radial_log_derivative`] with an explicit start radius `eps`.
pub fn log_derivative_from(
    surface: &SurfaceMetric,
    k: usize,
    radius: f64,
    n: usize,
    rtol: f64,
    eps: f64,
) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidArgument("mode k = 0 has w ≡ 0".into()));
    }
    check_range(surface, radius)?;
    check_rtol(rtol)?;
    if !(eps > 0.0 && eps < radius) {
        return Err(Error::InvalidArgument(format!(
            "start radius {eps} not in (0, {radius})"
        )));
    }
    let ric = Riccati::new(surface, k, n)?;
    let opts = OdeOptions::<1>::new(rtol, 1e-14 * k as f64);
    let traj = ode_solve(
        |r, w: &[f64; 1]| [ric.rhs(r, w[0])],
        eps,
        radius,
        [k as f64 / eps],
        &[],
        &opts,
    )?;
    let w = traj.final_state()[0];
    check_w(radius, w)?;
    Ok(w)
}

/// Radial factor of mode `k` tabulated on `(0, r_max]`.
#[derive(Debug, Clone)]
pub struct RadialProfile {
    pub k: usize,
    pub surface: SurfaceMetric,
    pub grid: Vec<f64>,
    /// `log g_k`, normalised so that the last entry is 0.
    pub log_g: Vec<f64>,
    pub w: Vec<f64>,
    /// `w'` from the Riccati equation, for Hermite interpolation of `w`.
    dw: Vec<f64>,
}

/// Geometric spacing from `1e-4 r_max` up to `0.1 r_max`, uniform beyond.
pub fn profile_grid(r_max: f64, size: usize) -> Vec<f64> {
    let n_geo = size / 4;
    let n_uni = size - n_geo;
    let lo = 1e-4 * r_max;
    let mid = 0.1 * r_max;
    let mut g = Vec::with_capacity(size);
    let ratio = (mid / lo).powf(1.0 / n_geo as f64);
    for i in 0..n_geo {
        g.push(lo * ratio.powi(i as i32));
    }
    for i in 0..n_uni {
        g.push(mid + (r_max - mid) * i as f64 / (n_uni - 1) as f64);
    }
    *g.last_mut().unwrap() = r_max;
    g
}

pub fn radial_profile(
    surface: &SurfaceMetric,
    k: usize,
    r_max: f64,
    grid_size: usize,
    rtol: f64,
) -> Result<RadialProfile> {
    check_range(surface, r_max)?;
    check_rtol(rtol)?;
    if grid_size < 64 {
        return Err(Error::InvalidArgument(format!(
            "grid_size must be >= 64, got {grid_size}"
        )));
    }
    let grid = profile_grid(r_max, grid_size);
    if k == 0 {
        let n = grid.len();
        return Ok(RadialProfile {
            k,
            surface: surface.clone(),
            grid,
            log_g: vec![0.0; n],
            w: vec![0.0; n],
            dw: vec![0.0; n],
        });
    }
    let ric = Riccati::new(surface, k, 2)?;
    let eps = START_FACTOR * r_max.min(1.0);
    let kf = k as f64;
    let mut opts = OdeOptions::<2>::new(rtol, 0.0);
    opts.atol = [1e-14 * kf, 1e-13];
    let traj = ode_solve(
        |r, y: &[f64; 2]| [ric.rhs(r, y[0]), y[0]],
        eps,
        r_max,
        [kf / eps, kf * eps.ln()],
        &grid,
        &opts,
    )?;
    let last = traj.at_stops.last().unwrap()[1];
    let mut log_g = Vec::with_capacity(grid.len());
    let mut w = Vec::with_capacity(grid.len());
    let mut dw = Vec::with_capacity(grid.len());
    for (r, y) in grid.iter().zip(&traj.at_stops) {
        check_w(*r, y[0])?;
        w.push(y[0]);
        dw.push(ric.rhs(*r, y[0]));
        log_g.push(y[1] - last);
    }
    Ok(RadialProfile {
        k,
        surface: surface.clone(),
        grid,
        log_g,
        w,
        dw,
    })
}

impl RadialProfile {
    pub fn r_min(&self) -> f64 {
        self.grid[0]
    }

    pub fn r_max(&self) -> f64 {
        *self.grid.last().unwrap()
    }

    /// `(log g_k(r), w(r))` by cubic Hermite interpolation in `t = ln r` of
    /// `log g` (slope `r w`) and `r w` (slope `r w + r² w'`), both smooth
    /// down to the pole. Slopes come from the Riccati equation, not from
    /// finite differences.
    pub fn eval(&self, r: f64) -> Result<(f64, f64)> {
        let (lo, hi) = (self.r_min(), self.r_max());
        if !(r >= lo * (1.0 - 1e-12) && r <= hi * (1.0 + 1e-12)) {
            return Err(Error::OutsideProfile { r, lo, hi });
        }
        let r = r.clamp(lo, hi);
        let n = self.grid.len();
        let i = self.grid.partition_point(|&g| g <= r).clamp(1, n - 1) - 1;
        let node = |j: usize| {
            let (x, w, dw) = (self.grid[j], self.w[j], self.dw[j]);
            ([self.log_g[j], x * w], [x * w, x * w + x * x * dw])
        };
        let (y0, d0) = node(i);
        let (y1, d1) = node(i + 1);
        let out = hermite(
            self.grid[i].ln(),
            self.grid[i + 1].ln(),
            &y0,
            &y1,
            &d0,
            &d1,
            r.ln(),
        );
        Ok((out[0], out[1] / r))
    }
}

/// Steklov spectrum of the coordinate ball `r < R`, multiplicities expanded.
#[derive(Debug, Clone, PartialEq)]
pub struct BallSpectrum {
    pub surface: SurfaceMetric,
    pub radius: f64,
    pub n: usize,
    pub eigenvalues: Vec<f64>,
}

impl BallSpectrum {
    /// `μ_l` with the 1-based convention `μ_1 = 0`.
    pub fn mu(&self, l: usize) -> Option<f64> {
        l.checked_sub(1)
            .and_then(|i| self.eigenvalues.get(i).copied())
    }
}

/// Dimension of degree-`k` spherical harmonics on `S^{n-1}`.
pub fn harmonic_multiplicity(k: usize, n: usize) -> usize {
    if k == 0 {
        return 1;
    }
    if n == 2 {
        return 2;
    }
    // (2k+n-2)(k+n-3)! / (k! (n-2)!)  =  (2k+n-2)/(n-2) · C(k+n-3, k)
    let mut binom: u128 = 1;
    for i in 1..=k as u128 {
        binom = binom * (n as u128 - 3 + i) / i;
    }
    ((2 * k + n - 2) as u128 * binom / (n as u128 - 2)) as usize
}

/// Steklov value of mode `k` on the ball of radius `R`: `w_k(R)/sqrt(A(R))`.
pub fn ball_sigma(
    surface: &SurfaceMetric,
    radius: f64,
    k: usize,
    n: usize,
    rtol: f64,
) -> Result<f64> {
    if k == 0 {
        return Ok(0.0);
    }
    Ok(radial_log_derivative(surface, k, radius, n, rtol)? / surface.a(radius).sqrt())
}

pub fn ball_spectrum(
    surface: &SurfaceMetric,
    radius: f64,
    count: usize,
    n: usize,
) -> Result<BallSpectrum> {
    if count == 0 {
        return Err(Error::InvalidArgument("count must be >= 1".into()));
    }
    check_range(surface, radius)?;
    let mut eigenvalues = vec![0.0];
    let mut k = 1;
    while eigenvalues.len() < count {
        let sigma = ball_sigma(surface, radius, k, n, DEFAULT_RTOL)?;
        for _ in 0..harmonic_multiplicity(k, n) {
            eigenvalues.push(sigma);
        }
        k += 1;
    }
    // σ_k increases with k on every admissible surface; sorting guards the
    // expanded list regardless.
    eigenvalues.sort_by(f64::total_cmp);
    eigenvalues.truncate(count);
    Ok(BallSpectrum {
        surface: surface.clone(),
        radius,
        n,
        eigenvalues,
    })
}
