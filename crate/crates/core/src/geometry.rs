//! Surfaces of revolution, star-shaped domains and boundary geometry.
//!
//! A surface is a rotationally symmetric metric `A(r) dr² + B(r) dθ²` in
//! geodesic-polar (or chart) coordinates about the pole. A star-shaped domain
//! is `{ r < R(θ) }` with `R` a truncated Fourier series.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::numerics::golden_section;
use crate::{Error, Result};

/// Natural cubic spline through `(knots, values)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CubicSpline {
    knots: Vec<f64>,
    values: Vec<f64>,
    second: Vec<f64>,
}

impl CubicSpline {
    pub fn new(knots: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let n = knots.len();
        if n < 4 || values.len() != n {
            return Err(Error::InvalidWarp(format!(
                "spline needs at least 4 knots with matching values (got {} knots, {} values)",
                n,
                values.len()
            )));
        }
        if knots.windows(2).any(|w| w[1] <= w[0])
            || knots.iter().chain(&values).any(|v| !v.is_finite())
        {
            return Err(Error::InvalidWarp(
                "spline knots must be finite and strictly increasing".into(),
            ));
        }
        // Tridiagonal solve for the second derivatives, natural end conditions.
        let mut second = vec![0.0; n];
        let mut u = vec![0.0; n];
        for i in 1..n - 1 {
            let sig = (knots[i] - knots[i - 1]) / (knots[i + 1] - knots[i - 1]);
            let p = sig * second[i - 1] + 2.0;
            second[i] = (sig - 1.0) / p;
            let dd = (values[i + 1] - values[i]) / (knots[i + 1] - knots[i])
                - (values[i] - values[i - 1]) / (knots[i] - knots[i - 1]);
            u[i] = (6.0 * dd / (knots[i + 1] - knots[i - 1]) - sig * u[i - 1]) / p;
        }
        second[n - 1] = 0.0;
        for k in (0..n - 1).rev() {
            second[k] = second[k] * second[k + 1] + u[k];
        }
        Ok(Self {
            knots,
            values,
            second,
        })
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    fn segment(&self, x: f64) -> usize {
        let n = self.knots.len();
        self.knots.partition_point(|&k| k <= x).clamp(1, n - 1) - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        let i = self.segment(x);
        let h = self.knots[i + 1] - self.knots[i];
        let a = (self.knots[i + 1] - x) / h;
        let b = (x - self.knots[i]) / h;
        a * self.values[i]
            + b * self.values[i + 1]
            + ((a * a * a - a) * self.second[i] + (b * b * b - b) * self.second[i + 1]) * h * h
                / 6.0
    }

    pub fn derivative(&self, x: f64) -> f64 {
        let i = self.segment(x);
        let h = self.knots[i + 1] - self.knots[i];
        let a = (self.knots[i + 1] - x) / h;
        let b = (x - self.knots[i]) / h;
        (self.values[i + 1] - self.values[i]) / h - (3.0 * a * a - 1.0) / 6.0 * h * self.second[i]
            + (3.0 * b * b - 1.0) / 6.0 * h * self.second[i + 1]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum WarpKind {
    /// `h(r) = r`
    Plane,
    /// `h(r) = sin r`
    Sphere,
    /// `h(r) = tanh r`
    Tanh,
    TabulatedSpline(CubicSpline),
}

/// A warp `h` for the metric `dr² + h(r)² dθ²`, defined on `[0, domain_max]`.
#[derive(Debug, Clone, PartialEq)]
pub struct WarpFunction {
    pub kind: WarpKind,
    pub domain_max: f64,
}

impl WarpFunction {
    pub fn plane() -> Self {
        Self {
            kind: WarpKind::Plane,
            domain_max: 1.0e3,
        }
    }

    pub fn sphere() -> Self {
        Self {
            kind: WarpKind::Sphere,
            domain_max: PI,
        }
    }

    pub fn tanh() -> Self {
        Self {
            kind: WarpKind::Tanh,
            domain_max: 20.0,
        }
    }

    /// A spline warp; the domain ends at the last knot. The first knot must be 0.
    pub fn tabulated(knots: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if knots.first() != Some(&0.0) {
            return Err(Error::InvalidWarp("first spline knot must be 0".into()));
        }
        let spline = CubicSpline::new(knots, values)?;
        let domain_max = *spline.knots().last().unwrap();
        Ok(Self {
            kind: WarpKind::TabulatedSpline(spline),
            domain_max,
        })
    }

    pub fn with_domain_max(mut self, domain_max: f64) -> Result<Self> {
        if !(domain_max > 0.0 && domain_max.is_finite()) {
            return Err(Error::InvalidWarp(format!(
                "domain_max must be positive, got {domain_max}"
            )));
        }
        if let WarpKind::TabulatedSpline(s) = &self.kind {
            if domain_max > *s.knots().last().unwrap() {
                return Err(Error::InvalidWarp(
                    "domain_max beyond the last spline knot".into(),
                ));
            }
        }
        self.domain_max = domain_max;
        Ok(self)
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            WarpKind::Plane => "plane",
            WarpKind::Sphere => "sphere",
            WarpKind::Tanh => "tanh",
            WarpKind::TabulatedSpline(_) => "spline",
        }
    }

    pub fn h(&self, r: f64) -> f64 {
        match &self.kind {
            WarpKind::Plane => r,
            WarpKind::Sphere => r.sin(),
            WarpKind::Tanh => r.tanh(),
            WarpKind::TabulatedSpline(s) => s.eval(r),
        }
    }

    pub fn dh(&self, r: f64) -> f64 {
        match &self.kind {
            WarpKind::Plane => 1.0,
            WarpKind::Sphere => r.cos(),
            WarpKind::Tanh => 1.0 / r.cosh().powi(2),
            WarpKind::TabulatedSpline(s) => s.derivative(r),
        }
    }

    /// Largest radius on which the warp is known to satisfy the monotonicity
    /// conditions (`h` non-decreasing, `h/r` non-increasing). For splines this
    /// is the whole domain and must be checked with [`validate_warp`].
    pub fn monotone_limit(&self) -> f64 {
        match self.kind {
            WarpKind::Sphere => self.domain_max.min(FRAC_PI_2),
            _ => self.domain_max,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WarpViolation {
    /// `h(0) != 0`
    NonZeroAtPole { value: f64 },
    /// `h'(0) != 1`
    SlopeAtPole { value: f64 },
    /// `h` decreases between two grid points
    NotNonDecreasing { r: f64 },
    /// `h(r)/r` increases between two grid points
    RatioIncreasing { r: f64 },
    /// `h(a r) >= a h(r)` fails for `a <= 1`
    ContractionFails { a: f64, r: f64 },
    /// `h(a r) <= a h(r)` fails for `a >= 1`
    DilationFails { a: f64, r: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct WarpReport {
    pub r_max: f64,
    pub samples: usize,
    pub violations: Vec<WarpViolation>,
}

impl WarpReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Samples the warp conditions on `[0, r_max]`.
pub fn validate_warp(w: &WarpFunction, r_max: f64, samples: usize) -> Result<WarpReport> {
    if r_max > w.domain_max * (1.0 + 1e-12) {
        return Err(Error::DomainExceeded {
            r: r_max,
            max: w.domain_max,
        });
    }
    if samples < 64 {
        return Err(Error::InvalidArgument(format!(
            "samples must be >= 64, got {samples}"
        )));
    }
    if r_max <= 0.0 {
        return Err(Error::InvalidArgument("r_max must be positive".into()));
    }
    let pole_tol = match w.kind {
        WarpKind::TabulatedSpline(_) => 1e-6,
        _ => 1e-12,
    };
    let mut violations = Vec::new();
    let h0 = w.h(0.0);
    if h0.abs() > pole_tol {
        violations.push(WarpViolation::NonZeroAtPole { value: h0 });
    }
    let dh0 = w.dh(0.0);
    if (dh0 - 1.0).abs() > pole_tol {
        violations.push(WarpViolation::SlopeAtPole { value: dh0 });
    }
    let tol = 1e-12;
    let grid: Vec<f64> = (0..samples)
        .map(|i| r_max * i as f64 / (samples - 1) as f64)
        .collect();
    let hs: Vec<f64> = grid.iter().map(|&r| w.h(r)).collect();
    if let Some(i) = (1..samples).find(|&i| hs[i] < hs[i - 1] - tol) {
        violations.push(WarpViolation::NotNonDecreasing { r: grid[i] });
    }
    if let Some(i) = (2..samples).find(|&i| hs[i] / grid[i] > hs[i - 1] / grid[i - 1] + tol) {
        violations.push(WarpViolation::RatioIncreasing { r: grid[i] });
    }
    for &a in &[0.25, 0.5, 0.75] {
        if let Some(&r) = grid.iter().find(|&&r| w.h(a * r) < a * w.h(r) - tol) {
            violations.push(WarpViolation::ContractionFails { a, r });
        }
    }
    for &a in &[1.5, 2.0] {
        if let Some(&r) = grid
            .iter()
            .filter(|&&r| a * r <= w.domain_max)
            .find(|&&r| w.h(a * r) > a * w.h(r) + tol)
        {
            violations.push(WarpViolation::DilationFails { a, r });
        }
    }
    Ok(WarpReport {
        r_max,
        samples,
        violations,
    })
}

/// A rotationally symmetric metric `A(r) dr² + B(r) dθ²`.
#[derive(Debug, Clone, PartialEq)]
pub enum SurfaceMetric {
    /// `dr² + h(r)² dθ²`
    Warped(WarpFunction),
    /// `(1 + 4r²) dr² + r² dθ²`, the paraboloid `z = x² + y²` in the chart `r`.
    Paraboloid,
}

impl SurfaceMetric {
    pub fn plane() -> Self {
        Self::Warped(WarpFunction::plane())
    }

    pub fn sphere() -> Self {
        Self::Warped(WarpFunction::sphere())
    }

    pub fn tanh() -> Self {
        Self::Warped(WarpFunction::tanh())
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Warped(w) => w.name(),
            Self::Paraboloid => "paraboloid",
        }
    }

    pub fn warp(&self) -> Option<&WarpFunction> {
        match self {
            Self::Warped(w) => Some(w),
            Self::Paraboloid => None,
        }
    }

    /// Largest admissible radius.
    pub fn domain_max(&self) -> f64 {
        match self {
            Self::Warped(w) => w.domain_max,
            Self::Paraboloid => f64::INFINITY,
        }
    }

    pub fn a(&self, r: f64) -> f64 {
        match self {
            Self::Warped(_) => 1.0,
            Self::Paraboloid => 1.0 + 4.0 * r * r,
        }
    }

    pub fn da(&self, r: f64) -> f64 {
        match self {
            Self::Warped(_) => 0.0,
            Self::Paraboloid => 8.0 * r,
        }
    }

    pub fn b(&self, r: f64) -> f64 {
        match self {
            Self::Warped(w) => w.h(r).powi(2),
            Self::Paraboloid => r * r,
        }
    }

    pub fn db(&self, r: f64) -> f64 {
        match self {
            Self::Warped(w) => 2.0 * w.h(r) * w.dh(r),
            Self::Paraboloid => 2.0 * r,
        }
    }

    /// `S = sqrt(B/A)`, the coefficient in `(S g')' = k² g / S`.
    pub fn s(&self, r: f64) -> f64 {
        match self {
            Self::Warped(w) => w.h(r),
            Self::Paraboloid => r / (1.0 + 4.0 * r * r).sqrt(),
        }
    }

    pub fn ds(&self, r: f64) -> f64 {
        match self {
            Self::Warped(w) => w.dh(r),
            Self::Paraboloid => (1.0 + 4.0 * r * r).powf(-1.5),
        }
    }

    /// Area density `sqrt(A B)` in `dv = sqrt(AB) dr dθ`.
    pub fn area_density(&self, r: f64) -> f64 {
        (self.a(r) * self.b(r)).sqrt()
    }
}

/// Boundary radius `R(θ) = c₀ + Σ c_k cos kθ + Σ s_k sin kθ`.
#[derive(Debug, Clone, PartialEq)]
pub struct StarDomain {
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl StarDomain {
    /// `cos = [c₀, c₁, …]`, `sin = [s₁, s₂, …]`. Fails if `R` is not
    /// positive on a grid of at least 1024 points.
    pub fn new(cos: Vec<f64>, sin: Vec<f64>) -> Result<Self> {
        if cos.is_empty() {
            return Err(Error::InvalidArgument(
                "domain needs at least the constant coefficient".into(),
            ));
        }
        if cos.iter().chain(&sin).any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(
                "non-finite Fourier coefficient".into(),
            ));
        }
        let d = Self { cos, sin };
        let n = 1024.max(16 * d.degree());
        for i in 0..n {
            let t = 2.0 * PI * i as f64 / n as f64;
            let v = d.radius(t);
            if v <= 0.0 {
                return Err(Error::NonPositiveRadius { theta: t, value: v });
            }
        }
        Ok(d)
    }

    pub fn disc(radius: f64) -> Result<Self> {
        Self::new(vec![radius], vec![])
    }

    pub fn cos_coeffs(&self) -> &[f64] {
        &self.cos
    }

    pub fn sin_coeffs(&self) -> &[f64] {
        &self.sin
    }

    /// Highest Fourier mode present.
    pub fn degree(&self) -> usize {
        (self.cos.len().saturating_sub(1)).max(self.sin.len())
    }

    pub fn radius(&self, theta: f64) -> f64 {
        let mut r = self.cos[0];
        for (k, c) in self.cos.iter().enumerate().skip(1) {
            r += c * (k as f64 * theta).cos();
        }
        for (k, s) in self.sin.iter().enumerate() {
            r += s * ((k + 1) as f64 * theta).sin();
        }
        r
    }

    pub fn dradius(&self, theta: f64) -> f64 {
        let mut r = 0.0;
        for (k, c) in self.cos.iter().enumerate().skip(1) {
            r -= k as f64 * c * (k as f64 * theta).sin();
        }
        for (k, s) in self.sin.iter().enumerate() {
            let kk = (k + 1) as f64;
            r += kk * s * (kk * theta).cos();
        }
        r
    }

    /// The domain rotated by `phase`: `R_new(θ) = R(θ - phase)`.
    pub fn rotated(&self, phase: f64) -> Self {
        let k_max = self.degree();
        let mut cos = vec![0.0; k_max + 1];
        let mut sin = vec![0.0; k_max];
        cos[0] = self.cos[0];
        for k in 1..=k_max {
            let c = self.cos.get(k).copied().unwrap_or(0.0);
            let s = self.sin.get(k - 1).copied().unwrap_or(0.0);
            let (sp, cp) = (k as f64 * phase).sin_cos();
            cos[k] = c * cp - s * sp;
            sin[k - 1] = c * sp + s * cp;
        }
        Self { cos, sin }
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(
            self.cos.iter().map(|c| c * factor).collect(),
            self.sin.iter().map(|s| s * factor).collect(),
        )
    }

    /// Whether `R' ≡ 0`.
    pub fn is_disc(&self) -> bool {
        self.cos.iter().skip(1).chain(&self.sin).all(|&c| c == 0.0)
    }
}

/// Local boundary geometry at the point `(R(θ), θ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryFrame {
    pub theta: f64,
    pub r: f64,
    pub rp: f64,
    /// `ds/dθ = sqrt(A R'² + B)`
    pub ds_dtheta: f64,
    /// Cosine of the angle between the outward normal and `∂_r`.
    pub cos_angle: f64,
    pub tan2_angle: f64,
    /// `(n_r, n_θ)` with `∂_ν f = n_r f_r + n_θ f_θ`.
    pub normal: (f64, f64),
}

pub fn boundary_frame(surface: &SurfaceMetric, domain: &StarDomain, theta: f64) -> BoundaryFrame {
    let r = domain.radius(theta);
    let rp = domain.dradius(theta);
    let a = surface.a(r);
    let b = surface.b(r);
    let tan2 = a * rp * rp / b;
    let norm = (1.0 / a + rp * rp / b).sqrt();
    BoundaryFrame {
        theta,
        r,
        rp,
        ds_dtheta: (a * rp * rp + b).sqrt(),
        cos_angle: 1.0 / (1.0 + tan2).sqrt(),
        tan2_angle: tan2,
        normal: ((1.0 / a) / norm, (-rp / b) / norm),
    }
}

/// Extremal boundary data: `R_m`, `R_M`, the steepness `a = max tan²` and
/// `α = arctan sqrt(a)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DomainConstants {
    pub r_min: f64,
    pub r_max: f64,
    pub a: f64,
    pub alpha: f64,
}

/// Tolerance (in θ) of the golden-section refinement of boundary extrema.
pub const EXTREMUM_TOL: f64 = 1e-10;

/// Global extremum of a 2π-periodic function: dense grid, then golden-section
/// refinement around the best grid point.
pub fn periodic_extremum<F: Fn(f64) -> f64>(f: F, grid: usize, maximize: bool) -> (f64, f64) {
    let step = 2.0 * PI / grid as f64;
    let better = |a: f64, b: f64| if maximize { a > b } else { a < b };
    let mut best_i = 0;
    let mut best = f(0.0);
    for i in 1..grid {
        let v = f(i as f64 * step);
        if better(v, best) {
            best = v;
            best_i = i;
        }
    }
    let center = best_i as f64 * step;
    let (x, v) = golden_section(&f, center - step, center + step, maximize, EXTREMUM_TOL);
    if better(v, best) {
        (x.rem_euclid(2.0 * PI), v)
    } else {
        (center, best)
    }
}

pub fn domain_constants(
    surface: &SurfaceMetric,
    domain: &StarDomain,
    grid: usize,
) -> Result<DomainConstants> {
    if grid < 1024 {
        return Err(Error::InvalidArgument(format!(
            "grid must be >= 1024, got {grid}"
        )));
    }
    let (tmin, r_min) = periodic_extremum(|t| domain.radius(t), grid, false);
    if r_min <= 0.0 {
        return Err(Error::NonPositiveRadius {
            theta: tmin,
            value: r_min,
        });
    }
    let (_, r_max) = periodic_extremum(|t| domain.radius(t), grid, true);
    if r_max > surface.domain_max() {
        return Err(Error::DomainExceeded {
            r: r_max,
            max: surface.domain_max(),
        });
    }
    let a = if domain.is_disc() {
        0.0
    } else {
        periodic_extremum(
            |t| boundary_frame(surface, domain, t).tan2_angle,
            grid,
            true,
        )
        .1
        .max(0.0)
    };
    Ok(DomainConstants {
        r_min,
        r_max,
        a,
        alpha: a.sqrt().atan(),
    })
}
