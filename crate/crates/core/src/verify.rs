//! Verification harness: bounds against computed spectra, sharpness under
//! families that shrink to a ball, and numerical checks of the intermediate
//! inequalities behind the ball comparison bounds.

use std::f64::consts::FRAC_PI_4;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bounds::{
    bound_bramble_payne, bound_garcia_montano, bound_kuttler_sigillito_l, bound_main_warped,
    bound_paraboloid, bound_verma_sphere, shape_factor, BoundFormula,
};
use crate::dtn_solver::{steklov_spectrum, DomainSpectrum, SolverOptions};
use crate::geometry::{
    boundary_frame, domain_constants, DomainConstants, StarDomain, SurfaceMetric,
};
use crate::numerics::{periodic_nodes, periodic_quadrature, quad2d_polar};
use crate::radial::{ball_spectrum, BallSpectrum};
use crate::{Error, Result};

/// Relative slack charged for the refinement tolerance of `R_m`, `R_M`, `a`.
pub const EXTREMA_SLACK: f64 = 1e-9;

/// Grid used for the boundary constants of verified domains.
pub const CONSTANTS_GRID: usize = 4096;

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationCase {
    pub surface: SurfaceMetric,
    pub domain: StarDomain,
    pub l_range: Vec<usize>,
    pub formulas: Vec<BoundFormula>,
    pub rel_slack: f64,
    pub solver: SolverOptions,
}

impl VerificationCase {
    /// Every applicable formula, `rel_slack = 1e-6`, default solver options.
    pub fn new(surface: SurfaceMetric, domain: StarDomain, l_range: Vec<usize>) -> Self {
        let formulas = BoundFormula::applicable(&surface);
        Self {
            surface,
            domain,
            l_range,
            formulas,
            rel_slack: 1e-6,
            solver: SolverOptions::default(),
        }
    }

    pub fn with_formulas(mut self, formulas: Vec<BoundFormula>) -> Self {
        self.formulas = formulas;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.l_range.is_empty() || self.l_range.contains(&0) {
            return Err(Error::InvalidArgument(
                "l_range must be non-empty and 1-based".into(),
            ));
        }
        if self.formulas.is_empty() {
            return Err(Error::InvalidArgument("no bound formulas requested".into()));
        }
        if let Some(f) = self.formulas.iter().find(|f| !f.applies_to(&self.surface)) {
            return Err(Error::BoundNotApplicable {
                formula: f.name().into(),
                reason: format!("not defined on the {} surface", self.surface.name()),
            });
        }
        if !(self.rel_slack >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "rel_slack must be >= 0, got {}",
                self.rel_slack
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// `bound ≤ μ`.
    Pass,
    /// `μ < bound ≤ μ(1 + slack) + est_error`: a violation inside the numerical noise.
    Inconclusive,
    Fail,
    /// The solver did not converge; no verdict is possible.
    Undefined,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Self::Pass => "pass",
            Self::Inconclusive => "inconclusive",
            Self::Fail => "fail",
            Self::Undefined => "undefined",
        }
    }

    /// `Some(true)` for pass and inconclusive, `None` when undefined.
    pub fn passed(self) -> Option<bool> {
        match self {
            Self::Pass | Self::Inconclusive => Some(true),
            Self::Fail => Some(false),
            Self::Undefined => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundEntry {
    pub formula: BoundFormula,
    pub l: usize,
    pub mu: f64,
    pub bound: f64,
    /// `bound / μ`, only when `μ > 0`.
    pub ratio: Option<f64>,
    pub verdict: Verdict,
    pub est_error: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Summary {
    pub pass: usize,
    pub inconclusive: usize,
    pub fail: usize,
    pub undefined: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub surface: SurfaceMetric,
    pub domain: StarDomain,
    pub constants: DomainConstants,
    pub spectrum: DomainSpectrum,
    pub entries: Vec<BoundEntry>,
    pub summary: Summary,
}

impl BoundReport {
    pub fn converged(&self) -> bool {
        self.spectrum.converged
    }

    pub fn any_failed(&self) -> bool {
        self.summary.fail > 0
    }

    /// Largest `bound/μ` among entries with `l ≥ 2`.
    pub fn max_ratio(&self) -> Option<f64> {
        self.entries
            .iter()
            .filter(|e| e.l >= 2)
            .filter_map(|e| e.ratio)
            .reduce(f64::max)
    }
}

fn judge(l: usize, mu: f64, bound: f64, slack: f64, est_error: f64, converged: bool) -> Verdict {
    if !converged {
        return Verdict::Undefined;
    }
    if l == 1 {
        return if bound.abs() <= 1e-12 {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
    }
    if bound <= mu {
        Verdict::Pass
    } else if bound <= mu * (1.0 + slack) + est_error + EXTREMA_SLACK * bound.abs() {
        Verdict::Inconclusive
    } else {
        Verdict::Fail
    }
}

fn evaluate(
    formula: BoundFormula,
    case: &VerificationCase,
    consts: &DomainConstants,
    ball: Option<&BallSpectrum>,
    l: usize,
) -> Result<Option<f64>> {
    if formula.first_nonzero_only() && l != 2 {
        return Ok(None);
    }
    let need_ball = || ball.ok_or_else(|| Error::InvalidArgument("ball spectrum missing".into()));
    let value = match formula {
        BoundFormula::MainWarped => {
            bound_main_warped(&case.surface, consts, need_ball()?, l)?.value
        }
        BoundFormula::ParaboloidMain => bound_paraboloid(consts, need_ball()?, l)?.value,
        BoundFormula::VermaSphere => bound_verma_sphere(consts, need_ball()?, l)?.value,
        BoundFormula::KuttlerSigillito => {
            if l < 2 {
                return Ok(None);
            }
            bound_kuttler_sigillito_l(&case.domain, l)?.value
        }
        BoundFormula::GarciaMontano => bound_garcia_montano(consts, 2, l)?.value,
        BoundFormula::BramblePayne => bound_bramble_payne(&case.domain, consts, 2, l)?.value,
    };
    Ok(Some(value))
}

/// Computes the spectrum once and checks every requested bound against it.
pub fn verify_case(case: &VerificationCase) -> Result<BoundReport> {
    case.validate()?;
    let consts = domain_constants(&case.surface, &case.domain, CONSTANTS_GRID)?;
    let l_max = case.l_range.iter().copied().max().unwrap_or(2).max(2);
    let spectrum = steklov_spectrum(&case.surface, &case.domain, l_max, &case.solver)?;
    let needs_ball = case.formulas.iter().any(|f| {
        matches!(
            f,
            BoundFormula::MainWarped | BoundFormula::ParaboloidMain | BoundFormula::VermaSphere
        )
    });
    let ball = if needs_ball {
        Some(ball_spectrum(&case.surface, consts.r_min, l_max, 2)?)
    } else {
        None
    };

    let mut entries = Vec::new();
    let mut summary = Summary::default();
    for &formula in &case.formulas {
        for &l in &case.l_range {
            let Some(bound) = evaluate(formula, case, &consts, ball.as_ref(), l)? else {
                continue;
            };
            let mu = spectrum.mu(l).expect("l within l_max");
            let verdict = judge(
                l,
                mu,
                bound,
                case.rel_slack,
                spectrum.est_error,
                spectrum.converged,
            );
            match verdict {
                Verdict::Pass => summary.pass += 1,
                Verdict::Inconclusive => summary.inconclusive += 1,
                Verdict::Fail => summary.fail += 1,
                Verdict::Undefined => summary.undefined += 1,
            }
            let ratio = (l >= 2 && mu > 0.0).then(|| bound / mu);
            entries.push(BoundEntry {
                formula,
                l,
                mu,
                bound,
                ratio,
                verdict,
                est_error: spectrum.est_error,
            });
        }
    }
    Ok(BoundReport {
        surface: case.surface.clone(),
        domain: case.domain.clone(),
        constants: consts,
        spectrum,
        entries,
        summary,
    })
}

/// Verifies independent cases on a pool of `jobs` workers (`0` = all cores).
/// Results come back in input order.
pub fn verify_cases(cases: &[VerificationCase], jobs: usize) -> Result<Vec<Result<BoundReport>>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    Ok(pool.install(|| cases.par_iter().map(verify_case).collect()))
}

/// Rigidity consequence: every converged report for a domain with
/// `a ≥ 0.01` has all ratios below `1 − 1e-3`.
pub fn rigidity_holds(report: &BoundReport) -> bool {
    if !report.converged() || report.constants.a < 0.01 {
        return true;
    }
    report.max_ratio().is_none_or(|r| r < 1.0 - 1e-3)
}

// ---------------------------------------------------------------------------
// Random domains

/// Default base radius `R₀` for generated domains.
pub fn default_base_radius(surface: &SurfaceMetric) -> f64 {
    match surface.warp().map(|w| w.name()) {
        Some("sphere") => FRAC_PI_4,
        _ => 1.0,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DomainSuite {
    pub domains: Vec<StarDomain>,
    pub attempts: usize,
    pub rejected: usize,
}

impl DomainSuite {
    pub fn rejection_rate(&self) -> f64 {
        self.rejected as f64 / self.attempts.max(1) as f64
    }
}

/// Seeded domains `R = R₀(1 + Σ_k ε_k cos kθ + δ_k sin kθ)` with every
/// coefficient uniform in `[−max_eps, max_eps]`. Draws with a non-positive
/// radius, or (warped surfaces) `R_M` beyond the monotone range of `h`, are
/// rejected and counted.
pub fn random_domain_suite(
    surface: &SurfaceMetric,
    count: usize,
    max_mode: usize,
    max_eps: f64,
    seed: u64,
) -> Result<DomainSuite> {
    if max_mode == 0 || !(max_eps >= 0.0) {
        return Err(Error::InvalidArgument(
            "need max_mode >= 1 and max_eps >= 0".into(),
        ));
    }
    let r0 = default_base_radius(surface);
    let limit = match surface.warp() {
        Some(w) => w.monotone_limit(),
        None => f64::INFINITY,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut domains = Vec::with_capacity(count);
    let mut attempts = 0;
    while domains.len() < count {
        attempts += 1;
        if attempts > 1000 * count.max(1) {
            return Err(Error::InvalidArgument(format!(
                "rejection sampling gave up after {attempts} draws (max_eps = {max_eps})"
            )));
        }
        let mut cos = vec![r0];
        let mut sin = vec![0.0];
        for _ in 1..=max_mode {
            cos.push(r0 * rng.gen_range(-max_eps..=max_eps));
            sin.push(r0 * rng.gen_range(-max_eps..=max_eps));
        }
        let Ok(domain) = StarDomain::new(cos, sin) else {
            continue;
        };
        let r_max = nodes_max(&domain);
        if r_max >= limit || r_max >= surface.domain_max() {
            continue;
        }
        domains.push(domain);
    }
    Ok(DomainSuite {
        domains,
        attempts,
        rejected: attempts - count,
    })
}

fn nodes_max(domain: &StarDomain) -> f64 {
    crate::geometry::periodic_extremum(|t| domain.radius(t), 1024, true).1
}

// ---------------------------------------------------------------------------
// Sharpness

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SharpnessPoint {
    pub eps: f64,
    pub mu: f64,
    pub bound: f64,
    pub ratio: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SharpnessStudy {
    pub l: usize,
    pub points: Vec<SharpnessPoint>,
    /// Value at `ε = 0` of the quadratic through the last three points.
    pub limit: f64,
}

impl SharpnessStudy {
    /// Ratios non-decreasing along the `ε` list sorted decreasingly, within `slack`.
    pub fn is_monotone(&self, slack: f64) -> bool {
        let mut pts = self.points.clone();
        pts.sort_by(|a, b| b.eps.total_cmp(&a.eps));
        pts.windows(2).all(|w| w[1].ratio >= w[0].ratio - slack)
    }
}

/// Polynomial through `(x_i, y_i)` evaluated at `x = 0` (Neville).
pub fn extrapolate_to_zero(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() || xs.is_empty() {
        return Err(Error::Dimension(
            "extrapolation needs matching, non-empty data".into(),
        ));
    }
    let mut p = ys.to_vec();
    let n = xs.len();
    for m in 1..n {
        for i in 0..n - m {
            let den = xs[i] - xs[i + m];
            if den == 0.0 {
                return Err(Error::InvalidArgument(
                    "repeated abscissa in extrapolation".into(),
                ));
            }
            p[i] = (xs[i] * p[i + 1] - xs[i + m] * p[i]) / den;
        }
    }
    Ok(p[0])
}

/// Ratios of the ball comparison bound to `μ_l` along
/// `R = R₀(1 + ε·P(θ))`, `P = Σ p_k cos kθ + q_k sin kθ` given by the
/// coefficient lists (index 0 ignored).
pub fn sharpness_study(
    surface: &SurfaceMetric,
    base_r0: f64,
    perturbation: (&[f64], &[f64]),
    eps_list: &[f64],
    l: usize,
    opts: &SolverOptions,
) -> Result<SharpnessStudy> {
    if eps_list.is_empty() {
        return Err(Error::InvalidArgument("empty epsilon list".into()));
    }
    if l < 2 {
        return Err(Error::InvalidArgument(format!(
            "sharpness needs l >= 2, got {l}"
        )));
    }
    let formula = if surface.warp().is_some() {
        BoundFormula::MainWarped
    } else {
        BoundFormula::ParaboloidMain
    };
    let (pc, ps) = perturbation;
    let mut points = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        let coeffs = |p: &[f64], c0: f64| {
            let mut v: Vec<f64> = p.iter().map(|x| base_r0 * eps * x).collect();
            if v.is_empty() {
                v.push(0.0);
            }
            v[0] = c0;
            v
        };
        let domain = StarDomain::new(coeffs(pc, base_r0), coeffs(ps, 0.0))?;
        let mut case =
            VerificationCase::new(surface.clone(), domain, vec![l]).with_formulas(vec![formula]);
        case.solver = *opts;
        let report = verify_case(&case)?;
        let e = &report.entries[0];
        points.push(SharpnessPoint {
            eps,
            mu: e.mu,
            bound: e.bound,
            ratio: e.bound / e.mu,
            converged: report.converged(),
        });
    }
    let tail = &points[points.len().saturating_sub(3)..];
    let xs: Vec<f64> = tail.iter().map(|p| p.eps).collect();
    let ys: Vec<f64> = tail.iter().map(|p| p.ratio).collect();
    let limit = extrapolate_to_zero(&xs, &ys)?;
    Ok(SharpnessStudy { l, points, limit })
}

// ---------------------------------------------------------------------------
// Proof-step checks

/// One term `c·(ρ/R_m)^power·cos(kφ)` or `…·sin(kφ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub power: u32,
    pub mode: u32,
    pub coeff: f64,
    pub sine: bool,
}

/// A polynomial test function in the ball coordinates `(ρ, φ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TestFunction {
    pub terms: Vec<Term>,
}

impl TestFunction {
    pub fn constant(c: f64) -> Self {
        Self {
            terms: vec![Term {
                power: 0,
                mode: 0,
                coeff: c,
                sine: false,
            }],
        }
    }

    /// Every `(ρ/R_m)^{k+2m} cos/sin kφ` with `k ≤ max_mode`, `m ≤ 2`,
    /// coefficients uniform in `[−1, 1]`. All terms are polynomials in `x, y`.
    pub fn random<R: Rng>(rng: &mut R, max_mode: u32) -> Self {
        let mut terms = Vec::new();
        for mode in 0..=max_mode {
            for m in 0..3 {
                let power = mode + 2 * m;
                terms.push(Term {
                    power,
                    mode,
                    coeff: rng.gen_range(-1.0..=1.0),
                    sine: false,
                });
                if mode > 0 {
                    terms.push(Term {
                        power,
                        mode,
                        coeff: rng.gen_range(-1.0..=1.0),
                        sine: true,
                    });
                }
            }
        }
        Self { terms }
    }

    /// `(F, ∂F/∂ρ, ∂F/∂φ)` at `(ρ, φ)` for ball radius `r_m`.
    pub fn eval(&self, rho: f64, phi: f64, r_m: f64) -> (f64, f64, f64) {
        let x = rho / r_m;
        let (mut f, mut fr, mut fp) = (0.0, 0.0, 0.0);
        for t in &self.terms {
            let k = t.mode as f64;
            let (c, s) = ((k * phi).cos(), (k * phi).sin());
            let (ang, dang) = if t.sine { (s, k * c) } else { (c, -k * s) };
            let radial = x.powi(t.power as i32);
            let dradial = if t.power == 0 {
                0.0
            } else {
                t.power as f64 * x.powi(t.power as i32 - 1) / r_m
            };
            f += t.coeff * radial * ang;
            fr += t.coeff * dradial * ang;
            fp += t.coeff * radial * dang;
        }
        (f, fr, fp)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProofGrid {
    pub n_r: usize,
    pub n_theta: usize,
}

impl Default for ProofGrid {
    fn default() -> Self {
        Self {
            n_r: 64,
            n_theta: 128,
        }
    }
}

/// One inequality `lhs ≥ rhs` (or `lhs ≤ rhs`), with its signed margin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InequalityCheck {
    pub lhs: f64,
    pub rhs: f64,
    /// Positive when the inequality holds.
    pub margin: f64,
    pub pass: bool,
}

impl InequalityCheck {
    fn at_least(lhs: f64, rhs: f64) -> Self {
        Self::from_margin(lhs, rhs, lhs - rhs)
    }

    fn at_most(lhs: f64, rhs: f64) -> Self {
        Self::from_margin(lhs, rhs, rhs - lhs)
    }

    fn from_margin(lhs: f64, rhs: f64, margin: f64) -> Self {
        let scale = lhs.abs().max(rhs.abs());
        Self {
            lhs,
            rhs,
            margin,
            pass: margin >= -1e-9 * scale,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProofStepRecord {
    /// `∫_Ω |∇f|² ≥ (R_m/R_M)·((2+a)−√(a²+4a))/2 · ∫_{B(R_m)} |∇f|²`.
    pub gradient: InequalityCheck,
    /// Boundary comparison `∫_{∂Ω} f² ≤ c·∫_{∂B(R_m)} f²`.
    pub boundary: InequalityCheck,
    /// The Rayleigh-quotient comparison obtained from the two.
    pub quotient: InequalityCheck,
}

impl ProofStepRecord {
    pub fn pass(&self) -> bool {
        self.gradient.pass && self.boundary.pass && self.quotient.pass
    }
}

#[derive(Debug, Clone, Copy)]
struct Integrals {
    energy_domain: f64,
    energy_ball: f64,
    boundary_domain: f64,
    boundary_ball: f64,
}

fn proof_integrals(
    surface: &SurfaceMetric,
    domain: &StarDomain,
    f: &TestFunction,
    consts: &DomainConstants,
    grid: ProofGrid,
) -> Result<Integrals> {
    let rm = consts.r_min;
    // Pullback r = ρR(φ)/R_m, θ = φ: f_r = F_ρ R_m/R, f_θ = F_φ − (ρR'/R) F_ρ,
    // dr dθ = (R/R_m) dρ dφ.
    let energy_domain = quad2d_polar(
        |rho, phi| {
            let (big_r, rp) = (domain.radius(phi), domain.dradius(phi));
            let r = rho * big_r / rm;
            let (_, fr, fp) = f.eval(rho, phi, rm);
            let f_r = fr * rm / big_r;
            let f_t = fp - rho * rp / big_r * fr;
            (f_r * f_r / surface.a(r) + f_t * f_t / surface.b(r)) * surface.area_density(r) * big_r
                / rm
        },
        rm,
        grid.n_r,
        grid.n_theta,
    )?;
    let energy_ball = quad2d_polar(
        |rho, phi| {
            let (_, fr, fp) = f.eval(rho, phi, rm);
            (fr * fr / surface.a(rho) + fp * fp / surface.b(rho)) * surface.area_density(rho)
        },
        rm,
        grid.n_r,
        grid.n_theta,
    )?;
    let nodes = periodic_nodes(grid.n_theta);
    let trace: Vec<f64> = nodes.iter().map(|&p| f.eval(rm, p, rm).0.powi(2)).collect();
    let on_boundary: Vec<f64> = nodes
        .iter()
        .zip(&trace)
        .map(|(&p, f2)| f2 * boundary_frame(surface, domain, p).ds_dtheta)
        .collect();
    let boundary_domain = periodic_quadrature(&on_boundary)?;
    let boundary_ball = periodic_quadrature(&trace)? * surface.b(rm).sqrt();
    Ok(Integrals {
        energy_domain,
        energy_ball,
        boundary_domain,
        boundary_ball,
    })
}

/// Checks the gradient, boundary and quotient inequalities for `f` pulled
/// back to `Ω` through `r = ρR(φ)/R_m`. Every integral is recomputed on the
/// doubled grid; a relative change above `1e-6` is an error.
pub fn proof_step_check(
    surface: &SurfaceMetric,
    domain: &StarDomain,
    f: &TestFunction,
    grid: ProofGrid,
) -> Result<ProofStepRecord> {
    let consts = domain_constants(surface, domain, CONSTANTS_GRID)?;
    let coarse = proof_integrals(surface, domain, f, &consts, grid)?;
    let fine = proof_integrals(
        surface,
        domain,
        f,
        &consts,
        ProofGrid {
            n_r: 2 * grid.n_r,
            n_theta: 2 * grid.n_theta,
        },
    )?;
    let pairs = [
        ("domain energy", coarse.energy_domain, fine.energy_domain),
        ("ball energy", coarse.energy_ball, fine.energy_ball),
        (
            "boundary integral",
            coarse.boundary_domain,
            fine.boundary_domain,
        ),
        (
            "ball boundary integral",
            coarse.boundary_ball,
            fine.boundary_ball,
        ),
    ];
    let magnitude = fine.energy_domain.abs().max(fine.boundary_domain.abs());
    for (what, c, v) in pairs {
        let rel = (c - v).abs() / v.abs().max(1e-12 * magnitude).max(f64::MIN_POSITIVE);
        if rel > 1e-6 {
            return Err(Error::UnderResolved {
                what: what.into(),
                rel,
            });
        }
    }
    if !(fine.boundary_domain > 0.0 && fine.boundary_ball > 0.0) {
        return Err(Error::InvalidArgument(
            "test function vanishes on the boundary".into(),
        ));
    }

    let (rm, rmax, a) = (consts.r_min, consts.r_max, consts.a);
    let shape = shape_factor(a)?;
    let grad_factor = rm / rmax * shape * (1.0 + a).sqrt();
    let (boundary_factor, quotient_factor) = match surface.warp() {
        Some(h) => {
            let hr = h.h(rmax) / h.h(rm);
            ((1.0 + a).sqrt() * hr, rm / rmax * shape / hr)
        }
        None => (rmax * (1.0 + a).sqrt() / rm, (rm / rmax).powi(2) * shape),
    };
    let i = fine;
    Ok(ProofStepRecord {
        gradient: InequalityCheck::at_least(i.energy_domain, grad_factor * i.energy_ball),
        boundary: InequalityCheck::at_most(i.boundary_domain, boundary_factor * i.boundary_ball),
        quotient: InequalityCheck::at_least(
            i.energy_domain / i.boundary_domain,
            quotient_factor * i.energy_ball / i.boundary_ball,
        ),
    })
}

/// `count` seeded random test functions with modes up to `max_mode`.
pub fn random_test_functions(count: usize, max_mode: u32, seed: u64) -> Vec<TestFunction> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| TestFunction::random(&mut rng, max_mode))
        .collect()
}
