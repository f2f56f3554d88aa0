//! Closed-form lower bounds for Steklov eigenvalues of star domains.
//!
//! All indices are 1-based with `μ_1 = 0`. Bounds that only concern the first
//! nonzero eigenvalue reject every `l ≠ 2` with [`Error::OnlyFirstNonzero`].

use std::fmt;
use std::str::FromStr;

use crate::geometry::{periodic_extremum, DomainConstants, StarDomain, SurfaceMetric, WarpKind};
use crate::radial::BallSpectrum;
use crate::{Error, Result};

/// Grid used for the boundary extrema the catalog bounds need.
pub const EXTREMA_GRID: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundFormula {
    /// Ball comparison on any warped surface, every `l`.
    MainWarped,
    /// Ball comparison on the paraboloid, every `l`.
    ParaboloidMain,
    /// Kuttler–Sigillito, plane, `l = 2k, 2k+1`.
    KuttlerSigillito,
    /// Garcia–Montaño, plane, `l = 2`.
    GarciaMontano,
    /// Verma, sphere, `l = 2`.
    VermaSphere,
    /// Bramble–Payne, plane, `l = 2`.
    BramblePayne,
}

impl BoundFormula {
    pub const ALL: [BoundFormula; 6] = [
        Self::MainWarped,
        Self::ParaboloidMain,
        Self::KuttlerSigillito,
        Self::GarciaMontano,
        Self::VermaSphere,
        Self::BramblePayne,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::MainWarped => "main_warped",
            Self::ParaboloidMain => "paraboloid_main",
            Self::KuttlerSigillito => "kuttler_sigillito",
            Self::GarciaMontano => "garcia_montano",
            Self::VermaSphere => "verma_sphere",
            Self::BramblePayne => "bramble_payne",
        }
    }

    pub fn applies_to(self, surface: &SurfaceMetric) -> bool {
        let kind = surface.warp().map(|w| &w.kind);
        match self {
            Self::MainWarped => kind.is_some(),
            Self::ParaboloidMain => matches!(surface, SurfaceMetric::Paraboloid),
            Self::KuttlerSigillito | Self::GarciaMontano | Self::BramblePayne => {
                matches!(kind, Some(WarpKind::Plane))
            }
            Self::VermaSphere => matches!(kind, Some(WarpKind::Sphere)),
        }
    }

    /// True when the formula only bounds `μ_2`.
    pub fn first_nonzero_only(self) -> bool {
        matches!(
            self,
            Self::GarciaMontano | Self::VermaSphere | Self::BramblePayne
        )
    }

    /// Formulas applicable to `surface`, in declaration order.
    pub fn applicable(surface: &SurfaceMetric) -> Vec<BoundFormula> {
        Self::ALL
            .into_iter()
            .filter(|f| f.applies_to(surface))
            .collect()
    }
}

impl fmt::Display for BoundFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundFormula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown bound formula '{s}'")))
    }
}

/// One evaluated bound. `factor` is the bound divided by `μ_l` of the ball
/// `B(R_m)`; for the plane catalog formulas the flat disc of radius `R_m`
/// serves as that ball.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundValue {
    pub formula: BoundFormula,
    pub l: usize,
    pub value: f64,
    pub factor: f64,
    pub needs_ball: bool,
}

/// `F(a) = ((2+a) − sqrt(a²+4a)) / (2 sqrt(1+a))`.
pub fn shape_factor(a: f64) -> Result<f64> {
    if !(a >= 0.0) || !a.is_finite() {
        return Err(Error::NegativeSteepness(a));
    }
    // (2+a)² − (a²+4a) = 4, so the numerator equals 4/((2+a) + sqrt(a²+4a)).
    Ok(2.0 / (((2.0 + a) + (a * a + 4.0 * a).sqrt()) * (1.0 + a).sqrt()))
}

fn check_ball(formula: BoundFormula, consts: &DomainConstants, ball: &BallSpectrum) -> Result<()> {
    if (ball.radius - consts.r_min).abs() > 1e-12 * consts.r_min {
        return Err(Error::BoundNotApplicable {
            formula: formula.name().into(),
            reason: format!(
                "ball radius {} differs from R_m = {}",
                ball.radius, consts.r_min
            ),
        });
    }
    Ok(())
}

fn ball_mu(formula: BoundFormula, ball: &BallSpectrum, l: usize) -> Result<f64> {
    if l == 0 {
        return Err(Error::InvalidArgument("eigenvalue index is 1-based".into()));
    }
    ball.mu(l).ok_or_else(|| Error::BoundNotApplicable {
        formula: formula.name().into(),
        reason: format!(
            "ball spectrum has {} values, need l = {l}",
            ball.eigenvalues.len()
        ),
    })
}

fn require_l2(formula: BoundFormula, l: usize) -> Result<()> {
    if l != 2 {
        return Err(Error::OnlyFirstNonzero {
            formula: formula.name().into(),
            l,
        });
    }
    Ok(())
}

fn require_surface(formula: BoundFormula, surface: &SurfaceMetric) -> Result<()> {
    if !formula.applies_to(surface) {
        return Err(Error::BoundNotApplicable {
            formula: formula.name().into(),
            reason: format!("not defined on the {} surface", surface.name()),
        });
    }
    Ok(())
}

/// `(R_m/R_M)·F(a)·(h(R_m)/h(R_M))^{n−1}·μ_l(B(R_m))`, with `n = ball.n`.
pub fn bound_main_warped(
    surface: &SurfaceMetric,
    consts: &DomainConstants,
    ball: &BallSpectrum,
    l: usize,
) -> Result<BoundValue> {
    let formula = BoundFormula::MainWarped;
    require_surface(formula, surface)?;
    if &ball.surface != surface {
        return Err(Error::BoundNotApplicable {
            formula: formula.name().into(),
            reason: format!(
                "ball computed on {}, domain on {}",
                ball.surface.name(),
                surface.name()
            ),
        });
    }
    check_ball(formula, consts, ball)?;
    let h = surface.warp().expect("warped surface");
    let factor = consts.r_min / consts.r_max
        * shape_factor(consts.a)?
        * (h.h(consts.r_min) / h.h(consts.r_max)).powi(ball.n as i32 - 1);
    let mu = ball_mu(formula, ball, l)?;
    Ok(BoundValue {
        formula,
        l,
        value: factor * mu,
        factor,
        needs_ball: true,
    })
}

/// `(R_m/R_M)³·F(a)·μ_l(B(R_m))` on the paraboloid.
pub fn bound_paraboloid(
    consts: &DomainConstants,
    ball: &BallSpectrum,
    l: usize,
) -> Result<BoundValue> {
    let formula = BoundFormula::ParaboloidMain;
    require_surface(formula, &ball.surface)?;
    check_ball(formula, consts, ball)?;
    let factor = (consts.r_min / consts.r_max).powi(3) * shape_factor(consts.a)?;
    let mu = ball_mu(formula, ball, l)?;
    Ok(BoundValue {
        formula,
        l,
        value: factor * mu,
        factor,
        needs_ball: true,
    })
}

/// Kuttler–Sigillito bound for `μ_{2k}` and `μ_{2k+1}` of a plane domain:
/// `k·[1 − 2/(1+sqrt(1+4q))] / max sqrt(R²+R'²)` with `q = min (R/R')²`
/// over the points where `R' ≠ 0`.
pub fn bound_kuttler_sigillito(domain: &StarDomain, k: usize) -> Result<[BoundValue; 2]> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "Kuttler-Sigillito needs k >= 1".into(),
        ));
    }
    // With g = max (R'/R)² = 1/q the bracket is 1 − 2 sqrt(g)/(sqrt(g) + sqrt(g+4)),
    // which is 1 at g = 0 (circles, q = ∞) without special-casing.
    let g = if domain.is_disc() {
        0.0
    } else {
        periodic_extremum(
            |t| (domain.dradius(t) / domain.radius(t)).powi(2),
            EXTREMA_GRID,
            true,
        )
        .1
    };
    let bracket = 1.0 - 2.0 * g.sqrt() / (g.sqrt() + (g + 4.0).sqrt());
    let (_, denom) = periodic_extremum(
        |t| domain.radius(t).hypot(domain.dradius(t)),
        EXTREMA_GRID,
        true,
    );
    let (_, r_min) = periodic_extremum(|t| domain.radius(t), EXTREMA_GRID, false);
    let value = k as f64 * bracket / denom;
    let factor = value * r_min / k as f64;
    let make = |l| BoundValue {
        formula: BoundFormula::KuttlerSigillito,
        l,
        value,
        factor,
        needs_ball: false,
    };
    Ok([make(2 * k), make(2 * k + 1)])
}

/// Kuttler–Sigillito as a function of `l ≥ 2`, `k = ⌊l/2⌋`.
pub fn bound_kuttler_sigillito_l(domain: &StarDomain, l: usize) -> Result<BoundValue> {
    if l < 2 {
        return Err(Error::BoundNotApplicable {
            formula: BoundFormula::KuttlerSigillito.name().into(),
            reason: format!("defined for l >= 2, got {l}"),
        });
    }
    Ok(bound_kuttler_sigillito(domain, l / 2)?[l % 2])
}

/// Garcia–Montaño: `R_m^{n−2}/R_M^{n−1}·F(a)`, `l = 2` only.
pub fn bound_garcia_montano(consts: &DomainConstants, n: usize, l: usize) -> Result<BoundValue> {
    let formula = BoundFormula::GarciaMontano;
    require_l2(formula, l)?;
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "dimension must be >= 2, got {n}"
        )));
    }
    let value =
        consts.r_min.powi(n as i32 - 2) / consts.r_max.powi(n as i32 - 1) * shape_factor(consts.a)?;
    Ok(BoundValue {
        formula,
        l,
        value,
        factor: value * consts.r_min,
        needs_ball: false,
    })
}

/// Verma's spherical bound `(R_m/R_M)·F(a)·(sin R_m/sin R_M)^{n−1}·μ_2(B(R_m))`.
pub fn bound_verma_sphere(
    consts: &DomainConstants,
    ball: &BallSpectrum,
    l: usize,
) -> Result<BoundValue> {
    let formula = BoundFormula::VermaSphere;
    require_l2(formula, l)?;
    require_surface(formula, &ball.surface)?;
    check_ball(formula, consts, ball)?;
    let factor = consts.r_min / consts.r_max
        * shape_factor(consts.a)?
        * (consts.r_min.sin() / consts.r_max.sin()).powi(ball.n as i32 - 1);
    let mu = ball_mu(formula, ball, l)?;
    Ok(BoundValue {
        formula,
        l,
        value: factor * mu,
        factor,
        needs_ball: true,
    })
}

/// Bramble–Payne: `R_m^{n−1}/R_M^{n+1}·h_m`, `h_m = min ⟨x, ν⟩ = min R²/sqrt(R²+R'²)`.
pub fn bound_bramble_payne(
    domain: &StarDomain,
    consts: &DomainConstants,
    n: usize,
    l: usize,
) -> Result<BoundValue> {
    let formula = BoundFormula::BramblePayne;
    require_l2(formula, l)?;
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "dimension must be >= 2, got {n}"
        )));
    }
    let (_, h_m) = periodic_extremum(
        |t| {
            let r = domain.radius(t);
            r * r / r.hypot(domain.dradius(t))
        },
        EXTREMA_GRID,
        false,
    );
    let value = consts.r_min.powi(n as i32 - 1) / consts.r_max.powi(n as i32 + 1) * h_m;
    Ok(BoundValue {
        formula,
        l,
        value,
        factor: value * consts.r_min,
        needs_ball: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::domain_constants;
    use crate::radial::ball_spectrum;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_4, PI};

    fn consts(r_min: f64, r_max: f64, a: f64) -> DomainConstants {
        DomainConstants {
            r_min,
            r_max,
            a,
            alpha: a.sqrt().atan(),
        }
    }

    fn ellipse_like() -> StarDomain {
        StarDomain::new(vec![1.0, 0.0, 0.2], vec![]).unwrap()
    }

    #[test]
    fn shape_factor_values() {
        assert_eq!(shape_factor(0.0).unwrap(), 1.0);
        let direct = (2.75 - 3.5625f64.sqrt()) / (2.0 * 1.75f64.sqrt());
        assert!((shape_factor(0.75).unwrap() - direct).abs() < 1e-15);
        assert!((shape_factor(0.75).unwrap() - 0.32599).abs() < 5e-5);
        let big = shape_factor(1e6).unwrap();
        assert!(big > 0.0 && big < 2e-9);
        assert!((big * 1e6 * (1e6f64 + 1.0).sqrt() - 1.0).abs() < 1e-5);
        assert!(matches!(
            shape_factor(-1e-3),
            Err(Error::NegativeSteepness(_))
        ));
        assert!(shape_factor(f64::NAN).is_err());
    }

    #[test]
    fn shape_factor_decreasing_on_log_grid() {
        let mut prev = shape_factor(0.0).unwrap();
        for i in 0..=240 {
            let a = 10f64.powf(-6.0 + i as f64 * 0.05);
            let f = shape_factor(a).unwrap();
            assert!(f > 0.0 && f <= 1.0);
            assert!(f < prev, "not decreasing at a = {a}");
            prev = f;
        }
    }

    #[test]
    fn main_warped_equality_for_balls() {
        for (s, r) in [
            (SurfaceMetric::plane(), 1.3),
            (SurfaceMetric::sphere(), FRAC_PI_4),
            (SurfaceMetric::tanh(), 0.9),
        ] {
            let d = StarDomain::disc(r).unwrap();
            let c = domain_constants(&s, &d, 1024).unwrap();
            let ball = ball_spectrum(&s, c.r_min, 9, 2).unwrap();
            for l in 1..=9 {
                let b = bound_main_warped(&s, &c, &ball, l).unwrap();
                assert_eq!(b.factor, 1.0);
                assert_eq!(b.value, ball.mu(l).unwrap());
            }
        }
    }

    #[test]
    fn main_warped_plane_ellipse_like() {
        let s = SurfaceMetric::plane();
        let c = domain_constants(&s, &ellipse_like(), 4096).unwrap();
        let ball = ball_spectrum(&s, c.r_min, 3, 2).unwrap();
        let b = bound_main_warped(&s, &c, &ball, 2).unwrap();
        let want = (0.8 / 1.2) * shape_factor(c.a).unwrap() * (0.8 / 1.2) * (1.0 / 0.8);
        assert!((b.value - want).abs() < 1e-10);
        assert!(b.needs_ball);
    }

    #[test]
    fn main_warped_rejects_mismatches() {
        let s = SurfaceMetric::plane();
        let c = consts(1.0, 1.0, 0.0);
        let wrong_surface = ball_spectrum(&SurfaceMetric::sphere(), 1.0, 3, 2).unwrap();
        assert!(matches!(
            bound_main_warped(&s, &c, &wrong_surface, 2),
            Err(Error::BoundNotApplicable { .. })
        ));
        let wrong_radius = ball_spectrum(&s, 0.9, 3, 2).unwrap();
        assert!(bound_main_warped(&s, &c, &wrong_radius, 2).is_err());
        let short = ball_spectrum(&s, 1.0, 3, 2).unwrap();
        assert!(bound_main_warped(&s, &c, &short, 4).is_err());
        let para = ball_spectrum(&SurfaceMetric::Paraboloid, 1.0, 3, 2).unwrap();
        assert!(bound_main_warped(&SurfaceMetric::Paraboloid, &c, &para, 2).is_err());
    }

    #[test]
    fn paraboloid_bound_structure() {
        let p = SurfaceMetric::Paraboloid;
        let ball = ball_spectrum(&p, 0.5, 6, 2).unwrap();
        let eq = bound_paraboloid(&consts(0.5, 0.5, 0.0), &ball, 4).unwrap();
        assert_eq!(eq.value, ball.mu(4).unwrap());
        let one = bound_paraboloid(&consts(0.5, 0.75, 0.3), &ball, 2).unwrap();
        let two = bound_paraboloid(&consts(0.5, 1.5, 0.3), &ball, 2).unwrap();
        assert!((one.value / two.value - 8.0).abs() < 1e-12);
        let plane_ball = ball_spectrum(&SurfaceMetric::plane(), 0.5, 3, 2).unwrap();
        assert!(bound_paraboloid(&consts(0.5, 0.5, 0.0), &plane_ball, 2).is_err());
    }

    #[test]
    fn kuttler_sigillito_disc_equality() {
        for r in [0.5, 1.0, 2.5] {
            let d = StarDomain::disc(r).unwrap();
            for k in 1..=6 {
                let [even, odd] = bound_kuttler_sigillito(&d, k).unwrap();
                assert!((even.value - k as f64 / r).abs() < 1e-12);
                assert_eq!((even.l, odd.l), (2 * k, 2 * k + 1));
                assert_eq!(even.value, odd.value);
            }
        }
        assert!(bound_kuttler_sigillito(&StarDomain::disc(1.0).unwrap(), 0).is_err());
        assert!(bound_kuttler_sigillito_l(&StarDomain::disc(1.0).unwrap(), 1).is_err());
        let v = bound_kuttler_sigillito_l(&StarDomain::disc(2.0).unwrap(), 7).unwrap();
        assert_eq!(v.l, 7);
        assert!((v.value - 1.5).abs() < 1e-12);
    }

    #[test]
    fn kuttler_sigillito_against_brute_force() {
        let d = ellipse_like();
        let n = 200_000;
        let (mut g, mut den) = (0.0f64, 0.0f64);
        for i in 0..n {
            let t = 2.0 * PI * i as f64 / n as f64;
            let (r, rp) = (d.radius(t), d.dradius(t));
            g = g.max((rp / r).powi(2));
            den = den.max(r.hypot(rp));
        }
        let q = 1.0 / g;
        let want = (1.0 - 2.0 / (1.0 + (1.0 + 4.0 * q).sqrt())) / den;
        let got = bound_kuttler_sigillito(&d, 1).unwrap()[0].value;
        assert!((got - want).abs() < 1e-9, "{got} vs {want}");
    }

    #[test]
    fn first_nonzero_only_formulas_refuse_other_indices() {
        let c = consts(1.0, 1.0, 0.0);
        let d = StarDomain::disc(1.0).unwrap();
        let sball = ball_spectrum(&SurfaceMetric::sphere(), 1.0, 4, 2).unwrap();
        for l in [1, 3, 4] {
            assert!(matches!(
                bound_garcia_montano(&c, 2, l),
                Err(Error::OnlyFirstNonzero { .. })
            ));
            assert!(matches!(
                bound_verma_sphere(&c, &sball, l),
                Err(Error::OnlyFirstNonzero { .. })
            ));
            assert!(matches!(
                bound_bramble_payne(&d, &c, 2, l),
                Err(Error::OnlyFirstNonzero { .. })
            ));
        }
    }

    #[test]
    fn garcia_montano_examples() {
        let d = StarDomain::disc(1.7).unwrap();
        let c = domain_constants(&SurfaceMetric::plane(), &d, 1024).unwrap();
        assert!((bound_garcia_montano(&c, 2, 2).unwrap().value - 1.0 / 1.7).abs() < 1e-14);
        assert_eq!(
            bound_garcia_montano(&consts(1.0, 1.0, 0.0), 3, 2)
                .unwrap()
                .value,
            1.0
        );
    }

    #[test]
    fn garcia_montano_and_main_warped_coincide_for_balls() {
        let s = SurfaceMetric::plane();
        let c = consts(0.8, 0.8, 0.0);
        let ball = ball_spectrum(&s, 0.8, 3, 2).unwrap();
        let gm = bound_garcia_montano(&c, 2, 2).unwrap().value;
        let mw = bound_main_warped(&s, &c, &ball, 2).unwrap().value;
        assert!((gm - mw).abs() < 1e-10);
    }

    #[test]
    fn verma_matches_main_warped_on_sphere() {
        let s = SurfaceMetric::sphere();
        let d = StarDomain::new(vec![FRAC_PI_4, 0.0, 0.1], vec![0.0, 0.05]).unwrap();
        let c = domain_constants(&s, &d, 4096).unwrap();
        let ball = ball_spectrum(&s, c.r_min, 3, 2).unwrap();
        let vs = bound_verma_sphere(&c, &ball, 2).unwrap().value;
        let mw = bound_main_warped(&s, &c, &ball, 2).unwrap().value;
        assert!((vs - mw).abs() < 1e-14);
        let cap = StarDomain::disc(FRAC_PI_4).unwrap();
        let c = domain_constants(&s, &cap, 1024).unwrap();
        let ball = ball_spectrum(&s, c.r_min, 3, 2).unwrap();
        let vs = bound_verma_sphere(&c, &ball, 2).unwrap().value;
        assert!((vs - 1.0 / FRAC_PI_4.sin()).abs() < 1e-9);
    }

    #[test]
    fn bramble_payne_examples() {
        let d = StarDomain::disc(2.0).unwrap();
        let c = domain_constants(&SurfaceMetric::plane(), &d, 1024).unwrap();
        assert!((bound_bramble_payne(&d, &c, 2, 2).unwrap().value - 0.5).abs() < 1e-14);

        let d = ellipse_like();
        let c = domain_constants(&SurfaceMetric::plane(), &d, 4096).unwrap();
        let n = 200_000;
        let h_m = (0..n)
            .map(|i| {
                let t = 2.0 * PI * i as f64 / n as f64;
                let r = d.radius(t);
                r * r / r.hypot(d.dradius(t))
            })
            .fold(f64::INFINITY, f64::min);
        let want = c.r_min / c.r_max.powi(3) * h_m;
        assert!((bound_bramble_payne(&d, &c, 2, 2).unwrap().value - want).abs() < 1e-9);
    }

    #[test]
    fn applicability_table() {
        let plane = BoundFormula::applicable(&SurfaceMetric::plane());
        assert_eq!(
            plane,
            vec![
                BoundFormula::MainWarped,
                BoundFormula::KuttlerSigillito,
                BoundFormula::GarciaMontano,
                BoundFormula::BramblePayne
            ]
        );
        assert_eq!(
            BoundFormula::applicable(&SurfaceMetric::sphere()),
            vec![BoundFormula::MainWarped, BoundFormula::VermaSphere]
        );
        assert_eq!(
            BoundFormula::applicable(&SurfaceMetric::tanh()),
            vec![BoundFormula::MainWarped]
        );
        assert_eq!(
            BoundFormula::applicable(&SurfaceMetric::Paraboloid),
            vec![BoundFormula::ParaboloidMain]
        );
        for f in BoundFormula::ALL {
            assert_eq!(f.name().parse::<BoundFormula>().unwrap(), f);
        }
        assert!("nope".parse::<BoundFormula>().is_err());
    }

    fn plane_bounds(d: &StarDomain) -> Vec<f64> {
        let s = SurfaceMetric::plane();
        let c = domain_constants(&s, d, 1024).unwrap();
        let ball = ball_spectrum(&s, c.r_min, 3, 2).unwrap();
        vec![
            bound_main_warped(&s, &c, &ball, 2).unwrap().value,
            bound_kuttler_sigillito(d, 1).unwrap()[0].value,
            bound_garcia_montano(&c, 2, 2).unwrap().value,
            bound_bramble_payne(d, &c, 2, 2).unwrap().value,
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn plane_bounds_scale_inversely(e2 in -0.2f64..0.2, s3 in -0.1f64..0.1, c in 0.3f64..3.0) {
            let d = StarDomain::new(vec![1.0, 0.0, e2], vec![0.0, 0.0, s3]).unwrap();
            let base = plane_bounds(&d);
            let scaled = plane_bounds(&d.scaled(c).unwrap());
            for (b, s) in base.iter().zip(&scaled) {
                prop_assert!((s * c - b).abs() <= 1e-8 * b.abs());
                prop_assert!(*b >= 0.0);
            }
        }

        #[test]
        fn factors_at_most_one(e2 in -0.25f64..0.25, e3 in -0.1f64..0.1) {
            let d = StarDomain::new(vec![1.0, 0.0, e2, e3], vec![]).unwrap();
            let s = SurfaceMetric::plane();
            let c = domain_constants(&s, &d, 1024).unwrap();
            let ball = ball_spectrum(&s, c.r_min, 5, 2).unwrap();
            for l in 1..=5 {
                let b = bound_main_warped(&s, &c, &ball, l).unwrap();
                prop_assert!(b.factor > 0.0 && b.factor <= 1.0);
                prop_assert!(b.value >= 0.0);
            }
            prop_assert!(bound_garcia_montano(&c, 2, 2).unwrap().factor <= 1.0);
            prop_assert!(bound_bramble_payne(&d, &c, 2, 2).unwrap().factor <= 1.0 + 1e-12);
            prop_assert!(bound_kuttler_sigillito(&d, 2).unwrap()[0].factor <= 1.0 + 1e-12);
        }
    }
}
