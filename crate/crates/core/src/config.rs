//! Flat `key = value` run configuration.
//!
//! ```text
//! # comments start with '#'
//! surface.kind = sphere
//! domain.cos = [0.785, 0, 0.05]
//! verify.l_max = 8
//! ```
//!
//! Keys are dotted, values are numbers, bare words, or `[a, b, …]` lists.
//! Unknown and repeated keys are rejected. [`RunConfig::emit`] writes every
//! field in a fixed order, so `parse(emit(c)) == c` and the emitted text is
//! a canonical form for hashing.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use crate::bounds::BoundFormula;
use crate::dtn_solver::SolverOptions;
use crate::geometry::{StarDomain, SurfaceMetric, WarpFunction};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum SurfaceSpec {
    Plane,
    Sphere,
    Tanh,
    Spline { knots: Vec<f64>, values: Vec<f64> },
    Paraboloid,
}

#[derive(Debug, Clone, PartialEq)]
pub enum DomainSpec {
    /// `R ≡ radius`.
    Constant(f64),
    Fourier {
        cos: Vec<f64>,
        sin: Vec<f64>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub surface: SurfaceSpec,
    /// Overrides the warp's default domain of definition.
    pub surface_domain_max: Option<f64>,
    pub domain: DomainSpec,
    /// Ball radius for `ball-spectrum`; defaults to the domain's constant radius.
    pub ball_radius: Option<f64>,
    pub ball_n: usize,
    pub ball_count: usize,
    pub spectrum_l_max: usize,
    pub solver: SolverOptions,
    pub verify_l_min: usize,
    pub verify_l_max: usize,
    /// `None` selects every formula applicable to the surface.
    pub verify_formulas: Option<Vec<BoundFormula>>,
    pub verify_rel_slack: f64,
    /// `0` verifies the configured domain; otherwise a seeded random suite.
    pub suite_count: usize,
    pub suite_max_mode: usize,
    pub suite_max_eps: f64,
    pub seed: u64,
    pub sweep_base_radius: f64,
    pub sweep_cos: Vec<f64>,
    pub sweep_sin: Vec<f64>,
    pub sweep_eps: Vec<f64>,
    pub sweep_l: usize,
    /// Worker threads, `0` = all logical cores.
    pub jobs: usize,
    pub output_json: Option<String>,
    pub output_csv: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            surface: SurfaceSpec::Plane,
            surface_domain_max: None,
            domain: DomainSpec::Constant(1.0),
            ball_radius: None,
            ball_n: 2,
            ball_count: 9,
            spectrum_l_max: 9,
            solver: SolverOptions::default(),
            verify_l_min: 1,
            verify_l_max: 8,
            verify_formulas: None,
            verify_rel_slack: 1e-6,
            suite_count: 0,
            suite_max_mode: 3,
            suite_max_eps: 0.05,
            seed: 42,
            sweep_base_radius: 1.0,
            sweep_cos: vec![0.0, 0.0, 0.0, 1.0],
            sweep_sin: Vec::new(),
            sweep_eps: vec![0.2, 0.1, 0.05, 0.025],
            sweep_l: 2,
            jobs: 0,
            output_json: None,
            output_csv: None,
        }
    }
}

const KEYS: &[&str] = &[
    "surface.kind",
    "surface.knots",
    "surface.values",
    "surface.domain_max",
    "domain.radius",
    "domain.cos",
    "domain.sin",
    "ball.radius",
    "ball.n",
    "ball.count",
    "spectrum.l_max",
    "solver.k_init",
    "solver.k_cap",
    "solver.tol",
    "solver.gram_drop",
    "solver.rtol",
    "verify.l_min",
    "verify.l_max",
    "verify.formulas",
    "verify.rel_slack",
    "suite.count",
    "suite.max_mode",
    "suite.max_eps",
    "suite.seed",
    "sweep.base_radius",
    "sweep.cos",
    "sweep.sin",
    "sweep.eps",
    "sweep.l",
    "run.jobs",
    "output.json",
    "output.csv",
];

fn cfg_err(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

fn parse_f64(key: &str, v: &str) -> Result<f64> {
    let x: f64 = v
        .trim()
        .parse()
        .map_err(|_| cfg_err(format!("{key}: '{v}' is not a number")))?;
    if !x.is_finite() {
        return Err(cfg_err(format!("{key}: value must be finite")));
    }
    Ok(x)
}

fn parse_usize(key: &str, v: &str) -> Result<usize> {
    v.trim()
        .parse()
        .map_err(|_| cfg_err(format!("{key}: '{v}' is not a non-negative integer")))
}

fn list_items<'a>(key: &str, v: &'a str) -> Result<Vec<&'a str>> {
    let v = v.trim();
    let inner = v
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| cfg_err(format!("{key}: expected a [..] list, got '{v}'")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    Ok(inner.split(',').map(str::trim).collect())
}

fn parse_list(key: &str, v: &str) -> Result<Vec<f64>> {
    list_items(key, v)?
        .into_iter()
        .map(|s| parse_f64(key, s))
        .collect()
}

fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

fn fmt_list(xs: &[f64]) -> String {
    let items: Vec<String> = xs.iter().map(|x| fmt_f64(*x)).collect();
    format!("[{}]", items.join(", "))
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut map: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| cfg_err(format!("line {}: expected key = value", no + 1)))?;
            let k = k.trim();
            if !KEYS.contains(&k) {
                return Err(cfg_err(format!("line {}: unknown key '{k}'", no + 1)));
            }
            if map.insert(k, (no + 1, v.trim())).is_some() {
                return Err(cfg_err(format!("line {}: duplicate key '{k}'", no + 1)));
            }
        }
        let get = |k: &str| map.get(k).map(|(_, v)| *v);
        let mut c = RunConfig::default();

        let kind = get("surface.kind").unwrap_or("plane");
        c.surface = match kind {
            "plane" => SurfaceSpec::Plane,
            "sphere" => SurfaceSpec::Sphere,
            "tanh" => SurfaceSpec::Tanh,
            "paraboloid" => SurfaceSpec::Paraboloid,
            "spline" => SurfaceSpec::Spline {
                knots: parse_list(
                    "surface.knots",
                    get("surface.knots").ok_or_else(|| cfg_err("spline needs surface.knots"))?,
                )?,
                values: parse_list(
                    "surface.values",
                    get("surface.values").ok_or_else(|| cfg_err("spline needs surface.values"))?,
                )?,
            },
            other => return Err(cfg_err(format!("surface.kind: unknown surface '{other}'"))),
        };
        if kind != "spline" && (get("surface.knots").is_some() || get("surface.values").is_some()) {
            return Err(cfg_err(
                "surface.knots/values only apply to surface.kind = spline",
            ));
        }
        if let Some(v) = get("surface.domain_max") {
            c.surface_domain_max = Some(parse_f64("surface.domain_max", v)?);
        }

        c.domain = match (get("domain.radius"), get("domain.cos"), get("domain.sin")) {
            (Some(r), None, None) => DomainSpec::Constant(parse_f64("domain.radius", r)?),
            (None, Some(cs), sn) => DomainSpec::Fourier {
                cos: parse_list("domain.cos", cs)?,
                sin: sn
                    .map(|s| parse_list("domain.sin", s))
                    .transpose()?
                    .unwrap_or_default(),
            },
            (None, None, None) => DomainSpec::Constant(1.0),
            _ => {
                return Err(cfg_err(
                    "give either domain.radius or domain.cos (+ domain.sin)",
                ))
            }
        };

        if let Some(v) = get("ball.radius") {
            c.ball_radius = Some(parse_f64("ball.radius", v)?);
        }
        macro_rules! set {
            ($key:literal, $field:expr, $parser:ident) => {
                if let Some(v) = get($key) {
                    $field = $parser($key, v)?;
                }
            };
        }
        set!("ball.n", c.ball_n, parse_usize);
        set!("ball.count", c.ball_count, parse_usize);
        set!("spectrum.l_max", c.spectrum_l_max, parse_usize);
        set!("solver.k_init", c.solver.k_init, parse_usize);
        set!("solver.k_cap", c.solver.k_cap, parse_usize);
        set!("solver.tol", c.solver.tol, parse_f64);
        set!("solver.gram_drop", c.solver.gram_drop, parse_f64);
        set!("solver.rtol", c.solver.rtol, parse_f64);
        set!("verify.l_min", c.verify_l_min, parse_usize);
        set!("verify.l_max", c.verify_l_max, parse_usize);
        set!("verify.rel_slack", c.verify_rel_slack, parse_f64);
        if let Some(v) = get("verify.formulas") {
            let names = list_items("verify.formulas", v)?;
            c.verify_formulas = Some(
                names
                    .into_iter()
                    .map(str::parse)
                    .collect::<Result<_>>()
                    .map_err(|e| cfg_err(e.to_string()))?,
            );
        }
        set!("suite.count", c.suite_count, parse_usize);
        set!("suite.max_mode", c.suite_max_mode, parse_usize);
        set!("suite.max_eps", c.suite_max_eps, parse_f64);
        if let Some(v) = get("suite.seed") {
            c.seed = v
                .trim()
                .parse()
                .map_err(|_| cfg_err(format!("suite.seed: '{v}' is not an integer")))?;
        }
        set!("sweep.base_radius", c.sweep_base_radius, parse_f64);
        set!("sweep.cos", c.sweep_cos, parse_list);
        set!("sweep.sin", c.sweep_sin, parse_list);
        set!("sweep.eps", c.sweep_eps, parse_list);
        set!("sweep.l", c.sweep_l, parse_usize);
        set!("run.jobs", c.jobs, parse_usize);
        c.output_json = get("output.json").map(str::to_string);
        c.output_csv = get("output.csv").map(str::to_string);
        c.validate()?;
        Ok(c)
    }

    /// Every field, one key per line, in a fixed order.
    pub fn emit(&self) -> String {
        let mut s = String::new();
        let mut put = |k: &str, v: String| {
            let _ = writeln!(s, "{k} = {v}");
        };
        match &self.surface {
            SurfaceSpec::Plane => put("surface.kind", "plane".into()),
            SurfaceSpec::Sphere => put("surface.kind", "sphere".into()),
            SurfaceSpec::Tanh => put("surface.kind", "tanh".into()),
            SurfaceSpec::Paraboloid => put("surface.kind", "paraboloid".into()),
            SurfaceSpec::Spline { knots, values } => {
                put("surface.kind", "spline".into());
                put("surface.knots", fmt_list(knots));
                put("surface.values", fmt_list(values));
            }
        }
        if let Some(m) = self.surface_domain_max {
            put("surface.domain_max", fmt_f64(m));
        }
        match &self.domain {
            DomainSpec::Constant(r) => put("domain.radius", fmt_f64(*r)),
            DomainSpec::Fourier { cos, sin } => {
                put("domain.cos", fmt_list(cos));
                put("domain.sin", fmt_list(sin));
            }
        }
        if let Some(r) = self.ball_radius {
            put("ball.radius", fmt_f64(r));
        }
        put("ball.n", self.ball_n.to_string());
        put("ball.count", self.ball_count.to_string());
        put("spectrum.l_max", self.spectrum_l_max.to_string());
        put("solver.k_init", self.solver.k_init.to_string());
        put("solver.k_cap", self.solver.k_cap.to_string());
        put("solver.tol", fmt_f64(self.solver.tol));
        put("solver.gram_drop", fmt_f64(self.solver.gram_drop));
        put("solver.rtol", fmt_f64(self.solver.rtol));
        put("verify.l_min", self.verify_l_min.to_string());
        put("verify.l_max", self.verify_l_max.to_string());
        if let Some(fs) = &self.verify_formulas {
            let names: Vec<&str> = fs.iter().map(|f| f.name()).collect();
            put("verify.formulas", format!("[{}]", names.join(", ")));
        }
        put("verify.rel_slack", fmt_f64(self.verify_rel_slack));
        put("suite.count", self.suite_count.to_string());
        put("suite.max_mode", self.suite_max_mode.to_string());
        put("suite.max_eps", fmt_f64(self.suite_max_eps));
        put("suite.seed", self.seed.to_string());
        put("sweep.base_radius", fmt_f64(self.sweep_base_radius));
        put("sweep.cos", fmt_list(&self.sweep_cos));
        put("sweep.sin", fmt_list(&self.sweep_sin));
        put("sweep.eps", fmt_list(&self.sweep_eps));
        put("sweep.l", self.sweep_l.to_string());
        put("run.jobs", self.jobs.to_string());
        if let Some(p) = &self.output_json {
            put("output.json", p.clone());
        }
        if let Some(p) = &self.output_csv {
            put("output.csv", p.clone());
        }
        s
    }

    /// SHA-256 of the canonical emitted form, hex encoded.
    /// SHA-256 of the canonical form without `run.*` and `output.*`,
    /// which do not change any computed value.
    pub fn hash(&self) -> String {
        let body: String = self
            .emit()
            .lines()
            .filter(|l| !l.starts_with("run.") && !l.starts_with("output."))
            .map(|l| format!("{l}\n"))
            .collect();
        let digest = Sha256::digest(body.as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.ball_n < 2 {
            return Err(cfg_err("ball.n must be >= 2"));
        }
        if self.ball_count == 0 {
            return Err(cfg_err("ball.count must be >= 1"));
        }
        if self.spectrum_l_max < 2 {
            return Err(cfg_err("spectrum.l_max must be >= 2"));
        }
        if self.verify_l_min == 0 || self.verify_l_max < self.verify_l_min.max(2) {
            return Err(cfg_err(
                "need 1 <= verify.l_min <= verify.l_max and verify.l_max >= 2",
            ));
        }
        if self.sweep_eps.is_empty() {
            return Err(cfg_err("sweep.eps must not be empty"));
        }
        if self.sweep_l < 2 {
            return Err(cfg_err("sweep.l must be >= 2"));
        }
        if self.suite_count > 0 && self.suite_max_mode == 0 {
            return Err(cfg_err("suite.max_mode must be >= 1"));
        }
        if matches!(&self.domain, DomainSpec::Fourier { cos, .. } if cos.is_empty()) {
            return Err(cfg_err("domain.cos needs at least the constant term"));
        }
        if let Some(fs) = &self.verify_formulas {
            let surface = self.surface_metric()?;
            if let Some(f) = fs.iter().find(|f| !f.applies_to(&surface)) {
                return Err(cfg_err(format!(
                    "formula {f} does not apply to the {} surface",
                    surface.name()
                )));
            }
        }
        Ok(())
    }

    pub fn surface_metric(&self) -> Result<SurfaceMetric> {
        let warp = match &self.surface {
            SurfaceSpec::Paraboloid => {
                if self.surface_domain_max.is_some() {
                    return Err(cfg_err(
                        "surface.domain_max does not apply to the paraboloid",
                    ));
                }
                return Ok(SurfaceMetric::Paraboloid);
            }
            SurfaceSpec::Plane => WarpFunction::plane(),
            SurfaceSpec::Sphere => WarpFunction::sphere(),
            SurfaceSpec::Tanh => WarpFunction::tanh(),
            SurfaceSpec::Spline { knots, values } => {
                WarpFunction::tabulated(knots.clone(), values.clone())
                    .map_err(|e| cfg_err(e.to_string()))?
            }
        };
        let warp = match self.surface_domain_max {
            Some(m) => warp
                .with_domain_max(m)
                .map_err(|e| cfg_err(e.to_string()))?,
            None => warp,
        };
        Ok(SurfaceMetric::Warped(warp))
    }

    pub fn star_domain(&self) -> Result<StarDomain> {
        let d = match &self.domain {
            DomainSpec::Constant(r) => StarDomain::disc(*r),
            DomainSpec::Fourier { cos, sin } => StarDomain::new(cos.clone(), sin.clone()),
        };
        d.map_err(|e| cfg_err(format!("domain: {e}")))
    }

    pub fn l_range(&self) -> Vec<usize> {
        (self.verify_l_min..=self.verify_l_max).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_minimal_and_defaults() {
        let c = RunConfig::parse("surface.kind = sphere\ndomain.radius = 0.7\n").unwrap();
        assert_eq!(c.surface, SurfaceSpec::Sphere);
        assert_eq!(c.domain, DomainSpec::Constant(0.7));
        assert_eq!(c.spectrum_l_max, 9);
        assert_eq!(RunConfig::parse("").unwrap(), RunConfig::default());
    }

    #[test]
    fn comments_lists_and_formulas() {
        let text = "# header\nsurface.kind = plane  # inline\ndomain.cos = [1.0, 0, 0.2]\n\
                    domain.sin = []\nverify.formulas = [main_warped, kuttler_sigillito]\n";
        let c = RunConfig::parse(text).unwrap();
        assert_eq!(
            c.domain,
            DomainSpec::Fourier {
                cos: vec![1.0, 0.0, 0.2],
                sin: vec![]
            }
        );
        assert_eq!(
            c.verify_formulas,
            Some(vec![
                BoundFormula::MainWarped,
                BoundFormula::KuttlerSigillito
            ])
        );
        assert!(c.star_domain().unwrap().radius(0.0) - 1.2 < 1e-15);
    }

    #[test]
    fn rejects_bad_input() {
        for bad in [
            "surface.colour = red",
            "surface.kind = torus",
            "domain.radius = 1\ndomain.radius = 2",
            "domain.radius = 1\ndomain.cos = [1]",
            "spectrum.l_max = -3",
            "spectrum.l_max = 1",
            "sweep.eps = []",
            "domain.cos = 1.0",
            "solver.tol = abc",
            "solver.tol = inf",
            "no equals sign",
            "surface.kind = sphere\nverify.formulas = [kuttler_sigillito]",
            "verify.formulas = [nonsense]",
            "surface.knots = [0, 1]",
        ] {
            assert!(
                matches!(RunConfig::parse(bad), Err(Error::Config(_))),
                "accepted: {bad}"
            );
        }
    }

    #[test]
    fn spline_surface() {
        let c = RunConfig::parse(
            "surface.kind = spline\nsurface.knots = [0, 0.5, 1, 1.5, 2]\nsurface.values = [0, 0.5, 1, 1.5, 2]\n",
        )
        .unwrap();
        let s = c.surface_metric().unwrap();
        assert!((s.warp().unwrap().h(0.75) - 0.75).abs() < 1e-12);
        assert_eq!(RunConfig::parse(&c.emit()).unwrap(), c);
    }

    #[test]
    fn hash_is_stable_and_sensitive() {
        let a = RunConfig::default();
        let mut b = a.clone();
        assert_eq!(a.hash(), b.hash());
        assert_eq!(a.hash().len(), 64);
        b.jobs = 3;
        b.output_json = Some("x.json".into());
        assert_eq!(a.hash(), b.hash());
        b.seed += 1;
        assert_ne!(a.hash(), b.hash());
    }

    fn arb_list() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-10.0f64..10.0, 0..5)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn emit_parse_round_trip(
            kind in 0usize..4,
            fourier in any::<bool>(),
            r in 0.1f64..3.0,
            extra_cos in arb_list(),
            sin in arb_list(),
            tol in 1e-12f64..1e-4,
            eps in prop::collection::vec(0.001f64..0.5, 1..6),
            seed in any::<u64>(),
            jobs in 0usize..16,
            json in prop::option::of("[a-z]{1,8}\\.json"),
        ) {
            let mut c = RunConfig::default();
            c.surface = [SurfaceSpec::Plane, SurfaceSpec::Sphere, SurfaceSpec::Tanh, SurfaceSpec::Paraboloid][kind].clone();
            c.domain = if fourier {
                let mut cos = vec![r];
                cos.extend(extra_cos);
                DomainSpec::Fourier { cos, sin }
            } else {
                DomainSpec::Constant(r)
            };
            c.solver.tol = tol;
            c.sweep_eps = eps;
            c.seed = seed;
            c.jobs = jobs;
            c.output_json = json;
            let text = c.emit();
            let back = RunConfig::parse(&text).unwrap();
            prop_assert_eq!(&back, &c);
            prop_assert_eq!(back.emit(), text);
        }
    }
}
