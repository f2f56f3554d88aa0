//! Galerkin Dirichlet-to-Neumann eigenproblem on a harmonic basis.
//!
//! For harmonic `f`, `∫_Ω |∇f|² dv = ∫_{∂Ω} f ∂_ν f ds`, so restricting the
//! Rayleigh quotient to the span of globally harmonic separated solutions
//! `1, g_k(r) cos kθ, g_k(r) sin kθ` leaves two boundary integrals. Both are
//! evaluated by the trapezoidal rule in `θ`, which is spectrally accurate for
//! smooth periodic integrands.

use crate::geometry::{boundary_frame, domain_constants, StarDomain, SurfaceMetric};
use crate::numerics::{periodic_nodes, sym_geig, SymMatrix};
use crate::radial::{radial_profile, RadialProfile, DEFAULT_GRID, DEFAULT_RTOL};
use crate::{Error, Result};

/// Functions `φ_0 = 1`, `φ_{2k-1} = g_k cos kθ`, `φ_{2k} = g_k sin kθ`.
#[derive(Debug, Clone)]
pub struct HarmonicBasis {
    pub surface: SurfaceMetric,
    /// Radius at which every `g_k` is normalised to 1.
    pub r_max: f64,
    pub rtol: f64,
    pub profiles: Vec<RadialProfile>,
}

impl HarmonicBasis {
    pub fn new(surface: &SurfaceMetric, modes: usize, r_max: f64, rtol: f64) -> Result<Self> {
        let mut b = Self {
            surface: surface.clone(),
            r_max,
            rtol,
            profiles: Vec::new(),
        };
        b.extend(modes)?;
        Ok(b)
    }

    /// Adds profiles up to mode `modes`; existing ones are kept.
    pub fn extend(&mut self, modes: usize) -> Result<()> {
        for k in self.profiles.len() + 1..=modes {
            self.profiles.push(radial_profile(
                &self.surface,
                k,
                self.r_max,
                DEFAULT_GRID,
                self.rtol,
            )?);
        }
        Ok(())
    }

    pub fn modes(&self) -> usize {
        self.profiles.len()
    }

    pub fn size(&self) -> usize {
        2 * self.modes() + 1
    }
}

/// Galerkin matrices on `span{φ_0 … φ_{2K}}`.
#[derive(Debug, Clone)]
pub struct BoundaryMatrices {
    /// `∫ φ_i ∂_ν φ_j ds`, symmetrised.
    pub stiffness: SymMatrix,
    /// `∫ φ_i φ_j ds`
    pub mass: SymMatrix,
    /// `‖K - Kᵀ‖_max / ‖K‖_max` of the raw stiffness before symmetrisation.
    pub raw_asymmetry: f64,
}

/// Minimum node count for `K` modes.
pub fn min_nodes(modes: usize) -> usize {
    4 * modes + 16
}

/// Default node count `max(4K + 16, 256)`.
pub fn default_nodes(modes: usize) -> usize {
    min_nodes(modes).max(256)
}

pub fn assemble_boundary_matrices(
    surface: &SurfaceMetric,
    domain: &StarDomain,
    basis: &HarmonicBasis,
    nodes: usize,
) -> Result<BoundaryMatrices> {
    let modes = basis.modes();
    if nodes < min_nodes(modes) {
        return Err(Error::TooFewNodes {
            got: nodes,
            need: min_nodes(modes),
        });
    }
    let size = basis.size();
    let weight = 2.0 * std::f64::consts::PI / nodes as f64;
    let mut k_raw = vec![0.0; size * size];
    let mut mass = vec![0.0; size * size];
    let mut val = vec![0.0; size];
    let mut dnu = vec![0.0; size];
    for theta in periodic_nodes(nodes) {
        let frame = boundary_frame(surface, domain, theta);
        let (n_r, n_t) = frame.normal;
        val[0] = 1.0;
        dnu[0] = 0.0;
        for (idx, p) in basis.profiles.iter().enumerate() {
            let k = idx + 1;
            let (log_g, w) = p.eval(frame.r)?;
            let g = log_g.exp();
            let (s, c) = (k as f64 * theta).sin_cos();
            let kf = k as f64;
            // cos mode: f_r = w g cos, f_θ = -k g sin
            val[2 * k - 1] = g * c;
            dnu[2 * k - 1] = n_r * w * g * c - n_t * kf * g * s;
            // sin mode: f_r = w g sin, f_θ = k g cos
            val[2 * k] = g * s;
            dnu[2 * k] = n_r * w * g * s + n_t * kf * g * c;
        }
        let ds = frame.ds_dtheta * weight;
        for i in 0..size {
            let vi = val[i] * ds;
            let di = dnu[i] * ds;
            let row = i * size;
            for j in 0..size {
                mass[row + j] += vi * val[j];
                k_raw[row + j] += di * val[j];
            }
        }
    }
    let mut asym: f64 = 0.0;
    let mut kmax: f64 = 0.0;
    for i in 0..size {
        for j in 0..size {
            asym = asym.max((k_raw[i * size + j] - k_raw[j * size + i]).abs());
            kmax = kmax.max(k_raw[i * size + j].abs());
        }
    }
    Ok(BoundaryMatrices {
        stiffness: SymMatrix::symmetrized(size, &k_raw)?,
        mass: SymMatrix::symmetrized(size, &mass)?,
        raw_asymmetry: if kmax > 0.0 { asym / kmax } else { 0.0 },
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub k_init: usize,
    pub k_cap: usize,
    pub tol: f64,
    pub gram_drop: f64,
    pub rtol: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            k_init: 16,
            k_cap: 512,
            tol: 1e-8,
            gram_drop: 1e-12,
            rtol: DEFAULT_RTOL,
        }
    }
}

/// Eigenpairs of the pencil at one fixed basis size.
#[derive(Debug, Clone)]
pub struct GalerkinSolution {
    pub modes: usize,
    pub nodes: usize,
    pub eigenvalues: Vec<f64>,
    /// Coefficient vectors in the unscaled basis, column-major.
    pub vectors: Vec<f64>,
    pub dropped: usize,
    pub matrices: BoundaryMatrices,
}

impl GalerkinSolution {
    pub fn vector(&self, q: usize) -> &[f64] {
        let n = 2 * self.modes + 1;
        &self.vectors[q * n..(q + 1) * n]
    }
}

/// Solves `K c = μ M c` on the first `basis.modes()` modes with `nodes`
/// quadrature nodes. The basis is rescaled to unit boundary norm before the
/// mass whitening; the rescaling leaves the pencil's eigenvalues unchanged.
pub fn solve_galerkin(
    surface: &SurfaceMetric,
    domain: &StarDomain,
    basis: &HarmonicBasis,
    nodes: usize,
    gram_drop: f64,
) -> Result<GalerkinSolution> {
    let matrices = assemble_boundary_matrices(surface, domain, basis, nodes)?;
    let size = basis.size();
    let scale: Vec<f64> = (0..size)
        .map(|i| {
            let d = matrices.mass.get(i, i);
            if d > 0.0 {
                1.0 / d.sqrt()
            } else {
                1.0
            }
        })
        .collect();
    let ks = matrices.stiffness.scaled(&scale);
    let ms = matrices.mass.scaled(&scale);
    let ge = sym_geig(&ks, &ms, gram_drop)?;
    let mut vectors = ge.vectors;
    for q in 0..ge.values.len() {
        for (i, s) in scale.iter().enumerate() {
            vectors[q * size + i] *= s;
        }
    }
    Ok(GalerkinSolution {
        modes: basis.modes(),
        nodes,
        eigenvalues: ge.values,
        vectors,
        dropped: ge.dropped,
        matrices,
    })
}

/// Computed Steklov eigenvalues `μ_1 = 0 ≤ μ_2 ≤ …` of a star domain.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainSpectrum {
    pub eigenvalues: Vec<f64>,
    pub k_used: usize,
    pub quad_points: usize,
    pub regularization_drop: usize,
    pub converged: bool,
    pub est_error: f64,
}

impl DomainSpectrum {
    /// `μ_l`, 1-based.
    pub fn mu(&self, l: usize) -> Option<f64> {
        l.checked_sub(1)
            .and_then(|i| self.eigenvalues.get(i).copied())
    }

    /// Groups eigenvalues whose relative gap is below `1e-6`; diagnostic only.
    pub fn clusters(&self) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        let mut prev: Option<f64> = None;
        for &mu in &self.eigenvalues {
            match prev {
                Some(p) if (mu - p).abs() <= 1e-6 * mu.abs().max(p.abs()).max(1e-300) => {
                    *out.last_mut().unwrap() += 1;
                }
                _ => out.push(1),
            }
            prev = Some(mu);
        }
        out
    }
}

/// Doubles the number of modes from `k_init` until the first `l_max`
/// eigenvalues move by less than `tol·(1 + |μ|)` between rounds.
pub fn steklov_spectrum(
    surface: &SurfaceMetric,
    domain: &StarDomain,
    l_max: usize,
    opts: &SolverOptions,
) -> Result<DomainSpectrum> {
    if l_max < 2 {
        return Err(Error::InvalidArgument(format!(
            "l_max must be >= 2, got {l_max}"
        )));
    }
    if opts.k_init == 0 || opts.k_cap < opts.k_init {
        return Err(Error::InvalidArgument("need 0 < k_init <= k_cap".into()));
    }
    let consts = domain_constants(surface, domain, 4096)?;
    let mut modes = opts.k_init.max(l_max);
    if modes > opts.k_cap {
        return Err(Error::InvalidArgument(format!(
            "l_max = {l_max} needs more than k_cap modes"
        )));
    }
    let mut basis = HarmonicBasis::new(surface, modes, consts.r_max, opts.rtol)?;
    let mut prev: Option<GalerkinSolution> = None;
    loop {
        basis.extend(modes)?;
        let nodes = default_nodes(modes);
        let sol = solve_galerkin(surface, domain, &basis, nodes, opts.gram_drop)?;
        if sol.eigenvalues.len() < l_max {
            return Err(Error::InvalidArgument(format!(
                "only {} directions survive regularisation, need {l_max}",
                sol.eigenvalues.len()
            )));
        }
        if let Some(p) = &prev {
            let mut change: f64 = 0.0;
            let mut ok = true;
            for l in 0..l_max {
                let (a, b) = (sol.eigenvalues[l], p.eigenvalues[l]);
                let d = (a - b).abs();
                change = change.max(d);
                if d >= opts.tol * (1.0 + a.abs()) {
                    ok = false;
                }
            }
            let next = modes * 2;
            if ok || next > opts.k_cap {
                return Ok(DomainSpectrum {
                    eigenvalues: sol.eigenvalues[..l_max].to_vec(),
                    k_used: modes,
                    quad_points: nodes,
                    regularization_drop: sol.dropped,
                    converged: ok,
                    est_error: change,
                });
            }
        } else if modes * 2 > opts.k_cap {
            return Ok(DomainSpectrum {
                eigenvalues: sol.eigenvalues[..l_max].to_vec(),
                k_used: modes,
                quad_points: nodes,
                regularization_drop: sol.dropped,
                converged: false,
                est_error: f64::INFINITY,
            });
        }
        prev = Some(sol);
        modes *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn unit_disc_matrices() {
        let s = SurfaceMetric::plane();
        let d = StarDomain::disc(1.0).unwrap();
        let basis = HarmonicBasis::new(&s, 2, 1.0, 1e-11).unwrap();
        let m = assemble_boundary_matrices(&s, &d, &basis, 64).unwrap();
        let want_m = [2.0 * PI, PI, PI, PI, PI];
        let want_k = [0.0, PI, PI, 2.0 * PI, 2.0 * PI];
        for i in 0..5 {
            for j in 0..5 {
                let (em, ek) = if i == j {
                    (want_m[i], want_k[i])
                } else {
                    (0.0, 0.0)
                };
                assert!(close(m.mass.get(i, j), em, 1e-12), "M[{i}][{j}]");
                assert!(close(m.stiffness.get(i, j), ek, 1e-9), "K[{i}][{j}]");
            }
        }
    }

    #[test]
    fn constant_radius_matrices_diagonal() {
        for s in [
            SurfaceMetric::sphere(),
            SurfaceMetric::Paraboloid,
            SurfaceMetric::tanh(),
        ] {
            let d = StarDomain::disc(0.8).unwrap();
            let basis = HarmonicBasis::new(&s, 6, 0.8, 1e-11).unwrap();
            let m = assemble_boundary_matrices(&s, &d, &basis, 64).unwrap();
            let (kn, mn) = (m.stiffness.max_abs(), m.mass.max_abs());
            for i in 0..13 {
                for j in 0..13 {
                    if i != j {
                        assert!(m.stiffness.get(i, j).abs() < 1e-12 * kn);
                        assert!(m.mass.get(i, j).abs() < 1e-12 * mn);
                    }
                }
            }
        }
    }

    #[test]
    fn quadrature_exactness_diagnostic() {
        let s = SurfaceMetric::plane();
        let d = StarDomain::new(vec![1.0, 0.0, 0.2], vec![]).unwrap();
        let basis = HarmonicBasis::new(&s, 8, 1.2, 1e-11).unwrap();
        let m = assemble_boundary_matrices(&s, &d, &basis, 128).unwrap();
        assert!(m.raw_asymmetry < 1e-8, "{}", m.raw_asymmetry);
    }

    #[test]
    fn too_few_nodes() {
        let s = SurfaceMetric::plane();
        let d = StarDomain::disc(1.0).unwrap();
        let basis = HarmonicBasis::new(&s, 8, 1.0, 1e-10).unwrap();
        assert!(matches!(
            assemble_boundary_matrices(&s, &d, &basis, 40),
            Err(Error::TooFewNodes { .. })
        ));
    }

    #[test]
    fn domain_outside_profile_range() {
        let s = SurfaceMetric::plane();
        let d = StarDomain::disc(1.0).unwrap();
        let basis = HarmonicBasis::new(&s, 2, 0.5, 1e-10).unwrap();
        assert!(matches!(
            assemble_boundary_matrices(&s, &d, &basis, 64),
            Err(Error::OutsideProfile { .. })
        ));
    }

    #[test]
    fn disc_spectrum() {
        let sp = steklov_spectrum(
            &SurfaceMetric::plane(),
            &StarDomain::disc(1.0).unwrap(),
            9,
            &SolverOptions::default(),
        )
        .unwrap();
        assert!(sp.converged);
        for (a, b) in sp
            .eigenvalues
            .iter()
            .zip([0.0, 1.0, 1.0, 2.0, 2.0, 3.0, 3.0, 4.0, 4.0])
        {
            assert!(close(*a, b, 1e-10), "{a} vs {b}");
        }
        assert_eq!(sp.clusters(), vec![1, 2, 2, 2, 2]);
    }

    #[test]
    fn cap_spectrum() {
        let r = PI / 4.0;
        let sp = steklov_spectrum(
            &SurfaceMetric::sphere(),
            &StarDomain::disc(r).unwrap(),
            7,
            &SolverOptions::default(),
        )
        .unwrap();
        let c = 1.0 / r.sin();
        for (a, b) in sp
            .eigenvalues
            .iter()
            .zip([0.0, c, c, 2.0 * c, 2.0 * c, 3.0 * c, 3.0 * c])
        {
            assert!(close(*a, b, 1e-8 * (1.0 + b)), "{a} vs {b}");
        }
    }

    #[test]
    fn rayleigh_residuals_and_zero_mode() {
        let s = SurfaceMetric::plane();
        let d = StarDomain::new(vec![1.0, 0.0, 0.2], vec![]).unwrap();
        let basis = HarmonicBasis::new(&s, 16, 1.2, 1e-11).unwrap();
        let sol = solve_galerkin(&s, &d, &basis, 256, 1e-12).unwrap();
        for q in 0..8 {
            let c = sol.vector(q);
            let rq = sol.matrices.stiffness.quadratic_form(c) / sol.matrices.mass.quadratic_form(c);
            let mu = sol.eigenvalues[q];
            assert!((rq - mu).abs() < 1e-10 * (1.0 + mu), "q={q}");
        }
        let mut e0 = vec![0.0; basis.size()];
        e0[0] = 1.0;
        let ke = sol.matrices.stiffness.matvec(&e0);
        let norm = sol.matrices.stiffness.max_abs();
        assert!(ke.iter().all(|v| v.abs() < 1e-10 * norm));
        assert!(sol.eigenvalues[0].abs() < 1e-9);
    }

    #[test]
    fn rejects_small_l_max() {
        let r = steklov_spectrum(
            &SurfaceMetric::plane(),
            &StarDomain::disc(1.0).unwrap(),
            1,
            &SolverOptions::default(),
        );
        assert!(r.is_err());
    }

    #[test]
    fn non_convergence_is_flagged() {
        let d = StarDomain::new(vec![1.0, 0.0, 0.0, 0.35], vec![0.0, 0.1]).unwrap();
        let opts = SolverOptions {
            k_init: 4,
            k_cap: 8,
            tol: 1e-12,
            ..Default::default()
        };
        let sp = steklov_spectrum(&SurfaceMetric::plane(), &d, 6, &opts).unwrap();
        assert!(!sp.converged);
        assert!(sp.est_error > 0.0);
    }
}
