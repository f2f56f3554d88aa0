//! Finite-difference cross-check for Steklov spectra.
//!
//! The domain is mapped onto the unit polar rectangle `(ρ, φ) ∈ [0,1]×[0,2π)`
//! through `r = ρ·R(φ)`, `θ = φ`. The Dirichlet energy is discretized with
//! bilinear elements on the uniform `(ρ, φ)` grid (2×2 Gauss points per
//! cell, a single node at the pole) and the boundary mass is lumped on the
//! outer ring. The result is a second-order scheme. Interior unknowns are
//! eliminated by a banded Cholesky sweep, and the generalized eigenproblem
//! of the remaining boundary Schur complement gives the Steklov eigenvalues.
//!
//! Nothing here shares code with the harmonic-basis solver beyond the metric
//! coefficients and the boundary curve.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::geometry::{StarDomain, SurfaceMetric};
use crate::{Error, Result};

/// Eigenvalues of the discrete Steklov problem on one grid.
#[derive(Debug, Clone, PartialEq)]
pub struct FdSpectrum {
    pub n_rho: usize,
    pub n_phi: usize,
    /// Ascending, `eigenvalues[0] ≈ 0`.
    pub eigenvalues: Vec<f64>,
}

/// Two grids and their Richardson combination `(4μ_fine − μ_coarse)/3`.
#[derive(Debug, Clone, PartialEq)]
pub struct FdEstimate {
    pub coarse: FdSpectrum,
    pub fine: FdSpectrum,
    pub extrapolated: Vec<f64>,
}

impl FdEstimate {
    /// Extrapolated `μ_l`, 1-based.
    pub fn mu(&self, l: usize) -> Option<f64> {
        l.checked_sub(1)
            .and_then(|i| self.extrapolated.get(i).copied())
    }
}

// Position of angular index j inside a ring: 0, N−1, 1, N−2, … so that
// φ-neighbours, including the wrap-around pair, sit at most 2 apart.
fn ring_position(j: usize, n: usize) -> usize {
    if 2 * j < n {
        2 * j
    } else {
        2 * (n - j) - 1
    }
}

struct Grid {
    n_rho: usize,
    n_phi: usize,
}

impl Grid {
    fn size(&self) -> usize {
        1 + self.n_rho * self.n_phi
    }

    /// Global index of node `(i, j)`; ring 0 is the pole.
    fn index(&self, i: usize, j: usize) -> usize {
        if i == 0 {
            0
        } else {
            1 + (i - 1) * self.n_phi + ring_position(j % self.n_phi, self.n_phi)
        }
    }

    fn bandwidth(&self) -> usize {
        self.n_phi + 2
    }
}

/// Lower triangle of the stiffness matrix, one column at a time.
struct LowerColumns {
    cols: Vec<Vec<(usize, f64)>>,
}

impl LowerColumns {
    fn from_triplets(n: usize, mut entries: Vec<(usize, usize, f64)>) -> Self {
        entries.sort_by_key(|e| (e.1, e.0));
        let mut cols: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        for (i, j, v) in entries {
            let col = &mut cols[j];
            match col.last_mut() {
                Some((r, acc)) if *r == i => *acc += v,
                _ => col.push((i, v)),
            }
        }
        Self { cols }
    }
}

fn assemble(surface: &SurfaceMetric, domain: &StarDomain, grid: &Grid) -> Result<LowerColumns> {
    let (nr, np) = (grid.n_rho, grid.n_phi);
    let hr = 1.0 / nr as f64;
    let hp = 2.0 * PI / np as f64;
    let g = 0.5 / 3f64.sqrt();
    let gauss = [0.5 - g, 0.5 + g];
    let mut trip = Vec::with_capacity(16 * nr * np);
    for j in 0..np {
        for &t in &gauss {
            let phi = (j as f64 + t) * hp;
            let big_r = domain.radius(phi);
            let rp = domain.dradius(phi);
            if big_r <= 0.0 {
                return Err(Error::NonPositiveRadius {
                    theta: phi,
                    value: big_r,
                });
            }
            for i in 0..nr {
                let mut ke = [[0.0f64; 4]; 4];
                for &s in &gauss {
                    let rho = (i as f64 + s) * hr;
                    let r = rho * big_r;
                    let (a, b) = (surface.a(r), surface.b(r));
                    let jac = (a * b).sqrt() * big_r;
                    let shear = rho * rp / big_r;
                    let a11 = jac * (1.0 / (big_r * big_r * a) + shear * shear / b);
                    let a12 = -jac * shear / b;
                    let a22 = jac / b;
                    // Shape-function gradients in (ρ, φ) for nodes
                    // (i,j), (i+1,j), (i,j+1), (i+1,j+1).
                    let dr = [-(1.0 - t) / hr, (1.0 - t) / hr, -t / hr, t / hr];
                    let dp = [-(1.0 - s) / hp, -s / hp, (1.0 - s) / hp, s / hp];
                    let w = 0.25 * hr * hp;
                    for p in 0..4 {
                        for q in 0..4 {
                            ke[p][q] += w
                                * (a11 * dr[p] * dr[q]
                                    + a12 * (dr[p] * dp[q] + dp[p] * dr[q])
                                    + a22 * dp[p] * dp[q]);
                        }
                    }
                }
                let nodes = [
                    grid.index(i, j),
                    grid.index(i + 1, j),
                    grid.index(i, j + 1),
                    grid.index(i + 1, j + 1),
                ];
                for p in 0..4 {
                    for q in 0..4 {
                        if nodes[p] >= nodes[q] {
                            trip.push((nodes[p], nodes[q], ke[p][q]));
                        }
                    }
                }
            }
        }
    }
    Ok(LowerColumns::from_triplets(grid.size(), trip))
}

/// Eliminates the first `n − keep` unknowns of a banded SPD-on-the-interior
/// matrix and returns the trailing `keep × keep` Schur complement. Only a
/// window of `bw + 1` columns is held in memory.
fn banded_schur(mat: &LowerColumns, bw: usize, keep: usize) -> Result<Vec<f64>> {
    let n = mat.cols.len();
    if keep > bw + 1 || keep > n {
        return Err(Error::Dimension(format!(
            "window {} cannot hold {keep} kept unknowns",
            bw + 1
        )));
    }
    let width = bw + 1;
    // Slot c % width holds column c: entry (i, c) at offset i − c.
    let mut win = vec![0.0f64; width * width];
    let load = |win: &mut [f64], c: usize| {
        let slot = &mut win[(c % width) * width..(c % width + 1) * width];
        slot.fill(0.0);
        for &(i, v) in &mat.cols[c] {
            if i - c > bw {
                panic!("entry ({i}, {c}) outside bandwidth {bw}");
            }
            slot[i - c] = v;
        }
    };
    for c in 0..width.min(n) {
        load(&mut win, c);
    }
    let eliminate = n - keep;
    let mut pivot_col = vec![0.0f64; width];
    for k in 0..eliminate {
        let base = (k % width) * width;
        let d = win[base];
        if !(d > 0.0) {
            return Err(Error::IndefiniteMass { min: d, norm: 0.0 });
        }
        let last = (k + bw).min(n - 1);
        pivot_col[..=last - k].copy_from_slice(&win[base..base + last - k + 1]);
        for j in k + 1..=last {
            let ljk = pivot_col[j - k] / d;
            if ljk == 0.0 {
                continue;
            }
            let cb = (j % width) * width;
            let col = &mut win[cb..cb + last - j + 1];
            let src = &pivot_col[j - k..=last - k];
            for (x, s) in col.iter_mut().zip(src) {
                *x -= ljk * s;
            }
        }
        if k + width < n {
            load(&mut win, k + width);
        }
    }
    let mut out = vec![0.0; keep * keep];
    for a in 0..keep {
        for b in 0..=a {
            let (i, c) = (eliminate + a, eliminate + b);
            let v = win[(c % width) * width + (i - c)];
            out[a * keep + b] = v;
            out[b * keep + a] = v;
        }
    }
    Ok(out)
}

/// Steklov eigenvalues of the discretization on an `n_rho × n_phi` grid.
pub fn fd_steklov(
    surface: &SurfaceMetric,
    domain: &StarDomain,
    n_rho: usize,
    n_phi: usize,
    count: usize,
) -> Result<FdSpectrum> {
    if n_rho < 2 || n_phi < 8 || n_phi % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "grid {n_rho}x{n_phi}: need n_rho >= 2 and even n_phi >= 8"
        )));
    }
    if count == 0 || count > n_phi {
        return Err(Error::InvalidArgument(format!(
            "count must be in 1..={n_phi}"
        )));
    }
    let hp = 2.0 * PI / n_phi as f64;
    let mut weights = Vec::with_capacity(n_phi);
    for j in 0..n_phi {
        let phi = j as f64 * hp;
        let (r, rp) = (domain.radius(phi), domain.dradius(phi));
        if r > surface.domain_max() {
            return Err(Error::DomainExceeded {
                r,
                max: surface.domain_max(),
            });
        }
        weights.push((surface.a(r) * rp * rp + surface.b(r)).sqrt() * hp);
    }
    let grid = Grid { n_rho, n_phi };
    let mat = assemble(surface, domain, &grid)?;
    let schur = banded_schur(&mat, grid.bandwidth(), n_phi)?;

    // Schur rows follow ring order; map back to angular index.
    let first = grid.index(n_rho, 0);
    let mut pos_of = vec![0usize; n_phi];
    for (j, p) in pos_of.iter_mut().enumerate() {
        *p = grid.index(n_rho, j) - first;
    }
    let scale: Vec<f64> = weights.iter().map(|w| 1.0 / w.sqrt()).collect();
    let m = DMatrix::from_fn(n_phi, n_phi, |a, b| {
        schur[pos_of[a] * n_phi + pos_of[b]] * scale[a] * scale[b]
    });
    let eig = SymmetricEigen::new(m);
    let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values.truncate(count);
    Ok(FdSpectrum {
        n_rho,
        n_phi,
        eigenvalues: values,
    })
}

/// Runs the `n_rho × n_phi` grid and its refinement `2n_rho × 2n_phi`, then
/// removes the leading `h²` error term.
pub fn fd_richardson(
    surface: &SurfaceMetric,
    domain: &StarDomain,
    n_rho: usize,
    n_phi: usize,
    count: usize,
) -> Result<FdEstimate> {
    let (coarse, fine) = rayon::join(
        || fd_steklov(surface, domain, n_rho, n_phi, count),
        || fd_steklov(surface, domain, 2 * n_rho, 2 * n_phi, count),
    );
    let (coarse, fine) = (coarse?, fine?);
    let extrapolated = coarse
        .eigenvalues
        .iter()
        .zip(&fine.eigenvalues)
        .map(|(c, f)| (4.0 * f - c) / 3.0)
        .collect();
    Ok(FdEstimate {
        coarse,
        fine,
        extrapolated,
    })
}
