//! Dense symmetric eigensolvers.
//!
//! The standard problem uses Householder tridiagonalisation followed by the
//! implicit QL iteration with Wilkinson shifts (EISPACK `tred2`/`tql2`).
//! Both are deterministic: identical inputs give bit-identical outputs.

use crate::{Error, Result};

/// Dense symmetric matrix. Entries are stored in full, and every setter
/// writes both triangles, so symmetry is exact by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn from_diagonal(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, &v) in d.iter().enumerate() {
            m.data[i * d.len() + i] = v;
        }
        m
    }

    /// Builds `(A + Aᵀ)/2` from a row-major square matrix.
    pub fn symmetrized(n: usize, full: &[f64]) -> Result<Self> {
        if full.len() != n * n {
            return Err(Error::Dimension(format!(
                "expected {} entries, got {}",
                n * n,
                full.len()
            )));
        }
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..=i {
                let v = 0.5 * (full[i * n + j] + full[j * n + i]);
                m.data[i * n + j] = v;
                m.data[j * n + i] = v;
            }
        }
        Ok(m)
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let flat: Vec<f64> = rows.iter().flatten().copied().collect();
        Self::symmetrized(n, &flat)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = v;
    }

    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] += v;
        if i != j {
            self.data[j * self.n + i] += v;
        }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |a, b| a.max(b.abs()))
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.n;
        (0..n)
            .map(|i| {
                self.data[i * n..(i + 1) * n]
                    .iter()
                    .zip(x)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        self.matvec(x).iter().zip(x).map(|(a, b)| a * b).sum()
    }

    /// `Dᵀ A D` for a diagonal scaling `D`.
    pub fn scaled(&self, d: &[f64]) -> SymMatrix {
        let n = self.n;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out.data[i * n + j] *= d[i] * d[j];
            }
        }
        out
    }
}

/// Eigenvalues (ascending) and eigenvectors of a symmetric matrix.
#[derive(Debug, Clone)]
pub struct SymEigen {
    pub values: Vec<f64>,
    /// Column-major: vector `k` is `vectors[k*n .. (k+1)*n]`.
    pub vectors: Vec<f64>,
    pub n: usize,
}

impl SymEigen {
    pub fn vector(&self, k: usize) -> &[f64] {
        &self.vectors[k * self.n..(k + 1) * self.n]
    }
}

pub fn sym_eig(a: &SymMatrix) -> Result<SymEigen> {
    let n = a.order();
    if !a.is_finite() {
        return Err(Error::InvalidArgument(
            "matrix has non-finite entries".into(),
        ));
    }
    if n == 0 {
        return Ok(SymEigen {
            values: vec![],
            vectors: vec![],
            n,
        });
    }
    // v is column-major: v[col * n + row]
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            v[j * n + i] = a.get(i, j);
        }
    }
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tred2(n, &mut v, &mut d, &mut e);
    tql2(n, &mut v, &mut d, &mut e)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].total_cmp(&d[j]).then(i.cmp(&j)));
    let values = order.iter().map(|&i| d[i]).collect();
    let mut vectors = vec![0.0; n * n];
    for (k, &i) in order.iter().enumerate() {
        let src = &v[i * n..(i + 1) * n];
        // fix the sign so that the largest component is positive
        let (mut big, mut sign) = (0.0f64, 1.0);
        for &x in src {
            if x.abs() > big {
                big = x.abs();
                sign = x.signum();
            }
        }
        for r in 0..n {
            vectors[k * n + r] = sign * src[r];
        }
    }
    Ok(SymEigen { values, vectors, n })
}

#[inline]
fn at(v: &[f64], n: usize, row: usize, col: usize) -> f64 {
    v[col * n + row]
}

#[inline]
fn at_mut(v: &mut [f64], n: usize, row: usize, col: usize) -> &mut f64 {
    &mut v[col * n + row]
}

fn tred2(n: usize, v: &mut [f64], d: &mut [f64], e: &mut [f64]) {
    for j in 0..n {
        d[j] = at(v, n, n - 1, j);
    }
    for i in (1..n).rev() {
        let mut scale = 0.0;
        let mut h = 0.0;
        for k in 0..i {
            scale += d[k].abs();
        }
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = at(v, n, i - 1, j);
                *at_mut(v, n, i, j) = 0.0;
                *at_mut(v, n, j, i) = 0.0;
            }
        } else {
            for k in 0..i {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            let mut f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for ej in e.iter_mut().take(i) {
                *ej = 0.0;
            }
            for j in 0..i {
                f = d[j];
                *at_mut(v, n, j, i) = f;
                g = e[j] + at(v, n, j, j) * f;
                for k in (j + 1)..i {
                    let vkj = at(v, n, k, j);
                    g += vkj * d[k];
                    e[k] += vkj * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                for k in j..i {
                    *at_mut(v, n, k, j) -= f * e[k] + g * d[k];
                }
                d[j] = at(v, n, i - 1, j);
                *at_mut(v, n, i, j) = 0.0;
            }
        }
        d[i] = h;
    }
    for i in 0..n - 1 {
        let vii = at(v, n, i, i);
        *at_mut(v, n, n - 1, i) = vii;
        *at_mut(v, n, i, i) = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = at(v, n, k, i + 1) / h;
            }
            for j in 0..=i {
                let mut g = 0.0;
                for k in 0..=i {
                    g += at(v, n, k, i + 1) * at(v, n, k, j);
                }
                for k in 0..=i {
                    *at_mut(v, n, k, j) -= g * d[k];
                }
            }
        }
        for k in 0..=i {
            *at_mut(v, n, k, i + 1) = 0.0;
        }
    }
    for j in 0..n {
        d[j] = at(v, n, n - 1, j);
        *at_mut(v, n, n - 1, j) = 0.0;
    }
    *at_mut(v, n, n - 1, n - 1) = 1.0;
    e[0] = 0.0;
}

fn tql2(n: usize, v: &mut [f64], d: &mut [f64], e: &mut [f64]) -> Result<()> {
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    let eps = f64::EPSILON;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > 60 {
                    return Err(Error::EigenNoConvergence);
                }
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().take(n).skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    let (lo, hi) = v.split_at_mut((i + 1) * n);
                    let col_i = &mut lo[i * n..];
                    let col_i1 = &mut hi[..n];
                    for k in 0..n {
                        let hk = col_i1[k];
                        col_i1[k] = s * col_i[k] + c * hk;
                        col_i[k] = c * col_i[k] - s * hk;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

/// Solution of the generalised problem `K x = μ M x`.
#[derive(Debug, Clone)]
pub struct GenEigen {
    pub values: Vec<f64>,
    /// Vectors in the original coordinates, column-major `n × values.len()`.
    pub vectors: Vec<f64>,
    pub n: usize,
    /// Number of mass directions discarded by the `drop` threshold.
    pub dropped: usize,
}

impl GenEigen {
    pub fn vector(&self, k: usize) -> &[f64] {
        &self.vectors[k * self.n..(k + 1) * self.n]
    }
}

/// Symmetric-definite pencil by mass whitening.
///
/// Eigendecomposes `M`, discards directions with eigenvalue below
/// `drop · λ_max(M)`, whitens, and solves the reduced standard problem.
/// `M` may be semidefinite; eigenvalues below `-1e-12 ‖M‖` are an error.
pub fn sym_geig(k: &SymMatrix, m: &SymMatrix, drop: f64) -> Result<GenEigen> {
    let n = k.order();
    if m.order() != n {
        return Err(Error::Dimension(format!(
            "K is {n}x{n}, M is {0}x{0}",
            m.order()
        )));
    }
    let me = sym_eig(m)?;
    let lmax = me.values.iter().fold(0.0f64, |a, b| a.max(b.abs()));
    let lmin = me.values.first().copied().unwrap_or(0.0);
    if lmin < -1e-12 * lmax {
        return Err(Error::IndefiniteMass {
            min: lmin,
            norm: lmax,
        });
    }
    let keep: Vec<usize> = (0..n)
        .filter(|&i| me.values[i] > 0.0 && me.values[i] >= drop * lmax)
        .collect();
    let r = keep.len();
    let dropped = n - r;

    // W = U_keep diag(λ^{-1/2}), column-major n × r
    let mut w = vec![0.0; n * r];
    for (c, &i) in keep.iter().enumerate() {
        let s = 1.0 / me.values[i].sqrt();
        for row in 0..n {
            w[c * n + row] = me.vector(i)[row] * s;
        }
    }
    // KW, then C = Wᵀ K W
    let mut kw = vec![0.0; n * r];
    for c in 0..r {
        let col = k.matvec(&w[c * n..(c + 1) * n]);
        kw[c * n..(c + 1) * n].copy_from_slice(&col);
    }
    let mut reduced = SymMatrix::zeros(r);
    for i in 0..r {
        for j in 0..=i {
            let a: f64 = w[i * n..(i + 1) * n]
                .iter()
                .zip(&kw[j * n..(j + 1) * n])
                .map(|(x, y)| x * y)
                .sum();
            let b: f64 = w[j * n..(j + 1) * n]
                .iter()
                .zip(&kw[i * n..(i + 1) * n])
                .map(|(x, y)| x * y)
                .sum();
            reduced.set(i, j, 0.5 * (a + b));
        }
    }
    let ce = sym_eig(&reduced)?;
    let mut vectors = vec![0.0; n * r];
    for q in 0..r {
        let z = ce.vector(q);
        let out = &mut vectors[q * n..(q + 1) * n];
        for (c, &zc) in z.iter().enumerate() {
            if zc != 0.0 {
                for row in 0..n {
                    out[row] += w[c * n + row] * zc;
                }
            }
        }
    }
    Ok(GenEigen {
        values: ce.values,
        vectors,
        n,
        dropped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn residual(a: &SymMatrix, b: &SymMatrix, mu: f64, x: &[f64]) -> f64 {
        let ax = a.matvec(x);
        let bx = b.matvec(x);
        ax.iter()
            .zip(&bx)
            .map(|(p, q)| (p - mu * q).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    #[test]
    fn diagonal_identity_pencil() {
        let k = SymMatrix::from_diagonal(&[0.0, 1.0, 2.0]);
        let g = sym_geig(&k, &SymMatrix::identity(3), 0.0).unwrap();
        assert_eq!(g.dropped, 0);
        for (a, b) in g.values.iter().zip([0.0, 1.0, 2.0]) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn two_by_two() {
        let k = SymMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let g = sym_geig(&k, &SymMatrix::identity(2), 0.0).unwrap();
        assert!((g.values[0] - 1.0).abs() < 1e-14);
        assert!((g.values[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn forced_truncation() {
        let k = SymMatrix::from_diagonal(&[1.0, 1.0]);
        let m = SymMatrix::from_diagonal(&[1.0, 1e-16]);
        let g = sym_geig(&k, &m, 1e-12).unwrap();
        assert_eq!(g.values.len(), 1);
        assert_eq!(g.dropped, 1);
        assert!((g.values[0] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn indefinite_mass_is_rejected() {
        let k = SymMatrix::identity(2);
        let m = SymMatrix::from_diagonal(&[1.0, -1e-3]);
        assert!(matches!(
            sym_geig(&k, &m, 0.0),
            Err(Error::IndefiniteMass { .. })
        ));
    }

    fn pseudo_random_spd(n: usize, seed: u64) -> (SymMatrix, SymMatrix) {
        let mut s = seed;
        let mut next = || {
            s = s
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((s >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        let g: Vec<f64> = (0..n * n).map(|_| next()).collect();
        let mut m = SymMatrix::zeros(n);
        for i in 0..n {
            for j in 0..=i {
                let v: f64 = (0..n).map(|k| g[i * n + k] * g[j * n + k]).sum();
                m.set(i, j, v + if i == j { 0.5 } else { 0.0 });
            }
        }
        let h: Vec<f64> = (0..n * n).map(|_| next()).collect();
        (SymMatrix::symmetrized(n, &h).unwrap(), m)
    }

    #[test]
    fn residuals_small_on_random_pencils() {
        for (n, seed) in [(5, 1), (17, 2), (40, 3)] {
            let (k, m) = pseudo_random_spd(n, seed);
            let g = sym_geig(&k, &m, 0.0).unwrap();
            assert_eq!(g.values.len(), n);
            assert!(g.values.windows(2).all(|w| w[0] <= w[1]));
            for q in 0..n {
                let r = residual(&k, &m, g.values[q], g.vector(q));
                let scale = k.norm() + g.values[q].abs() * m.norm();
                assert!(r < 1e-10 * scale, "n={n} q={q} r={r:e}");
            }
        }
    }

    #[test]
    fn standard_problem_vectors_orthonormal() {
        let (k, _) = pseudo_random_spd(12, 7);
        let e = sym_eig(&k).unwrap();
        for p in 0..12 {
            for q in 0..12 {
                let d: f64 = e
                    .vector(p)
                    .iter()
                    .zip(e.vector(q))
                    .map(|(a, b)| a * b)
                    .sum();
                let want = if p == q { 1.0 } else { 0.0 };
                assert!((d - want).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn deterministic() {
        let (k, m) = pseudo_random_spd(20, 11);
        let a = sym_geig(&k, &m, 1e-12).unwrap();
        let b = sym_geig(&k, &m, 1e-12).unwrap();
        assert_eq!(a.values, b.values);
        assert_eq!(a.vectors, b.vectors);
    }
}
