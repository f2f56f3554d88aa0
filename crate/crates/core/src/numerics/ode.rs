//! Dormand–Prince 5(4) integrator with PI step control.
//!
//! Accepted steps are stored with their end-point derivatives so the
//! trajectory can be evaluated anywhere by piecewise cubic Hermite
//! interpolation. Callers that need values at specific abscissae pass them as
//! `stops`; the integrator lands on each stop exactly.

use crate::{Error, Result};

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

// b - b̂ (fifth minus embedded fourth order weights)
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

#[derive(Debug, Clone)]
pub struct OdeOptions<const N: usize> {
    pub rtol: f64,
    pub atol: [f64; N],
    /// Initial step; chosen automatically when `None`.
    pub h_init: Option<f64>,
    pub max_steps: usize,
}

impl<const N: usize> OdeOptions<N> {
    pub fn new(rtol: f64, atol: f64) -> Self {
        Self {
            rtol,
            atol: [atol; N],
            h_init: None,
            max_steps: 1_000_000,
        }
    }
}

/// Accepted steps of an integration.
#[derive(Debug, Clone)]
pub struct Trajectory<const N: usize> {
    pub t: Vec<f64>,
    pub y: Vec<[f64; N]>,
    pub dy: Vec<[f64; N]>,
    /// Values at the requested stops, in the order given.
    pub at_stops: Vec<[f64; N]>,
    pub rejected: usize,
}

impl<const N: usize> Trajectory<N> {
    pub fn final_state(&self) -> [f64; N] {
        *self
            .y
            .last()
            .expect("trajectory has at least the initial point")
    }

    /// Cubic Hermite evaluation; clamps to the integrated interval.
    pub fn eval(&self, t: f64) -> [f64; N] {
        let n = self.t.len();
        if n == 1 {
            return self.y[0];
        }
        let forward = self.t[n - 1] >= self.t[0];
        let idx = if forward {
            self.t.partition_point(|&s| s <= t)
        } else {
            self.t.partition_point(|&s| s >= t)
        };
        let i = idx.clamp(1, n - 1) - 1;
        hermite(
            self.t[i],
            self.t[i + 1],
            &self.y[i],
            &self.y[i + 1],
            &self.dy[i],
            &self.dy[i + 1],
            t,
        )
    }
}

pub(crate) fn hermite<const N: usize>(
    t0: f64,
    t1: f64,
    y0: &[f64; N],
    y1: &[f64; N],
    d0: &[f64; N],
    d1: &[f64; N],
    t: f64,
) -> [f64; N] {
    let h = t1 - t0;
    let s = ((t - t0) / h).clamp(0.0, 1.0);
    let s2 = s * s;
    let s3 = s2 * s;
    let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    let h10 = s3 - 2.0 * s2 + s;
    let h01 = -2.0 * s3 + 3.0 * s2;
    let h11 = s3 - s2;
    let mut out = [0.0; N];
    for k in 0..N {
        out[k] = h00 * y0[k] + h10 * h * d0[k] + h01 * y1[k] + h11 * h * d1[k];
    }
    out
}

fn check_finite<const N: usize>(t: f64, v: &[f64; N]) -> Result<()> {
    if v.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFiniteRhs { t })
    }
}

fn axpy<const N: usize>(y: &[f64; N], h: f64, terms: &[(f64, &[f64; N])]) -> [f64; N] {
    let mut out = *y;
    for &(c, k) in terms {
        if c != 0.0 {
            for i in 0..N {
                out[i] += h * c * k[i];
            }
        }
    }
    out
}

/// Integrates `y' = rhs(t, y)` from `t0` to `t1`.
///
/// `stops` must lie between `t0` and `t1` and be ordered in the direction of
/// integration. `rhs` may return non-finite values to signal a failure; the
/// integrator reports them as [`Error::NonFiniteRhs`].
pub fn ode_solve<const N: usize, F>(
    mut rhs: F,
    t0: f64,
    t1: f64,
    y0: [f64; N],
    stops: &[f64],
    opts: &OdeOptions<N>,
) -> Result<Trajectory<N>>
where
    F: FnMut(f64, &[f64; N]) -> [f64; N],
{
    if !(1e-14..=1e-3).contains(&opts.rtol) {
        return Err(Error::InvalidArgument(format!(
            "rtol {} outside [1e-14, 1e-3]",
            opts.rtol
        )));
    }
    let dir = if t1 >= t0 { 1.0 } else { -1.0 };
    for w in stops.windows(2) {
        if (w[1] - w[0]) * dir < 0.0 {
            return Err(Error::InvalidArgument("stops are not ordered".into()));
        }
    }
    if stops
        .iter()
        .any(|&s| (s - t0) * dir < 0.0 || (t1 - s) * dir < 0.0)
    {
        return Err(Error::InvalidArgument(
            "stop outside integration interval".into(),
        ));
    }

    let mut t = t0;
    let mut y = y0;
    let mut k1 = rhs(t, &y);
    check_finite(t, &k1)?;

    let mut traj = Trajectory {
        t: vec![t0],
        y: vec![y0],
        dy: vec![k1],
        at_stops: Vec::with_capacity(stops.len()),
        rejected: 0,
    };
    let mut next_stop = 0;
    while next_stop < stops.len() && stops[next_stop] == t0 {
        traj.at_stops.push(y0);
        next_stop += 1;
    }
    if t0 == t1 {
        return Ok(traj);
    }

    let scale = |y: &[f64; N], k: usize| opts.atol[k] + opts.rtol * y[k].abs();

    let mut h = match opts.h_init {
        Some(h) => h.abs(),
        None => {
            // Hairer–Wanner starting step heuristic.
            let d0 = (0..N)
                .map(|k| (y[k] / scale(&y, k)).powi(2))
                .sum::<f64>()
                .sqrt();
            let d1 = (0..N)
                .map(|k| (k1[k] / scale(&y, k)).powi(2))
                .sum::<f64>()
                .sqrt();
            let h0 = if d0 < 1e-5 || d1 < 1e-5 {
                1e-6
            } else {
                0.01 * d0 / d1
            };
            let y1 = axpy(&y, dir * h0, &[(1.0, &k1)]);
            let f1 = rhs(t + dir * h0, &y1);
            check_finite(t, &f1)?;
            let d2 = (0..N)
                .map(|k| ((f1[k] - k1[k]) / scale(&y, k)).powi(2))
                .sum::<f64>()
                .sqrt()
                / h0;
            let h1 = if d1.max(d2) <= 1e-15 {
                (h0 * 1e-3).max(1e-6)
            } else {
                (0.01 / d1.max(d2)).powf(0.2)
            };
            (100.0 * h0).min(h1)
        }
    };
    h = h.min((t1 - t0).abs());

    let mut err_prev: f64 = 1e-4;
    let mut steps = 0usize;
    let beta = 0.04;
    let alpha = 0.2 - 0.75 * beta;

    loop {
        steps += 1;
        if steps > opts.max_steps {
            return Err(Error::TooManySteps(opts.max_steps));
        }
        let target = if next_stop < stops.len() {
            stops[next_stop]
        } else {
            t1
        };
        let mut landing = false;
        let h_free = h;
        let remaining = (target - t).abs();
        if h >= remaining * (1.0 - 1e-12) {
            h = remaining;
            landing = true;
        }
        if h == 0.0 || (!landing && h <= 1e-14 * t.abs().max(1e-300)) {
            return Err(Error::StepUnderflow { t, h });
        }
        let hs = dir * h;

        let k2 = rhs(t + C2 * hs, &axpy(&y, hs, &[(A21, &k1)]));
        check_finite(t, &k2)?;
        let k3 = rhs(t + C3 * hs, &axpy(&y, hs, &[(A31, &k1), (A32, &k2)]));
        check_finite(t, &k3)?;
        let k4 = rhs(
            t + C4 * hs,
            &axpy(&y, hs, &[(A41, &k1), (A42, &k2), (A43, &k3)]),
        );
        check_finite(t, &k4)?;
        let k5 = rhs(
            t + C5 * hs,
            &axpy(&y, hs, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
        );
        check_finite(t, &k5)?;
        let k6 = rhs(
            t + hs,
            &axpy(
                &y,
                hs,
                &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
            ),
        );
        check_finite(t, &k6)?;
        let y_new = axpy(
            &y,
            hs,
            &[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)],
        );
        let t_new = if landing { target } else { t + hs };
        let k7 = rhs(t_new, &y_new);
        let k7_ok = k7.iter().all(|v| v.is_finite()) && y_new.iter().all(|v| v.is_finite());

        let mut err: f64 = 0.0;
        for k in 0..N {
            let e =
                hs * (E1 * k1[k] + E3 * k3[k] + E4 * k4[k] + E5 * k5[k] + E6 * k6[k] + E7 * k7[k]);
            let sc = opts.atol[k] + opts.rtol * y[k].abs().max(y_new[k].abs());
            err = err.max((e / sc).abs());
        }
        if !k7_ok {
            err = f64::INFINITY;
        }

        if err <= 1.0 {
            t = t_new;
            y = y_new;
            k1 = k7;
            traj.t.push(t);
            traj.y.push(y);
            traj.dy.push(k1);
            let fac = if err == 0.0 {
                5.0
            } else {
                (0.9 * err.powf(-alpha) * err_prev.powf(beta)).clamp(0.2, 5.0)
            };
            err_prev = err.max(1e-4);
            if landing {
                if next_stop < stops.len() {
                    // several stops may coincide
                    while next_stop < stops.len() && stops[next_stop] == target {
                        traj.at_stops.push(y);
                        next_stop += 1;
                    }
                } else {
                    return Ok(traj);
                }
                if next_stop == stops.len() && t == t1 {
                    return Ok(traj);
                }
            }
            h = if landing {
                h_free.max(h * fac)
            } else {
                h * fac
            };
        } else {
            traj.rejected += 1;
            let fac = if err.is_finite() {
                (0.9 * err.powf(-alpha)).clamp(0.1, 1.0)
            } else {
                0.1
            };
            h *= fac;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_growth() {
        let rtol = 1e-10;
        let tr = ode_solve(
            |_, y: &[f64; 1]| [y[0]],
            0.0,
            1.0,
            [1.0],
            &[],
            &OdeOptions::new(rtol, 1e-14),
        )
        .unwrap();
        let e = std::f64::consts::E;
        assert!((tr.final_state()[0] - e).abs() < 10.0 * rtol * e);
    }

    #[test]
    fn exponential_decay() {
        let rtol = 1e-9;
        let tr = ode_solve(
            |_, y: &[f64; 1]| [-2.0 * y[0]],
            0.0,
            2.0,
            [3.0],
            &[],
            &OdeOptions::new(rtol, 1e-14),
        )
        .unwrap();
        let exact = 3.0 * (-4.0f64).exp();
        assert!((tr.final_state()[0] - exact).abs() < 10.0 * rtol * 3.0);
    }

    #[test]
    fn plane_riccati_k1() {
        // w' = -w² - w/r + 1/r², exact solution w = 1/r
        let rtol = 1e-10;
        let eps = 1e-6;
        let tr = ode_solve(
            |r, w: &[f64; 1]| [-w[0] * w[0] - w[0] / r + 1.0 / (r * r)],
            eps,
            1.0,
            [1.0 / eps],
            &[],
            &OdeOptions::new(rtol, 1e-14),
        )
        .unwrap();
        assert!((tr.final_state()[0] - 1.0).abs() < 10.0 * rtol);
    }

    #[test]
    fn lands_on_stops_and_interpolates() {
        let stops = [0.1, 0.25, 0.25, 0.7];
        let tr = ode_solve(
            |t, _: &[f64; 2]| [t.cos(), -t.sin()],
            0.0,
            1.0,
            [0.0, 1.0],
            &stops,
            &OdeOptions::new(1e-11, 1e-14),
        )
        .unwrap();
        assert_eq!(tr.at_stops.len(), stops.len());
        for (s, v) in stops.iter().zip(&tr.at_stops) {
            assert!((v[0] - s.sin()).abs() < 1e-10);
            assert!((v[1] - s.cos()).abs() < 1e-10);
            assert!(tr.t.contains(s));
        }
        let mid = tr.eval(0.5);
        assert!((mid[0] - 0.5f64.sin()).abs() < 1e-6);
    }

    #[test]
    fn backward_integration() {
        let tr = ode_solve(
            |_, y: &[f64; 1]| [y[0]],
            1.0,
            0.0,
            [1.0],
            &[0.5],
            &OdeOptions::new(1e-10, 1e-14),
        )
        .unwrap();
        assert!((tr.final_state()[0] - (-1.0f64).exp()).abs() < 1e-9);
        assert!((tr.at_stops[0][0] - (-0.5f64).exp()).abs() < 1e-9);
    }

    #[test]
    fn reports_non_finite_rhs() {
        let r = ode_solve(
            |t, _: &[f64; 1]| [1.0 / (t - 0.5)],
            0.0,
            1.0,
            [0.0],
            &[],
            &OdeOptions::new(1e-8, 1e-12),
        );
        assert!(r.is_err());
    }

    #[test]
    fn tighter_tolerance_reduces_error() {
        let err = |rtol: f64| {
            let tr = ode_solve(
                |_, y: &[f64; 1]| [y[0]],
                0.0,
                1.0,
                [1.0],
                &[],
                &OdeOptions::new(rtol, 1e-16),
            )
            .unwrap();
            (tr.final_state()[0] - std::f64::consts::E).abs()
        };
        for &rtol in &[1e-6, 1e-8] {
            let coarse = err(rtol);
            let fine = err(rtol / 16.0);
            assert!(fine * 4.0 <= coarse, "rtol {rtol}: {coarse:e} -> {fine:e}");
        }
    }
}
