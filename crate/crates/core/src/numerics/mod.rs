//! Shared numerical kernels.

pub mod eigen;
pub mod ode;
pub mod quadrature;

pub use eigen::{sym_eig, sym_geig, GenEigen, SymEigen, SymMatrix};
pub use ode::{ode_solve, OdeOptions, Trajectory};
pub use quadrature::{gauss_legendre, periodic_nodes, periodic_quadrature, quad2d_polar};

/// Golden-section search for a local extremum of `f` on `[a, b]`.
///
/// Returns `(x, f(x))`. Stops once the bracket is narrower than `xtol`.
pub fn golden_section<F: Fn(f64) -> f64>(
    f: F,
    mut a: f64,
    mut b: f64,
    maximize: bool,
    xtol: f64,
) -> (f64, f64) {
    let g = |x: f64| if maximize { -f(x) } else { f(x) };
    let invphi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - invphi * (b - a);
    let mut d = a + invphi * (b - a);
    let mut fc = g(c);
    let mut fd = g(d);
    for _ in 0..200 {
        if (b - a).abs() <= xtol {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = g(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = g(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}
