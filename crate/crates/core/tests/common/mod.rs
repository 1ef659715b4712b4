//! Oracles shared by the integration suites. Nothing here calls the
//! closed-form routines it is used to check.
#![allow(dead_code)]

use aut_disk::finsler::TangentVector;
use aut_disk::{finsler_norm, AutElement};
use num_complex::Complex64;

/// `|lambda + 1|` and `2 rho` recomputed from the raw chart coordinates.
pub fn case_quantities(f: &AutElement, g: &AutElement) -> (f64, f64) {
    let (u, v) = (f.u().value(), g.u().value());
    let lam = Complex64::new(0.0, g.xi() - f.xi()).exp() * (Complex64::new(1.0, 0.0) - u.conj() * v)
        / (Complex64::new(1.0, 0.0) - u * v.conj());
    let rho = (u - v).norm() / (Complex64::new(1.0, 0.0) - u.conj() * v).norm();
    ((lam + 1.0).norm(), 2.0 * rho)
}

/// Second-order central-difference Hessian at steps `h` and `h/2`,
/// Richardson-combined to fourth order.
pub fn fd_hessian<F: Fn([f64; 3]) -> f64>(f: F, x: [f64; 3], h: f64) -> [[f64; 3]; 3] {
    let plain = |h: f64| {
        let at = |di: [f64; 3]| f([x[0] + di[0], x[1] + di[1], x[2] + di[2]]);
        let e = |i: usize, s: f64| {
            let mut d = [0.0; 3];
            d[i] = s;
            d
        };
        let mut out = [[0.0; 3]; 3];
        let f0 = f(x);
        for i in 0..3 {
            out[i][i] = (at(e(i, h)) - 2.0 * f0 + at(e(i, -h))) / (h * h);
            for j in (i + 1)..3 {
                let pp = at(add(e(i, h), e(j, h)));
                let pm = at(add(e(i, h), e(j, -h)));
                let mp = at(add(e(i, -h), e(j, h)));
                let mm = at(add(e(i, -h), e(j, -h)));
                out[i][j] = (pp - pm - mp + mm) / (4.0 * h * h);
                out[j][i] = out[i][j];
            }
        }
        out
    };
    let coarse = plain(h);
    let fine = plain(h / 2.0);
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (4.0 * fine[i][j] - coarse[i][j]) / 3.0;
        }
    }
    out
}

fn add(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

/// Hessian of `F^2 / 2` in `(s, a, b)` at `y`.
pub fn half_square_hessian(f: &AutElement, y: &TangentVector, h: f64) -> [[f64; 3]; 3] {
    fd_hessian(
        |p| 0.5 * finsler_norm(f, &TangentVector::from_components(p)).powi(2),
        y.components(),
        h,
    )
}

pub fn max_abs_diff(a: &nalgebra::Matrix3<f64>, b: &[[f64; 3]; 3]) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            m = m.max((a[(i, j)] - b[i][j]).abs());
        }
    }
    m
}

/// Dense uniform boundary scan without refinement; a lower bound on the
/// supremum that converges quadratically in the grid size.
pub fn boundary_scan(f: &AutElement, g: &AutElement, n: usize) -> f64 {
    (0..n)
        .map(|k| {
            let z = Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / n as f64);
            (f.eval(z).unwrap() - g.eval(z).unwrap()).norm()
        })
        .fold(0.0, f64::max)
}
