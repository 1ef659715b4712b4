//! The Finsler structure induced by the sup-norm distance.
//!
//! At `f_{xi,u}` a tangent vector is `(s, h)`: `s` is the rate of the
//! rotation angle and `h` the rate of the zero `u`. With `u = x + iy` and
//! `h = a + ib` the norm is
//!
//! ```text
//! F = (2|h| + |2 Im(conj(u) h) - s (1 - |u|^2)|) / (1 - |u|^2)
//! ```
//!
//! `F` is smooth off the hyperplane where the absolute value vanishes (the
//! stratum `E0`), and on each open half `E+` / `E-` it is a sum of a
//! Euclidean-type norm in `h` and a linear form. Tensor coordinates are
//! ordered `(s, a, b)`.

use nalgebra::{Matrix2, Matrix3, SymmetricEigen, Vector3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{AutElement, DiskPoint};
use crate::metric::dist_closed;
use crate::numdiff::extrapolate_to_zero;

/// Default half-width of the band classified as [`Stratum::EZero`].
pub const STRATUM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentVector {
    pub s: f64,
    pub h: Complex64,
}

impl TangentVector {
    pub const ZERO: TangentVector = TangentVector {
        s: 0.0,
        h: Complex64::new(0.0, 0.0),
    };

    pub fn new(s: f64, h: Complex64) -> Self {
        Self { s, h }
    }

    pub fn from_components(c: [f64; 3]) -> Self {
        Self {
            s: c[0],
            h: Complex64::new(c[1], c[2]),
        }
    }

    /// `(s, Re h, Im h)`.
    pub fn components(&self) -> [f64; 3] {
        [self.s, self.h.re, self.h.im]
    }

    pub fn scale(&self, t: f64) -> Self {
        Self {
            s: t * self.s,
            h: t * self.h,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            s: self.s + other.s,
            h: self.h + other.h,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.s == 0.0 && self.h.re == 0.0 && self.h.im == 0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Stratum {
    EZero,
    EPlus,
    EMinus,
}

impl Stratum {
    /// `+1` on `E-`, `-1` on `E+`: the sign in front of the linear part of `F`.
    fn linear_sign(self) -> Result<f64> {
        match self {
            Stratum::EMinus => Ok(1.0),
            Stratum::EPlus => Ok(-1.0),
            Stratum::EZero => Err(Error::NonSmoothDirection),
        }
    }
}

/// `2 Im(conj(u) h) - s (1 - |u|^2)`.
pub fn stratum_functional(u: DiskPoint, y: &TangentVector) -> f64 {
    2.0 * (u.value().conj() * y.h).im - y.s * u.one_minus_norm_sqr()
}

pub fn stratum_of(f: &AutElement, y: &TangentVector) -> Stratum {
    stratum_of_with_tol(f, y, STRATUM_TOL)
}

pub fn stratum_of_with_tol(f: &AutElement, y: &TangentVector, tol: f64) -> Stratum {
    let v = stratum_functional(f.u(), y);
    if v.abs() <= tol {
        Stratum::EZero
    } else if v > 0.0 {
        Stratum::EPlus
    } else {
        Stratum::EMinus
    }
}

/// `F(f_{xi,u}, (s, h))`.
pub fn finsler_norm(f: &AutElement, y: &TangentVector) -> f64 {
    let u = f.u();
    (2.0 * y.h.norm() + stratum_functional(u, y).abs()) / u.one_minus_norm_sqr()
}

/// Halving schedule `dt0, dt0/2, ...` with `dt0 <= 1e-2` small enough to
/// keep `u + h dt` well inside the disk.
pub fn default_schedule(f: &AutElement, y: &TangentVector, levels: usize) -> Vec<f64> {
    let room = f.u().one_minus_norm_sqr();
    let speed = y.h.norm();
    let mut dt0: f64 = 1e-2;
    if speed > 0.0 {
        dt0 = dt0.min(0.1 * room / speed);
    }
    (0..levels).map(|k| dt0 / 2f64.powi(k as i32)).collect()
}

/// Extrapolated limit of `d(f, f_{xi + s dt, u + h dt}) / dt` as `dt -> 0+`.
pub fn directional_derivative_oracle(
    f: &AutElement,
    y: &TangentVector,
    schedule: &[f64],
) -> Result<f64> {
    if schedule.is_empty() {
        return Err(Error::BadSchedule("empty".into()));
    }
    if schedule.iter().any(|dt| !(dt.is_finite() && *dt > 0.0)) {
        return Err(Error::BadSchedule("steps must be positive".into()));
    }
    if schedule.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::BadSchedule("steps must be strictly decreasing".into()));
    }
    let mut quotients = Vec::with_capacity(schedule.len());
    for &dt in schedule {
        let moved = DiskPoint::new(f.u().value() + y.h * dt)
            .map_err(|_| Error::BadSchedule(format!("u + h*{dt} leaves the disk")))?;
        let g = AutElement::new(f.xi() + y.s * dt, moved)?;
        quotients.push(dist_closed(f, &g).distance / dt);
    }
    Ok(extrapolate_to_zero(schedule, &quotients))
}

/// `G = (1/2) Hess(F^2)` at a smooth direction.
#[derive(Debug, Clone, PartialEq)]
pub struct FundamentalTensor {
    pub matrix: Matrix3<f64>,
    pub stratum: Stratum,
    pub base: AutElement,
    pub direction: TangentVector,
}

/// Local quantities shared by the tensor, its factorization and its kernel.
struct SmoothChart {
    x: f64,
    y: f64,
    a: f64,
    b: f64,
    c: f64,
    r: f64,
    norm: f64,
    sign: f64,
}

impl SmoothChart {
    fn new(f: &AutElement, dir: &TangentVector) -> Result<(Self, Stratum)> {
        let stratum = stratum_of(f, dir);
        let sign = stratum.linear_sign()?;
        let r = dir.h.norm();
        if r == 0.0 {
            return Err(Error::DegenerateDirection);
        }
        let u = f.u();
        Ok((
            Self {
                x: u.re(),
                y: u.im(),
                a: dir.h.re,
                b: dir.h.im,
                c: 2.0 / u.one_minus_norm_sqr(),
                r,
                norm: finsler_norm(f, dir),
                sign,
            },
            stratum,
        ))
    }

    /// Gradient of `F` in `(s, a, b)`.
    fn gradient(&self) -> Vector3<f64> {
        let SmoothChart { x, y, a, b, c, r, sign, .. } = *self;
        Vector3::new(sign, c * (a / r + sign * y), c * (b / r - sign * x))
    }

    /// The `(a, b)` block of `F * Hess F`.
    fn curvature_block(&self) -> Matrix2<f64> {
        let SmoothChart { a, b, c, r, norm, .. } = *self;
        let k = c * norm / (r * r * r);
        Matrix2::new(k * b * b, -k * a * b, -k * a * b, k * a * a)
    }
}

pub fn fundamental_tensor(f: &AutElement, dir: &TangentVector) -> Result<FundamentalTensor> {
    let (chart, stratum) = SmoothChart::new(f, dir)?;
    let g = chart.gradient();
    let m = chart.curvature_block();
    let mut matrix = g * g.transpose();
    for i in 0..2 {
        for j in 0..2 {
            matrix[(i + 1, j + 1)] += m[(i, j)];
        }
    }
    Ok(FundamentalTensor {
        matrix,
        stratum,
        base: *f,
        direction: *dir,
    })
}

/// `G = Q^T diag(1, M) Q` with `Q` unit-upper-triangular up to the sign of
/// its corner (the first row of `Q` is the gradient of `F`).
#[derive(Debug, Clone, PartialEq)]
pub struct QFactor {
    pub q: Matrix3<f64>,
    pub m: Matrix2<f64>,
}

impl QFactor {
    pub fn product(&self) -> Matrix3<f64> {
        let mut d = Matrix3::zeros();
        d[(0, 0)] = 1.0;
        for i in 0..2 {
            for j in 0..2 {
                d[(i + 1, j + 1)] = self.m[(i, j)];
            }
        }
        self.q.transpose() * d * self.q
    }
}

pub fn q_factorization(f: &AutElement, dir: &TangentVector) -> Result<QFactor> {
    let (chart, _) = SmoothChart::new(f, dir)?;
    let g = chart.gradient();
    let mut q = Matrix3::identity();
    for j in 0..3 {
        q[(0, j)] = g[j];
    }
    Ok(QFactor {
        q,
        m: chart.curvature_block(),
    })
}

/// Spanning vector of the null space of the fundamental tensor:
/// `(2 (xb - ya -+ r) / (1 - |u|^2), a, b)`, `-` on `E-`, `+` on `E+`.
pub fn kernel_direction(f: &AutElement, dir: &TangentVector) -> Result<Vector3<f64>> {
    let (chart, _) = SmoothChart::new(f, dir)?;
    let SmoothChart { x, y, a, b, c, r, sign, .. } = chart;
    Ok(Vector3::new(c * (x * b - y * a - sign * r), a, b))
}

impl FundamentalTensor {
    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [f64; 3] {
        let mut ev: Vec<f64> = SymmetricEigen::new(self.matrix).eigenvalues.iter().copied().collect();
        ev.sort_by(|p, q| p.total_cmp(q));
        [ev[0], ev[1], ev[2]]
    }

    pub fn asymmetry(&self) -> f64 {
        (self.matrix - self.matrix.transpose()).amax()
    }

    pub fn quadratic_form(&self, w: &Vector3<f64>) -> f64 {
        w.dot(&(self.matrix * w))
    }

    /// Eigenvector of the smallest eigenvalue.
    pub fn null_eigenvector(&self) -> Vector3<f64> {
        let eig = SymmetricEigen::new(self.matrix);
        let k = eig.eigenvalues.imin();
        eig.eigenvectors.column(k).into_owned()
    }
}

/// Largest Frobenius distance between tensors of directions in the same stratum.
pub fn tensor_spread(f: &AutElement, directions: &[TangentVector]) -> Result<f64> {
    let mut tensors = Vec::with_capacity(directions.len());
    for d in directions {
        match fundamental_tensor(f, d) {
            Ok(t) => tensors.push(t),
            Err(Error::NonSmoothDirection | Error::DegenerateDirection) => continue,
            Err(e) => return Err(e),
        }
    }
    let mut best = 0.0_f64;
    for (i, p) in tensors.iter().enumerate() {
        for q in &tensors[i + 1..] {
            if p.stratum == q.stratum {
                best = best.max((p.matrix - q.matrix).norm());
            }
        }
    }
    Ok(best)
}

/// Directions spread over the unit sphere in `(s, a, b)` (Fibonacci lattice).
pub fn sphere_directions(count: usize) -> Vec<TangentVector> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..count)
        .map(|k| {
            let z = 1.0 - 2.0 * (k as f64 + 0.5) / count as f64;
            let ring = (1.0 - z * z).sqrt();
            let phi = golden * k as f64;
            TangentVector::from_components([z, ring * phi.cos(), ring * phi.sin()])
        })
        .collect()
}

/// Evidence that the fundamental tensor depends on the direction: the
/// spread of `G` over `sample_count` sphere directions.
pub fn cartan_nontriviality(f: &AutElement, sample_count: usize) -> Result<f64> {
    if sample_count < 2 {
        return Err(Error::InvalidParameter("need at least two directions".into()));
    }
    tensor_spread(f, &sphere_directions(sample_count))
}
