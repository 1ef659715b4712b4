//! The sup-norm distance `d(f, g) = sup_{|z|<1} |f(z) - g(z)|` between two
//! disk automorphisms.
//!
//! [`dist_closed`] evaluates the explicit two-case formula. [`dist_oracle`]
//! recomputes the supremum by brute force on the boundary circle (the
//! difference is analytic on the closed disk, so its modulus peaks there)
//! and shares no code with the closed form beyond [`AutElement::eval`].

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{rho, AutElement, BoundaryAngle};
use crate::maximize::maximize_periodic;

/// `lambda = e^{i(eta - xi)} (1 - conj(u) v) / (1 - u conj(v))`, unimodular.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lambda(pub Complex64);

impl Lambda {
    #[inline]
    pub fn value(self) -> Complex64 {
        self.0
    }

    /// `Re lambda + i |Im lambda|`, the representative in the closed upper half.
    #[inline]
    pub fn folded(self) -> Complex64 {
        Complex64::new(self.0.re, self.0.im.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaseTag {
    /// `|lambda + 1| <= 2 rho`: the two maps take antipodal values somewhere.
    Saturated,
    Interior,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceResult {
    pub distance: f64,
    pub case: CaseTag,
    pub lambda: Lambda,
    pub rho: f64,
    /// Half-opening of the arc swept by the boundary factor; `cos delta = 1 - 2 rho^2`.
    pub delta: f64,
}

#[derive(Serialize, Deserialize)]
struct DistanceResultRepr {
    distance: f64,
    case: CaseTag,
    lambda_re: f64,
    lambda_im: f64,
    rho: f64,
    delta: f64,
}

impl Serialize for DistanceResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DistanceResultRepr {
            distance: self.distance,
            case: self.case,
            lambda_re: self.lambda.0.re,
            lambda_im: self.lambda.0.im,
            rho: self.rho,
            delta: self.delta,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DistanceResult {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = DistanceResultRepr::deserialize(d)?;
        Ok(DistanceResult {
            distance: r.distance,
            case: r.case,
            lambda: Lambda(Complex64::new(r.lambda_re, r.lambda_im)),
            rho: r.rho,
            delta: r.delta,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub grid_size: usize,
    pub refine_iters: usize,
    pub tolerance: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            grid_size: 4096,
            refine_iters: 60,
            tolerance: 1e-12,
        }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid_size < 16 {
            return Err(Error::InvalidParameter(format!(
                "grid_size must be >= 16, got {}",
                self.grid_size
            )));
        }
        if self.refine_iters == 0 {
            return Err(Error::InvalidParameter("refine_iters must be positive".into()));
        }
        Ok(())
    }
}

pub fn lambda_of(f: &AutElement, g: &AutElement) -> Lambda {
    let (u, v) = (f.u().value(), g.u().value());
    let rot = Complex64::from_polar(1.0, g.xi() - f.xi());
    Lambda(rot * (1.0 - u.conj() * v) / (1.0 - u * v.conj()))
}

/// `delta` with `e^{i delta} = 1 - 2 rho^2 + 2 i rho sqrt(1 - rho^2)`.
pub fn delta_of(rho: f64) -> f64 {
    2.0 * rho.clamp(0.0, 1.0).asin()
}

/// `e^{-i delta}` written out in terms of `rho`.
fn tangent_point_conj(rho: f64) -> Complex64 {
    let r2 = rho * rho;
    Complex64::new(1.0 - 2.0 * r2, -2.0 * rho * (1.0 - r2).max(0.0).sqrt())
}

/// Absolute slack on `|lambda + 1| <= 2 rho`. Rounding in `e^{i pi}` alone
/// leaves `|lambda + 1| ~ 1e-16`; both branches equal 2 on the boundary.
pub const CASE_TIE_TOL: f64 = 1e-14;

/// Classifies `(lambda, rho)` and evaluates the matching branch.
pub fn dist_from_parts(lambda: Lambda, rho: f64) -> DistanceResult {
    let delta = delta_of(rho);
    if (lambda.0 + 1.0).norm() <= 2.0 * rho + CASE_TIE_TOL {
        return DistanceResult {
            distance: 2.0,
            case: CaseTag::Saturated,
            lambda,
            rho,
            delta,
        };
    }
    DistanceResult {
        distance: interior_value(lambda, rho),
        case: CaseTag::Interior,
        lambda,
        rho,
        delta,
    }
}

/// `|e^{-i delta} - (Re lambda + i |Im lambda|)|`, the non-saturated branch.
pub fn interior_value(lambda: Lambda, rho: f64) -> f64 {
    (tangent_point_conj(rho) - lambda.folded()).norm().min(2.0)
}

/// Closed-form `d(f, g)`.
pub fn dist_closed(f: &AutElement, g: &AutElement) -> DistanceResult {
    dist_from_parts(lambda_of(f, g), rho(f.u(), g.u()))
}

/// `|1 - lambda (1 - rho e^{i theta}) / (1 - rho e^{-i theta})|`.
pub fn sup_integrand(theta: BoundaryAngle, lam: Lambda, rho: f64) -> f64 {
    let e = theta.point();
    (1.0 - lam.0 * (1.0 - rho * e) / (1.0 - rho * e.conj())).norm()
}

/// Brute-force `max_{theta} |f(e^{i theta}) - g(e^{i theta})|`.
pub fn dist_oracle(f: &AutElement, g: &AutElement, cfg: &OracleConfig) -> f64 {
    let gap = |theta: f64| {
        let z = Complex64::from_polar(1.0, theta);
        (f.eval_unchecked(z) - g.eval_unchecked(z)).norm()
    };
    maximize_periodic(gap, cfg.grid_size.max(16), cfg.refine_iters).value
}

/// Sampled range `(min, max)` of `arg((1 - rho e^{i theta}) / (1 - rho e^{-i theta}))`.
///
/// The extremes are polished with golden-section search, so the result is
/// the true range up to round-off once `samples` resolves the two peaks.
pub fn arg_range_check(rho: f64, samples: usize) -> Result<(f64, f64)> {
    if !(0.0..1.0).contains(&rho) {
        return Err(Error::InvalidParameter(format!("rho must lie in [0, 1), got {rho}")));
    }
    if samples < 3 {
        return Err(Error::InvalidParameter("need at least 3 samples".into()));
    }
    let arg = |theta: f64| {
        let e = Complex64::from_polar(1.0, theta);
        ((1.0 - rho * e) / (1.0 - rho * e.conj())).arg()
    };
    let hi = maximize_periodic(arg, samples, 80).value;
    let lo = -maximize_periodic(|t| -arg(t), samples, 80).value;
    Ok((lo, hi))
}

/// Maximizes [`sup_integrand`] over `theta`; a second brute-force route that
/// starts from the reduced one-variable form instead of the raw maps.
pub fn sup_reduced(lam: Lambda, rho: f64, cfg: &OracleConfig) -> f64 {
    maximize_periodic(
        |t| sup_integrand(BoundaryAngle(t), lam, rho),
        cfg.grid_size.max(16),
        cfg.refine_iters,
    )
    .value
}

/// Samples the interior of the disk on a polar grid; the maximum never
/// exceeds the boundary supremum.
pub fn interior_sample_max(f: &AutElement, g: &AutElement, radii: usize, angles: usize) -> f64 {
    let mut best = 0.0_f64;
    for i in 1..=radii {
        let r = i as f64 / (radii + 1) as f64;
        let m = maximize_periodic(
            |t| {
                let z = Complex64::from_polar(r, t);
                (f.eval_unchecked(z) - g.eval_unchecked(z)).norm()
            },
            angles.max(16),
            40,
        );
        best = best.max(m.value);
    }
    best
}
