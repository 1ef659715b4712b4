//! The rotation-free slice `{phi_u = f_{0,u}}` of the group.
//!
//! Restricted to this slice the Finsler norm reads
//! `F(phi_u, h) = (2|h| + 2|Im(conj(u) h)|) / (1 - |u|^2)`, which on each half
//! `Im(conj(u) h) > 0` / `< 0` is a Randers norm `alpha +- beta`. Distance
//! saturation is governed by the ellipse with foci `u`, `-u` and semi-axes
//! `1` and `sqrt(1 - |u|^2)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{AutElement, DiskPoint};
use crate::metric::{delta_of, interior_value, CaseTag, DistanceResult, Lambda, CASE_TIE_TOL};

/// Half-width of the band classified as [`EllipseSide::OnBoundary`].
pub const ELLIPSE_BAND: f64 = 1e-10;

/// `phi_u`, identified with the group element `(0, u)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubmanifoldPoint(pub DiskPoint);

impl SubmanifoldPoint {
    pub fn element(self) -> AutElement {
        AutElement::phi(self.0)
    }
}

impl From<DiskPoint> for SubmanifoldPoint {
    fn from(u: DiskPoint) -> Self {
        Self(u)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RandersParts {
    pub alpha: f64,
    pub beta: f64,
}

impl RandersParts {
    pub fn total(&self) -> f64 {
        self.alpha + self.beta
    }
}

pub fn finsler_norm_d(u: DiskPoint, h: Complex64) -> f64 {
    (2.0 * h.norm() + 2.0 * (u.value().conj() * h).im.abs()) / u.one_minus_norm_sqr()
}

/// `alpha = 2|h| / (1 - |u|^2)`, the Riemannian part.
pub fn alpha(u: DiskPoint, h: Complex64) -> f64 {
    2.0 * h.norm() / u.one_minus_norm_sqr()
}

/// `beta = 2 (x b - y a) / (1 - |u|^2)`, the one-form part.
pub fn beta(u: DiskPoint, h: Complex64) -> f64 {
    2.0 * (u.re() * h.im - u.im() * h.re) / u.one_minus_norm_sqr()
}

pub fn randers_decompose(u: DiskPoint, h: Complex64) -> Result<RandersParts> {
    let side = (u.value().conj() * h).im;
    if !(side > 0.0) {
        return Err(Error::NotRandersCone(side));
    }
    Ok(RandersParts {
        alpha: alpha(u, h),
        beta: beta(u, h),
    })
}

/// `||beta||_alpha = sqrt(a^{ij} b_i b_j)` from the components of both forms.
pub fn beta_alpha_norm(u: DiskPoint) -> f64 {
    let c = 2.0 / u.one_minus_norm_sqr();
    // alpha^2 = c^2 (a^2 + b^2), beta = c (-y a + x b)
    let inv_metric = 1.0 / (c * c);
    let (b1, b2) = (-c * u.im(), c * u.re());
    (inv_metric * (b1 * b1 + b2 * b2)).sqrt()
}

/// `2 - conj(u) v - u conj(v) - 2|u - v|`; positive strictly inside the ellipse.
pub fn ellipse_criterion(u: DiskPoint, v: Complex64) -> f64 {
    let u = u.value();
    2.0 - 2.0 * (u.conj() * v).re - 2.0 * (u - v).norm()
}

/// Distance between `phi_u` and `phi_v` via the slice's own case condition.
pub fn dist_d_closed(u: DiskPoint, v: DiskPoint) -> DistanceResult {
    let (p, q) = (u.value(), v.value());
    let lambda = Lambda((1.0 - p.conj() * q) / (1.0 - p * q.conj()));
    let rho = (p - q).norm() / (1.0 - p.conj() * q).norm();
    // the slice condition equals (|lambda + 1| - 2 rho) |1 - conj(u) v|
    let saturated = ellipse_criterion(u, q) <= CASE_TIE_TOL * (1.0 - p.conj() * q).norm();
    let (distance, case) = if saturated {
        (2.0, CaseTag::Saturated)
    } else {
        (interior_value(lambda, rho), CaseTag::Interior)
    };
    DistanceResult {
        distance,
        case,
        lambda,
        rho,
        delta: delta_of(rho),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EllipseSide {
    Inside,
    OnBoundary,
    Outside,
}

pub fn ellipse_membership(u: DiskPoint, v: Complex64) -> EllipseSide {
    ellipse_membership_with_band(u, v, ELLIPSE_BAND)
}

pub fn ellipse_membership_with_band(u: DiskPoint, v: Complex64, band: f64) -> EllipseSide {
    let value = ellipse_criterion(u, v);
    if value.abs() <= band {
        EllipseSide::OnBoundary
    } else if value > 0.0 {
        EllipseSide::Inside
    } else {
        EllipseSide::Outside
    }
}

/// The saturation ellipse of `phi_u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseLambda {
    pub u: DiskPoint,
    pub semi_major: f64,
    pub semi_minor: f64,
    pub foci: (Complex64, Complex64),
}

impl EllipseLambda {
    pub fn new(u: DiskPoint) -> Self {
        Self {
            u,
            semi_major: 1.0,
            semi_minor: u.one_minus_norm_sqr().sqrt(),
            foci: (u.value(), -u.value()),
        }
    }

    /// Point at parameter `t`; the major axis points along `arg(u)`.
    pub fn point(&self, t: f64) -> Complex64 {
        let axis = if self.u.norm() > 0.0 {
            self.u.value() / self.u.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        axis * Complex64::new(self.semi_major * t.cos(), self.semi_minor * t.sin())
    }
}

/// `n` points of the ellipse at parameters `2 pi k / n`.
pub fn ellipse_boundary(u: DiskPoint, n: usize) -> Result<Vec<Complex64>> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("need n >= 3 boundary points, got {n}")));
    }
    let e = EllipseLambda::new(u);
    Ok((0..n)
        .map(|k| e.point(std::f64::consts::TAU * k as f64 / n as f64))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finsler::{finsler_norm, TangentVector};
    use crate::metric::{dist_closed, dist_oracle, OracleConfig};
    use std::f64::consts::FRAC_PI_2;

    fn p(re: f64, im: f64) -> DiskPoint {
        DiskPoint::from_parts(re, im).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn norm_examples() {
        assert_eq!(finsler_norm_d(p(0.0, 0.0), c(1.0, 0.0)), 2.0);
        assert!((finsler_norm_d(p(0.5, 0.0), c(0.0, 1.0)) - 4.0).abs() < 1e-15);
        assert!((finsler_norm_d(p(0.5, 0.0), c(1.0, 0.0)) - 8.0 / 3.0).abs() < 1e-15);
        let u = p(-0.3, 0.7);
        let h = c(0.2, -1.1);
        let full = finsler_norm(&AutElement::phi(u), &TangentVector::new(0.0, h));
        assert!((finsler_norm_d(u, h) - full).abs() < 1e-14);
        assert_eq!(finsler_norm_d(u, -h), finsler_norm_d(u, h));
    }

    #[test]
    fn decompose_examples() {
        let parts = randers_decompose(p(0.5, 0.0), c(0.0, 1.0)).unwrap();
        assert!((parts.alpha - 8.0 / 3.0).abs() < 1e-15);
        assert!((parts.beta - 4.0 / 3.0).abs() < 1e-15);
        assert!((parts.total() - 4.0).abs() < 1e-15);

        // h -> conj(h) flips beta for real u
        assert!((beta(p(0.5, 0.0), c(0.3, -1.0)) + beta(p(0.5, 0.0), c(0.3, 1.0))).abs() < 1e-15);
        assert_eq!(beta(p(0.0, 0.0), c(0.3, 1.0)), 0.0);

        assert!(matches!(randers_decompose(p(0.5, 0.0), c(1.0, 0.0)), Err(Error::NotRandersCone(_))));
        assert!(randers_decompose(p(0.5, 0.0), c(0.0, -1.0)).is_err());
    }

    #[test]
    fn beta_norm_examples() {
        assert_eq!(beta_alpha_norm(p(0.0, 0.0)), 0.0);
        assert!((beta_alpha_norm(p(0.6, 0.0)) - 0.6).abs() < 1e-15);
        assert!((beta_alpha_norm(p(0.3, 0.4)) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn slice_distance_examples() {
        let cfg = OracleConfig::default();
        let u = p(0.2, -0.4);
        assert_eq!(dist_d_closed(u, u).distance, 0.0);

        let (a, b) = (p(0.1, 0.0), p(-0.1, 0.0));
        assert!(ellipse_criterion(a, b.value()) > 0.0);
        let d = dist_d_closed(a, b);
        assert_eq!(d.case, CaseTag::Interior);
        let o = dist_oracle(&AutElement::phi(a), &AutElement::phi(b), &cfg);
        assert!((d.distance - o).abs() < 1e-9);

        let (a, b) = (p(0.9, 0.0), p(-0.9, 0.0));
        assert!(ellipse_criterion(a, b.value()) > 0.0);
        let d = dist_d_closed(a, b);
        assert_eq!(d.case, CaseTag::Interior);
        assert!(d.distance > 1.9);
        let o = dist_oracle(&AutElement::phi(a), &AutElement::phi(b), &cfg);
        assert!((d.distance - o).abs() < 1e-9);
        let full = dist_closed(&AutElement::phi(a), &AutElement::phi(b));
        assert!((full.distance - d.distance).abs() < 1e-14);
    }

    #[test]
    fn membership_examples() {
        let u = p(0.35, -0.6);
        assert_eq!(ellipse_membership(u, u.value()), EllipseSide::Inside);
        assert_eq!(ellipse_membership(u, -u.value()), EllipseSide::Inside);
        let expected = 2.0 * (1.0 - u.norm()).powi(2);
        assert!((ellipse_criterion(u, -u.value()) - expected).abs() < 1e-15);
        assert_eq!(ellipse_membership(u, c(0.0, 0.99)), EllipseSide::Outside);

        let e = EllipseLambda::new(u);
        for k in 0..50 {
            let v = e.point(k as f64 * 0.13);
            assert_eq!(ellipse_membership(u, v), EllipseSide::OnBoundary);
        }
    }

    #[test]
    fn boundary_examples() {
        let u = p(0.4, 0.0);
        let pts = ellipse_boundary(u, 4).unwrap();
        assert!((pts[0] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((pts[1] - c(0.0, (1.0 - 0.16f64).sqrt())).norm() < 1e-15);
        assert!((EllipseLambda::new(u).point(FRAC_PI_2) - pts[1]).norm() < 1e-15);

        let u = p(0.0, 0.5);
        for v in ellipse_boundary(u, 360).unwrap() {
            assert!(ellipse_criterion(u, v).abs() <= 1e-10);
        }
        assert!(ellipse_boundary(u, 2).is_err());
    }
}
