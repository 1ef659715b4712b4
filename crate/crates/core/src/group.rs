//! Arithmetic on the automorphism group of the unit disk.
//!
//! Every automorphism is written in the chart
//! `f_{xi,u}(z) = e^{i xi} (z - u) / (1 - conj(u) z)` with `xi` an angle and
//! `u` the unique zero of the map inside the disk. `phi_u = f_{0,u}`.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Points closer than this to the unit circle are rejected on construction.
pub const DISK_MARGIN: f64 = 1e-12;

/// Default coordinate-wise tolerance for [`AutElement::approx_eq`].
pub const DEFAULT_EQ_TOL: f64 = 1e-10;

/// Slack allowed on `|z| <= 1` when evaluating on the closed disk.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// A point of the open unit disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint(Complex64);

impl DiskPoint {
    pub const ORIGIN: DiskPoint = DiskPoint(Complex64::new(0.0, 0.0));

    pub fn new(z: Complex64) -> Result<Self> {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite("disk point"));
        }
        let modulus = z.norm();
        if modulus > 1.0 - DISK_MARGIN {
            return Err(Error::OutsideDisk {
                re: z.re,
                im: z.im,
                modulus,
            });
        }
        Ok(Self(z))
    }

    pub fn from_parts(re: f64, im: f64) -> Result<Self> {
        Self::new(Complex64::new(re, im))
    }

    #[inline]
    pub fn value(self) -> Complex64 {
        self.0
    }

    #[inline]
    pub fn re(self) -> f64 {
        self.0.re
    }

    #[inline]
    pub fn im(self) -> f64 {
        self.0.im
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.0.norm()
    }

    /// `1 - |u|^2`, the conformal factor that appears in every formula.
    #[inline]
    pub fn one_minus_norm_sqr(self) -> f64 {
        1.0 - self.0.norm_sqr()
    }
}

/// A point `e^{i theta}` of the unit circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryAngle(pub f64);

impl BoundaryAngle {
    #[inline]
    pub fn point(self) -> Complex64 {
        Complex64::from_polar(1.0, self.0)
    }

    /// Representative in `[0, 2pi)`.
    pub fn canonical(self) -> f64 {
        wrap_angle(self.0)
    }
}

/// Reduces an angle to `[0, 2pi)`.
pub fn wrap_angle(theta: f64) -> f64 {
    let r = theta.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Signed difference `a - b` reduced to `(-pi, pi]`.
pub fn angle_diff(a: f64, b: f64) -> f64 {
    let d = wrap_angle(a - b);
    if d > std::f64::consts::PI {
        d - TAU
    } else {
        d
    }
}

/// The automorphism `f_{xi,u}`, stored with `xi` in `[0, 2pi)`.
#[derive(Clone, Copy)]
pub struct AutElement {
    xi: f64,
    u: DiskPoint,
}

impl AutElement {
    pub const IDENTITY: AutElement = AutElement {
        xi: 0.0,
        u: DiskPoint::ORIGIN,
    };

    pub fn new(xi: f64, u: DiskPoint) -> Result<Self> {
        if !xi.is_finite() {
            return Err(Error::NonFinite("rotation angle"));
        }
        Ok(Self {
            xi: wrap_angle(xi),
            u,
        })
    }

    /// Convenience constructor from raw coordinates.
    pub fn from_coords(xi: f64, u_re: f64, u_im: f64) -> Result<Self> {
        Self::new(xi, DiskPoint::from_parts(u_re, u_im)?)
    }

    /// `phi_u = f_{0,u}`.
    pub fn phi(u: DiskPoint) -> Self {
        Self { xi: 0.0, u }
    }

    /// Pure rotation `z -> e^{i xi} z`.
    pub fn rotation(xi: f64) -> Result<Self> {
        Self::new(xi, DiskPoint::ORIGIN)
    }

    #[inline]
    pub fn xi(&self) -> f64 {
        self.xi
    }

    #[inline]
    pub fn u(&self) -> DiskPoint {
        self.u
    }

    /// Evaluates the map at `z` on the closed disk.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let m = z.norm();
        if !m.is_finite() {
            return Err(Error::NonFinite("evaluation point"));
        }
        if m > 1.0 + BOUNDARY_TOL {
            return Err(Error::OutsideClosedDisk(m));
        }
        Ok(self.eval_unchecked(z))
    }

    /// Evaluates without the closed-disk guard. Callers must pass `|z| <= 1`.
    #[inline]
    pub fn eval_unchecked(&self, z: Complex64) -> Complex64 {
        let u = self.u.0;
        Complex64::from_polar(1.0, self.xi) * (z - u) / (1.0 - u.conj() * z)
    }

    /// `self ∘ other`, i.e. `z -> self(other(z))`.
    pub fn compose(&self, other: &AutElement) -> AutElement {
        let (a1, b1, c1, d1) = self.coefficients();
        let (a2, b2, c2, d2) = other.coefficients();
        let a = a1 * a2 + b1 * c2;
        let b = a1 * b2 + b1 * d2;
        let d = c1 * b2 + d1 * d2;
        // zero of (a z + b)/(c z + d), phase from the ratio of the diagonal
        let zero = -b / a;
        let phase = (a / d).arg();
        AutElement {
            xi: wrap_angle(phase),
            u: DiskPoint(clamp_into_disk(zero)),
        }
    }

    pub fn inverse(&self) -> AutElement {
        // f^{-1} = f_{-xi, -e^{i xi} u}
        let w = -Complex64::from_polar(1.0, self.xi) * self.u.0;
        AutElement {
            xi: wrap_angle(-self.xi),
            u: DiskPoint(clamp_into_disk(w)),
        }
    }

    /// Coordinate-wise comparison; `xi` is compared on the circle.
    pub fn approx_eq(&self, other: &AutElement, tol: f64) -> bool {
        angle_diff(self.xi, other.xi).abs() <= tol
            && (self.u.re() - other.u.re()).abs() <= tol
            && (self.u.im() - other.u.im()).abs() <= tol
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.approx_eq(&Self::IDENTITY, tol)
    }

    /// Matrix `[[a, b], [c, d]]` of the fractional-linear map.
    fn coefficients(&self) -> (Complex64, Complex64, Complex64, Complex64) {
        let p = Complex64::from_polar(1.0, self.xi);
        let u = self.u.0;
        (p, -p * u, -u.conj(), Complex64::new(1.0, 0.0))
    }
}

/// Round-off can push a composed zero marginally past the guard; pull it back.
fn clamp_into_disk(z: Complex64) -> Complex64 {
    let m = z.norm();
    let limit = 1.0 - DISK_MARGIN;
    if m > limit {
        z * (limit / m)
    } else {
        z
    }
}

impl PartialEq for AutElement {
    fn eq(&self, other: &Self) -> bool {
        self.approx_eq(other, DEFAULT_EQ_TOL)
    }
}

impl fmt::Debug for AutElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f[xi={}, u={}{:+}i]", self.xi, self.u.re(), self.u.im())
    }
}

impl Default for AutElement {
    fn default() -> Self {
        Self::IDENTITY
    }
}

/// The pseudo-hyperbolic distance `|u - v| / |1 - conj(u) v|`.
pub fn rho(u: DiskPoint, v: DiskPoint) -> f64 {
    let (u, v) = (u.0, v.0);
    // separate moduli keep rho(u, v) == rho(v, u) bit for bit
    (u - v).norm() / (1.0 - u.conj() * v).norm()
}

#[derive(Serialize, Deserialize)]
struct AutElementRepr {
    xi: f64,
    u_re: f64,
    u_im: f64,
}

impl Serialize for AutElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AutElementRepr {
            xi: self.xi,
            u_re: self.u.re(),
            u_im: self.u.im(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AutElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = AutElementRepr::deserialize(d)?;
        AutElement::from_coords(r.xi, r.u_re, r.u_im).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn el(xi: f64, re: f64, im: f64) -> AutElement {
        AutElement::from_coords(xi, re, im).unwrap()
    }

    fn grid() -> Vec<Complex64> {
        (0..10)
            .flat_map(|i| (0..10).map(move |j| c(-0.9 + 0.2 * i as f64, -0.9 + 0.2 * j as f64)))
            .filter(|z| z.norm() < 1.0)
            .collect()
    }

    #[test]
    fn eval_examples() {
        let z = c(0.3, 0.1);
        assert_eq!(AutElement::IDENTITY.eval(z).unwrap(), z);

        let u = DiskPoint::from_parts(0.2, -0.4).unwrap();
        assert!(AutElement::phi(u).eval(u.value()).unwrap().norm() < 1e-16);

        let w = el(FRAC_PI_2, 0.5, 0.0).eval(c(0.0, 0.0)).unwrap();
        assert!((w - c(0.0, -0.5)).norm() < 1e-15);
    }

    #[test]
    fn eval_maps_circle_to_circle_and_rejects_outside() {
        let f = el(1.3, 0.6, -0.5);
        for k in 0..64 {
            let z = Complex64::from_polar(1.0, k as f64 * TAU / 64.0);
            assert!((f.eval(z).unwrap().norm() - 1.0).abs() < 1e-12);
            assert!(f.eval(0.7 * z).unwrap().norm() < 1.0);
        }
        assert!(matches!(f.eval(c(1.0 + 1e-9, 0.0)), Err(Error::OutsideClosedDisk(_))));
    }

    #[test]
    fn disk_point_guard() {
        assert!(DiskPoint::from_parts(1.0, 0.0).is_err());
        assert!(DiskPoint::from_parts(0.6, 0.8).is_err());
        assert!(DiskPoint::from_parts(f64::NAN, 0.0).is_err());
        assert!(DiskPoint::from_parts(0.999_999, 0.0).is_ok());
    }

    #[test]
    fn canonical_xi() {
        assert!((el(-FRAC_PI_2, 0.0, 0.0).xi() - 3.0 * FRAC_PI_2).abs() < 1e-15);
        assert_eq!(el(TAU, 0.0, 0.0).xi(), 0.0);
        assert!(el(TAU - 1e-14, 0.0, 0.0).is_identity(DEFAULT_EQ_TOL));
    }

    #[test]
    fn compose_examples() {
        let f = el(0.7, 0.3, -0.2);
        assert!(f.compose(&AutElement::IDENTITY).approx_eq(&f, 1e-14));
        let r = el(PI, 0.0, 0.0);
        assert!(r.compose(&r).is_identity(1e-14));

        let p = el(0.0, 0.3, 0.0);
        let m = el(0.0, -0.3, 0.0);
        let h = p.compose(&m);
        for z in grid() {
            let lhs = h.eval(z).unwrap();
            let rhs = p.eval(m.eval(z).unwrap()).unwrap();
            assert!((lhs - rhs).norm() < 1e-14);
            assert!((lhs - z).norm() < 1e-14);
        }
        assert!(h.is_identity(1e-14));
    }

    #[test]
    fn compose_matches_pointwise() {
        let f = el(2.1, -0.5, 0.4);
        let g = el(5.9, 0.1, 0.85);
        let h = f.compose(&g);
        for z in grid() {
            let lhs = h.eval(z).unwrap();
            let rhs = f.eval(g.eval(z).unwrap()).unwrap();
            assert!((lhs - rhs).norm() < 1e-13, "{z}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn inverse_examples() {
        assert!(AutElement::IDENTITY.inverse().is_identity(0.0));
        let r = el(1.1, 0.0, 0.0).inverse();
        assert!(r.approx_eq(&el(-1.1, 0.0, 0.0), 1e-15));

        let f = el(0.0, 0.4, 0.0);
        let g = f.inverse();
        for z in grid() {
            assert!((g.eval(f.eval(z).unwrap()).unwrap() - z).norm() < 1e-14);
        }
        let k = el(4.0, -0.3, 0.6);
        assert!(k.compose(&k.inverse()).is_identity(1e-13));
        assert!(k.inverse().compose(&k).is_identity(1e-13));
    }

    #[test]
    fn rho_examples() {
        let p = |re: f64| DiskPoint::from_parts(re, 0.0).unwrap();
        assert_eq!(rho(p(0.3), p(0.3)), 0.0);
        assert!((rho(p(0.5), p(0.0)) - 0.5).abs() < 1e-15);
        assert!((rho(p(0.5), p(-0.5)) - 0.8).abs() < 1e-15);
    }

    #[test]
    fn json_shape() {
        let f = el(1.5, 0.25, -0.5);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"xi":1.5,"u_re":0.25,"u_im":-0.5}"#);
        let back: AutElement = serde_json::from_str(&s).unwrap();
        assert!(back.approx_eq(&f, 0.0));
        assert!(serde_json::from_str::<AutElement>(r#"{"xi":0,"u_re":1,"u_im":0}"#).is_err());
    }
}
