//! Curve lengths under the Finsler norm and the non-geodesic witness.
//!
//! A curve is given either analytically (a [`Path`], refined by node
//! doubling) or as a fixed [`CurveSample`]. Lengths integrate
//! `F(point(t), tangent(t))` with the composite trapezoid rule; `F` is
//! continuous across `E0`, so no special handling is needed there.

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::finsler::{finsler_norm, TangentVector};
use crate::group::{angle_diff, rho, AutElement, DiskPoint};
use crate::metric::{dist_closed, lambda_of};
use crate::sampling;

/// A parametric curve `t -> (xi(t), u(t))` on `[0, 1]`, with `xi` lifted to the reals.
pub trait Path {
    fn position(&self, t: f64) -> (f64, Complex64);
    fn velocity(&self, t: f64) -> TangentVector;

    fn element(&self, t: f64) -> Result<AutElement> {
        let (xi, u) = self.position(t);
        let u = DiskPoint::new(u).map_err(|_| Error::BadCurve(format!("u({t}) = {u} is outside the disk")))?;
        AutElement::new(xi, u)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CurveNode {
    pub t: f64,
    pub point: AutElement,
    pub tangent: Option<TangentVector>,
}

/// A discretized curve.
#[derive(Debug, Clone)]
pub struct CurveSample {
    nodes: Vec<CurveNode>,
}

impl CurveSample {
    pub fn new(nodes: Vec<CurveNode>) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(Error::BadCurve("need at least two nodes".into()));
        }
        if nodes[0].t != 0.0 || nodes[nodes.len() - 1].t != 1.0 {
            return Err(Error::BadCurve("parameter must run from 0 to 1".into()));
        }
        if nodes.windows(2).any(|w| !(w[1].t > w[0].t)) {
            return Err(Error::BadCurve("parameter must be strictly increasing".into()));
        }
        Ok(Self { nodes })
    }

    /// `segments + 1` equally spaced nodes of `path`, with exact tangents.
    pub fn from_path<P: Path + ?Sized>(path: &P, segments: usize) -> Result<Self> {
        let segments = segments.max(1);
        let nodes = (0..=segments)
            .map(|k| {
                let t = k as f64 / segments as f64;
                Ok(CurveNode {
                    t,
                    point: path.element(t)?,
                    tangent: Some(path.velocity(t)),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(nodes)
    }

    pub fn nodes(&self) -> &[CurveNode] {
        &self.nodes
    }

    pub fn start(&self) -> &AutElement {
        &self.nodes[0].point
    }

    pub fn end(&self) -> &AutElement {
        &self.nodes[self.nodes.len() - 1].point
    }

    /// Trapezoid length on the given nodes.
    ///
    /// Without tangents each segment uses the chord `(dxi, du)` (with `dxi`
    /// taken modulo `2pi` into `(-pi, pi]`) measured at both endpoints.
    pub fn length(&self) -> f64 {
        self.nodes
            .windows(2)
            .map(|w| {
                let (p, q) = (&w[0], &w[1]);
                let dt = q.t - p.t;
                match (p.tangent, q.tangent) {
                    (Some(tp), Some(tq)) => 0.5 * dt * (finsler_norm(&p.point, &tp) + finsler_norm(&q.point, &tq)),
                    _ => {
                        let step = TangentVector::new(
                            angle_diff(q.point.xi(), p.point.xi()),
                            q.point.u().value() - p.point.u().value(),
                        );
                        0.5 * (finsler_norm(&p.point, &step) + finsler_norm(&q.point, &step))
                    }
                }
            })
            .sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LengthConfig {
    pub rel_tol: f64,
    pub min_segments: usize,
    pub max_segments: usize,
}

impl Default for LengthConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-6,
            min_segments: 16,
            max_segments: 1 << 20,
        }
    }
}

/// Length of `path`, doubling the node count until the relative change is
/// below `cfg.rel_tol` (or `cfg.max_segments` is reached).
pub fn curve_length<P: Path + ?Sized>(path: &P, cfg: &LengthConfig) -> Result<f64> {
    let mut n = cfg.min_segments.max(1);
    let mut prev = CurveSample::from_path(path, n)?.length();
    while n < cfg.max_segments {
        n *= 2;
        let next = CurveSample::from_path(path, n)?.length();
        let scale = next.abs().max(f64::MIN_POSITIVE);
        if (next - prev).abs() <= cfg.rel_tol * scale {
            return Ok(next);
        }
        prev = next;
    }
    Ok(prev)
}

/// `length - d(start, end)`; non-negative up to discretization error.
pub fn chord_vs_length<P: Path + ?Sized>(path: &P, cfg: &LengthConfig) -> Result<f64> {
    let length = curve_length(path, cfg)?;
    Ok(length - dist_closed(&path.element(0.0)?, &path.element(1.0)?).distance)
}

/// Coordinate-straight path between two lifted chart points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StraightPath {
    pub xi0: f64,
    pub xi1: f64,
    pub u0: Complex64,
    pub u1: Complex64,
}

impl StraightPath {
    /// Straight path from `a` to `b` taking the shorter way around in `xi`
    /// and then `winding` extra full turns.
    pub fn between(a: &AutElement, b: &AutElement, winding: i32) -> Self {
        let dxi = angle_diff(b.xi(), a.xi()) + std::f64::consts::TAU * winding as f64;
        Self {
            xi0: a.xi(),
            xi1: a.xi() + dxi,
            u0: a.u().value(),
            u1: b.u().value(),
        }
    }
}

impl Path for StraightPath {
    fn position(&self, t: f64) -> (f64, Complex64) {
        (self.xi0 + t * (self.xi1 - self.xi0), self.u0 + t * (self.u1 - self.u0))
    }

    fn velocity(&self, _t: f64) -> TangentVector {
        TangentVector::new(self.xi1 - self.xi0, self.u1 - self.u0)
    }
}

/// Cubic bump `4 t (1 - t) (c0 + c1 (2t - 1))`, zero at both ends,
/// bounded by `|c0| + |c1|`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CubicBump {
    pub c0: f64,
    pub c1: f64,
}

impl CubicBump {
    fn value(&self, t: f64) -> f64 {
        4.0 * t * (1.0 - t) * (self.c0 + self.c1 * (2.0 * t - 1.0))
    }

    fn derivative(&self, t: f64) -> f64 {
        4.0 * (1.0 - 2.0 * t) * (self.c0 + self.c1 * (2.0 * t - 1.0)) + 8.0 * self.c1 * t * (1.0 - t)
    }

    fn scaled(&self, k: f64) -> Self {
        Self {
            c0: k * self.c0,
            c1: k * self.c1,
        }
    }
}

/// A straight path plus independent cubic bumps in `xi`, `Re u` and `Im u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbedPath {
    pub base: StraightPath,
    pub xi: CubicBump,
    pub re: CubicBump,
    pub im: CubicBump,
}

impl Path for PerturbedPath {
    fn position(&self, t: f64) -> (f64, Complex64) {
        let (xi, u) = self.base.position(t);
        (
            xi + self.xi.value(t),
            u + Complex64::new(self.re.value(t), self.im.value(t)),
        )
    }

    fn velocity(&self, t: f64) -> TangentVector {
        let v = self.base.velocity(t);
        TangentVector::new(
            v.s + self.xi.derivative(t),
            v.h + Complex64::new(self.re.derivative(t), self.im.derivative(t)),
        )
    }
}

/// Largest `|u(t)|` allowed for generated family members.
const FAMILY_RADIUS: f64 = 0.999;

impl PerturbedPath {
    fn max_radius(&self) -> f64 {
        (0..=256)
            .map(|k| self.position(k as f64 / 256.0).1.norm())
            .fold(0.0, f64::max)
    }
}

/// The set `Omega` of elements at saturated distance from `base`:
/// `|lambda(base, g) + 1| < 2 rho(u, v)`.
#[derive(Debug, Clone, Copy)]
pub struct OmegaSet {
    pub base: AutElement,
}

impl OmegaSet {
    pub fn contains(&self, g: &AutElement) -> bool {
        omega_contains(&self.base, g)
    }
}

pub fn omega_contains(base: &AutElement, g: &AutElement) -> bool {
    (lambda_of(base, g).value() + 1.0).norm() < 2.0 * rho(base.u(), g.u())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessReport {
    pub base: AutElement,
    pub target: AutElement,
    pub distance: f64,
    pub family_size: usize,
    pub min_length: f64,
    pub gap: f64,
    pub seed: u64,
    #[serde(skip)]
    pub lengths: Vec<f64>,
}

/// Maximum perturbation amplitude per coordinate.
pub const FAMILY_AMPLITUDE: f64 = 0.2;

/// Straight path first, then seeded cubic perturbations. Odd members use
/// the other lift of `xi` around the circle. With `rotation_free` the `xi`
/// coordinate is held at 0 (curves inside the slice `{phi_u}`).
pub fn curve_family(
    base: &AutElement,
    target: &AutElement,
    size: usize,
    seed: u64,
    rotation_free: bool,
) -> Vec<PerturbedPath> {
    let mut rng = sampling::rng(seed);
    let straight = StraightPath::between(base, target, 0);
    let other_lift = {
        let d = straight.xi1 - straight.xi0;
        StraightPath::between(base, target, if d > 0.0 { -1 } else { 1 })
    };
    let bump = |rng: &mut sampling::SampleRng| {
        let w: f64 = rng.gen_range(0.0..=1.0);
        let sign0 = if rng.gen::<bool>() { 1.0 } else { -1.0 };
        let sign1 = if rng.gen::<bool>() { 1.0 } else { -1.0 };
        let share = rng.gen_range(0.0..=1.0);
        CubicBump {
            c0: sign0 * FAMILY_AMPLITUDE * w * share,
            c1: sign1 * FAMILY_AMPLITUDE * w * (1.0 - share),
        }
    };
    let mut family = Vec::with_capacity(size);
    for k in 0..size {
        if k == 0 {
            family.push(PerturbedPath {
                base: straight,
                xi: CubicBump::default(),
                re: CubicBump::default(),
                im: CubicBump::default(),
            });
            continue;
        }
        let lifted = if k % 2 == 1 && !rotation_free { other_lift } else { straight };
        let xi = bump(&mut rng);
        let re = bump(&mut rng);
        let im = bump(&mut rng);
        let mut member = PerturbedPath {
            base: lifted,
            xi: if rotation_free { CubicBump::default() } else { xi },
            re,
            im,
        };
        while member.max_radius() > FAMILY_RADIUS {
            member.re = member.re.scaled(0.5);
            member.im = member.im.scaled(0.5);
        }
        family.push(member);
    }
    family
}

fn witness_from_family(
    base: &AutElement,
    target: &AutElement,
    family: &[PerturbedPath],
    seed: u64,
) -> Result<WitnessReport> {
    let cfg = LengthConfig::default();
    let distance = dist_closed(base, target).distance;
    let lengths = family
        .iter()
        .map(|p| curve_length(p, &cfg))
        .collect::<Result<Vec<_>>>()?;
    let min_length = lengths.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(WitnessReport {
        base: *base,
        target: *target,
        distance,
        family_size: family.len(),
        min_length,
        gap: min_length - distance,
        seed,
        lengths,
    })
}

/// Measures the shortest curve in a seeded family joining `base` to a
/// `target` in `Omega(base)`. A positive `gap` is numerical evidence that
/// no curve realizes the distance.
pub fn nongeodesic_witness(
    base: &AutElement,
    target: &AutElement,
    curve_family_size: usize,
    seed: u64,
) -> Result<WitnessReport> {
    if !omega_contains(base, target) {
        return Err(Error::NotInOmega);
    }
    if curve_family_size == 0 {
        return Err(Error::InvalidParameter("family must be non-empty".into()));
    }
    let family = curve_family(base, target, curve_family_size, seed, false);
    witness_from_family(base, target, &family, seed)
}

/// Same as [`nongeodesic_witness`] with every curve inside `{phi_u}`.
pub fn nongeodesic_witness_slice(
    u: DiskPoint,
    v: DiskPoint,
    curve_family_size: usize,
    seed: u64,
) -> Result<WitnessReport> {
    let (base, target) = (AutElement::phi(u), AutElement::phi(v));
    if !omega_contains(&base, &target) {
        return Err(Error::NotInOmega);
    }
    if curve_family_size == 0 {
        return Err(Error::InvalidParameter("family must be non-empty".into()));
    }
    let family = curve_family(&base, &target, curve_family_size, seed, true);
    witness_from_family(&base, &target, &family, seed)
}
