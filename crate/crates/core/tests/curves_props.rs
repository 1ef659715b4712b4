use std::f64::consts::PI;

use aut_disk::curves::{
    chord_vs_length, curve_family, curve_length, nongeodesic_witness, nongeodesic_witness_slice, omega_contains,
    CubicBump, LengthConfig, Path, PerturbedPath, StraightPath,
};
use aut_disk::finsler::TangentVector;
use aut_disk::metric::CaseTag;
use aut_disk::{dist_closed, sampling, AutElement, DiskPoint, Error};
use num_complex::Complex64;
use rand::Rng;

/// `path` restricted to `[a, b]` and rescaled to `[0, 1]`.
struct Piece<'a, P: Path> {
    path: &'a P,
    a: f64,
    b: f64,
}

impl<P: Path> Path for Piece<'_, P> {
    fn position(&self, t: f64) -> (f64, Complex64) {
        self.path.position(self.a + t * (self.b - self.a))
    }

    fn velocity(&self, t: f64) -> TangentVector {
        self.path.velocity(self.a + t * (self.b - self.a)).scale(self.b - self.a)
    }
}

/// `path` run along `t -> t^2`.
struct Squared<'a, P: Path>(&'a P);

impl<P: Path> Path for Squared<'_, P> {
    fn position(&self, t: f64) -> (f64, Complex64) {
        self.0.position(t * t)
    }

    fn velocity(&self, t: f64) -> TangentVector {
        self.0.velocity(t * t).scale(2.0 * t)
    }
}

fn random_path(rng: &mut sampling::SampleRng) -> PerturbedPath {
    let a = sampling::element(rng, 0.6);
    let b = sampling::element(rng, 0.6);
    let mut bump = || CubicBump {
        c0: rng.gen_range(-0.15..0.15),
        c1: rng.gen_range(-0.15..0.15),
    };
    PerturbedPath {
        base: StraightPath::between(&a, &b, 0),
        xi: bump(),
        re: bump(),
        im: bump(),
    }
}

fn tight() -> LengthConfig {
    LengthConfig {
        rel_tol: 1e-9,
        ..LengthConfig::default()
    }
}

#[test]
fn length_dominates_chord() {
    let mut rng = sampling::rng(41);
    for _ in 0..200 {
        let path = random_path(&mut rng);
        assert!(chord_vs_length(&path, &LengthConfig::default()).unwrap() >= -1e-6);
    }
}

#[test]
fn length_is_additive() {
    let mut rng = sampling::rng(42);
    for _ in 0..20 {
        let path = random_path(&mut rng);
        let split = rng.gen_range(0.2..0.8);
        let whole = curve_length(&path, &tight()).unwrap();
        let left = curve_length(&Piece { path: &path, a: 0.0, b: split }, &tight()).unwrap();
        let right = curve_length(&Piece { path: &path, a: split, b: 1.0 }, &tight()).unwrap();
        assert!((whole - left - right).abs() <= 1e-6 * whole, "{whole} vs {}", left + right);
    }
}

#[test]
fn length_ignores_reparametrization() {
    let mut rng = sampling::rng(43);
    for _ in 0..20 {
        let path = random_path(&mut rng);
        let plain = curve_length(&path, &tight()).unwrap();
        let squared = curve_length(&Squared(&path), &tight()).unwrap();
        assert!((plain - squared).abs() <= 1e-6 * plain, "{plain} vs {squared}");
    }
}

#[test]
fn omega_is_the_saturated_set() {
    let mut rng = sampling::rng(44);
    let mut hits = 0;
    for _ in 0..2000 {
        let f = sampling::element(&mut rng, 0.95);
        let g = sampling::element(&mut rng, 0.95);
        let d = dist_closed(&f, &g);
        if omega_contains(&f, &g) {
            hits += 1;
            assert_eq!(d.distance, 2.0);
            assert_eq!(d.case, CaseTag::Saturated);
        } else if d.case == CaseTag::Interior {
            assert!(d.distance < 2.0);
        }
    }
    assert!(hits > 100, "{hits}");
}

#[test]
fn witness_gap_is_positive_across_seeds() {
    let base = AutElement::IDENTITY;
    let target = AutElement::from_coords(PI, 0.1, 0.0).unwrap();
    for seed in 0..5 {
        let report = nongeodesic_witness(&base, &target, 40, seed).unwrap();
        assert_eq!(report.distance, 2.0);
        assert_eq!(report.family_size, 40);
        assert!(report.gap > 0.1, "seed {seed}: {}", report.gap);
    }
}

#[test]
fn slice_witness_stays_in_the_slice() {
    let u = DiskPoint::from_parts(0.9, 0.0).unwrap();
    let v = DiskPoint::from_parts(0.0, 0.6).unwrap();
    let report = nongeodesic_witness_slice(u, v, 40, 7).unwrap();
    assert!(report.gap > 0.1, "{}", report.gap);
    for path in curve_family(&AutElement::phi(u), &AutElement::phi(v), 40, 7, true) {
        for k in 0..=16 {
            assert_eq!(path.position(k as f64 / 16.0).0, 0.0);
        }
    }
}

#[test]
fn witness_rejects_targets_outside_omega() {
    let base = AutElement::IDENTITY;
    let near = AutElement::from_coords(0.1, 0.05, 0.0).unwrap();
    assert!(matches!(nongeodesic_witness(&base, &near, 10, 0), Err(Error::NotInOmega)));
    let target = AutElement::from_coords(PI, 0.1, 0.0).unwrap();
    assert!(matches!(nongeodesic_witness(&base, &target, 0, 0), Err(Error::InvalidParameter(_))));
}
