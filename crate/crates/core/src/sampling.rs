//! Seeded random inputs shared by the self-test, the CLI sweeps and the test suites.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::finsler::{stratum_functional, TangentVector};
use crate::group::{AutElement, DiskPoint};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform (by area) in the disk of radius `radius`.
pub fn disk_point<R: Rng>(rng: &mut R, radius: f64) -> DiskPoint {
    let r = radius * rng.gen::<f64>().sqrt();
    let t = rng.gen::<f64>() * TAU;
    DiskPoint::new(Complex64::from_polar(r, t)).expect("radius below 1")
}

/// `xi` uniform in `[0, 2pi)`, `u` uniform in the disk of radius `radius`.
pub fn element<R: Rng>(rng: &mut R, radius: f64) -> AutElement {
    let xi = rng.gen::<f64>() * TAU;
    AutElement::new(xi, disk_point(rng, radius)).expect("finite angle")
}

/// `s` and both parts of `h` uniform in `[-scale, scale]`.
pub fn tangent<R: Rng>(rng: &mut R, scale: f64) -> TangentVector {
    TangentVector::from_components([
        rng.gen_range(-scale..=scale),
        rng.gen_range(-scale..=scale),
        rng.gen_range(-scale..=scale),
    ])
}

/// A direction on the non-smooth stratum: `s` solves the stratum equation.
pub fn tangent_on_e0<R: Rng>(rng: &mut R, f: &AutElement, scale: f64) -> TangentVector {
    let h = Complex64::new(rng.gen_range(-scale..=scale), rng.gen_range(-scale..=scale));
    let u = f.u();
    let s = 2.0 * (u.value().conj() * h).im / u.one_minus_norm_sqr();
    TangentVector::new(s, h)
}

/// A smooth direction with `|h|` in `[h_min, h_max]`, `|s| <= s_max`, and
/// stratum functional at least `margin` away from zero.
pub fn smooth_tangent<R: Rng>(
    rng: &mut R,
    f: &AutElement,
    h_min: f64,
    h_max: f64,
    s_max: f64,
    margin: f64,
) -> TangentVector {
    loop {
        let h = Complex64::from_polar(rng.gen_range(h_min..=h_max), rng.gen::<f64>() * TAU);
        let y = TangentVector::new(rng.gen_range(-s_max..=s_max), h);
        if stratum_functional(f.u(), &y).abs() >= margin {
            return y;
        }
    }
}
