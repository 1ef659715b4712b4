//! Global maximization of smooth periodic functions on `[0, 2pi)`.
//!
//! A uniform grid brackets every local maximum, then each bracket is
//! polished by golden-section search. The result depends only on the grid
//! size and iteration count.

use std::f64::consts::TAU;

const INV_PHI: f64 = 0.618_033_988_749_894_8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodicMax {
    pub theta: f64,
    pub value: f64,
}

/// Maximizes a `2pi`-periodic `f` using `grid_size` samples and
/// `refine_iters` golden-section steps per bracket.
pub fn maximize_periodic<F>(f: F, grid_size: usize, refine_iters: usize) -> PeriodicMax
where
    F: Fn(f64) -> f64,
{
    assert!(grid_size >= 3, "grid too coarse to bracket maxima");
    let step = TAU / grid_size as f64;
    let samples: Vec<f64> = (0..grid_size).map(|k| f(k as f64 * step)).collect();

    let mut best = PeriodicMax {
        theta: 0.0,
        value: f64::NEG_INFINITY,
    };
    for (k, &v) in samples.iter().enumerate() {
        if v > best.value {
            best = PeriodicMax {
                theta: k as f64 * step,
                value: v,
            };
        }
    }

    for k in 0..grid_size {
        let prev = samples[(k + grid_size - 1) % grid_size];
        let next = samples[(k + 1) % grid_size];
        let here = samples[k];
        // plateaus bracket on their first sample only
        if here > prev && here >= next {
            let centre = k as f64 * step;
            let polished = golden_max(&f, centre - step, centre + step, refine_iters);
            if polished.value > best.value {
                best = polished;
            }
        }
    }
    best.theta = best.theta.rem_euclid(TAU);
    best
}

/// Golden-section search for a maximum on `[lo, hi]`.
pub fn golden_max<F>(f: &F, mut lo: f64, mut hi: f64, iters: usize) -> PeriodicMax
where
    F: Fn(f64) -> f64,
{
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..iters {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
    }
    let mid = 0.5 * (lo + hi);
    let fm = f(mid);
    [(x1, f1), (x2, f2), (mid, fm)]
        .into_iter()
        .fold(
            PeriodicMax {
                theta: mid,
                value: f64::NEG_INFINITY,
            },
            |acc, (t, v)| if v > acc.value { PeriodicMax { theta: t, value: v } } else { acc },
        )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_off_grid_peak() {
        let peak = 1.234_567_891;
        let m = maximize_periodic(|t| (t - peak).cos(), 64, 80);
        assert!((m.theta - peak).abs() < 1e-7);
        assert!((m.value - 1.0).abs() < 1e-15);
    }

    #[test]
    fn picks_global_among_several() {
        let f = |t: f64| (3.0 * t).cos() + 0.1 * t.sin();
        let m = maximize_periodic(f, 256, 80);
        let brute = (0..2_000_000)
            .map(|k| f(k as f64 * TAU / 2_000_000.0))
            .fold(f64::NEG_INFINITY, f64::max);
        assert!(m.value >= brute - 1e-12);
    }

    #[test]
    fn wraps_peak_at_zero() {
        let m = maximize_periodic(|t| (t + 1e-3).cos(), 32, 80);
        assert!((m.value - 1.0).abs() < 1e-14);
        assert!(m.theta > TAU - 2e-3);
    }

    #[test]
    fn constant_function() {
        let m = maximize_periodic(|_| 2.5, 16, 10);
        assert_eq!(m.value, 2.5);
    }
}
