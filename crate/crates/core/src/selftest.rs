//! Reduced-size cross-checks runnable from the command line.

use std::fmt::Write as _;

use serde::Serialize;

use crate::finsler::{fundamental_tensor, kernel_direction, q_factorization, finsler_norm, TangentVector};
use crate::group::AutElement;
use crate::metric::{dist_closed, dist_oracle, OracleConfig};
use crate::numdiff::hessian3;
use crate::sampling;

pub const ORACLE_TOL: f64 = 1e-9;
pub const INVARIANCE_TOL: f64 = 1e-10;
pub const HESSIAN_TOL: f64 = 1e-6;
pub const KERNEL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy)]
pub struct SelftestConfig {
    pub samples: usize,
    pub seed: u64,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        Self { samples: 100, seed: 0 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub suite: &'static str,
    pub cases: usize,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Reproduction data for the worst case when the suite fails.
    pub failure: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.passed)
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{:<18} {:>6} {:>12} {:>10}  status", "suite", "cases", "max_error", "tolerance");
        for s in &self.suites {
            let _ = writeln!(
                out,
                "{:<18} {:>6} {:>12.3e} {:>10.0e}  {}",
                s.suite,
                s.cases,
                s.max_error,
                s.tolerance,
                if s.passed { "PASS" } else { "FAIL" }
            );
            if let Some(f) = &s.failure {
                let _ = writeln!(out, "    reproduce: {f}");
            }
        }
        out
    }
}

struct Worst {
    error: f64,
    case: String,
}

impl Worst {
    fn new() -> Self {
        Self {
            error: 0.0,
            case: String::new(),
        }
    }

    fn record(&mut self, error: f64, case: impl FnOnce() -> String) {
        if error > self.error || error.is_nan() {
            self.error = if error.is_nan() { f64::INFINITY } else { error };
            self.case = case();
        }
    }

    fn finish(self, suite: &'static str, cases: usize, tolerance: f64) -> SuiteResult {
        let passed = self.error <= tolerance;
        SuiteResult {
            suite,
            cases,
            max_error: self.error,
            tolerance,
            passed,
            failure: (!passed).then_some(self.case),
        }
    }
}

fn show(f: &AutElement) -> String {
    serde_json::to_string(f).unwrap_or_default()
}

pub fn run_selftest(cfg: &SelftestConfig) -> SelftestReport {
    run_selftest_with(cfg, |f, g| dist_closed(f, g).distance)
}

/// Runs the suites against an arbitrary distance routine, so a perturbed
/// closed form can be fed in as a negative control.
pub fn run_selftest_with<D>(cfg: &SelftestConfig, distance: D) -> SelftestReport
where
    D: Fn(&AutElement, &AutElement) -> f64,
{
    let n = cfg.samples.max(1);
    let oracle_cfg = OracleConfig::default();

    let mut rng = sampling::rng(cfg.seed);
    let mut worst = Worst::new();
    for i in 0..n {
        let f = sampling::element(&mut rng, 0.95);
        let g = sampling::element(&mut rng, 0.95);
        let err = (distance(&f, &g) - dist_oracle(&f, &g, &oracle_cfg)).abs();
        worst.record(err, || format!("seed={} i={i} f={} g={}", cfg.seed, show(&f), show(&g)));
    }
    let oracle = worst.finish("oracle-agreement", n, ORACLE_TOL);

    let mut rng = sampling::rng(cfg.seed.wrapping_add(1));
    let mut worst = Worst::new();
    for i in 0..n {
        let f = sampling::element(&mut rng, 0.95);
        let g = sampling::element(&mut rng, 0.95);
        let h = sampling::element(&mut rng, 0.95);
        let err = (distance(&f.compose(&h), &g.compose(&h)) - distance(&f, &g)).abs();
        worst.record(err, || {
            format!("seed={} i={i} f={} g={} h={}", cfg.seed, show(&f), show(&g), show(&h))
        });
    }
    let invariance = worst.finish("right-invariance", n, INVARIANCE_TOL);

    let mut rng = sampling::rng(cfg.seed.wrapping_add(2));
    let mut hess = Worst::new();
    let mut kern = Worst::new();
    for i in 0..n {
        let f = sampling::element(&mut rng, 0.8);
        let y = sampling::smooth_tangent(&mut rng, &f, 0.5, 1.5, 2.0, 0.05);
        let case = || format!("seed={} i={i} f={} y={:?}", cfg.seed, show(&f), y.components());
        let (Ok(t), Ok(qf), Ok(v)) = (fundamental_tensor(&f, &y), q_factorization(&f, &y), kernel_direction(&f, &y)) else {
            hess.record(f64::INFINITY, case);
            continue;
        };
        let half_sq = |p: [f64; 3]| 0.5 * finsler_norm(&f, &TangentVector::from_components(p)).powi(2);
        let h = hessian3(half_sq, y.components(), 1e-3);
        let mut err: f64 = 0.0;
        for a in 0..3 {
            for b in 0..3 {
                err = err.max((t.matrix[(a, b)] - h[a][b]).abs());
            }
        }
        hess.record(err, case);
        let k_err = ((t.matrix * v).norm() / v.norm()).max((qf.product() - t.matrix).amax());
        kern.record(k_err, case);
    }
    let tensor = hess.finish("tensor-hessian", n, HESSIAN_TOL);
    let kernel = kern.finish("tensor-kernel", n, KERNEL_TOL);

    SelftestReport {
        seed: cfg.seed,
        suites: vec![oracle, invariance, tensor, kernel],
    }
}
