//! Finite-difference helpers used to cross-check closed-form derivatives.

/// Fourth-order central first-derivative weights at offsets -2..=2.
const D1: [(f64, f64); 4] = [(-2.0, 1.0 / 12.0), (-1.0, -8.0 / 12.0), (1.0, 8.0 / 12.0), (2.0, -1.0 / 12.0)];

/// Fourth-order central second-derivative weights at offsets -2..=2.
const D2: [(f64, f64); 5] = [
    (-2.0, -1.0 / 12.0),
    (-1.0, 16.0 / 12.0),
    (0.0, -30.0 / 12.0),
    (1.0, 16.0 / 12.0),
    (2.0, -1.0 / 12.0),
];

/// Hessian of `f` at `x` by fourth-order central differences with step `step`.
///
/// Mixed partials apply the first-derivative stencil along both axes.
pub fn hessian3<F>(f: F, x: [f64; 3], step: f64) -> [[f64; 3]; 3]
where
    F: Fn([f64; 3]) -> f64,
{
    let shifted = |i: usize, di: f64, j: usize, dj: f64| {
        let mut p = x;
        p[i] += di * step;
        p[j] += dj * step;
        f(p)
    };
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        out[i][i] = D2
            .iter()
            .map(|&(o, w)| {
                let mut p = x;
                p[i] += o * step;
                w * f(p)
            })
            .sum::<f64>()
            / (step * step);
        for j in (i + 1)..3 {
            let mut acc = 0.0;
            for &(oi, wi) in &D1 {
                for &(oj, wj) in &D1 {
                    acc += wi * wj * shifted(i, oi, j, oj);
                }
            }
            out[i][j] = acc / (step * step);
            out[j][i] = out[i][j];
        }
    }
    out
}

/// Extrapolates samples `(h_k, q_k)` to `h = 0` with Neville's scheme.
pub fn extrapolate_to_zero(steps: &[f64], values: &[f64]) -> f64 {
    assert_eq!(steps.len(), values.len());
    assert!(!steps.is_empty());
    let mut p = values.to_vec();
    let n = p.len();
    for level in 1..n {
        for i in 0..(n - level) {
            let (hi, hj) = (steps[i], steps[i + level]);
            p[i] = (hi * p[i + 1] - hj * p[i]) / (hi - hj);
        }
    }
    p[0]
}
