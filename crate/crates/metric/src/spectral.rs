//! Quadrature nodes and spectral differentiation.

use std::f64::consts::PI;
use std::num::NonZeroUsize;
use std::sync::Arc;

use gauss_quad::legendre::GaussLegendre;
use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};

/// Differentiates uniformly sampled periodic data on [0, 2π).
pub struct PeriodicDerivative {
    n: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl PeriodicDerivative {
    pub fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self { n, forward: planner.plan_fft_forward(n), inverse: planner.plan_fft_inverse(n) }
    }

    fn wavenumber(&self, j: usize) -> f64 {
        let n = self.n;
        if j < n.div_ceil(2) {
            j as f64
        } else if n.is_multiple_of(2) && j == n / 2 {
            0.0
        } else {
            j as f64 - n as f64
        }
    }

    /// Derivatives of orders 1 and 2.
    pub fn derivatives(&self, samples: &[f64]) -> (Vec<f64>, Vec<f64>) {
        assert_eq!(samples.len(), self.n);
        let n = self.n;
        let mut spec: Vec<Complex<f64>> = samples.iter().map(|&x| Complex::new(x, 0.0)).collect();
        self.forward.process(&mut spec);
        let mut d1: Vec<Complex<f64>> = Vec::with_capacity(n);
        let mut d2: Vec<Complex<f64>> = Vec::with_capacity(n);
        for (j, c) in spec.iter().enumerate() {
            let k = self.wavenumber(j);
            d1.push(*c * Complex::new(0.0, k));
            let k2 = if n.is_multiple_of(2) && j == n / 2 { (n / 2) as f64 } else { k };
            d2.push(*c * (-k2 * k2));
        }
        self.inverse.process(&mut d1);
        self.inverse.process(&mut d2);
        let scale = 1.0 / n as f64;
        (d1.iter().map(|c| c.re * scale).collect(), d2.iter().map(|c| c.re * scale).collect())
    }

    pub fn derivative(&self, samples: &[f64]) -> Vec<f64> {
        self.derivatives(samples).0
    }
}

/// Uniform angles 2πj/n.
pub fn uniform_angles(n: usize) -> Vec<f64> {
    (0..n).map(|j| 2.0 * PI * j as f64 / n as f64).collect()
}

/// Gauss–Legendre nodes and weights mapped to [a, b], nodes increasing.
pub fn gauss_legendre(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let rule = GaussLegendre::new(NonZeroUsize::new(n).expect("at least one node"));
    let mut pairs: Vec<(f64, f64)> = rule.as_node_weight_pairs().to_vec();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    let half = 0.5 * (b - a);
    let mid = 0.5 * (b + a);
    pairs.into_iter().map(|(x, w)| (mid + half * x, half * w)).unzip()
}

/// Dense differentiation matrix of the interpolating polynomial through `nodes`,
/// built from barycentric weights.
pub fn differentiation_matrix(nodes: &[f64]) -> Vec<Vec<f64>> {
    let n = nodes.len();
    let (lo, hi) = nodes.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &x| (l.min(x), h.max(x)));
    let scale = if hi > lo { 4.0 / (hi - lo) } else { 1.0 };
    let mut w = vec![1.0; n];
    for j in 0..n {
        for k in 0..n {
            if k != j {
                w[j] /= scale * (nodes[j] - nodes[k]);
            }
        }
    }
    let mut d = vec![vec![0.0; n]; n];
    for i in 0..n {
        let mut diag = 0.0;
        for j in 0..n {
            if i != j {
                let v = (w[j] / w[i]) / (nodes[i] - nodes[j]);
                d[i][j] = v;
                diag -= v;
            }
        }
        d[i][i] = diag;
    }
    d
}

/// Composite Simpson rule on an even number of equal intervals.
pub fn simpson(values: &[f64], h: f64) -> f64 {
    let n = values.len() - 1;
    assert!(n >= 2 && n.is_multiple_of(2), "Simpson needs an even number of intervals");
    let mut s = values[0] + values[n];
    for (i, v) in values.iter().enumerate().take(n).skip(1) {
        s += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
    }
    s * h / 3.0
}
