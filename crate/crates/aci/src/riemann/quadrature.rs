use std::f64::consts::PI;

use crate::algebra::Complex64;
use crate::error::{Error, Result};

/// Gauss-Legendre nodes and weights on [-1, 1].
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let d = legendre(n, x).1;
            let w = 2.0 / ((1.0 - x * x) * d * d);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    /// The rule mapped to [a, b], applied to a vector-valued integrand.
    pub fn apply(&self, f: &dyn Fn(f64) -> Vec<Complex64>, a: f64, b: f64) -> Vec<Complex64> {
        let (c, h) = ((a + b) / 2.0, (b - a) / 2.0);
        let mut acc: Vec<Complex64> = Vec::new();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            let v = f(c + h * x);
            if acc.is_empty() {
                acc = vec![Complex64::new(0.0, 0.0); v.len()];
            }
            for (s, y) in acc.iter_mut().zip(v) {
                *s += y * (w * h);
            }
        }
        acc
    }
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    (p1, n as f64 * (x * p1 - p0) / (x * x - 1.0))
}

/// Result of an adaptive integration with its error estimate.
#[derive(Clone, Debug)]
pub struct Quadrature {
    pub value: Vec<Complex64>,
    pub error: f64,
    pub panels: usize,
}

/// Adaptive bisection: a panel is accepted when the rule on it agrees with
/// the rule on its two halves to `tol` relative to max(1, |value|).
pub fn integrate_adaptive(f: &dyn Fn(f64) -> Vec<Complex64>, a: f64, b: f64, rule: &GaussLegendre, tol: f64, max_depth: u32) -> Result<Quadrature> {
    let whole = rule.apply(f, a, b);
    let mut out = Quadrature { value: vec![Complex64::new(0.0, 0.0); whole.len()], error: 0.0, panels: 0 };
    refine(f, a, b, whole, rule, tol, max_depth, &mut out)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn refine(f: &dyn Fn(f64) -> Vec<Complex64>, a: f64, b: f64, whole: Vec<Complex64>, rule: &GaussLegendre, tol: f64, depth: u32, out: &mut Quadrature) -> Result<()> {
    let m = (a + b) / 2.0;
    let left = rule.apply(f, a, m);
    let right = rule.apply(f, m, b);
    let mut err: f64 = 0.0;
    let mut scale: f64 = 1.0;
    for k in 0..whole.len() {
        let s = left[k] + right[k];
        err = err.max((s - whole[k]).norm());
        scale = scale.max(s.norm());
    }
    if !err.is_finite() {
        return Err(Error::Quadrature(format!("non-finite integrand on [{a}, {b}]")));
    }
    if err <= tol * scale {
        for (v, (l, r)) in out.value.iter_mut().zip(left.iter().zip(&right)) {
            *v += l + r;
        }
        out.error += err;
        out.panels += 2;
        return Ok(());
    }
    if depth == 0 {
        return Err(Error::Quadrature(format!("no convergence on [{a}, {b}], last difference {err:e}")));
    }
    refine(f, a, m, left, rule, tol, depth - 1, out)?;
    refine(f, m, b, right, rule, tol, depth - 1, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two_and_integrate_polynomials() {
        let g = GaussLegendre::new(12);
        assert!((g.weights.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        let v: f64 = g.nodes.iter().zip(&g.weights).map(|(x, w)| w * x.powi(22)).sum();
        assert!((v - 2.0 / 23.0).abs() < 1e-14);
    }

    #[test]
    fn adaptive_cosine() {
        let g = GaussLegendre::new(10);
        let q = integrate_adaptive(&|t| vec![Complex64::new(t.cos(), t.sin())], 0.0, PI, &g, 1e-14, 20).unwrap();
        assert!((q.value[0] - Complex64::new(0.0, 2.0)).norm() < 1e-13);
    }
}
