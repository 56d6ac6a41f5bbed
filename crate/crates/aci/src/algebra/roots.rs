//! Roots of univariate complex polynomials.

use nalgebra::DMatrix;

use super::field::Complex64;
use super::linalg::eigenvalues;
use crate::error::{Error, Result};

/// `sum c[k] x^k` by Horner, with its derivative.
pub fn horner(c: &[Complex64], x: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * x + p;
        p = p * x + a;
    }
    (p, dp)
}

/// All roots of `sum c[k] x^k` (coefficients low to high) from the companion
/// matrix, each refined by a few Newton steps.
pub fn poly_roots(c: &[Complex64]) -> Result<Vec<Complex64>> {
    let mut c = c.to_vec();
    let scale = c.iter().map(|z| z.norm()).fold(0.0, f64::max);
    while c.last().is_some_and(|z| z.norm() <= 1e-14 * scale) {
        c.pop();
    }
    if c.len() < 2 {
        return Err(Error::Numerical("constant polynomial has no roots".into()));
    }
    let n = c.len() - 1;
    let lead = c[n];
    let comp = DMatrix::from_fn(n, n, |i, j| {
        if i == 0 {
            -c[n - 1 - j] / lead
        } else if i == j + 1 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let mut roots = match eigenvalues(&comp) {
        Ok(r) => r,
        // QR can stall on roots of equal modulus (e.g. even polynomials)
        Err(_) => aberth(&c)?,
    };
    for r in roots.iter_mut() {
        for _ in 0..8 {
            let (p, dp) = horner(&c, *r);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            *r -= step;
            if step.norm() <= 1e-16 * (1.0 + r.norm()) {
                break;
            }
        }
    }
    Ok(roots)
}

/// Aberth-Ehrlich simultaneous iteration from points on a circle of radius
/// the Cauchy-type bound.
fn aberth(c: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = c.len() - 1;
    let lead = c[n].norm();
    let radius = c[..n].iter().enumerate().map(|(k, a)| (a.norm() / lead).powf(1.0 / (n - k) as f64)).fold(0.0, f64::max).max(1e-3);
    let mut z: Vec<Complex64> = (0..n).map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4)).collect();
    for _ in 0..500 {
        let mut moved: f64 = 0.0;
        for k in 0..n {
            let (p, dp) = horner(c, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            z[k] -= w;
            moved = moved.max(w.norm() / (1.0 + z[k].norm()));
        }
        if moved < 1e-15 {
            return Ok(z);
        }
    }
    Err(Error::Numerical("root iteration did not converge".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_quartic() {
        // (1 - x^2)(1 - x^2/4) = 1 - 5/4 x^2 + 1/4 x^4
        let c: Vec<Complex64> = [1.0, 0.0, -1.25, 0.0, 0.25].iter().map(|&v| Complex64::new(v, 0.0)).collect();
        let mut r: Vec<f64> = poly_roots(&c).unwrap().iter().map(|z| z.re).collect();
        r.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (a, b) in r.iter().zip([-2.0, -1.0, 1.0, 2.0]) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn aberth_matches_known_roots() {
        let c: Vec<Complex64> = [1.0, 0.0, -1.25, 0.0, 0.25].iter().map(|&v| Complex64::new(v, 0.0)).collect();
        let mut r: Vec<f64> = aberth(&c).unwrap().iter().map(|z| z.re).collect();
        r.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (a, b) in r.iter().zip([-2.0, -1.0, 1.0, 2.0]) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}
