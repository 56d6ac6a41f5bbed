use std::f64::consts::PI;

use nalgebra::DMatrix;
use serde::Serialize;

use crate::algebra::Complex64;
use crate::error::{Error, Result};

use super::cycles::{build_cycles, CycleSet};
use super::model::{DifferentialBasis, HyperellipticModel};
use super::quadrature::{integrate_adaptive, GaussLegendre};

#[derive(Clone, Copy, Debug)]
pub struct PeriodOptions {
    pub nodes: usize,
    pub tol: f64,
    pub max_depth: u32,
}

impl Default for PeriodOptions {
    fn default() -> Self {
        PeriodOptions { nodes: 20, tol: 1e-13, max_depth: 30 }
    }
}

/// Periods of a basis of differentials over a symplectic basis of cycles.
#[derive(Clone, Debug)]
pub struct PeriodMatrix {
    pub basis: DifferentialBasis,
    pub cycles: CycleSet,
    /// `g x (#edges)` periods over the edge cycles.
    pub edge_periods: DMatrix<Complex64>,
    /// `g x 2g`, columns `a_1..a_g, b_1..b_g`.
    pub omega: DMatrix<Complex64>,
    pub error_estimate: f64,
}

/// Integrates each basis differential over each edge cycle, then assembles
/// the periods over the symplectic basis.
pub fn period_matrix(model: &HyperellipticModel, basis: &DifferentialBasis, opts: &PeriodOptions) -> Result<PeriodMatrix> {
    basis.validate(model)?;
    let mut cycles = build_cycles(model)?;
    let rule = GaussLegendre::new(opts.nodes);
    let g = basis.dim();
    let n = cycles.edges.len();
    let mut edge_periods = DMatrix::<Complex64>::zeros(g, n);
    let mut error_estimate: f64 = 0.0;
    for (c, edge) in cycles.edges.iter().enumerate() {
        let f = |theta: f64| {
            let x = edge.x(theta);
            let q = edge.q(theta);
            basis.exponents.iter().map(|&j| x.powu(j) / q).collect::<Vec<_>>()
        };
        let quad = integrate_adaptive(&f, 0.0, PI, &rule, opts.tol, opts.max_depth)?;
        let two_i = Complex64::new(0.0, 2.0);
        for (r, v) in quad.value.iter().enumerate() {
            edge_periods[(r, c)] = two_i * v;
        }
        error_estimate = error_estimate.max(2.0 * quad.error);
    }
    let scale = edge_periods.iter().map(|z| z.norm()).fold(1.0, f64::max);
    for w in &cycles.radical {
        let p = combine(&edge_periods, w);
        let worst = p.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if worst > 1e-8 * scale {
            return Err(Error::Routing(format!("a null-homologous combination has period {worst:e}")));
        }
    }
    for i in 0..g {
        let pa = combine(&edge_periods, cycles.a(i));
        let z = pa[i];
        let negative = if z.re.abs() > 1e-8 * z.norm() { z.re < 0.0 } else { z.im < 0.0 };
        if negative {
            cycles.flip(i);
        }
    }
    let mut omega = DMatrix::<Complex64>::zeros(g, 2 * g);
    for (col, w) in cycles.symplectic.iter().enumerate() {
        for (r, v) in combine(&edge_periods, w).into_iter().enumerate() {
            omega[(r, col)] = v;
        }
    }
    Ok(PeriodMatrix { basis: basis.clone(), cycles, edge_periods, omega, error_estimate })
}

fn combine(edge_periods: &DMatrix<Complex64>, w: &[i64]) -> Vec<Complex64> {
    (0..edge_periods.nrows())
        .map(|r| w.iter().enumerate().map(|(c, &k)| edge_periods[(r, c)] * k as f64).sum())
        .collect()
}

impl PeriodMatrix {
    pub fn genus(&self) -> usize {
        self.basis.dim()
    }

    pub fn a_block(&self) -> DMatrix<Complex64> {
        let g = self.genus();
        self.omega.columns(0, g).into_owned()
    }

    pub fn b_block(&self) -> DMatrix<Complex64> {
        let g = self.genus();
        self.omega.columns(g, g).into_owned()
    }

    /// `Z = A^-1 B`.
    pub fn riemann_matrix(&self) -> Result<DMatrix<Complex64>> {
        let a = self.a_block();
        let inv = a.clone().try_inverse().ok_or_else(|| Error::Numerical("a-periods are singular".into()))?;
        Ok(inv * self.b_block())
    }

    /// `|A B^T - B A^T|` relative to the largest period.
    pub fn bilinear_residual(&self) -> f64 {
        let (a, b) = (self.a_block(), self.b_block());
        let r = &a * b.transpose() - &b * a.transpose();
        let scale = self.omega.iter().map(|z| z.norm()).fold(1e-300, f64::max);
        r.iter().map(|z| z.norm()).fold(0.0, f64::max) / (scale * scale)
    }

    /// Largest asymmetry of `Z`.
    pub fn symmetry_residual(&self) -> Result<f64> {
        let z = self.riemann_matrix()?;
        Ok((&z - z.transpose()).iter().map(|v| v.norm()).fold(0.0, f64::max))
    }

    /// Smallest eigenvalue of the symmetrized `Im Z`.
    pub fn min_imaginary_eigenvalue(&self) -> Result<f64> {
        let z = self.riemann_matrix()?;
        let g = z.nrows();
        let im = DMatrix::<f64>::from_fn(g, g, |i, j| (z[(i, j)].im + z[(j, i)].im) / 2.0);
        Ok(im.symmetric_eigen().eigenvalues.iter().copied().fold(f64::INFINITY, f64::min))
    }

    pub fn to_json(&self) -> Result<PeriodJson> {
        let rows = |m: &DMatrix<Complex64>| (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect()).collect();
        let z = self.riemann_matrix()?;
        Ok(PeriodJson {
            genus: self.genus(),
            differentials: self.basis.labels.clone(),
            exponents: self.basis.exponents.clone(),
            cycles: self.cycles.labels(),
            omega: rows(&self.omega),
            riemann_matrix: rows(&z),
            intersection: self.cycles.symplectic_form(),
            bilinear_residual: self.bilinear_residual(),
            min_imaginary_eigenvalue: self.min_imaginary_eigenvalue()?,
            error_estimate: self.error_estimate,
        })
    }
}

/// Serialized form: complex numbers as `[re, im]`, matrices row by row.
#[derive(Clone, Debug, Serialize, serde::Deserialize)]
pub struct PeriodJson {
    pub genus: usize,
    pub differentials: Vec<String>,
    pub exponents: Vec<u32>,
    pub cycles: Vec<String>,
    pub omega: Vec<Vec<[f64; 2]>>,
    pub riemann_matrix: Vec<Vec<[f64; 2]>>,
    pub intersection: Vec<Vec<i64>>,
    pub bilinear_residual: f64,
    pub min_imaginary_eigenvalue: f64,
    pub error_estimate: f64,
}

impl PeriodJson {
    pub fn omega_matrix(&self) -> DMatrix<Complex64> {
        let g = self.omega.len();
        let n = self.omega.first().map_or(0, |r| r.len());
        DMatrix::from_fn(g, n, |i, j| Complex64::new(self.omega[i][j][0], self.omega[i][j][1]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::riemann::elliptic::complete_k;

    fn c(v: &[f64]) -> Vec<Complex64> {
        v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
    }

    fn quartic(k: f64) -> HyperellipticModel {
        // (1 - x^2)(1 - k^2 x^2)
        HyperellipticModel::new(&c(&[1.0, 0.0, -(1.0 + k * k), 0.0, k * k])).unwrap()
    }

    #[test]
    fn elliptic_a_period_is_four_k() {
        let m = quartic(0.5);
        let p = period_matrix(&m, &DifferentialBasis::standard(1), &PeriodOptions::default()).unwrap();
        let a = p.omega[(0, 0)];
        assert!((a - Complex64::new(4.0 * complete_k(0.5), 0.0)).norm() < 1e-10, "{a}");
        assert!(p.riemann_matrix().unwrap()[(0, 0)].im > 0.0);
    }

    #[test]
    fn small_modulus_limit() {
        let p = period_matrix(&quartic(1e-4), &DifferentialBasis::standard(1), &PeriodOptions::default()).unwrap();
        assert!((p.omega[(0, 0)].re - 2.0 * PI).abs() < 1e-6);
    }

    #[test]
    fn genus_three_riemann_relations() {
        // y^2 = -x^8/576 + x^2/18 + 1/36
        let m = HyperellipticModel::new(&c(&[1.0 / 36.0, 0.0, 1.0 / 18.0, 0.0, 0.0, 0.0, 0.0, 0.0, -1.0 / 576.0])).unwrap();
        assert_eq!(m.genus, 3);
        let basis = DifferentialBasis::ordered(&[2, 0, 1]);
        let p = period_matrix(&m, &basis, &PeriodOptions::default()).unwrap();
        assert!(p.bilinear_residual() < 1e-10, "{}", p.bilinear_residual());
        assert!(p.symmetry_residual().unwrap() < 1e-9);
        assert!(p.min_imaginary_eigenvalue().unwrap() > 0.0);
        let finer = period_matrix(&m, &basis, &PeriodOptions { nodes: 40, ..Default::default() }).unwrap();
        let diff = (&finer.omega - &p.omega).iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(diff < 1e-10, "{diff}");
    }
}
