// Periods of `y^2 = (1 - x^2)(1 - k^2 x^2)` against the AGM value `4 K(k)`.

use aci::algebra::Complex64;
use aci::riemann::{complete_k, period_matrix, DifferentialBasis, HyperellipticModel, PeriodOptions};
use aci::Error;

pub fn run_example() -> aci::Result<()> {
    for k in [0.1, 0.5, 0.9] {
        let c: Vec<Complex64> = [1.0, 0.0, -(1.0 + k * k), 0.0, k * k].iter().map(|&v| Complex64::new(v, 0.0)).collect();
        let model = HyperellipticModel::new(&c)?;
        let p = period_matrix(&model, &DifferentialBasis::standard(1), &PeriodOptions::default())?;
        let a = p.omega[(0, 0)];
        let want = 4.0 * complete_k(k);
        let tau = p.riemann_matrix()?[(0, 0)];
        println!("k = {k}: a-period {:.15}, 4K {want:.15}, tau = {:.6}{:+.6}i", a.re, tau.re, tau.im);
        if (a - Complex64::new(want, 0.0)).norm() > 1e-10 {
            return Err(Error::Quadrature(format!("a-period {a} differs from 4K = {want}")));
        }
    }
    Ok(())
}

fn main() -> aci::Result<()> {
    run_example()
}
