// Period matrix of a genus-3 curve `y^2 = P8(x)` with the Riemann
// relations checked.

use aci::algebra::Complex64;
use aci::riemann::{build_cycles, period_matrix, DifferentialBasis, HyperellipticModel, PeriodOptions};

pub fn run_example() -> aci::Result<()> {
    let p8 = [1.0 / 36.0, 0.0, 1.0 / 18.0, 0.0, 0.0, 0.0, 0.0, 0.0, -1.0 / 576.0];
    let model = HyperellipticModel::new(&p8.iter().map(|&v| Complex64::new(v, 0.0)).collect::<Vec<_>>())?;
    println!("genus {}", model.genus);
    for z in &model.branch_points {
        println!("  branch point {:+.6}{:+.6}i", z.re, z.im);
    }
    let cycles = build_cycles(&model)?;
    println!("cycles {}", cycles.labels().join(" "));
    let p = period_matrix(&model, &DifferentialBasis::standard(model.genus), &PeriodOptions::default())?;
    let z = p.riemann_matrix()?;
    for r in 0..model.genus {
        let row: Vec<String> = (0..model.genus).map(|c| format!("{:+.6}{:+.6}i", z[(r, c)].re, z[(r, c)].im)).collect();
        println!("  Z[{r}] = {}", row.join("  "));
    }
    println!("bilinear {:.2e}, symmetry {:.2e}, min eig Im Z {:.4}", p.bilinear_residual(), p.symmetry_residual()?, p.min_imaginary_eigenvalue()?);
    Ok(())
}

fn main() -> aci::Result<()> {
    run_example()
}
