// Splitting the period matrix of an even genus-3 curve under `x -> -x`
// into the quotient curve and the Prym variety.

use aci::algebra::Complex64;
use aci::prym::{adapt_basis, involution_on_homology, split_periods, VariableAction};
use aci::riemann::{period_matrix, same_modulus, sl2z_reduce, DifferentialBasis, HyperellipticModel, PeriodOptions};
use aci::Error;

fn c(v: &[f64]) -> Vec<Complex64> {
    v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
}

pub fn run_example() -> aci::Result<()> {
    let p8 = [1.0 / 36.0, 0.0, 1.0 / 18.0, 0.0, 0.0, 0.0, 0.0, 0.0, -1.0 / 576.0];
    let model = HyperellipticModel::new(&c(&p8))?;
    let act = VariableAction::parse("x->-x")?;
    act.check(&model)?;
    let per = period_matrix(&model, &DifferentialBasis::standard(3), &PeriodOptions::default())?;
    let s: Vec<i64> = per.basis.exponents.iter().map(|&j| act.sign_on(j)).collect();
    let inv = involution_on_homology(&per.omega, &s)?;
    println!("S = {:?}, cover (g0, n) = ({}, {})", inv.s, inv.g0, inv.n);
    for row in &inv.m {
        println!("  {row:?}");
    }
    let adapted = adapt_basis(&inv, &per.omega)?;
    let split = split_periods(&adapted, &inv)?;
    println!("block residual {:.2e}", split.blocks.max());
    println!("Prym type {:?}, intersection count {}", split.delta_delta, split.intersection_count);
    let e = HyperellipticModel::new(&c(&[p8[0], p8[2], p8[4], p8[6], p8[8]]))?;
    let pe = period_matrix(&e, &DifferentialBasis::standard(1), &PeriodOptions::default())?;
    let tau_e = sl2z_reduce(pe.omega[(0, 1)] / pe.omega[(0, 0)]);
    let tau_d = sl2z_reduce(split.delta[(0, 1)] / split.delta[(0, 0)]);
    println!("tau(Delta) = {:.10}{:+.10}i, tau(E) = {:.10}{:+.10}i", tau_d.re, tau_d.im, tau_e.re, tau_e.im);
    if !same_modulus(tau_d, tau_e, 1e-8) {
        return Err(Error::Split("Delta is not the period lattice of the quotient".into()));
    }
    Ok(())
}

fn main() -> aci::Result<()> {
    run_example()
}
