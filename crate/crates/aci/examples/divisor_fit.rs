// The Henon-Heiles divisor: sample the points where the Laurent solutions
// meet a level set, fit the relation `beta^2 = P(alpha)`, and pass to the
// quotient under `alpha -> -alpha`.

use std::collections::BTreeMap;

use aci::divisor::{circle_points, fit_curve, quotient_curve, samples_along_branch, verify_membership, Basis};
use aci::dynamics::lookup;
use aci::painleve::{exact_families, BalanceOptions};
use aci::Error;

pub fn run_example() -> aci::Result<()> {
    let def = lookup("henon-heiles", &BTreeMap::new())?;
    let opts = BalanceOptions::default();
    let found = exact_families(&def.system, &def.slice_value, 8, &opts)?;
    let b = &found.iter().find(|f| f.is_principal()).ok_or_else(|| Error::NoBalance("no principal family".into()))?.balance;
    let samples = samples_along_branch(&def.system, &def.levels, b, &circle_points(20, 1.2, 32), &opts)?;
    let vars = vec!["alpha".to_string(), "beta".to_string()];
    // alpha has weight 1, beta weight 4
    let fit = fit_curve(&samples, &vars, &Basis::Weighted { weights: vec![1, 4], bound: 8 }, Some(&[0, 2]))?;
    let curve = fit.rational.clone().ok_or_else(|| Error::Numerical("coefficients did not snap".into()))?;
    println!("{} samples, residual {:.2e}", samples.len(), fit.residual);
    println!("relation: {curve} = 0");
    println!("membership {:.2e}", verify_membership(&curve, &samples));
    println!("quotient: {} = 0", quotient_curve(&curve, 0, "zeta")?);
    Ok(())
}

fn main() -> aci::Result<()> {
    run_example()
}
