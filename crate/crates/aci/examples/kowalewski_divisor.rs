// The two components of the Kowalewski top's divisor, fitted from the
// Laurent solutions of both principal families.

use std::collections::BTreeMap;

use aci::divisor::{circle_points, fit_curve, samples_along_branch, Basis};
use aci::dynamics::lookup;
use aci::painleve::{exact_families, BalanceOptions};

pub fn run_example() -> aci::Result<()> {
    let def = lookup("kowalewski", &BTreeMap::new())?;
    let opts = BalanceOptions::default();
    let found = exact_families(&def.system, &def.slice_value, 8, &opts)?;
    let vars = vec!["alpha1".to_string(), "alpha2".to_string()];
    for f in found.iter().filter(|f| f.is_principal()) {
        let samples = samples_along_branch(&def.system, &def.levels, &f.balance, &circle_points(26, 1.3, 32), &opts)?;
        let fit = fit_curve(&samples, &vars, &Basis::TotalDegree(8), Some(&[4, 4]))?;
        match &fit.rational {
            Some(c) => println!("{} samples, residual {:.2e}: {c} = 0", samples.len(), fit.residual),
            None => println!("{} samples, residual {:.2e}, no exact form", samples.len(), fit.residual),
        }
    }
    Ok(())
}

fn main() -> aci::Result<()> {
    run_example()
}
