// Exact Laurent expansion of the Henon-Heiles principal family through
// order 8, and the checks that it solves the equations and keeps the
// invariants constant.

use std::collections::BTreeMap;

use aci::dynamics::lookup;
use aci::painleve::{exact_families, BalanceOptions};
use aci::Error;

pub fn run_example() -> aci::Result<()> {
    let def = lookup("henon-heiles", &BTreeMap::new())?;
    let sys = &def.system;
    let found = exact_families(sys, &def.slice_value, 8, &BalanceOptions::default())?;
    let f = found.iter().find(|f| f.is_principal()).ok_or_else(|| Error::NoBalance("no principal family".into()))?;
    let fam = &f.family;
    if let Some((_, n, v)) = &fam.slice {
        println!("slice {n} = {v}, free parameters {:?}", fam.params);
    }
    for (i, v) in fam.phase_vars.iter().enumerate() {
        println!("{v} = t^{} ( {} + ... )", -fam.weights[i], fam.coefficient(0)[i]);
    }
    for j in 0..=fam.order {
        println!("  q1^({j}) = {}", fam.coefficient(j)[0]);
    }
    let bad = fam.ode_defects(&sys.field)?;
    if !bad.is_empty() {
        return Err(Error::Numerical(format!("series leaves {} defects", bad.len())));
    }
    for (h, name) in sys.invariants.iter().zip(&sys.invariant_names) {
        let defects = fam.invariance_defects(h)?;
        println!("{name}: {} nonconstant terms, known through t^{:?}", defects.len(), fam.known_through(h)?);
    }
    Ok(())
}

fn main() -> aci::Result<()> {
    run_example()
}
