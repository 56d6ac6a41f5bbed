// Weights and exact balances of the registry systems.

use std::collections::BTreeMap;

use aci::dynamics::{lookup, SYSTEMS};
use aci::painleve::{branches, detect_weights, solve_balances, BalanceOptions};

pub fn run_example() -> aci::Result<()> {
    let opts = BalanceOptions::default();
    for name in SYSTEMS {
        let def = lookup(name, &BTreeMap::new())?;
        let sys = &def.system;
        let nu = detect_weights(sys)?;
        let all = solve_balances(sys, &nu, &[], &opts)?;
        let found = branches(sys, &all, sys.hints.slice, &def.slice_value, &opts)?;
        println!("{name}: weights {nu:?}, {} balances", all.len());
        for b in found.iter().filter(|b| b.exact.is_some()) {
            let x0: Vec<String> = b.exact.iter().flatten().map(|c| c.to_string()).collect();
            println!("  x0 = ({}), family dimension {}", x0.join(", "), b.family_dim);
        }
    }
    Ok(())
}

fn main() -> aci::Result<()> {
    run_example()
}
