// Kowalewski exponents at each balance, and the resulting number of free
// Laurent parameters.

use std::collections::BTreeMap;

use aci::dynamics::{lookup, SYSTEMS};
use aci::painleve::{exact_families, BalanceOptions};

pub fn run_example() -> aci::Result<()> {
    for name in SYSTEMS {
        let def = lookup(name, &BTreeMap::new())?;
        let found = exact_families(&def.system, &def.slice_value, 8, &BalanceOptions::default())?;
        for f in found.iter().filter(|f| f.is_principal()) {
            let sp = &f.spectrum;
            println!("{name}: exponents {:?}", sp.integer_eigenvalues());
            for r in sp.resonances.iter().filter(|r| r.k > 0) {
                println!("  k = {:>2}  multiplicity {}  kernel {}", r.k, r.multiplicity, r.kernel_dim);
            }
            println!("  free parameters {} of {}", sp.free_parameter_count, def.system.dim());
        }
    }
    Ok(())
}

fn main() -> aci::Result<()> {
    run_example()
}
