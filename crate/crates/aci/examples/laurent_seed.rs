// Start the integrator from the Laurent series at a small time `t0` and
// compare it with the series at `2 t0`.

use std::collections::BTreeMap;

use aci::algebra::Complex64;
use aci::dynamics::{lookup, seed_check, SYSTEMS};
use aci::painleve::{exact_families, BalanceOptions};

pub fn run_example() -> aci::Result<()> {
    for name in SYSTEMS {
        let def = lookup(name, &BTreeMap::new())?;
        let found = exact_families(&def.system, &def.slice_value, 8, &BalanceOptions::default())?;
        for (k, f) in found.iter().filter(|f| f.is_principal()).enumerate() {
            let params: Vec<Complex64> = (0..f.family.params.len()).map(|k| Complex64::new(0.3 - 0.1 * k as f64, 0.0)).collect();
            let c = seed_check(&def.system, &f.family, &params, 1e-2)?;
            println!("{name} family {k} {:?}: relative error at 2 t0 {:.2e}", f.family.params, c.rel_error);
        }
    }
    Ok(())
}

fn main() -> aci::Result<()> {
    run_example()
}
