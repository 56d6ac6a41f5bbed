// Exact Poisson brackets of the invariants and the vector fields they
// generate.

use std::collections::BTreeMap;

use aci::dynamics::{hamiltonian_vector_field, lookup, poisson_bracket, SYSTEMS};
use aci::Error;

pub fn run_example() -> aci::Result<()> {
    for name in SYSTEMS {
        let def = lookup(name, &BTreeMap::new())?;
        let sys = &def.system;
        for (res, h) in sys.invariance_residuals().iter().zip(&sys.invariant_names) {
            if !res.is_zero() {
                return Err(Error::Numerical(format!("{name}: {h} is not conserved: {res}")));
            }
        }
        let Some(j) = &sys.poisson else {
            println!("{name}: invariants conserved, no Poisson matrix");
            continue;
        };
        let generated = hamiltonian_vector_field(&sys.invariants[0], j) == sys.field;
        println!("{name}: f = J grad {}: {generated}", sys.invariant_names[0]);
        for a in 0..sys.invariants.len() {
            for b in a + 1..sys.invariants.len() {
                let br = poisson_bracket(&sys.invariants[a], &sys.invariants[b], j)?;
                println!("  {{{}, {}}} = {br}", sys.invariant_names[a], sys.invariant_names[b]);
            }
        }
    }
    Ok(())
}

fn main() -> aci::Result<()> {
    run_example()
}
