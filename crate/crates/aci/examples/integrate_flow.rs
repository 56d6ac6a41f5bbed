// Adaptive integration of the Henon-Heiles flow with invariant drift
// monitoring, and a trajectory that leaves every bounded region.

use std::collections::BTreeMap;

use aci::dynamics::{integrate, lookup, real_state, IntegratorOptions};
use aci::Error;

pub fn run_example() -> aci::Result<()> {
    let def = lookup("henon-heiles", &BTreeMap::new())?;
    let opts = IntegratorOptions::default();
    let traj = integrate(&def.system, &real_state(&def.sample_point), 5.0, &opts)?;
    println!("{} steps to t = {}, max relative drift {:.2e}", traj.times.len(), traj.times.last().unwrap_or(&0.0), traj.max_drift());
    for (name, d) in def.system.invariant_names.iter().zip(&traj.drift) {
        println!("  {name}: {:.2e}", d.iter().cloned().fold(0.0, f64::max));
    }
    if traj.max_drift() > 1e-8 {
        return Err(Error::Numerical(format!("drift {:.2e} above 1e-8", traj.max_drift())));
    }
    let escape = integrate(&def.system, &real_state(&[0.0, -10.0, 0.0, 0.0]), 5.0, &opts)?;
    println!("from q2 = -10: blow-up near t = {:?}", escape.blow_up);
    let mut out = Vec::new();
    traj.to_csv(&def.system.vars, &mut out)?;
    println!("trajectory csv: {} bytes", out.len());
    Ok(())
}

fn main() -> aci::Result<()> {
    run_example()
}
