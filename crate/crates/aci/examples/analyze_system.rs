// The full pipeline on a registry system, with the report written to a
// temporary directory.

use aci::pipeline::{run_pipeline, PipelineConfig, StageStatus};
use aci::Error;

pub fn run_example() -> aci::Result<()> {
    let run = run_pipeline("henon-heiles", &PipelineConfig::default())?;
    for s in &run.report.stages {
        println!("{:<14} {:?} ({} checks)", s.name, s.status, s.checks.len());
    }
    for c in &run.report.reference_comparisons {
        println!("reference {}: {} ({:.2e})", c.name, if c.agrees { "agrees" } else { "differs" }, c.residual);
    }
    let dir = std::env::temp_dir().join("aci-analyze-example");
    run.write_to(&dir)?;
    println!("written to {}", dir.display());
    if run.report.stages.iter().any(|s| matches!(s.status, StageStatus::Failed | StageStatus::Error)) {
        return Err(Error::Numerical(run.report.failures().join("; ")));
    }
    Ok(())
}

fn main() -> aci::Result<()> {
    run_example()
}
