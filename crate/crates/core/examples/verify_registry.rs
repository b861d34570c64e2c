// Recomputes every worked example in the registry.
//
// ```bash
// cargo run --release --example verify_registry
// ```

use fmlattice::registry::{verify_registry, RegistryRow, Status};
use fmlattice::Result;

pub fn run_example() -> Result<Vec<RegistryRow>> {
    verify_registry()
}

#[allow(dead_code)]
fn main() -> Result<()> {
    let rows = run_example()?;
    for r in &rows {
        println!("{:<4}  {:<58} expected {:<24} computed {}", r.status, r.label, r.expected, r.computed);
    }
    let failed = rows.iter().filter(|r| r.status == Status::Fail).count();
    println!("{failed} failure(s)");
    Ok(())
}
