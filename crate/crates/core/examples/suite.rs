// Every check at once.
//
// cargo run --release --example suite -- full

use std::error::Error;

use ha0w::grid::Grid;
use ha0w::suite::run_suite;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let grid: Grid = std::env::args().nth(1).as_deref().unwrap_or("small").parse()?;
    let report = run_suite(grid);
    println!("{}", report);
    for r in &report.rows {
        println!("{:>6} ms  {}", r.millis, r.claim);
    }
    if !report.all_passed() {
        return Err("suite failed".into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
