// `b` and `q` written with `s` and `k` alone behave like the primitives,
// checked by reduction over the type grid.

use std::error::Error;

use ha0w::abstraction::{derived_combinators, verify_corollary};
use ha0w::grid::Grid;
use ha0w::syntax::FiniteType;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let g = FiniteType::Ground;
    for d in derived_combinators() {
        let params = vec![g.clone(); d.arity()];
        let t = d.instantiate(&params)?;
        println!("{:<6} := {:<28} {}", d.name(), d.definition(), t.type_of()?);
    }

    let report = verify_corollary(Grid::Small);
    for law in ["b_def x y z = x (y z)", "q_def x y z = x (z y)", "i a = a"] {
        println!("{:<24} {} instances", law, report.count(law));
    }
    let slowest = report.rows.iter().max_by_key(|r| r.steps).expect("nonempty");
    println!("longest reduction: {} steps", slowest.steps);
    assert!(report.all_passed());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
