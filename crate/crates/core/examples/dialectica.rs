// The Dialectica translation, and the axioms that are their own
// interpretation.

use std::error::Error;

use ha0w::dialectica::{certify_axiom_base, self_interpreted, translate};
use ha0w::grid::Grid;
use ha0w::logic::parse_formula;
use ha0w::syntax::Context;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let ctx = Context::new();
    for src in [
        "all x:0. ex y:0. y == succ x",
        "(all x:0. x == zero) -> bot",
        "(ex n:0. n == zero) | (all f:(0>0). f zero == zero)",
    ] {
        let phi = parse_formula(src, &ctx)?;
        println!("{}\n{}\nself-interpreted: {}\n", phi, translate(&phi), self_interpreted(&phi));
    }

    let report = certify_axiom_base(Grid::Small);
    let universal = report.rows.iter().filter(|r| r.self_interpreted).count();
    println!("{} of {} axiom instances interpret themselves", universal, report.rows.len());
    for r in report.rows.iter().filter(|r| !r.self_interpreted) {
        println!("not: {} {}", r.schema, r.instance);
    }
    assert!(report.all_passed());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
