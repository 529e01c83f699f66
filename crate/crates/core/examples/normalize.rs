// Parse a term file and reduce it to normal form, then evaluate
// recursor arithmetic.
//
// cargo run --example normalize

use std::error::Error;

use ha0w::abstraction::{add_term, mul_term};
use ha0w::reduction::{numeral_value, Normalizer, DEFAULT_FUEL};
use ha0w::syntax::{numeral, parse_term_file};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let text = include_str!("txy.term");
    let (_, t) = parse_term_file(text)?;
    println!("{} : {}", t, t.type_of()?);

    let report = Normalizer::with_fuel(100).traced().run(&t)?;
    for e in report.trace.iter().flatten() {
        println!("  {:<5} {}", e.rule, e.term);
    }
    println!("normal form: {} ({} steps)", report.result, report.steps);
    assert_eq!(report.result.to_string(), "y x");

    let (m, n) = (numeral(6), numeral(7));
    let sum = numeral_value(&add_term(&m, &n), DEFAULT_FUEL)?;
    let prod = numeral_value(&mul_term(&m, &n), DEFAULT_FUEL)?;
    println!("6 + 7 = {:?}, 6 * 7 = {:?}", sum, prod);
    assert_eq!((sum, prod), (Some(13), Some(42)));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
