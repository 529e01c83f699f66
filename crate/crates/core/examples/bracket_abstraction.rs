// Compile `λx. f (f x)` to combinators and watch it beta-reduce.

use std::error::Error;

use ha0w::abstraction::{bracket, subst};
use ha0w::reduction::normal_form;
use ha0w::syntax::{numeral, parse_term, parse_type, Context, Term};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let mut ctx = Context::new();
    ctx.declare("f", parse_type("(0>0)")?)?;
    ctx.declare("x", parse_type("0")?)?;
    let body = parse_term("f (f x)", &ctx)?;
    let x = ctx.get("x").expect("declared");

    let r = bracket(&x, &body)?;
    println!("λx. {}  =  {}", body, r.term);
    println!("type {}, size x{:.1}", r.term.type_of()?, r.growth);

    let arg = numeral(3);
    let applied = normal_form(&Term::app(r.term.clone(), arg.clone()))?;
    let direct = normal_form(&subst(&body, &x, &arg)?)?;
    println!("applied to 3: {}", applied);
    assert_eq!(applied, direct);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
