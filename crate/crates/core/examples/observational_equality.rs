// Equality above type 0 unfolds to a universally quantified observation.

use std::error::Error;

use ha0w::logic::{equality_view, parse_formula};
use ha0w::syntax::{parse_type, Context};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let mut ctx = Context::new();
    for (name, ty) in [("u", "(0>0)"), ("v", "(0>0)"), ("w", "(0*0)")] {
        ctx.declare(name, parse_type(ty)?)?;
    }
    let (u, v) = (ctx.get("u").unwrap().term(), ctx.get("v").unwrap().term());
    let view = equality_view(&u, &v)?;
    println!("{} = {} at {}:  {}", view.lhs, view.rhs, view.ty, view.expansion);

    // the sugar goes through the same unfolding
    let phi = parse_formula("u =={(0>0)} v -> w =={(0*0)} w", &ctx)?;
    println!("{}", phi);
    println!("universal: {}", phi.is_universal());

    let shadow = parse_formula("all f:((0>0)>0). f u == f v", &ctx)?;
    assert!(shadow.alpha_eq(&view.expansion));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
