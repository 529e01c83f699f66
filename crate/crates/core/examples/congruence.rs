// Congruence of observational equality, derived without any congruence
// axiom above type 0.

use std::error::Error;

use ha0w::grid::Grid;
use ha0w::kernel::{prove_cong_arg, prove_cong_fun};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for p in Grid::Small.tuples(2) {
        for t in [prove_cong_arg(&p[0], &p[1])?, prove_cong_fun(&p[0], &p[1])?] {
            let j = t.check()?;
            let ids: Vec<&str> = t.derivation.proof.axiom_ids().into_iter().collect();
            println!("{:<36} {:>4} nodes  {}", t.name, t.derivation.proof.size(), ids.join(" "));
            assert!(j.hyps().is_empty());
        }
    }
    let t = prove_cong_arg(&"0".parse()?, &"(0>0)".parse()?)?;
    println!("\n{}", t.statement);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
