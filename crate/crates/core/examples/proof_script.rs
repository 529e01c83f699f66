// Check a hand-written proof script, then discharge a hypothesis with
// the deduction theorem and print the result as a new script.

use std::error::Error;

use ha0w::kernel::{check, check_script, deduction, to_script};

const SCRIPT: &str = "\
# a == m, m == c |- c == a
var a : 0
var m : 0
var c : 0
assume a == m
assume m == c
hyp 1
hyp 2
axiom and-i a == m ; m == c
mp 3 1
mp 4 2
axiom eq-trans
axiom all-elim all x:0. all y:0. all z:0. x == y & y == z -> x == z ; a
mp 7 6
axiom all-elim all y:0. all z:0. a == y & y == z -> a == z ; m
mp 9 8
axiom all-elim all z:0. a == m & m == z -> a == z ; c
mp 11 10
mp 12 5
axiom eq-sym
axiom all-elim all x:0. all y:0. x == y -> y == x ; a
mp 15 14
axiom all-elim all y:0. a == y -> y == a ; c
mp 17 16
mp 18 13
goal c == a
";

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let report = check_script(SCRIPT)?;
    for s in &report.steps {
        println!("{:>3}  {}", s.number, s.conclusion);
    }

    let hyp = report.derivation.hyps[1].clone();
    let out = deduction(&hyp, &report.derivation)?;
    let j = check(&out)?;
    println!("after discharging {}:\n  {}", hyp, j);
    let text = to_script(&out)?;
    println!("{} lines", text.lines().count());
    assert_eq!(check_script(&text)?.conclusion(), j.conclusion());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
