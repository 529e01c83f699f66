//! The check suite: one row per claim, each run by its own module.

use std::fmt;
use std::time::Instant;

use crate::abstraction::{add_term, identity, lambda, mul_term, subst, t_comb, verify_corollary};
use crate::corpus::{beta_corpus, closed_corpus, derivation_corpus, TermGenerator};
use crate::dialectica::certify_axiom_base;
use crate::grid::Grid;
use crate::kernel::{
    check, discharge, prove_cong_arg, prove_cong_fun, prove_eq_refl, prove_eq_sym, prove_eq_trans,
    prove_obs, Axiom, Theorem,
};
use crate::logic::Formula;
use crate::reduction::{normal_form, numeral_value, step_with, Strategy, DEFAULT_FUEL};
use crate::syntax::{numeral, FiniteType};

pub const SEED: u64 = 0x4841_3077;

/// How many failing cases a row keeps for display.
const KEEP: usize = 5;

#[derive(Clone, Debug)]
pub struct SuiteRow {
    pub claim: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
    pub failed: usize,
    pub millis: u128,
}

impl SuiteRow {
    fn new(claim: &'static str) -> Self {
        SuiteRow {
            claim,
            cases: 0,
            failures: Vec::new(),
            failed: 0,
            millis: 0,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < KEEP {
                self.failures.push(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0 && self.cases > 0
    }
}

fn timed(claim: &'static str, body: impl FnOnce(&mut SuiteRow)) -> SuiteRow {
    let start = Instant::now();
    let mut row = SuiteRow::new(claim);
    body(&mut row);
    row.millis = start.elapsed().as_millis();
    row
}

pub fn corollary(grid: Grid) -> SuiteRow {
    timed("b and q definable from s and k", |row| {
        for r in verify_corollary(grid).rows {
            let params: Vec<String> = r.params.iter().map(|t| t.to_string()).collect();
            row.record(r.passed, || format!("{} at {}", r.law, params.join(",")));
        }
    })
}

pub fn derived_laws(n: usize) -> SuiteRow {
    timed("i a = a and t x y = y x by reduction", |row| {
        let mut gen = TermGenerator::new(SEED ^ 1);
        for _ in 0..n {
            let a = gen.closed_term();
            let ty = a.type_of().expect("generated terms are typed");
            let lhs = crate::syntax::Term::app(identity(&ty), a.clone());
            row.record(normal_form(&lhs).ok() == normal_form(&a).ok(), || format!("i ({})", a));

            let rho = gen.random_type();
            let tau = gen.random_type();
            let x = gen.term(&rho);
            let y = gen.term(&FiniteType::arrow(rho.clone(), tau.clone()));
            let lhs = t_comb(&rho, &tau).apply([x.clone(), y.clone()]);
            let rhs = crate::syntax::Term::app(y.clone(), x.clone());
            row.record(normal_form(&lhs).ok() == normal_form(&rhs).ok(), || {
                format!("t ({}) ({})", x, y)
            });
        }
    })
}

/// No congruence axiom is cited above type `0`.
fn uses_only_ground_congruence(t: &Theorem) -> bool {
    let ground_fn = FiniteType::arrow(FiniteType::Ground, FiniteType::Ground);
    t.derivation.proof.axioms().iter().all(|a| match a {
        Axiom::Cong0 { f } => f.type_of().is_ok_and(|ty| ty == ground_fn),
        _ => true,
    })
}

fn theorem_row(row: &mut SuiteRow, label: String, t: Result<Theorem, crate::kernel::KernelError>) {
    match t {
        Ok(t) => {
            let ok = t.check().is_ok() && uses_only_ground_congruence(&t);
            row.record(ok, || label);
        }
        Err(e) => row.record(false, || format!("{}: {}", label, e)),
    }
}

pub fn congruence(grid: Grid) -> SuiteRow {
    timed("congruence of observational equality derivable", |row| {
        for p in grid.tuples(2) {
            let (s, t) = (&p[0], &p[1]);
            theorem_row(row, format!("cong_arg {} {}", s, t), prove_cong_arg(s, t));
            theorem_row(row, format!("cong_fun {} {}", s, t), prove_cong_fun(s, t));
        }
    })
}

pub fn equivalence(grid: Grid) -> SuiteRow {
    timed("observational equality is an equivalence", |row| {
        for s in grid.types() {
            theorem_row(row, format!("refl {}", s), prove_eq_refl(&s));
            theorem_row(row, format!("sym {}", s), prove_eq_sym(&s));
            theorem_row(row, format!("trans {}", s), prove_eq_trans(&s));
        }
    })
}

pub fn observational(grid: Grid) -> SuiteRow {
    timed("observational principle holds by definition", |row| {
        for s in grid.higher_types() {
            theorem_row(row, format!("obs {}", s), prove_obs(&s));
        }
        row.record(prove_obs(&FiniteType::Ground).is_err(), || "obs accepted at 0".into());
    })
}

pub fn certify(grid: Grid) -> SuiteRow {
    timed("universal axioms interpret themselves", |row| {
        for r in certify_axiom_base(grid).rows {
            let ok = r.passed();
            row.record(ok, || format!("{} {}", r.schema, r.instance));
        }
    })
}

pub fn beta(n: usize) -> SuiteRow {
    timed("bracket abstraction satisfies beta", |row| {
        for c in beta_corpus(SEED ^ 2, n) {
            let lhs = crate::syntax::Term::app(lambda(&c.var, &c.body), c.arg.clone());
            let rhs = subst(&c.body, &c.var, &c.arg).expect("argument has the variable's type");
            let (l, r) = (normal_form(&lhs), normal_form(&rhs));
            row.record(l.is_ok() && l == r, || format!("[{}] {} := {}", c.var, c.body, c.arg));
        }
    })
}

pub fn arithmetic(max: u64) -> SuiteRow {
    timed("recursor arithmetic agrees with the naturals", |row| {
        for m in 0..=max {
            for n in 0..=max {
                let (a, b) = (numeral(m), numeral(n));
                let sum = numeral_value(&add_term(&a, &b), DEFAULT_FUEL);
                row.record(sum == Ok(Some(m + n)), || format!("{} + {}", m, n));
                let prod = numeral_value(&mul_term(&a, &b), DEFAULT_FUEL);
                row.record(prod == Ok(Some(m * n)), || format!("{} * {}", m, n));
            }
        }
    })
}

/// Walks the leftmost-outermost sequence, checking the type at each step,
/// then compares with the rightmost-innermost normal form.
pub fn reduction(n: usize) -> SuiteRow {
    timed("subject reduction and confluence", |row| {
        for t in closed_corpus(SEED ^ 3, n) {
            let ty = t.type_of().expect("generated terms are typed");
            let mut cur = t.clone();
            let mut typed = true;
            let mut fuel = DEFAULT_FUEL;
            while let Some((next, _)) = step_with(Strategy::LeftmostOutermost, &cur) {
                typed &= next.type_of().as_ref() == Ok(&ty);
                cur = next;
                fuel -= 1;
                if fuel == 0 || !typed {
                    break;
                }
            }
            let other = crate::reduction::Normalizer::with_fuel(DEFAULT_FUEL)
                .strategy(Strategy::RightmostInnermost)
                .run(&t)
                .map(|r| r.result);
            let ok = typed && fuel > 0 && other.as_ref() == Ok(&cur);
            row.record(ok, || format!("{}", t));
        }
    })
}

pub fn deduction(n: usize) -> SuiteRow {
    timed("deduction theorem", |row| {
        for d in derivation_corpus(SEED ^ 4, n) {
            let Ok(j) = check(&d) else {
                row.record(false, || "generated derivation rejected".into());
                continue;
            };
            let k = j.used_hyps().iter().next().copied().unwrap_or(0);
            let want = Formula::imp(d.hyps[k].clone(), j.conclusion().clone());
            let ok = discharge(&d, k).ok().and_then(|out| {
                let jo = check(&out).ok()?;
                Some(jo.conclusion().alpha_eq(&want) && jo.hyps().len() + 1 == d.hyps.len())
            });
            row.record(ok == Some(true), || format!("discharge {} from {}", d.hyps[k], want));
        }
    })
}

pub struct SuiteReport {
    pub grid: Grid,
    pub rows: Vec<SuiteRow>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(SuiteRow::passed)
    }
}

pub fn run_suite(grid: Grid) -> SuiteReport {
    SuiteReport {
        grid,
        rows: vec![
            corollary(grid),
            derived_laws(200),
            congruence(grid),
            equivalence(grid),
            observational(grid),
            certify(grid),
            beta(500),
            arithmetic(20),
            reduction(1000),
            deduction(100),
        ],
    }
}

/// The table, without timings so the output is byte-stable.
impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.rows.iter().map(|r| r.claim.len()).max().unwrap_or(0);
        writeln!(f, "grid: {}", self.grid)?;
        for r in &self.rows {
            let status = if r.passed() { "PASS" } else { "FAIL" };
            let tally = format!("{}/{}", r.cases - r.failed, r.cases);
            writeln!(f, "{}  {:<width$}  {:>9}", status, r.claim, tally)?;
            for msg in &r.failures {
                writeln!(f, "      {}", msg)?;
            }
        }
        let passed = self.rows.iter().filter(|r| r.passed()).count();
        write!(f, "{} of {} rows passed", passed, self.rows.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_rows_pass() {
        for row in [
            corollary(Grid::Small),
            derived_laws(30),
            observational(Grid::Small),
            beta(50),
            arithmetic(4),
            reduction(50),
            deduction(20),
        ] {
            assert!(row.passed(), "{}: {:?}", row.claim, row.failures);
        }
    }

    #[test]
    fn failures_are_capped() {
        let mut row = SuiteRow::new("x");
        for _ in 0..10 {
            row.record(false, || "no".into());
        }
        assert_eq!((row.failed, row.failures.len(), row.passed()), (10, KEEP, false));
    }
}
