//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any
//! criterion fails.

use std::collections::BTreeSet;
use std::time::Instant;

use ha0w::abstraction::verify_corollary;
use ha0w::dialectica::certify_axiom_base;
use ha0w::grid::Grid;
use ha0w::kernel::{prove_cong_arg, prove_cong_fun, Axiom, Theorem};
use ha0w::suite::{self, SuiteRow};
use ha0w::syntax::FiniteType;

struct Outcome {
    ok: bool,
    detail: String,
}

fn from_row(row: SuiteRow, min_cases: usize) -> Outcome {
    Outcome {
        ok: row.passed() && row.cases >= min_cases,
        detail: format!(
            "{} of {} cases{}",
            row.cases - row.failed,
            row.cases,
            row.failures.first().map(|f| format!("; first failure: {}", f)).unwrap_or_default()
        ),
    }
}

fn corollary() -> Outcome {
    let start = Instant::now();
    let report = verify_corollary(Grid::Small);
    let elapsed = start.elapsed();
    let (b, q) = (report.count("b_def x y z = x (y z)"), report.count("q_def x y z = x (z y)"));
    Outcome {
        ok: report.all_passed() && b >= 27 && q >= 27 && elapsed.as_secs_f64() < 1.0,
        detail: format!("{} b_def and {} q_def triples by reduction in {:.0?}", b, q, elapsed),
    }
}

const LOGIC: [&str; 11] = [
    "impk", "imps", "and-l", "and-r", "and-i", "or-l", "or-r", "or-e", "efq", "all-elim", "ex-intro",
];

/// Ids are logic, type-0 equality, or combinator axioms, and every
/// congruence instance is at `0>0`.
fn no_higher_congruence(t: &Theorem) -> bool {
    let ground_fn = FiniteType::arrow(FiniteType::Ground, FiniteType::Ground);
    let ids_ok = t.derivation.proof.axiom_ids().iter().all(|id| {
        LOGIC.contains(id) || id.starts_with("eq-") || id.starts_with("comb-") || *id == "cong0"
    });
    let cong_ok = t.derivation.proof.axioms().iter().all(|a| match a {
        Axiom::Cong0 { f } => f.type_of().is_ok_and(|ty| ty == ground_fn),
        _ => true,
    });
    ids_ok && cong_ok
}

fn congruence() -> Outcome {
    let mut n = 0;
    let mut bad = BTreeSet::new();
    for p in Grid::Small.tuples(2) {
        for t in [prove_cong_arg(&p[0], &p[1]), prove_cong_fun(&p[0], &p[1])] {
            n += 1;
            match t {
                Ok(t) if t.check().is_ok() && no_higher_congruence(&t) => {}
                Ok(t) => {
                    bad.insert(t.name);
                }
                Err(e) => {
                    bad.insert(e.to_string());
                }
            }
        }
    }
    Outcome {
        ok: bad.is_empty() && n == 32,
        detail: if bad.is_empty() {
            format!("{} of {} generated proofs check, no higher congruence cited", n, n)
        } else {
            format!("{} of {} generated proofs check; failing: {:?}", n - bad.len(), n, bad)
        },
    }
}

fn dialectica() -> Outcome {
    let report = certify_axiom_base(Grid::Small);
    let induction_rejected = report
        .rows
        .iter()
        .any(|r| r.schema == "induction" && !r.self_interpreted && !r.expected);
    let base: Vec<_> = report.rows.iter().filter(|r| r.schema != "induction").collect();
    Outcome {
        ok: report.all_passed() && induction_rejected && base.iter().all(|r| r.self_interpreted && r.universal),
        detail: format!(
            "{} base instances self-interpreted, induction {}",
            base.len(),
            if induction_rejected { "not" } else { "WRONGLY" }
        ),
    }
}

type Criterion = Box<dyn Fn() -> Outcome>;

fn main() {
    let criteria: Vec<(&str, Criterion)> = vec![
        ("b and q defined from s and k", Box::new(corollary)),
        ("i and t laws by reduction", Box::new(|| from_row(suite::derived_laws(200), 400))),
        ("congruence derived in the kernel", Box::new(congruence)),
        ("higher-type equality is an equivalence", Box::new(|| from_row(suite::equivalence(Grid::Small), 12))),
        ("observational principle", Box::new(|| from_row(suite::observational(Grid::Small), 4))),
        ("beta law for bracket abstraction", Box::new(|| from_row(suite::beta(500), 500))),
        ("recursor arithmetic up to 20", Box::new(|| from_row(suite::arithmetic(20), 882))),
        ("subject reduction and confluence", Box::new(|| from_row(suite::reduction(1000), 1000))),
        ("universal axioms self-interpreted", Box::new(dialectica)),
        ("deduction theorem", Box::new(|| from_row(suite::deduction(100), 100))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        if !o.ok {
            failed += 1;
        }
        println!("{} {:>2}. {}: {}", if o.ok { "PASS" } else { "FAIL" }, i + 1, name, o.detail);
    }
    if failed > 0 {
        eprintln!("{} acceptance criteria failed", failed);
        std::process::exit(1);
    }
}
