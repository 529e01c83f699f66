//! Weak reduction for the combinators and the recursor.
//!
//! The nine rewrite rules are the defining equations read left to right:
//!
//! ```text
//! k x y         > x
//! s x y z       > x z (y z)
//! b x y z       > x (y z)
//! q x y z       > x (z y)
//! p0 (p x y)    > x
//! p1 (p x y)    > y
//! p (p0 x) (p1 x) > x
//! rec x y zero  > x
//! rec x y (succ n) > y n (rec x y n)
//! ```
//!
//! There are no binders, so reduction never needs renaming. A `rec` redex
//! only fires once its third argument is headed by `zero` or `succ`.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::syntax::{as_numeral, ConstTag, Term};

pub const DEFAULT_FUEL: u64 = 1_000_000;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum RuleId {
    K,
    S,
    B,
    Q,
    P0P,
    P1P,
    PSurj,
    R0,
    RS,
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RuleId::K => "K",
            RuleId::S => "S",
            RuleId::B => "B",
            RuleId::Q => "Q",
            RuleId::P0P => "P0P",
            RuleId::P1P => "P1P",
            RuleId::PSurj => "PSurj",
            RuleId::R0 => "R0",
            RuleId::RS => "RS",
        })
    }
}

/// A rewrite rule as a printable schema.
#[derive(Clone, Copy, Debug)]
pub struct RewriteRule {
    pub id: RuleId,
    pub pattern: &'static str,
    pub contractum: &'static str,
}

pub const RULES: [RewriteRule; 9] = [
    RewriteRule { id: RuleId::K, pattern: "k x y", contractum: "x" },
    RewriteRule { id: RuleId::S, pattern: "s x y z", contractum: "x z (y z)" },
    RewriteRule { id: RuleId::B, pattern: "b x y z", contractum: "x (y z)" },
    RewriteRule { id: RuleId::Q, pattern: "q x y z", contractum: "x (z y)" },
    RewriteRule { id: RuleId::P0P, pattern: "p0 (p x y)", contractum: "x" },
    RewriteRule { id: RuleId::P1P, pattern: "p1 (p x y)", contractum: "y" },
    RewriteRule { id: RuleId::PSurj, pattern: "p (p0 x) (p1 x)", contractum: "x" },
    RewriteRule { id: RuleId::R0, pattern: "rec x y zero", contractum: "x" },
    RewriteRule { id: RuleId::RS, pattern: "rec x y (succ n)", contractum: "y n (rec x y n)" },
];

/// Contracts `t` itself if it is a redex.
pub fn contract(t: &Term) -> Option<(Term, RuleId)> {
    let (head, args) = t.spine();
    let c = head.as_const()?;
    match (c.tag(), args.as_slice()) {
        (ConstTag::K, [x, _]) => Some(((*x).clone(), RuleId::K)),
        (ConstTag::S, [x, y, z]) => Some((
            Term::app(
                Term::app((*x).clone(), (*z).clone()),
                Term::app((*y).clone(), (*z).clone()),
            ),
            RuleId::S,
        )),
        (ConstTag::B, [x, y, z]) => Some((
            Term::app((*x).clone(), Term::app((*y).clone(), (*z).clone())),
            RuleId::B,
        )),
        (ConstTag::Q, [x, y, z]) => Some((
            Term::app((*x).clone(), Term::app((*z).clone(), (*y).clone())),
            RuleId::Q,
        )),
        (ConstTag::P0, [arg]) => pair_components(arg).map(|(x, _)| (x.clone(), RuleId::P0P)),
        (ConstTag::P1, [arg]) => pair_components(arg).map(|(_, y)| (y.clone(), RuleId::P1P)),
        (ConstTag::P, [left, right]) => {
            let x = projected(left, ConstTag::P0)?;
            let y = projected(right, ConstTag::P1)?;
            (x == y).then(|| (x.clone(), RuleId::PSurj))
        }
        (ConstTag::R, [x, y, n]) => match n {
            Term::Const(z) if z.tag() == ConstTag::Zero => Some(((*x).clone(), RuleId::R0)),
            Term::App(s, m) if s.is_const(ConstTag::Succ) => {
                let m = m.as_ref().clone();
                let rec_xy = Term::app(Term::app(head.clone(), (*x).clone()), (*y).clone());
                Some((
                    Term::app(Term::app((*y).clone(), m.clone()), Term::app(rec_xy, m)),
                    RuleId::RS,
                ))
            }
            _ => None,
        },
        _ => None,
    }
}

fn pair_components(t: &Term) -> Option<(&Term, &Term)> {
    let (head, args) = t.spine();
    match args.as_slice() {
        [x, y] if head.is_const(ConstTag::P) => Some((x, y)),
        _ => None,
    }
}

fn projected(t: &Term, proj: ConstTag) -> Option<&Term> {
    match t {
        Term::App(f, x) if f.is_const(proj) => Some(x),
        _ => None,
    }
}

pub fn is_redex(t: &Term) -> bool {
    contract(t).is_some()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Strategy {
    /// Contract the redex that starts furthest left, preferring the
    /// outermost one. Normalizing for typed terms.
    #[default]
    LeftmostOutermost,
    /// Contract a redex with no redex inside it, scanning right to left.
    RightmostInnermost,
}

/// One leftmost-outermost reduction step.
pub fn step(t: &Term) -> Option<(Term, RuleId)> {
    step_with(Strategy::LeftmostOutermost, t)
}

pub fn step_with(strategy: Strategy, t: &Term) -> Option<(Term, RuleId)> {
    match strategy {
        Strategy::LeftmostOutermost => step_outermost(t),
        Strategy::RightmostInnermost => step_innermost(t),
    }
}

fn step_outermost(t: &Term) -> Option<(Term, RuleId)> {
    if let Some(r) = contract(t) {
        return Some(r);
    }
    match t {
        Term::App(f, a) => {
            if let Some((f2, rule)) = step_outermost(f) {
                return Some((Term::App(Arc::new(f2), a.clone()), rule));
            }
            step_outermost(a).map(|(a2, rule)| (Term::App(f.clone(), Arc::new(a2)), rule))
        }
        _ => None,
    }
}

fn step_innermost(t: &Term) -> Option<(Term, RuleId)> {
    if let Term::App(f, a) = t {
        if let Some((a2, rule)) = step_innermost(a) {
            return Some((Term::App(f.clone(), Arc::new(a2)), rule));
        }
        if let Some((f2, rule)) = step_innermost(f) {
            return Some((Term::App(Arc::new(f2), a.clone()), rule));
        }
    }
    contract(t)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEntry {
    pub rule: RuleId,
    pub term: Term,
}

#[derive(Clone, Debug)]
pub struct NormalizationReport {
    pub result: Term,
    pub steps: u64,
    /// The budget the run was given; `steps` of it were spent.
    pub fuel: u64,
    pub trace: Option<Vec<TraceEntry>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("fuel exhausted after {steps} steps")]
pub struct FuelExhausted {
    pub partial: Term,
    pub steps: u64,
}

#[derive(Clone, Copy, Debug)]
pub struct Normalizer {
    pub fuel: u64,
    pub strategy: Strategy,
    pub trace: bool,
}

impl Default for Normalizer {
    fn default() -> Self {
        Normalizer {
            fuel: DEFAULT_FUEL,
            strategy: Strategy::LeftmostOutermost,
            trace: false,
        }
    }
}

impl Normalizer {
    pub fn with_fuel(fuel: u64) -> Self {
        Normalizer {
            fuel,
            ..Normalizer::default()
        }
    }

    pub fn strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn traced(mut self) -> Self {
        self.trace = true;
        self
    }

    pub fn run(&self, t: &Term) -> Result<NormalizationReport, FuelExhausted> {
        let mut cur = t.clone();
        let mut steps = 0;
        let mut trace = self.trace.then(Vec::new);
        while let Some((next, rule)) = step_with(self.strategy, &cur) {
            if steps == self.fuel {
                return Err(FuelExhausted {
                    partial: cur,
                    steps,
                });
            }
            steps += 1;
            if let Some(tr) = trace.as_mut() {
                tr.push(TraceEntry {
                    rule,
                    term: next.clone(),
                });
            }
            cur = next;
        }
        Ok(NormalizationReport {
            result: cur,
            steps,
            fuel: self.fuel,
            trace,
        })
    }
}

/// Leftmost-outermost normalization within `fuel` steps.
pub fn normalize(t: &Term, fuel: u64) -> Result<NormalizationReport, FuelExhausted> {
    Normalizer::with_fuel(fuel).run(t)
}

/// Normal form with the default budget.
pub fn normal_form(t: &Term) -> Result<Term, FuelExhausted> {
    Normalizer::default().run(t).map(|r| r.result)
}

/// The value of a closed type-0 term, or `None` when its normal form is
/// not a numeral (e.g. the term is open).
pub fn numeral_value(t: &Term, fuel: u64) -> Result<Option<u64>, FuelExhausted> {
    Ok(as_numeral(&normalize(t, fuel)?.result))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{numeral, parse_term, Context, FiniteType};

    fn g() -> FiniteType {
        FiniteType::Ground
    }

    fn ctx() -> Context {
        let mut c = Context::new();
        for (n, t) in [
            ("x", g()),
            ("y", g()),
            ("z", g()),
            ("f", FiniteType::arrow(g(), g())),
            ("h", FiniteType::arrow(g(), FiniteType::arrow(g(), g()))),
        ] {
            c.declare(n, t).unwrap();
        }
        c
    }

    fn t(s: &str) -> Term {
        parse_term(s, &ctx()).unwrap()
    }

    #[test]
    fn k_rule() {
        let (r, rule) = step(&t("k{0,0} x y")).unwrap();
        assert_eq!(r, t("x"));
        assert_eq!(rule, RuleId::K);
    }

    #[test]
    fn r0_rule() {
        let (r, rule) = step(&t("rec{0} x h zero")).unwrap();
        assert_eq!(r, t("x"));
        assert_eq!(rule, RuleId::R0);
    }

    #[test]
    fn rs_rule() {
        let (r, rule) = step(&t("rec{0} x h (succ y)")).unwrap();
        assert_eq!(r, t("h y (rec{0} x h y)"));
        assert_eq!(rule, RuleId::RS);
    }

    #[test]
    fn variables_are_normal() {
        assert!(step(&t("x")).is_none());
        assert!(step(&t("rec{0} x h y")).is_none());
    }

    #[test]
    fn rec_waits_for_its_numeral() {
        // The third argument reduces to zero first.
        let report = normalize(&t("rec{0} x h (k{0,0} zero y)"), 10).unwrap();
        assert_eq!(report.result, t("x"));
        assert_eq!(report.steps, 2);
    }

    #[test]
    fn identity_reduces_in_two_steps() {
        let r = Normalizer::default().traced().run(&t("s k k x")).unwrap();
        assert_eq!(r.result, t("x"));
        let rules: Vec<RuleId> = r.trace.unwrap().iter().map(|e| e.rule).collect();
        assert_eq!(rules, vec![RuleId::S, RuleId::K]);
    }

    #[test]
    fn t_combinator_swaps() {
        let report = normalize(&t("q (s k k) x f"), 100).unwrap();
        assert_eq!(report.result, t("f x"));
    }

    #[test]
    fn pairs() {
        assert_eq!(
            numeral_value(&t("p0{0,0} (p{0,0} (succ zero) (succ (succ zero)))"), 10).unwrap(),
            Some(1)
        );
        let xy = "p{0,0} x y";
        let surj = format!("p{{0,0}} (p0{{0,0}} ({xy})) (p1{{0,0}} ({xy}))");
        let (r, rule) = step(&t(&surj)).unwrap();
        assert_eq!(rule, RuleId::PSurj);
        assert_eq!(r, t(xy));
    }

    #[test]
    fn surjective_pairing_needs_identical_components() {
        let mut c = ctx();
        c.declare("u", FiniteType::product(g(), g())).unwrap();
        c.declare("v", FiniteType::product(g(), g())).unwrap();
        let same = parse_term("p{0,0} (p0{0,0} u) (p1{0,0} u)", &c).unwrap();
        let diff = parse_term("p{0,0} (p0{0,0} u) (p1{0,0} v)", &c).unwrap();
        assert_eq!(contract(&same).map(|r| r.1), Some(RuleId::PSurj));
        assert!(contract(&diff).is_none());
    }

    #[test]
    fn numeral_values() {
        assert_eq!(numeral_value(&numeral(4), 1).unwrap(), Some(4));
        assert_eq!(numeral_value(&t("succ x"), 10).unwrap(), None);
    }

    #[test]
    fn fuel_exhaustion_keeps_partial_term() {
        let err = normalize(&t("s k k (s k k x)"), 1).unwrap_err();
        assert_eq!(err.steps, 1);
        assert!(err.partial.size() < t("s k k (s k k x)").size() + 4);
    }

    #[test]
    fn strategies_differ_in_order_but_not_result() {
        let term = t("k{0,0} x (s k k y)");
        let lo = step_with(Strategy::LeftmostOutermost, &term).unwrap();
        let ri = step_with(Strategy::RightmostInnermost, &term).unwrap();
        assert_eq!(lo.1, RuleId::K);
        assert_eq!(ri.1, RuleId::S);
        let a = Normalizer::default().run(&term).unwrap().result;
        let b = Normalizer::default()
            .strategy(Strategy::RightmostInnermost)
            .run(&term)
            .unwrap()
            .result;
        assert_eq!(a, b);
    }

    #[test]
    fn rule_table_is_complete() {
        let ids: Vec<RuleId> = RULES.iter().map(|r| r.id).collect();
        assert_eq!(ids.len(), 9);
        for id in [
            RuleId::K,
            RuleId::S,
            RuleId::B,
            RuleId::Q,
            RuleId::P0P,
            RuleId::P1P,
            RuleId::PSurj,
            RuleId::R0,
            RuleId::RS,
        ] {
            assert!(ids.contains(&id));
        }
    }
}
