//! Line-oriented proof scripts.
//!
//! ```text
//! # comment
//! var f : (0>0)            declare a free variable
//! assume x == y            next hypothesis (hyp 1, hyp 2, ...)
//! axiom <id> <params>      axiom instance
//! hyp <n>                  n-th assumption
//! mp <i> <j>               from step i (A -> B) and step j (A)
//! gen <x> <i>              all x. (step i)
//! genimp <x> <i>           from B -> A infer B -> all x. A
//! exelim <x> <i>           from A -> B infer (ex x. A) -> B
//! goal <formula>           the last step must conclude this
//! ```
//!
//! Steps are numbered from 1 in order of appearance. Axiom parameters are
//! separated by `;`:
//!
//! ```text
//! impk A ; B        imps A ; B ; C     and-l / and-r / and-i A ; B
//! or-l / or-r A ; B  or-e A ; B ; C     efq A
//! all-elim all x:T. A ; t              ex-intro ex x:T. A ; t
//! cong0 f           induction all x:0. A
//! eq-refl  eq-sym  eq-trans  succ-nonzero  succ-inj
//! comb-k T ; T      comb-s T ; T ; T   ...  comb-rs T
//! ```

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use super::{apply_rule, check, Axiom, CheckFailure, CombAxiom, Derivation, KernelError, Proof, Rule, Step};
use crate::logic::{formula_in_scope, Formula};
use crate::syntax::{elaborate, Context, FiniteType, ParseError, Parser, Term, Tok, Var};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ScriptError {
    #[error("line {line}: {error}")]
    Parse { line: usize, error: ParseError },
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line} (step {step}): {reason}")]
    Rule {
        line: usize,
        step: usize,
        reason: CheckFailure,
    },
    #[error("line {line}: proof concludes `{actual}`, goal is `{goal}`")]
    GoalMismatch {
        line: usize,
        goal: Formula,
        actual: Formula,
    },
    #[error("script has no proof steps")]
    Empty,
}

impl ScriptError {
    /// Whether the script is unreadable, as opposed to readable but wrong.
    pub fn is_syntax(&self) -> bool {
        matches!(self, ScriptError::Parse { .. } | ScriptError::Malformed { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptStep {
    pub number: usize,
    pub line: usize,
    pub source: String,
    pub conclusion: Formula,
}

#[derive(Clone, Debug)]
pub struct ScriptReport {
    pub derivation: Derivation,
    pub steps: Vec<ScriptStep>,
    pub goal: Option<Formula>,
}

impl ScriptReport {
    pub fn conclusion(&self) -> &Formula {
        &self.steps.last().expect("non-empty").conclusion
    }
}

struct LineParser<'a> {
    p: Parser,
    line: usize,
    ctx: &'a Context,
}

impl LineParser<'_> {
    fn parse_err(&self, error: ParseError) -> ScriptError {
        ScriptError::Parse {
            line: self.line,
            error,
        }
    }

    fn malformed(&self, msg: impl Into<String>) -> ScriptError {
        ScriptError::Malformed {
            line: self.line,
            msg: msg.into(),
        }
    }

    fn number(&mut self) -> Result<usize, ScriptError> {
        match self.p.bump() {
            Some(Tok::Num(n)) => Ok(n as usize),
            _ => Err(self.malformed("expected a step number")),
        }
    }

    fn var(&mut self) -> Result<Var, ScriptError> {
        let name = self.p.ident().map_err(|e| self.parse_err(e))?;
        self.ctx
            .get(&name)
            .ok_or_else(|| self.malformed(format!("undeclared variable `{}`", name)))
    }

    fn formula(&mut self) -> Result<Formula, ScriptError> {
        formula_in_scope(&mut self.p, self.ctx).map_err(|e| self.parse_err(e))
    }

    fn term(&mut self, expected: Option<&FiniteType>) -> Result<Term, ScriptError> {
        let raw = self.p.raw_term().map_err(|e| self.parse_err(e))?;
        let ctx = self.ctx;
        elaborate(&raw, &|n| ctx.get(n), expected).map_err(|e| self.parse_err(e))
    }

    fn semi(&mut self) -> Result<(), ScriptError> {
        self.p.expect(&Tok::Semi).map_err(|e| self.parse_err(e))
    }

    fn formulas(&mut self, n: usize) -> Result<Vec<Formula>, ScriptError> {
        let mut out = Vec::new();
        for i in 0..n {
            if i > 0 {
                self.semi()?;
            }
            out.push(self.formula()?);
        }
        Ok(out)
    }

    fn types(&mut self, n: usize) -> Result<Vec<FiniteType>, ScriptError> {
        let mut out = Vec::new();
        for i in 0..n {
            if i > 0 {
                self.semi()?;
            }
            out.push(self.p.ty().map_err(|e| self.parse_err(e))?);
        }
        Ok(out)
    }

    fn quantified(&mut self, universal: bool) -> Result<(Var, Formula), ScriptError> {
        let f = self.formula()?;
        match (f, universal) {
            (Formula::Forall(x, body), true) | (Formula::Exists(x, body), false) => {
                Ok((x, body.as_ref().clone()))
            }
            _ => Err(self.malformed(if universal {
                "expected `all x:T. A`"
            } else {
                "expected `ex x:T. A`"
            })),
        }
    }

    fn axiom(&mut self) -> Result<Axiom, ScriptError> {
        let id = self.p.ident().map_err(|e| self.parse_err(e))?.replace('_', "-");
        if let Some(c) = CombAxiom::from_id(&id) {
            let params = self.types(c.arity())?;
            return Ok(Axiom::comb(c, &params));
        }
        let two = |s: &mut Self| -> Result<(Formula, Formula), ScriptError> {
            let mut v = s.formulas(2)?;
            let b = v.pop().unwrap();
            Ok((v.pop().unwrap(), b))
        };
        let three = |s: &mut Self| -> Result<(Formula, Formula, Formula), ScriptError> {
            let mut v = s.formulas(3)?;
            let c = v.pop().unwrap();
            let b = v.pop().unwrap();
            Ok((v.pop().unwrap(), b, c))
        };
        Ok(match id.as_str() {
            "impk" => two(self).map(|(a, b)| Axiom::ImpK { a, b })?,
            "imps" => three(self).map(|(a, b, c)| Axiom::ImpS { a, b, c })?,
            "and-l" => two(self).map(|(a, b)| Axiom::AndElimL { a, b })?,
            "and-r" => two(self).map(|(a, b)| Axiom::AndElimR { a, b })?,
            "and-i" => two(self).map(|(a, b)| Axiom::AndIntro { a, b })?,
            "or-l" => two(self).map(|(a, b)| Axiom::OrIntroL { a, b })?,
            "or-r" => two(self).map(|(a, b)| Axiom::OrIntroR { a, b })?,
            "or-e" => three(self).map(|(a, b, c)| Axiom::OrElim { a, b, c })?,
            "efq" => Axiom::ExFalso { a: self.formula()? },
            "all-elim" | "ex-intro" => {
                let universal = id == "all-elim";
                let (var, body) = self.quantified(universal)?;
                self.semi()?;
                let term = self.term(Some(var.ty()))?;
                if universal {
                    Axiom::ForallElim { var, body, term }
                } else {
                    Axiom::ExistsIntro { var, body, term }
                }
            }
            "eq-refl" => Axiom::Eq0Refl,
            "eq-sym" => Axiom::Eq0Sym,
            "eq-trans" => Axiom::Eq0Trans,
            "succ-nonzero" => Axiom::SuccNonzero,
            "succ-inj" => Axiom::SuccInj,
            "cong0" => {
                let g = FiniteType::Ground;
                Axiom::Cong0 {
                    f: self.term(Some(&FiniteType::arrow(g.clone(), g)))?,
                }
            }
            "induction" => {
                let (var, body) = self.quantified(true)?;
                Axiom::Induction { var, body }
            }
            other => return Err(self.malformed(format!("unknown axiom `{}`", other))),
        })
    }

    fn finish(&self) -> Result<(), ScriptError> {
        self.p.finish().map_err(|e| self.parse_err(e))
    }
}

/// Axiom ids contain `-`, which is not a token; they are rewritten to `_`
/// before lexing and mapped back here.
fn normalize_ids(code: &str) -> String {
    let trimmed = code.trim_start();
    let Some(rest) = trimmed.strip_prefix("axiom") else {
        return code.to_string();
    };
    if !rest.starts_with(char::is_whitespace) {
        return code.to_string();
    }
    let rest = rest.trim_start();
    let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
    format!("axiom {}{}", rest[..end].replace('-', "_"), &rest[end..])
}

enum Cmd {
    Var(String, FiniteType),
    Assume(Formula),
    Goal(Formula),
    Step(Rule0),
}

enum Rule0 {
    Axiom(Axiom),
    Hyp(usize),
    Mp(usize, usize),
    Gen(Var, usize),
    GenImp(Var, usize),
    ExElim(Var, usize),
}

fn parse_line(code: &str, line: usize, ctx: &Context) -> Result<Option<Cmd>, ScriptError> {
    let code = normalize_ids(code);
    let p = Parser::new(&code).map_err(|error| ScriptError::Parse { line, error })?;
    let mut lp = LineParser { p, line, ctx };
    if lp.p.at_end() {
        return Ok(None);
    }
    let cmd = lp.p.ident().map_err(|e| lp.parse_err(e))?;
    let out = match cmd.as_str() {
        "var" => {
            let name = lp.p.ident().map_err(|e| lp.parse_err(e))?;
            lp.p.expect(&Tok::Colon).map_err(|e| lp.parse_err(e))?;
            let ty = lp.p.ty().map_err(|e| lp.parse_err(e))?;
            Cmd::Var(name, ty)
        }
        "assume" => Cmd::Assume(lp.formula()?),
        "goal" => Cmd::Goal(lp.formula()?),
        "axiom" => {
            let a = lp.axiom()?;
            Cmd::Step(Rule0::Axiom(a))
        }
        "hyp" => Cmd::Step(Rule0::Hyp(lp.number()?)),
        "mp" => {
            let i = lp.number()?;
            let j = lp.number()?;
            Cmd::Step(Rule0::Mp(i, j))
        }
        "gen" | "genimp" | "exelim" => {
            let x = lp.var()?;
            let i = lp.number()?;
            Cmd::Step(match cmd.as_str() {
                "gen" => Rule0::Gen(x, i),
                "genimp" => Rule0::GenImp(x, i),
                _ => Rule0::ExElim(x, i),
            })
        }
        other => return Err(lp.malformed(format!("unknown command `{}`", other))),
    };
    lp.finish()?;
    Ok(Some(out))
}

/// Checks a script. Each step is checked once, so shared steps cost nothing
/// extra.
pub fn check_script(text: &str) -> Result<ScriptReport, ScriptError> {
    let mut ctx = Context::new();
    let mut hyps: Vec<Formula> = Vec::new();
    let mut goal: Option<(usize, Formula)> = None;
    let mut steps: Vec<(Step, Arc<Proof>)> = Vec::new();
    let mut report_steps = Vec::new();

    for (idx, raw_line) in text.lines().enumerate() {
        let line = idx + 1;
        let code = raw_line.split('#').next().unwrap_or("");
        let Some(cmd) = parse_line(code, line, &ctx)? else {
            continue;
        };
        let rule = match cmd {
            Cmd::Var(name, ty) => {
                ctx.declare(&name, ty)
                    .map_err(|error| ScriptError::Parse { line, error })?;
                continue;
            }
            Cmd::Assume(f) => {
                if !steps.is_empty() {
                    return Err(ScriptError::Malformed {
                        line,
                        msg: "assumptions must precede the first step".into(),
                    });
                }
                hyps.push(f);
                continue;
            }
            Cmd::Goal(f) => {
                goal = Some((line, f));
                continue;
            }
            Cmd::Step(r) => r,
        };
        let number = steps.len() + 1;
        let get = |i: usize| -> Result<&(Step, Arc<Proof>), ScriptError> {
            if i == 0 || i >= number {
                Err(ScriptError::Malformed {
                    line,
                    msg: format!("step {} refers to step {}, which is not earlier", number, i),
                })
            } else {
                Ok(&steps[i - 1])
            }
        };
        let rule_err = |reason| ScriptError::Rule {
            line,
            step: number,
            reason,
        };
        let (step, proof) = match &rule {
            Rule0::Axiom(a) => (
                apply_rule(Rule::Axiom(a), &[], &hyps).map_err(rule_err)?,
                Proof::Axiom(a.clone()),
            ),
            Rule0::Hyp(n) => {
                if *n == 0 {
                    return Err(ScriptError::Malformed {
                        line,
                        msg: "hypotheses are numbered from 1".into(),
                    });
                }
                (
                    apply_rule(Rule::Hyp(n - 1), &[], &hyps).map_err(rule_err)?,
                    Proof::Hyp(n - 1),
                )
            }
            Rule0::Mp(i, j) => {
                let (si, pi) = get(*i)?;
                let (sj, pj) = get(*j)?;
                (
                    apply_rule(Rule::Mp, &[si, sj], &hyps).map_err(rule_err)?,
                    Proof::Mp(pi.clone(), pj.clone()),
                )
            }
            Rule0::Gen(x, i) | Rule0::GenImp(x, i) | Rule0::ExElim(x, i) => {
                let (si, pi) = get(*i)?;
                let (r, p) = match &rule {
                    Rule0::Gen(..) => (Rule::Gen(x), Proof::Gen(x.clone(), pi.clone())),
                    Rule0::GenImp(..) => (Rule::GenImp(x), Proof::GenImp(x.clone(), pi.clone())),
                    _ => (Rule::ExElim(x), Proof::ExElim(x.clone(), pi.clone())),
                };
                (apply_rule(r, &[si], &hyps).map_err(rule_err)?, p)
            }
        };
        report_steps.push(ScriptStep {
            number,
            line,
            source: code.trim().to_string(),
            conclusion: step.concl.clone(),
        });
        steps.push((step, Arc::new(proof)));
    }

    let (_, last) = steps.last().ok_or(ScriptError::Empty)?;
    let derivation = Derivation::new(hyps, last.as_ref().clone());
    let conclusion = &report_steps.last().expect("non-empty").conclusion;
    if let Some((line, g)) = &goal {
        if !g.alpha_eq(conclusion) {
            return Err(ScriptError::GoalMismatch {
                line: *line,
                goal: g.clone(),
                actual: conclusion.clone(),
            });
        }
    }
    Ok(ScriptReport {
        derivation,
        steps: report_steps,
        goal: goal.map(|(_, g)| g),
    })
}

fn collect_axiom_vars(a: &Axiom, out: &mut Vec<Var>) {
    let mut formula = |f: &Formula| out.extend(f.free_vars_in_order());
    match a {
        Axiom::ImpK { a, b }
        | Axiom::AndElimL { a, b }
        | Axiom::AndElimR { a, b }
        | Axiom::AndIntro { a, b }
        | Axiom::OrIntroL { a, b }
        | Axiom::OrIntroR { a, b } => {
            formula(a);
            formula(b);
        }
        Axiom::ImpS { a, b, c } | Axiom::OrElim { a, b, c } => {
            formula(a);
            formula(b);
            formula(c);
        }
        Axiom::ExFalso { a } => formula(a),
        Axiom::ForallElim { var, body, term } | Axiom::ExistsIntro { var, body, term } => {
            formula(&Formula::forall(var.clone(), body.clone()));
            out.extend(term.vars_in_order());
        }
        Axiom::Induction { var, body } => formula(&Formula::forall(var.clone(), body.clone())),
        Axiom::Cong0 { f } => out.extend(f.vars_in_order()),
        Axiom::Eq0Refl
        | Axiom::Eq0Sym
        | Axiom::Eq0Trans
        | Axiom::SuccNonzero
        | Axiom::SuccInj
        | Axiom::Comb { .. } => {}
    }
}

struct Emitter<'a> {
    index: HashMap<&'a Proof, usize>,
    lines: Vec<String>,
    vars: Vec<Var>,
}

impl<'a> Emitter<'a> {
    fn emit(&mut self, p: &'a Proof) -> usize {
        if let Some(&n) = self.index.get(p) {
            return n;
        }
        let line = match p {
            Proof::Axiom(a) => {
                collect_axiom_vars(a, &mut self.vars);
                format!("axiom {}", a)
            }
            Proof::Hyp(i) => format!("hyp {}", i + 1),
            Proof::Mp(a, b) => {
                let i = self.emit(a);
                let j = self.emit(b);
                format!("mp {} {}", i, j)
            }
            Proof::Gen(x, q) | Proof::GenImp(x, q) | Proof::ExElim(x, q) => {
                let i = self.emit(q);
                self.vars.push(x.clone());
                let cmd = match p {
                    Proof::Gen(..) => "gen",
                    Proof::GenImp(..) => "genimp",
                    _ => "exelim",
                };
                format!("{} {} {}", cmd, x.name(), i)
            }
        };
        self.lines.push(line);
        let n = self.lines.len();
        self.index.insert(p, n);
        n
    }
}

/// Serializes a checked derivation. Structurally equal subproofs are
/// written once.
pub fn to_script(d: &Derivation) -> Result<String, KernelError> {
    let j = check(d)?;
    let mut em = Emitter {
        index: HashMap::new(),
        lines: Vec::new(),
        vars: Vec::new(),
    };
    em.emit(&d.proof);
    for h in &d.hyps {
        em.vars.extend(h.free_vars_in_order());
    }
    em.vars.extend(j.conclusion().free_vars_in_order());
    let mut decls: BTreeMap<String, FiniteType> = BTreeMap::new();
    for v in &em.vars {
        match decls.get(v.name()) {
            Some(t) if t != v.ty() => {
                return Err(KernelError::Statement(format!(
                    "variable `{}` occurs at types {} and {}",
                    v.name(),
                    t,
                    v.ty()
                )))
            }
            _ => {
                decls.insert(v.name().to_string(), v.ty().clone());
            }
        }
    }
    let mut out = String::new();
    for (n, t) in &decls {
        writeln!(out, "var {} : {}", n, t).unwrap();
    }
    for h in &d.hyps {
        writeln!(out, "assume {}", h).unwrap();
    }
    for l in &em.lines {
        writeln!(out, "{}", l).unwrap();
    }
    writeln!(out, "goal {}", j.conclusion()).unwrap();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{prove_cong_arg, prove_cong_fun, prove_eq_refl};
    use crate::syntax::parse_type;

    #[test]
    fn refl_at_arrow_by_hand() {
        let text = "\
# x =(0>0) x
var x : (0>0)
var f : ((0>0)>0)
axiom eq-refl
axiom all-elim all x:0. x == x ; f x
mp 2 1
gen f 3
goal all f:((0>0)>0). f x == f x
";
        let r = check_script(text).unwrap();
        assert_eq!(r.steps.len(), 4);
        assert_eq!(r.steps[2].conclusion.to_string(), "f x == f x");
        assert!(r.goal.is_some());
    }

    #[test]
    fn errors_are_located() {
        let e = check_script("axiom eq-refl\nmp 1 1\n").unwrap_err();
        assert!(matches!(e, ScriptError::Rule { line: 2, step: 2, .. }), "{}", e);
        assert!(!e.is_syntax());

        let e = check_script("axiom nope\n").unwrap_err();
        assert!(e.is_syntax());

        let e = check_script("axiom eq-refl\nmp 1 5\n").unwrap_err();
        assert!(matches!(e, ScriptError::Malformed { line: 2, .. }));

        let e = check_script("axiom eq-refl\ngoal zero == zero\n").unwrap_err();
        assert!(matches!(e, ScriptError::GoalMismatch { .. }));

        assert_eq!(check_script("# nothing\n").unwrap_err(), ScriptError::Empty);
    }

    #[test]
    fn eigenvariable_in_script() {
        let text = "var x : 0\nassume x == zero\nhyp 1\ngen x 1\n";
        let e = check_script(text).unwrap_err();
        assert!(matches!(
            e,
            ScriptError::Rule {
                reason: CheckFailure::Eigenvariable { .. },
                ..
            }
        ));
    }

    #[test]
    fn round_trip_through_text() {
        let g = FiniteType::Ground;
        let a = parse_type("(0>0)").unwrap();
        for t in [
            prove_cong_arg(&g, &a).unwrap(),
            prove_cong_fun(&a, &g).unwrap(),
            prove_eq_refl(&a).unwrap(),
        ] {
            let text = to_script(&t.derivation).unwrap();
            let r = check_script(&text).unwrap();
            assert!(r.conclusion().alpha_eq(&t.statement), "{}", t.name);
            assert_eq!(to_script(&r.derivation).unwrap(), text);
        }
    }

    #[test]
    fn hypotheses_in_scripts() {
        let text = "assume zero == zero\nassume zero == zero -> bot\nhyp 1\nhyp 2\nmp 2 1\n";
        let r = check_script(text).unwrap();
        assert_eq!(r.conclusion(), &Formula::Bottom);
        let again = to_script(&r.derivation).unwrap();
        assert!(again.contains("assume zero == zero -> bot"));
    }
}
