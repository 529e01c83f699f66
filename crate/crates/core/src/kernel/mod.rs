//! Hilbert-style proof checking.
//!
//! A [`Derivation`] is a hypothesis list plus a [`Proof`] tree. [`check`]
//! recomputes the conclusion of every node and returns a [`Judgment`]; a
//! judgment cannot be built any other way.
//!
//! Rules: modus ponens, generalization, and the two quantifier rules
//!
//! ```text
//!   B -> A          A -> B
//! ----------      ----------
//! B -> all x.A    (ex x.A) -> B      (x not free in B)
//! ```
//!
//! Each generalization also requires that its variable is not free in any
//! hypothesis the premise actually uses.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::logic::{eq, Formula, LogicError};
use crate::syntax::{fresh_name, FiniteType, Term, TypingError, Var};

mod deduction;
mod library;
mod script;

pub use deduction::{deduction, discharge, imp_refl, DeductionError};
pub use library::{
    prove_cong_arg, prove_cong_fun, prove_eq_refl, prove_eq_sym, prove_eq_trans, prove_obs,
    Theorem,
};
pub use script::{check_script, to_script, ScriptError, ScriptReport, ScriptStep};

pub(crate) use library::{Builder, Line};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CombAxiom {
    K,
    S,
    B,
    Q,
    P0,
    P1,
    PSurj,
    R0,
    RS,
}

impl CombAxiom {
    pub const ALL: [CombAxiom; 9] = [
        CombAxiom::K,
        CombAxiom::S,
        CombAxiom::B,
        CombAxiom::Q,
        CombAxiom::P0,
        CombAxiom::P1,
        CombAxiom::PSurj,
        CombAxiom::R0,
        CombAxiom::RS,
    ];

    pub fn arity(self) -> usize {
        match self {
            CombAxiom::K | CombAxiom::P0 | CombAxiom::P1 | CombAxiom::PSurj => 2,
            CombAxiom::S | CombAxiom::B | CombAxiom::Q => 3,
            CombAxiom::R0 | CombAxiom::RS => 1,
        }
    }

    pub fn id(self) -> &'static str {
        match self {
            CombAxiom::K => "comb-k",
            CombAxiom::S => "comb-s",
            CombAxiom::B => "comb-b",
            CombAxiom::Q => "comb-q",
            CombAxiom::P0 => "comb-p0",
            CombAxiom::P1 => "comb-p1",
            CombAxiom::PSurj => "comb-psurj",
            CombAxiom::R0 => "comb-r0",
            CombAxiom::RS => "comb-rs",
        }
    }

    pub fn from_id(id: &str) -> Option<CombAxiom> {
        CombAxiom::ALL.into_iter().find(|c| c.id() == id)
    }

    /// The bound variables and the two sides of the equation.
    fn equation(self, ps: &[FiniteType]) -> (Vec<Var>, Term, Term) {
        let g = FiniteType::Ground;
        let arrow = FiniteType::arrow;
        let v = Var::new;
        match self {
            CombAxiom::K => {
                let (x, y) = (v("x", ps[0].clone()), v("y", ps[1].clone()));
                let lhs = Term::k(&ps[0], &ps[1]).apply([x.term(), y.term()]);
                let rhs = x.term();
                (vec![x, y], lhs, rhs)
            }
            CombAxiom::S => {
                let (r, s, t) = (&ps[0], &ps[1], &ps[2]);
                let x = v("x", arrow(r.clone(), arrow(s.clone(), t.clone())));
                let y = v("y", arrow(r.clone(), s.clone()));
                let z = v("z", r.clone());
                let lhs = Term::s(r, s, t).apply([x.term(), y.term(), z.term()]);
                let rhs = x.term().apply([z.term(), Term::app(y.term(), z.term())]);
                (vec![x, y, z], lhs, rhs)
            }
            CombAxiom::B => {
                let (r, s, t) = (&ps[0], &ps[1], &ps[2]);
                let x = v("x", arrow(s.clone(), t.clone()));
                let y = v("y", arrow(r.clone(), s.clone()));
                let z = v("z", r.clone());
                let lhs = Term::b(r, s, t).apply([x.term(), y.term(), z.term()]);
                let rhs = Term::app(x.term(), Term::app(y.term(), z.term()));
                (vec![x, y, z], lhs, rhs)
            }
            CombAxiom::Q => {
                let (r, s, t) = (&ps[0], &ps[1], &ps[2]);
                let x = v("x", arrow(s.clone(), t.clone()));
                let y = v("y", r.clone());
                let z = v("z", arrow(r.clone(), s.clone()));
                let lhs = Term::q(r, s, t).apply([x.term(), y.term(), z.term()]);
                let rhs = Term::app(x.term(), Term::app(z.term(), y.term()));
                (vec![x, y, z], lhs, rhs)
            }
            CombAxiom::P0 | CombAxiom::P1 => {
                let (r, s) = (&ps[0], &ps[1]);
                let (x, y) = (v("x", r.clone()), v("y", s.clone()));
                let pair = Term::pair(r, s).apply([x.term(), y.term()]);
                if self == CombAxiom::P0 {
                    (vec![x.clone(), y], Term::app(Term::fst(r, s), pair), x.term())
                } else {
                    (vec![x, y.clone()], Term::app(Term::snd(r, s), pair), y.term())
                }
            }
            CombAxiom::PSurj => {
                let (r, s) = (&ps[0], &ps[1]);
                let x = v("x", FiniteType::product(r.clone(), s.clone()));
                let lhs = Term::pair(r, s).apply([
                    Term::app(Term::fst(r, s), x.term()),
                    Term::app(Term::snd(r, s), x.term()),
                ]);
                (vec![x.clone()], lhs, x.term())
            }
            CombAxiom::R0 | CombAxiom::RS => {
                let s = &ps[0];
                let x = v("x", s.clone());
                let y = v("y", arrow(g.clone(), arrow(s.clone(), s.clone())));
                let rec = Term::rec(s).apply([x.term(), y.term()]);
                if self == CombAxiom::R0 {
                    (vec![x.clone(), y], Term::app(rec, Term::zero()), x.term())
                } else {
                    let n = v("n", g.clone());
                    let lhs = Term::app(rec.clone(), Term::app(Term::succ(), n.term()));
                    let rhs = y.term().apply([n.term(), Term::app(rec, n.term())]);
                    (vec![x, y, n], lhs, rhs)
                }
            }
        }
    }
}

impl fmt::Display for CombAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomGroup {
    Logic,
    Equality,
    Congruence,
    Successor,
    Induction,
    Combinator,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    /// `A -> (B -> A)`
    ImpK { a: Formula, b: Formula },
    /// `(A -> (B -> C)) -> ((A -> B) -> (A -> C))`
    ImpS { a: Formula, b: Formula, c: Formula },
    AndElimL { a: Formula, b: Formula },
    AndElimR { a: Formula, b: Formula },
    /// `A -> (B -> A & B)`
    AndIntro { a: Formula, b: Formula },
    OrIntroL { a: Formula, b: Formula },
    OrIntroR { a: Formula, b: Formula },
    /// `(A -> C) -> ((B -> C) -> (A | B -> C))`
    OrElim { a: Formula, b: Formula, c: Formula },
    ExFalso { a: Formula },
    /// `(all x. A) -> A[t/x]`
    ForallElim { var: Var, body: Formula, term: Term },
    /// `A[t/x] -> ex x. A`
    ExistsIntro { var: Var, body: Formula, term: Term },
    Eq0Refl,
    Eq0Sym,
    Eq0Trans,
    /// `x == y -> f x == f y` for a term `f` of type `0>0`, closed over
    /// the variables of `f`.
    Cong0 { f: Term },
    SuccNonzero,
    SuccInj,
    /// Closed over the free variables of `body` other than `var`.
    Induction { var: Var, body: Formula },
    Comb { axiom: CombAxiom, params: Vec<FiniteType> },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AxiomError {
    #[error("congruence axiom needs a term of type (0>0), got `{term}` of type {actual}")]
    CongType { term: Term, actual: FiniteType },
    #[error("induction variable {0} is not of type 0")]
    InductionVar(Var),
    #[error("{axiom} takes {expected} type parameters, got {given}")]
    Arity {
        axiom: CombAxiom,
        expected: usize,
        given: usize,
    },
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error(transparent)]
    Typing(#[from] TypingError),
}

fn closed(vars: &[Var], body: Formula) -> Formula {
    Formula::foralls(vars, body)
}

fn ground_vars(names: &[&str]) -> Vec<Var> {
    names.iter().map(|n| Var::new(n, FiniteType::Ground)).collect()
}

impl Axiom {
    pub fn comb(axiom: CombAxiom, params: &[FiniteType]) -> Axiom {
        Axiom::Comb {
            axiom,
            params: params.to_vec(),
        }
    }

    pub fn id(&self) -> &'static str {
        match self {
            Axiom::ImpK { .. } => "impk",
            Axiom::ImpS { .. } => "imps",
            Axiom::AndElimL { .. } => "and-l",
            Axiom::AndElimR { .. } => "and-r",
            Axiom::AndIntro { .. } => "and-i",
            Axiom::OrIntroL { .. } => "or-l",
            Axiom::OrIntroR { .. } => "or-r",
            Axiom::OrElim { .. } => "or-e",
            Axiom::ExFalso { .. } => "efq",
            Axiom::ForallElim { .. } => "all-elim",
            Axiom::ExistsIntro { .. } => "ex-intro",
            Axiom::Eq0Refl => "eq-refl",
            Axiom::Eq0Sym => "eq-sym",
            Axiom::Eq0Trans => "eq-trans",
            Axiom::Cong0 { .. } => "cong0",
            Axiom::SuccNonzero => "succ-nonzero",
            Axiom::SuccInj => "succ-inj",
            Axiom::Induction { .. } => "induction",
            Axiom::Comb { axiom, .. } => axiom.id(),
        }
    }

    pub fn group(&self) -> AxiomGroup {
        match self {
            Axiom::Eq0Refl | Axiom::Eq0Sym | Axiom::Eq0Trans => AxiomGroup::Equality,
            Axiom::Cong0 { .. } => AxiomGroup::Congruence,
            Axiom::SuccNonzero | Axiom::SuccInj => AxiomGroup::Successor,
            Axiom::Induction { .. } => AxiomGroup::Induction,
            Axiom::Comb { .. } => AxiomGroup::Combinator,
            _ => AxiomGroup::Logic,
        }
    }

    /// The instance formula.
    pub fn formula(&self) -> Result<Formula, AxiomError> {
        use Formula as F;
        Ok(match self {
            Axiom::ImpK { a, b } => F::imp(a.clone(), F::imp(b.clone(), a.clone())),
            Axiom::ImpS { a, b, c } => F::imp(
                F::imp(a.clone(), F::imp(b.clone(), c.clone())),
                F::imp(
                    F::imp(a.clone(), b.clone()),
                    F::imp(a.clone(), c.clone()),
                ),
            ),
            Axiom::AndElimL { a, b } => F::imp(F::and(a.clone(), b.clone()), a.clone()),
            Axiom::AndElimR { a, b } => F::imp(F::and(a.clone(), b.clone()), b.clone()),
            Axiom::AndIntro { a, b } => F::imp(
                a.clone(),
                F::imp(b.clone(), F::and(a.clone(), b.clone())),
            ),
            Axiom::OrIntroL { a, b } => F::imp(a.clone(), F::or(a.clone(), b.clone())),
            Axiom::OrIntroR { a, b } => F::imp(b.clone(), F::or(a.clone(), b.clone())),
            Axiom::OrElim { a, b, c } => F::imp(
                F::imp(a.clone(), c.clone()),
                F::imp(
                    F::imp(b.clone(), c.clone()),
                    F::imp(F::or(a.clone(), b.clone()), c.clone()),
                ),
            ),
            Axiom::ExFalso { a } => F::imp(F::Bottom, a.clone()),
            Axiom::ForallElim { var, body, term } => F::imp(
                F::forall(var.clone(), body.clone()),
                body.subst(var, term)?,
            ),
            Axiom::ExistsIntro { var, body, term } => F::imp(
                body.subst(var, term)?,
                F::exists(var.clone(), body.clone()),
            ),
            Axiom::Eq0Refl => {
                let x = Var::new("x", FiniteType::Ground);
                closed(std::slice::from_ref(&x), F::Eq0(x.term(), x.term()))
            }
            Axiom::Eq0Sym => {
                let xs = ground_vars(&["x", "y"]);
                let (x, y) = (xs[0].term(), xs[1].term());
                closed(
                    &xs,
                    F::imp(F::Eq0(x.clone(), y.clone()), F::Eq0(y, x)),
                )
            }
            Axiom::Eq0Trans => {
                let xs = ground_vars(&["x", "y", "z"]);
                let (x, y, z) = (xs[0].term(), xs[1].term(), xs[2].term());
                closed(
                    &xs,
                    F::imp(
                        F::and(F::Eq0(x.clone(), y.clone()), F::Eq0(y, z.clone())),
                        F::Eq0(x, z),
                    ),
                )
            }
            Axiom::Cong0 { f } => {
                let ty = f.type_of()?;
                let g = FiniteType::Ground;
                if ty != FiniteType::arrow(g.clone(), g.clone()) {
                    return Err(AxiomError::CongType {
                        term: f.clone(),
                        actual: ty,
                    });
                }
                let mut vars = f.vars_in_order();
                let taken: BTreeSet<String> = vars.iter().map(|v| v.name().to_string()).collect();
                let x = Var::new(&fresh_name("x", |n| taken.contains(n)), g.clone());
                let y = Var::new(
                    &fresh_name("y", |n| taken.contains(n) || n == x.name()),
                    g,
                );
                let body = F::imp(
                    F::Eq0(x.term(), y.term()),
                    F::Eq0(Term::app(f.clone(), x.term()), Term::app(f.clone(), y.term())),
                );
                vars.push(x);
                vars.push(y);
                closed(&vars, body)
            }
            Axiom::SuccNonzero => {
                let x = Var::new("x", FiniteType::Ground);
                closed(
                    std::slice::from_ref(&x),
                    F::negation(F::Eq0(Term::app(Term::succ(), x.term()), Term::zero())),
                )
            }
            Axiom::SuccInj => {
                let xs = ground_vars(&["x", "y"]);
                let (x, y) = (xs[0].term(), xs[1].term());
                closed(
                    &xs,
                    F::imp(
                        F::Eq0(Term::app(Term::succ(), x.clone()), Term::app(Term::succ(), y.clone())),
                        F::Eq0(x, y),
                    ),
                )
            }
            Axiom::Induction { var, body } => {
                if !var.ty().is_ground() {
                    return Err(AxiomError::InductionVar(var.clone()));
                }
                body.validate()?;
                let params: Vec<Var> = body
                    .free_vars_in_order()
                    .into_iter()
                    .filter(|v| v != var)
                    .collect();
                let base = body.subst(var, &Term::zero())?;
                let next = body.subst(var, &Term::app(Term::succ(), var.term()))?;
                let step = F::forall(var.clone(), F::imp(body.clone(), next));
                let inst = F::imp(
                    base,
                    F::imp(step, F::forall(var.clone(), body.clone())),
                );
                closed(&params, inst)
            }
            Axiom::Comb { axiom, params } => {
                if params.len() != axiom.arity() {
                    return Err(AxiomError::Arity {
                        axiom: *axiom,
                        expected: axiom.arity(),
                        given: params.len(),
                    });
                }
                let (vars, lhs, rhs) = axiom.equation(params);
                closed(&vars, eq(&lhs, &rhs)?)
            }
        })
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id())?;
        match self {
            Axiom::ImpK { a, b }
            | Axiom::AndElimL { a, b }
            | Axiom::AndElimR { a, b }
            | Axiom::AndIntro { a, b }
            | Axiom::OrIntroL { a, b }
            | Axiom::OrIntroR { a, b } => write!(f, " {} ; {}", a, b),
            Axiom::ImpS { a, b, c } | Axiom::OrElim { a, b, c } => {
                write!(f, " {} ; {} ; {}", a, b, c)
            }
            Axiom::ExFalso { a } => write!(f, " {}", a),
            Axiom::ForallElim { var, body, term } => {
                write!(f, " {} ; {}", Formula::forall(var.clone(), body.clone()), term)
            }
            Axiom::ExistsIntro { var, body, term } => {
                write!(f, " {} ; {}", Formula::exists(var.clone(), body.clone()), term)
            }
            Axiom::Cong0 { f: t } => write!(f, " {}", t),
            Axiom::Induction { var, body } => {
                write!(f, " {}", Formula::forall(var.clone(), body.clone()))
            }
            Axiom::Comb { params, .. } => {
                for (i, p) in params.iter().enumerate() {
                    write!(f, "{}{}", if i == 0 { " " } else { " ; " }, p)?;
                }
                Ok(())
            }
            Axiom::Eq0Refl
            | Axiom::Eq0Sym
            | Axiom::Eq0Trans
            | Axiom::SuccNonzero
            | Axiom::SuccInj => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Proof {
    Axiom(Axiom),
    /// Index into the derivation's hypothesis list.
    Hyp(usize),
    /// Major premise `A -> B`, minor premise `A`.
    Mp(Arc<Proof>, Arc<Proof>),
    Gen(Var, Arc<Proof>),
    GenImp(Var, Arc<Proof>),
    ExElim(Var, Arc<Proof>),
}

impl Proof {
    pub fn mp(major: Proof, minor: Proof) -> Proof {
        Proof::Mp(Arc::new(major), Arc::new(minor))
    }

    pub fn gen(x: Var, p: Proof) -> Proof {
        Proof::Gen(x, Arc::new(p))
    }

    pub fn gen_imp(x: Var, p: Proof) -> Proof {
        Proof::GenImp(x, Arc::new(p))
    }

    pub fn ex_elim(x: Var, p: Proof) -> Proof {
        Proof::ExElim(x, Arc::new(p))
    }

    /// Every axiom instance cited, in pre-order.
    pub fn axioms(&self) -> Vec<&Axiom> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(p) = stack.pop() {
            match p {
                Proof::Axiom(a) => out.push(a),
                Proof::Hyp(_) => {}
                Proof::Mp(a, b) => {
                    stack.push(b);
                    stack.push(a);
                }
                Proof::Gen(_, q) | Proof::GenImp(_, q) | Proof::ExElim(_, q) => stack.push(q),
            }
        }
        out
    }

    pub fn axiom_ids(&self) -> BTreeSet<&'static str> {
        self.axioms().into_iter().map(Axiom::id).collect()
    }

    pub fn size(&self) -> usize {
        match self {
            Proof::Axiom(_) | Proof::Hyp(_) => 1,
            Proof::Mp(a, b) => 1 + a.size() + b.size(),
            Proof::Gen(_, q) | Proof::GenImp(_, q) | Proof::ExElim(_, q) => 1 + q.size(),
        }
    }

    pub fn uses_hyp(&self, k: usize) -> bool {
        match self {
            Proof::Axiom(_) => false,
            Proof::Hyp(i) => *i == k,
            Proof::Mp(a, b) => a.uses_hyp(k) || b.uses_hyp(k),
            Proof::Gen(_, q) | Proof::GenImp(_, q) | Proof::ExElim(_, q) => q.uses_hyp(k),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub hyps: Vec<Formula>,
    pub proof: Proof,
}

impl Derivation {
    pub fn new(hyps: Vec<Formula>, proof: Proof) -> Self {
        Derivation { hyps, proof }
    }

    pub fn closed(proof: Proof) -> Self {
        Derivation {
            hyps: Vec::new(),
            proof,
        }
    }
}

/// A checked conclusion. Only [`check`] produces these.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Judgment {
    hyps: Vec<Formula>,
    conclusion: Formula,
    used: BTreeSet<usize>,
}

impl Judgment {
    pub fn hyps(&self) -> &[Formula] {
        &self.hyps
    }

    pub fn conclusion(&self) -> &Formula {
        &self.conclusion
    }

    /// Indices of the hypotheses the proof actually cites.
    pub fn used_hyps(&self) -> &BTreeSet<usize> {
        &self.used
    }
}

impl fmt::Display for Judgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, h) in self.hyps.iter().enumerate() {
            write!(f, "{}{}", if i == 0 { "" } else { ", " }, h)?;
        }
        if !self.hyps.is_empty() {
            write!(f, " ")?;
        }
        write!(f, "|- {}", self.conclusion)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CheckFailure {
    #[error("bad axiom instance: {0}")]
    Axiom(#[from] AxiomError),
    #[error("hypothesis {index} out of range ({len} hypotheses)")]
    HypOutOfRange { index: usize, len: usize },
    #[error("hypothesis {index} is ill-formed: {error}")]
    BadHyp { index: usize, error: LogicError },
    #[error("major premise `{0}` is not an implication")]
    NotAnImplication(Box<Formula>),
    #[error("minor premise `{actual}` does not match antecedent `{expected}`")]
    MpMismatch { expected: Box<Formula>, actual: Box<Formula> },
    #[error("{var} is free in hypothesis {hyp}")]
    Eigenvariable { var: Var, hyp: usize },
    #[error("{var} is free in `{formula}`")]
    FreeInSide { var: Var, formula: Box<Formula> },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("at {path}: {reason}")]
pub struct CheckError {
    pub path: String,
    pub reason: CheckFailure,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error(transparent)]
    Axiom(#[from] AxiomError),
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error(transparent)]
    Deduction(#[from] DeductionError),
    #[error("{0}")]
    Statement(String),
}

/// A conclusion together with the hypotheses it rests on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Step {
    pub concl: Formula,
    pub used: BTreeSet<usize>,
}

pub(crate) enum Rule<'a> {
    Axiom(&'a Axiom),
    Hyp(usize),
    Mp,
    Gen(&'a Var),
    GenImp(&'a Var),
    ExElim(&'a Var),
}

fn eigen(x: &Var, used: &BTreeSet<usize>, hyps: &[Formula]) -> Result<(), CheckFailure> {
    for &i in used {
        if hyps[i].has_free(x) {
            return Err(CheckFailure::Eigenvariable {
                var: x.clone(),
                hyp: i,
            });
        }
    }
    Ok(())
}

fn not_free(x: &Var, f: &Formula) -> Result<(), CheckFailure> {
    if f.has_free(x) {
        Err(CheckFailure::FreeInSide {
            var: x.clone(),
            formula: Box::new(f.clone()),
        })
    } else {
        Ok(())
    }
}

/// One inference. `premises` holds one step for the generalization rules
/// and two (major, minor) for modus ponens.
pub(crate) fn apply_rule(rule: Rule<'_>, premises: &[&Step], hyps: &[Formula]) -> Result<Step, CheckFailure> {
    match rule {
        Rule::Axiom(a) => Ok(Step {
            concl: a.formula()?,
            used: BTreeSet::new(),
        }),
        Rule::Hyp(i) => {
            let h = hyps.get(i).ok_or(CheckFailure::HypOutOfRange {
                index: i,
                len: hyps.len(),
            })?;
            h.validate()
                .map_err(|error| CheckFailure::BadHyp { index: i, error })?;
            Ok(Step {
                concl: h.clone(),
                used: BTreeSet::from([i]),
            })
        }
        Rule::Mp => {
            let (major, minor) = (premises[0], premises[1]);
            let (a, b) = major
                .concl
                .as_imp()
                .ok_or_else(|| CheckFailure::NotAnImplication(Box::new(major.concl.clone())))?;
            if !a.alpha_eq(&minor.concl) {
                return Err(CheckFailure::MpMismatch {
                    expected: Box::new(a.clone()),
                    actual: Box::new(minor.concl.clone()),
                });
            }
            Ok(Step {
                concl: b.clone(),
                used: major.used.union(&minor.used).copied().collect(),
            })
        }
        Rule::Gen(x) => {
            let p = premises[0];
            eigen(x, &p.used, hyps)?;
            Ok(Step {
                concl: Formula::forall(x.clone(), p.concl.clone()),
                used: p.used.clone(),
            })
        }
        Rule::GenImp(x) => {
            let p = premises[0];
            let (b, a) = p
                .concl
                .as_imp()
                .ok_or_else(|| CheckFailure::NotAnImplication(Box::new(p.concl.clone())))?;
            not_free(x, b)?;
            eigen(x, &p.used, hyps)?;
            Ok(Step {
                concl: Formula::imp(b.clone(), Formula::forall(x.clone(), a.clone())),
                used: p.used.clone(),
            })
        }
        Rule::ExElim(x) => {
            let p = premises[0];
            let (a, b) = p
                .concl
                .as_imp()
                .ok_or_else(|| CheckFailure::NotAnImplication(Box::new(p.concl.clone())))?;
            not_free(x, b)?;
            eigen(x, &p.used, hyps)?;
            Ok(Step {
                concl: Formula::imp(Formula::exists(x.clone(), a.clone()), b.clone()),
                used: p.used.clone(),
            })
        }
    }
}

struct Checker<'a> {
    hyps: &'a [Formula],
    memo: HashMap<*const Proof, Step>,
    path: Vec<&'static str>,
}

impl Checker<'_> {
    fn fail(&self, reason: CheckFailure) -> CheckError {
        let mut path = String::from("root");
        for p in &self.path {
            path.push('.');
            path.push_str(p);
        }
        CheckError { path, reason }
    }

    fn sub(&mut self, label: &'static str, p: &Proof) -> Result<Step, CheckError> {
        self.path.push(label);
        let r = self.run(p);
        self.path.pop();
        r
    }

    fn run(&mut self, p: &Proof) -> Result<Step, CheckError> {
        let key = p as *const Proof;
        if let Some(s) = self.memo.get(&key) {
            return Ok(s.clone());
        }
        let step = match p {
            Proof::Axiom(a) => apply_rule(Rule::Axiom(a), &[], self.hyps),
            Proof::Hyp(i) => apply_rule(Rule::Hyp(*i), &[], self.hyps),
            Proof::Mp(a, b) => {
                let major = self.sub("major", a)?;
                let minor = self.sub("minor", b)?;
                apply_rule(Rule::Mp, &[&major, &minor], self.hyps)
            }
            Proof::Gen(x, q) => {
                let s = self.sub("gen", q)?;
                apply_rule(Rule::Gen(x), &[&s], self.hyps)
            }
            Proof::GenImp(x, q) => {
                let s = self.sub("genimp", q)?;
                apply_rule(Rule::GenImp(x), &[&s], self.hyps)
            }
            Proof::ExElim(x, q) => {
                let s = self.sub("exelim", q)?;
                apply_rule(Rule::ExElim(x), &[&s], self.hyps)
            }
        }
        .map_err(|r| self.fail(r))?;
        // Only shared children are worth remembering.
        if matches!(p, Proof::Mp(..)) {
            self.memo.insert(key, step.clone());
        }
        Ok(step)
    }
}

/// Recomputes the conclusion of every node.
pub fn check(d: &Derivation) -> Result<Judgment, CheckError> {
    let mut c = Checker {
        hyps: &d.hyps,
        memo: HashMap::new(),
        path: Vec::new(),
    };
    let step = c.run(&d.proof)?;
    Ok(Judgment {
        hyps: d.hyps.clone(),
        conclusion: step.concl,
        used: step.used,
    })
}

/// The instance formula of an axiom.
pub fn axiom_instance(a: &Axiom) -> Result<Formula, AxiomError> {
    a.formula()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{numeral, parse_type};

    fn g() -> FiniteType {
        FiniteType::Ground
    }

    fn t(s: &str) -> FiniteType {
        parse_type(s).unwrap()
    }

    #[test]
    fn cong0_with_succ() {
        let f = Axiom::Cong0 { f: Term::succ() }.formula().unwrap();
        assert_eq!(f.to_string(), "all x:0. all y:0. x == y -> succ x == succ y");
        assert!(f.free_vars().is_empty());
    }

    #[test]
    fn cong0_closes_over_the_function() {
        let fv = Term::var("x", t("(0>(0>0))"));
        let f = Axiom::Cong0 {
            f: Term::app(fv, Term::zero()),
        }
        .formula()
        .unwrap();
        assert_eq!(
            f.to_string(),
            "all x:(0>(0>0)). all x1:0. all y:0. x1 == y -> x zero x1 == x zero y"
        );
        let bad = Axiom::Cong0 { f: Term::zero() }.formula();
        assert!(matches!(bad, Err(AxiomError::CongType { .. })));
    }

    #[test]
    fn comb_k_ground_and_higher() {
        let k00 = Axiom::comb(CombAxiom::K, &[g(), g()]).formula().unwrap();
        assert_eq!(k00.to_string(), "all x:0. all y:0. k{0,0} x y == x");
        let k10 = Axiom::comb(CombAxiom::K, &[t("(0>0)"), g()]).formula().unwrap();
        assert_eq!(
            k10.to_string(),
            "all x:(0>0). all y:0. all f:((0>0)>0). f (k{(0>0),0} x y) == f x"
        );
    }

    #[test]
    fn every_comb_instance_is_closed_and_universal() {
        for c in CombAxiom::ALL {
            for ps in crate::grid::Grid::Small.tuples(c.arity()) {
                let f = Axiom::comb(c, &ps).formula().unwrap();
                assert!(f.free_vars().is_empty(), "{}", f);
                assert!(f.is_universal());
                f.validate().unwrap();
            }
        }
        assert!(matches!(
            Axiom::comb(CombAxiom::K, &[g()]).formula(),
            Err(AxiomError::Arity { .. })
        ));
    }

    #[test]
    fn induction_instance() {
        let x = Var::new("x", g());
        let body = Formula::Eq0(x.term(), x.term());
        let f = Axiom::Induction { var: x, body }.formula().unwrap();
        assert_eq!(
            f.to_string(),
            "zero == zero -> (all x:0. x == x -> succ x == succ x) -> (all x:0. x == x)"
        );
        assert!(!f.is_universal());
    }

    #[test]
    fn refl_at_zero() {
        let refl = Proof::Axiom(Axiom::Eq0Refl);
        let x = Var::new("x", g());
        let inst = Axiom::ForallElim {
            var: x.clone(),
            body: Formula::Eq0(x.term(), x.term()),
            term: Term::zero(),
        };
        let p = Proof::mp(Proof::Axiom(inst), refl);
        let j = check(&Derivation::closed(p)).unwrap();
        assert_eq!(j.conclusion().to_string(), "zero == zero");
    }

    #[test]
    fn gen_respects_eigenvariable() {
        let x = Var::new("x", g());
        let h = Formula::Eq0(x.term(), Term::zero());
        let d = Derivation::new(vec![h.clone()], Proof::gen(x.clone(), Proof::Hyp(0)));
        let err = check(&d).unwrap_err();
        assert!(matches!(err.reason, CheckFailure::Eigenvariable { hyp: 0, .. }));
        assert_eq!(err.path, "root");

        // an unused hypothesis does not block generalization
        let refl = Proof::Axiom(Axiom::Eq0Refl);
        let d = Derivation::new(vec![h], Proof::gen(x, refl));
        assert!(check(&d).is_ok());
    }

    #[test]
    fn mp_mismatch_is_located() {
        let a = Formula::Eq0(numeral(1), numeral(1));
        let b = Formula::Bottom;
        let major = Proof::Axiom(Axiom::ImpK { a: a.clone(), b: b.clone() });
        let p = Proof::mp(major, Proof::Hyp(0));
        let err = check(&Derivation::new(vec![b], p)).unwrap_err();
        assert!(matches!(err.reason, CheckFailure::MpMismatch { .. }));
        assert!(err.to_string().starts_with("at root:"));
    }

    #[test]
    fn hyp_out_of_range() {
        let err = check(&Derivation::closed(Proof::Hyp(2))).unwrap_err();
        assert_eq!(err.reason, CheckFailure::HypOutOfRange { index: 2, len: 0 });
    }

    #[test]
    fn genimp_and_exelim_side_conditions() {
        let x = Var::new("x", g());
        let bx = Formula::Eq0(x.term(), x.term());
        // bx -> (bot -> bx): x is free in the antecedent
        let k = Proof::Axiom(Axiom::ImpK { a: bx.clone(), b: Formula::Bottom });
        let err = check(&Derivation::closed(Proof::gen_imp(x.clone(), k))).unwrap_err();
        assert!(matches!(err.reason, CheckFailure::FreeInSide { .. }));

        // bot -> bx gives bot -> all x. bx
        let efq = Proof::Axiom(Axiom::ExFalso { a: bx.clone() });
        let j = check(&Derivation::closed(Proof::gen_imp(x.clone(), efq))).unwrap();
        assert_eq!(j.conclusion().to_string(), "bot -> (all x:0. x == x)");

        // bx -> (bot -> bx) read as A -> B with B = bot -> bx mentions x
        let k = Proof::Axiom(Axiom::ImpK { a: bx, b: Formula::Bottom });
        assert!(check(&Derivation::closed(Proof::ex_elim(x.clone(), k))).is_err());

        let z = Formula::Eq0(Term::zero(), Term::zero());
        let k2 = Proof::mp(
            Proof::Axiom(Axiom::ImpK {
                a: z.clone(),
                b: Formula::Eq0(x.term(), x.term()),
            }),
            Proof::mp(
                Proof::Axiom(Axiom::ForallElim {
                    var: x.clone(),
                    body: Formula::Eq0(x.term(), x.term()),
                    term: Term::zero(),
                }),
                Proof::Axiom(Axiom::Eq0Refl),
            ),
        );
        let j = check(&Derivation::closed(Proof::ex_elim(x.clone(), k2))).unwrap();
        assert_eq!(j.conclusion().to_string(), "(ex x:0. x == x) -> zero == zero");
    }

    #[test]
    fn axiom_scan() {
        let p = Proof::mp(
            Proof::Axiom(Axiom::ImpK {
                a: Formula::Bottom,
                b: Formula::Bottom,
            }),
            Proof::Axiom(Axiom::ExFalso { a: Formula::Bottom }),
        );
        assert_eq!(p.axiom_ids(), BTreeSet::from(["impk", "efq"]));
        assert_eq!(p.size(), 3);
    }
}
