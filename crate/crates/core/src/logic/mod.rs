//! Formulas over typed terms.
//!
//! The only atomic equation is between terms of type `0`. Equality at a
//! higher type `σ` is the macro [`eq`]:
//!
//! ```text
//! s =σ t  :=  all f:(σ>0). f s == f t
//! ```
//!
//! Bound variables are named. Substitution renames binders that would
//! capture, and [`Formula::alpha_eq`] compares up to bound renaming.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::abstraction::replace;
use crate::syntax::{fresh_name, FiniteType, Term, TypingError, Var};

mod parse;

pub use parse::{parse_formula, parse_formula_file};
pub(crate) use parse::formula_in_scope;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("equation `{lhs} == {rhs}` is not between terms of type 0")]
    NotGround { lhs: Term, rhs: Term },
    #[error("terms `{lhs}` and `{rhs}` have different types {left} and {right}")]
    TypeMismatch {
        lhs: Term,
        rhs: Term,
        left: FiniteType,
        right: FiniteType,
    },
    #[error("cannot substitute `{term}` of type {actual} for {var}")]
    SubstMismatch {
        var: Var,
        term: Term,
        actual: FiniteType,
    },
    #[error(transparent)]
    Typing(#[from] TypingError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Bottom,
    Eq0(Term, Term),
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    Imp(Arc<Formula>, Arc<Formula>),
    Forall(Var, Arc<Formula>),
    Exists(Var, Arc<Formula>),
}

impl Formula {
    /// `lhs == rhs`, both of type `0`.
    pub fn eq0(lhs: Term, rhs: Term) -> Result<Formula, LogicError> {
        let (l, r) = (lhs.type_of()?, rhs.type_of()?);
        if !l.is_ground() || !r.is_ground() {
            return Err(LogicError::NotGround { lhs, rhs });
        }
        Ok(Formula::Eq0(lhs, rhs))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Arc::new(a), Arc::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Arc::new(a), Arc::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Arc::new(a), Arc::new(b))
    }

    /// `a -> bot`.
    pub fn negation(a: Formula) -> Formula {
        Formula::imp(a, Formula::Bottom)
    }

    pub fn forall(x: Var, body: Formula) -> Formula {
        Formula::Forall(x, Arc::new(body))
    }

    pub fn exists(x: Var, body: Formula) -> Formula {
        Formula::Exists(x, Arc::new(body))
    }

    /// `all x1. ... all xn. body`.
    pub fn foralls(xs: &[Var], body: Formula) -> Formula {
        xs.iter()
            .rev()
            .fold(body, |acc, x| Formula::forall(x.clone(), acc))
    }

    pub fn as_imp(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Imp(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_forall(&self) -> Option<(&Var, &Formula)> {
        match self {
            Formula::Forall(x, b) => Some((x, b)),
            _ => None,
        }
    }

    /// Checks that every equation is between well-typed terms of type `0`.
    pub fn validate(&self) -> Result<(), LogicError> {
        match self {
            Formula::Bottom => Ok(()),
            Formula::Eq0(l, r) => Formula::eq0(l.clone(), r.clone()).map(|_| ()),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.validate()?;
                b.validate()
            }
            Formula::Forall(_, a) | Formula::Exists(_, a) => a.validate(),
        }
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Bottom | Formula::Eq0(..) => true,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.is_quantifier_free() && b.is_quantifier_free()
            }
            Formula::Forall(..) | Formula::Exists(..) => false,
        }
    }

    /// Splits off the outer `all` prefix.
    pub fn strip_foralls(&self) -> (Vec<Var>, &Formula) {
        let mut vars = Vec::new();
        let mut cur = self;
        while let Formula::Forall(x, body) = cur {
            vars.push(x.clone());
            cur = body;
        }
        (vars, cur)
    }

    /// A (possibly empty) `all` prefix over a quantifier-free matrix.
    pub fn is_universal(&self) -> bool {
        self.strip_foralls().1.is_quantifier_free()
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        self.free_vars_in_order().into_iter().collect()
    }

    /// Free variables in order of first occurrence.
    pub fn free_vars_in_order(&self) -> Vec<Var> {
        let mut out = Vec::new();
        let mut bound = Vec::new();
        self.collect_free(&mut bound, &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut Vec<Var>) {
        let visit = |t: &Term, bound: &Vec<Var>, out: &mut Vec<Var>| {
            t.visit_vars(&mut |v| {
                if !bound.contains(v) && !out.contains(v) {
                    out.push(v.clone());
                }
            })
        };
        match self {
            Formula::Bottom => {}
            Formula::Eq0(l, r) => {
                visit(l, bound, out);
                visit(r, bound, out);
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Forall(x, a) | Formula::Exists(x, a) => {
                bound.push(x.clone());
                a.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn has_free(&self, x: &Var) -> bool {
        match self {
            Formula::Bottom => false,
            Formula::Eq0(l, r) => l.contains_var(x) || r.contains_var(x),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.has_free(x) || b.has_free(x)
            }
            Formula::Forall(y, a) | Formula::Exists(y, a) => y != x && a.has_free(x),
        }
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names(&self, out: &mut BTreeSet<String>) {
        let visit = |t: &Term, out: &mut BTreeSet<String>| {
            t.visit_vars(&mut |v| {
                out.insert(v.name().to_string());
            })
        };
        match self {
            Formula::Bottom => {}
            Formula::Eq0(l, r) => {
                visit(l, out);
                visit(r, out);
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_names(out);
                b.collect_names(out);
            }
            Formula::Forall(x, a) | Formula::Exists(x, a) => {
                out.insert(x.name().to_string());
                a.collect_names(out);
            }
        }
    }

    /// Capture-avoiding substitution of `a` for the free occurrences of `x`.
    pub fn subst(&self, x: &Var, a: &Term) -> Result<Formula, LogicError> {
        let ty = a.type_of()?;
        if &ty != x.ty() {
            return Err(LogicError::SubstMismatch {
                var: x.clone(),
                term: a.clone(),
                actual: ty,
            });
        }
        let names: BTreeSet<String> = a.free_vars().iter().map(|v| v.name().to_string()).collect();
        Ok(self.subst_unchecked(x, a, &names))
    }

    /// Capture is decided by name, so printed formulas never become
    /// ambiguous. `a_names` are the names free in `a`.
    pub(crate) fn subst_unchecked(&self, x: &Var, a: &Term, a_names: &BTreeSet<String>) -> Formula {
        if !self.has_free(x) {
            return self.clone();
        }
        match self {
            Formula::Bottom => Formula::Bottom,
            Formula::Eq0(l, r) => Formula::Eq0(replace(l, x, a), replace(r, x, a)),
            Formula::And(p, q) => Formula::and(
                p.subst_unchecked(x, a, a_names),
                q.subst_unchecked(x, a, a_names),
            ),
            Formula::Or(p, q) => Formula::or(
                p.subst_unchecked(x, a, a_names),
                q.subst_unchecked(x, a, a_names),
            ),
            Formula::Imp(p, q) => Formula::imp(
                p.subst_unchecked(x, a, a_names),
                q.subst_unchecked(x, a, a_names),
            ),
            Formula::Forall(y, body) | Formula::Exists(y, body) => {
                let (y2, body2) = if a_names.contains(y.name()) {
                    let mut taken = body.names();
                    taken.extend(a_names.iter().cloned());
                    taken.insert(x.name().to_string());
                    let fresh = y.renamed(&fresh_name(y.name(), |n| taken.contains(n)));
                    let renamed = body.subst_unchecked(
                        y,
                        &fresh.term(),
                        &BTreeSet::from([fresh.name().to_string()]),
                    );
                    (fresh, renamed)
                } else {
                    (y.clone(), body.as_ref().clone())
                };
                let inner = body2.subst_unchecked(x, a, a_names);
                match self {
                    Formula::Forall(..) => Formula::forall(y2, inner),
                    _ => Formula::exists(y2, inner),
                }
            }
        }
    }

    /// Equality up to renaming of bound variables.
    pub fn alpha_eq(&self, other: &Formula) -> bool {
        alpha(self, other, &mut Vec::new(), &mut Vec::new())
    }
}

fn alpha(a: &Formula, b: &Formula, env_a: &mut Vec<Var>, env_b: &mut Vec<Var>) -> bool {
    match (a, b) {
        (Formula::Bottom, Formula::Bottom) => true,
        (Formula::Eq0(l1, r1), Formula::Eq0(l2, r2)) => {
            alpha_term(l1, l2, env_a, env_b) && alpha_term(r1, r2, env_a, env_b)
        }
        (Formula::And(a1, b1), Formula::And(a2, b2))
        | (Formula::Or(a1, b1), Formula::Or(a2, b2))
        | (Formula::Imp(a1, b1), Formula::Imp(a2, b2)) => {
            alpha(a1, a2, env_a, env_b) && alpha(b1, b2, env_a, env_b)
        }
        (Formula::Forall(x, p), Formula::Forall(y, q))
        | (Formula::Exists(x, p), Formula::Exists(y, q)) => {
            if x.ty() != y.ty() {
                return false;
            }
            env_a.push(x.clone());
            env_b.push(y.clone());
            let r = alpha(p, q, env_a, env_b);
            env_a.pop();
            env_b.pop();
            r
        }
        _ => false,
    }
}

fn alpha_term(s: &Term, t: &Term, env_a: &[Var], env_b: &[Var]) -> bool {
    match (s, t) {
        (Term::Var(x), Term::Var(y)) => {
            let ix = env_a.iter().rposition(|v| v == x);
            let iy = env_b.iter().rposition(|v| v == y);
            match (ix, iy) {
                (Some(i), Some(j)) => i == j,
                (None, None) => x == y,
                _ => false,
            }
        }
        (Term::Const(c), Term::Const(d)) => c == d,
        (Term::App(f1, a1), Term::App(f2, a2)) => {
            alpha_term(f1, f2, env_a, env_b) && alpha_term(a1, a2, env_a, env_b)
        }
        _ => false,
    }
}

/// Names tried, in order, for the observation variable of [`eq`].
const OBSERVER_NAMES: [&str; 3] = ["f", "g", "h"];

fn observer_name(taken: &BTreeSet<String>) -> String {
    OBSERVER_NAMES
        .iter()
        .find(|n| !taken.contains(**n))
        .map(|n| n.to_string())
        .unwrap_or_else(|| fresh_name("f", |n| taken.contains(n)))
}

/// Equality at the common type of `s` and `t`: the atomic equation at type
/// `0`, the observational unfolding `all f. f s == f t` at higher types.
pub fn eq(s: &Term, t: &Term) -> Result<Formula, LogicError> {
    Ok(equality_view(s, t)?.expansion)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqualityView {
    pub lhs: Term,
    pub rhs: Term,
    pub ty: FiniteType,
    pub expansion: Formula,
}

pub fn equality_view(s: &Term, t: &Term) -> Result<EqualityView, LogicError> {
    let (ls, lt) = (s.type_of()?, t.type_of()?);
    if ls != lt {
        return Err(LogicError::TypeMismatch {
            lhs: s.clone(),
            rhs: t.clone(),
            left: ls,
            right: lt,
        });
    }
    let expansion = if ls.is_ground() {
        Formula::Eq0(s.clone(), t.clone())
    } else {
        let taken: BTreeSet<String> = s
            .free_vars()
            .iter()
            .chain(t.free_vars().iter())
            .map(|v| v.name().to_string())
            .collect();
        let f = Var::new(
            &observer_name(&taken),
            FiniteType::arrow(ls.clone(), FiniteType::Ground),
        );
        Formula::forall(
            f.clone(),
            Formula::Eq0(Term::app(f.term(), s.clone()), Term::app(f.term(), t.clone())),
        )
    };
    Ok(EqualityView {
        lhs: s.clone(),
        rhs: t.clone(),
        ty: ls,
        expansion,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Quant,
    Imp,
    Or,
    And,
    Atom,
}

impl Formula {
    fn prec(&self) -> Prec {
        match self {
            Formula::Bottom | Formula::Eq0(..) => Prec::Atom,
            Formula::And(..) => Prec::And,
            Formula::Or(..) => Prec::Or,
            Formula::Imp(..) => Prec::Imp,
            Formula::Forall(..) | Formula::Exists(..) => Prec::Quant,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: Prec) -> fmt::Result {
        if self.prec() < min {
            write!(f, "(")?;
            self.fmt_at(f, Prec::Quant)?;
            return write!(f, ")");
        }
        match self {
            Formula::Bottom => write!(f, "bot"),
            Formula::Eq0(l, r) => write!(f, "{} == {}", l, r),
            Formula::And(a, b) => {
                a.fmt_at(f, Prec::Atom)?;
                write!(f, " & ")?;
                b.fmt_at(f, Prec::Atom)
            }
            Formula::Or(a, b) => {
                a.fmt_at(f, Prec::And)?;
                write!(f, " | ")?;
                b.fmt_at(f, Prec::And)
            }
            Formula::Imp(a, b) => {
                a.fmt_at(f, Prec::Or)?;
                write!(f, " -> ")?;
                b.fmt_at(f, Prec::Imp)
            }
            Formula::Forall(x, a) => {
                write!(f, "all {}. ", x)?;
                a.fmt_at(f, Prec::Quant)
            }
            Formula::Exists(x, a) => {
                write!(f, "ex {}. ", x)?;
                a.fmt_at(f, Prec::Quant)
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, Prec::Quant)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{numeral, Context};

    fn g() -> FiniteType {
        FiniteType::Ground
    }

    fn g2g() -> FiniteType {
        FiniteType::arrow(g(), g())
    }

    #[test]
    fn ground_equality_is_atomic() {
        assert_eq!(
            eq(&Term::zero(), &Term::zero()).unwrap(),
            Formula::Eq0(Term::zero(), Term::zero())
        );
    }

    #[test]
    fn higher_equality_unfolds_once() {
        let x = Term::var("x", g2g());
        let y = Term::var("y", g2g());
        let e = eq(&x, &y).unwrap();
        assert_eq!(e.to_string(), "all f:((0>0)>0). f x == f y");
        assert!(e.is_universal());

        let p = FiniteType::product(g(), g());
        let e = eq(&Term::var("x", p.clone()), &Term::var("y", p)).unwrap();
        assert_eq!(e.to_string(), "all f:((0*0)>0). f x == f y");
    }

    #[test]
    fn observer_is_fresh() {
        let f = Term::var("f", g2g());
        let g_ = Term::var("g", g2g());
        let e = eq(&f, &g_).unwrap();
        let (vars, _) = e.strip_foralls();
        assert_eq!(vars[0].name(), "h");
        assert_eq!(e.free_vars(), BTreeSet::from([f.as_var().unwrap().clone(), g_.as_var().unwrap().clone()]));
    }

    #[test]
    fn eq_type_mismatch() {
        let x = Term::var("x", g2g());
        assert!(matches!(
            eq(&x, &Term::zero()),
            Err(LogicError::TypeMismatch { .. })
        ));
    }

    #[test]
    fn subst_under_binder() {
        let x = Var::new("x", g2g());
        let y = Term::var("y", g2g());
        let e = eq(&x.term(), &y).unwrap();
        let one = Term::app(Term::k(&g(), &g()), numeral(1));
        let s = e.subst(&x, &one).unwrap();
        assert_eq!(s.to_string(), "all f:((0>0)>0). f (k{0,0} (succ zero)) == f y");
    }

    #[test]
    fn subst_renames_capturing_binder() {
        let x = Var::new("x", g2g());
        let y = Term::var("y", g2g());
        let e = eq(&x.term(), &y).unwrap();
        // substitute a term mentioning a free `f`
        let f = Term::var("f", FiniteType::arrow(g(), g()));
        let s = e.subst(&x, &f).unwrap();
        let (vars, _) = s.strip_foralls();
        assert_eq!(vars[0].name(), "f1");
        assert!(s.has_free(f.as_var().unwrap()));
        assert_eq!(s.to_string(), "all f1:((0>0)>0). f1 f == f1 y");
    }

    #[test]
    fn alpha_equivalence() {
        let x = Term::var("x", g());
        let y = Term::var("y", g());
        let fv = Var::new("f", g2g());
        let gv = Var::new("g", g2g());
        let a = Formula::forall(
            fv.clone(),
            Formula::Eq0(Term::app(fv.term(), x.clone()), Term::app(fv.term(), y.clone())),
        );
        let b = Formula::forall(
            gv.clone(),
            Formula::Eq0(Term::app(gv.term(), x.clone()), Term::app(gv.term(), y.clone())),
        );
        assert!(a.alpha_eq(&b));
        let c = Formula::forall(
            gv.clone(),
            Formula::Eq0(Term::app(gv.term(), y), Term::app(gv.term(), x)),
        );
        assert!(!a.alpha_eq(&c));
        // binder types matter
        let h = Var::new("f", FiniteType::arrow(g2g(), g()));
        assert!(!Formula::forall(h, Formula::Bottom).alpha_eq(&Formula::forall(fv, Formula::Bottom)));
    }

    #[test]
    fn universal_classification() {
        let x = Var::new("x", g());
        let ex = Formula::exists(x.clone(), Formula::Eq0(x.term(), Term::zero()));
        assert!(!ex.is_universal());
        let nested = Formula::imp(
            Formula::Eq0(Term::zero(), Term::zero()),
            Formula::forall(x.clone(), Formula::Eq0(x.term(), x.term())),
        );
        assert!(!nested.is_universal());
        assert!(Formula::Eq0(x.term(), x.term()).is_universal());
    }

    #[test]
    fn printing_parenthesizes_by_precedence() {
        let c = Context::new();
        for text in [
            "zero == zero & bot -> bot",
            "(zero == zero -> bot) -> bot",
            "zero == zero | bot & bot",
            "(zero == zero | bot) & bot",
            "all x:0. x == x -> (ex y:0. y == x)",
            "(all x:0. x == x) -> bot",
        ] {
            let f = parse_formula(text, &c).unwrap();
            let printed = f.to_string();
            let again = parse_formula(&printed, &c).unwrap();
            assert_eq!(f, again, "{} printed as {}", text, printed);
        }
    }

    #[test]
    fn not_is_implication_into_bottom() {
        let a = Formula::Eq0(Term::zero(), Term::zero());
        assert_eq!(Formula::negation(a.clone()), Formula::imp(a, Formula::Bottom));
    }
}
