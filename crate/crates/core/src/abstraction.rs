//! Bracket abstraction and the combinators definable from the primitives.
//!
//! `bracket(x, t)` builds a term `λ*x.t` from `k` and `s` only:
//!
//! ```text
//! λ*x.x       = s k k        (at the right types)
//! λ*x.t       = k t          if x does not occur in t
//! λ*x.(t u)   = s (λ*x.t) (λ*x.u)
//! ```
//!
//! There is no η-clause. That `(λ*x.t) a` behaves like `t[a/x]` is checked
//! by reduction, never assumed.

use std::fmt;

use thiserror::Error;

use crate::grid::Grid;
use crate::reduction::{Normalizer, TraceEntry};
use crate::syntax::{fresh_name, FiniteType, Term, TypingError, Var};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AbstractionError {
    #[error("cannot substitute a term of type {actual} for {var}")]
    SubstMismatch { var: Var, actual: FiniteType },
    #[error(transparent)]
    Typing(#[from] TypingError),
    #[error("{name} takes {expected} type parameters, {given} given")]
    Arity {
        name: &'static str,
        expected: usize,
        given: usize,
    },
}

/// Replaces every occurrence of `x` in `t` by `a`.
pub fn subst(t: &Term, x: &Var, a: &Term) -> Result<Term, AbstractionError> {
    let ty = a.type_of()?;
    if &ty != x.ty() {
        return Err(AbstractionError::SubstMismatch {
            var: x.clone(),
            actual: ty,
        });
    }
    Ok(replace(t, x, a))
}

pub(crate) fn replace(t: &Term, x: &Var, a: &Term) -> Term {
    if !t.contains_var(x) {
        return t.clone();
    }
    match t {
        Term::Var(_) => a.clone(),
        Term::Const(_) => t.clone(),
        Term::App(f, b) => Term::app(replace(f, x, a), replace(b, x, a)),
    }
}

/// `s k k` at type `σ -> σ`.
pub fn identity(sigma: &FiniteType) -> Term {
    let s2s = FiniteType::arrow(sigma.clone(), sigma.clone());
    Term::s(sigma, &s2s, sigma).apply([Term::k(sigma, &s2s), Term::k(sigma, sigma)])
}

#[derive(Clone, Debug, PartialEq)]
pub struct AbstractionResult {
    pub term: Term,
    pub var: Var,
    /// Size of the abstracted term over the size of the body.
    pub growth: f64,
}

pub fn bracket(x: &Var, body: &Term) -> Result<AbstractionResult, TypingError> {
    body.type_of()?;
    let term = lambda(x, body);
    Ok(AbstractionResult {
        growth: term.size() as f64 / body.size() as f64,
        term,
        var: x.clone(),
    })
}

/// `λ*x.body`, for a body already known to be well-typed.
pub fn lambda(x: &Var, body: &Term) -> Term {
    let sigma = x.ty();
    if body.as_var() == Some(x) {
        return identity(sigma);
    }
    if !body.contains_var(x) {
        let tau = body.type_of().expect("well-typed body");
        return Term::app(Term::k(&tau, sigma), body.clone());
    }
    match body {
        Term::App(t, u) => {
            let tu = t.type_of().expect("well-typed body");
            let (alpha, tau) = tu.as_arrow().expect("function position has arrow type");
            Term::s(sigma, alpha, tau).apply([lambda(x, t), lambda(x, u)])
        }
        _ => unreachable!("a variable other than x does not contain x"),
    }
}

/// `λ*x1.λ*x2...λ*xn.body`.
pub fn lambdas(xs: &[Var], body: &Term) -> Term {
    xs.iter().rev().fold(body.clone(), |acc, x| lambda(x, &acc))
}

/// Combinators defined from the primitives rather than postulated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Derived {
    /// `i := s k k`
    I,
    /// `t := q i`
    T,
    /// `b := s (k s) k`
    BDef,
    /// `q := b (s (b b s) (k k)) b`, every `b` being `BDef`.
    QDef,
}

impl Derived {
    pub const ALL: [Derived; 4] = [Derived::I, Derived::T, Derived::BDef, Derived::QDef];

    pub fn name(self) -> &'static str {
        match self {
            Derived::I => "i",
            Derived::T => "t",
            Derived::BDef => "b_def",
            Derived::QDef => "q_def",
        }
    }

    pub fn definition(self) -> &'static str {
        match self {
            Derived::I => "s k k",
            Derived::T => "q i",
            Derived::BDef => "s (k s) k",
            Derived::QDef => "b (s (b b s) (k k)) b",
        }
    }

    /// Number of type parameters: `i^σ`, `t^{ρ,τ}`, `b^{ρ,σ,τ}`, `q^{ρ,σ,τ}`.
    pub fn arity(self) -> usize {
        match self {
            Derived::I => 1,
            Derived::T => 2,
            Derived::BDef | Derived::QDef => 3,
        }
    }

    /// The type the instance must have.
    pub fn signature(self, params: &[FiniteType]) -> Result<FiniteType, AbstractionError> {
        self.check_arity(params)?;
        let arr = FiniteType::arrow;
        Ok(match self {
            Derived::I => arr(params[0].clone(), params[0].clone()),
            Derived::T => {
                let (rho, tau) = (&params[0], &params[1]);
                arr(
                    rho.clone(),
                    arr(arr(rho.clone(), tau.clone()), tau.clone()),
                )
            }
            Derived::BDef => crate::syntax::constant_signature(crate::ConstTag::B, params)?,
            Derived::QDef => crate::syntax::constant_signature(crate::ConstTag::Q, params)?,
        })
    }

    pub fn instantiate(self, params: &[FiniteType]) -> Result<Term, AbstractionError> {
        self.check_arity(params)?;
        Ok(match self {
            Derived::I => identity(&params[0]),
            Derived::T => t_comb(&params[0], &params[1]),
            Derived::BDef => b_def(&params[0], &params[1], &params[2]),
            Derived::QDef => q_def(&params[0], &params[1], &params[2]),
        })
    }

    fn check_arity(self, params: &[FiniteType]) -> Result<(), AbstractionError> {
        if params.len() == self.arity() {
            Ok(())
        } else {
            Err(AbstractionError::Arity {
                name: self.name(),
                expected: self.arity(),
                given: params.len(),
            })
        }
    }
}

impl fmt::Display for Derived {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} := {}", self.name(), self.definition())
    }
}

pub fn derived_combinators() -> [Derived; 4] {
    Derived::ALL
}

/// `q i` with `t x y = y x` for `x : ρ`, `y : ρ -> τ`.
pub fn t_comb(rho: &FiniteType, tau: &FiniteType) -> Term {
    Term::app(Term::q(rho, tau, tau), identity(tau))
}

/// `s (k s) k` at the type of `b^{ρ,σ,τ}`.
pub fn b_def(rho: &FiniteType, sigma: &FiniteType, tau: &FiniteType) -> Term {
    let arr = FiniteType::arrow;
    let s_t = Term::s(rho, sigma, tau);
    let s_ty = s_t.type_of().expect("closed constant");
    let sig_tau = arr(sigma.clone(), tau.clone());
    let r_sig_tau = arr(rho.clone(), sig_tau.clone());
    let rest = arr(arr(rho.clone(), sigma.clone()), arr(rho.clone(), tau.clone()));
    Term::s(&sig_tau, &r_sig_tau, &rest).apply([
        Term::app(Term::k(&s_ty, &sig_tau), s_t),
        Term::k(&sig_tau, rho),
    ])
}

/// `b (s (b b s) (k k)) b` at the type of `q^{ρ,σ,τ}`.
///
/// With `x : σ->τ`, `y : ρ`, `z : ρ->σ` the inner instances are
/// `b x : (ρ->σ)->(ρ->τ)`, `s : s^{ρ->σ, ρ, τ}` and `k : k^{ρ, ρ->σ}`.
pub fn q_def(rho: &FiniteType, sigma: &FiniteType, tau: &FiniteType) -> Term {
    let arr = FiniteType::arrow;
    let r_s = arr(rho.clone(), sigma.clone());
    let r_t = arr(rho.clone(), tau.clone());
    let s_t = arr(sigma.clone(), tau.clone());
    // a1 = type of `b x`
    let a1 = arr(r_s.clone(), r_t.clone());
    // inner k : ρ -> ((ρ->σ) -> ρ)
    let k_inner = Term::k(rho, &r_s);
    let k_inner_ty = arr(rho.clone(), arr(r_s.clone(), rho.clone()));
    let rs_to_r = arr(r_s.clone(), rho.clone());
    let rs_to_t = arr(r_s.clone(), tau.clone());
    // b2 = b^{ρ, (ρ->σ)->ρ, (ρ->σ)->τ}
    let b2 = b_def(rho, &rs_to_r, &rs_to_t);
    let s_inner = Term::s(&r_s, rho, tau);
    let a2 = arr(rs_to_r.clone(), rs_to_t.clone());
    let a3 = arr(arr(rho.clone(), rs_to_r), arr(rho.clone(), rs_to_t));
    // b b s
    let bbs = b_def(&a1, &a2, &a3).apply([b2, s_inner]);
    let kk = Term::app(Term::k(&k_inner_ty, &a1), k_inner);
    let c2 = arr(rho.clone(), arr(r_s, tau.clone()));
    let m = Term::s(&a1, &k_inner_ty, &c2).apply([bbs, kk]);
    b_def(&s_t, &a1, &c2).apply([m, b_def(rho, sigma, tau)])
}

#[derive(Clone, Debug)]
pub struct CorollaryRow {
    pub law: &'static str,
    pub params: Vec<FiniteType>,
    pub passed: bool,
    pub steps: u64,
    /// Reduction trace, kept only for failing rows.
    pub trace: Option<Vec<TraceEntry>>,
}

#[derive(Clone, Debug, Default)]
pub struct CorollaryReport {
    pub rows: Vec<CorollaryRow>,
}

impl CorollaryReport {
    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }

    pub fn count(&self, law: &str) -> usize {
        self.rows.iter().filter(|r| r.law == law).count()
    }
}

/// Checks by reduction alone that `b_def x y z` and `q_def x y z` reach
/// `x (y z)` and `x (z y)` for every grid triple, and that `i a` reaches `a`
/// at every grid type.
pub fn verify_corollary(grid: Grid) -> CorollaryReport {
    let arr = FiniteType::arrow;
    let mut rows = Vec::new();
    let run = |law: &'static str, params: Vec<FiniteType>, lhs: Term, rhs: Term| {
        let report = Normalizer::default().traced().run(&lhs);
        let (passed, steps, trace) = match report {
            Ok(r) => (r.result == rhs && lhs.type_of().is_ok(), r.steps, r.trace),
            Err(e) => (false, e.steps, None),
        };
        CorollaryRow {
            law,
            params,
            passed,
            steps,
            trace: if passed { None } else { trace },
        }
    };
    for params in grid.tuples(3) {
        let (rho, sigma, tau) = (&params[0], &params[1], &params[2]);
        let x = Term::var("x", arr(sigma.clone(), tau.clone()));
        let y = Term::var("y", arr(rho.clone(), sigma.clone()));
        let z = Term::var("z", rho.clone());
        let lhs = b_def(rho, sigma, tau).apply([x.clone(), y.clone(), z.clone()]);
        let rhs = Term::app(x, Term::app(y, z));
        rows.push(run("b_def x y z = x (y z)", params.clone(), lhs, rhs));

        let x = Term::var("x", arr(sigma.clone(), tau.clone()));
        let y = Term::var("y", rho.clone());
        let z = Term::var("z", arr(rho.clone(), sigma.clone()));
        let lhs = q_def(rho, sigma, tau).apply([x.clone(), y.clone(), z.clone()]);
        let rhs = Term::app(x, Term::app(z, y));
        rows.push(run("q_def x y z = x (z y)", params, lhs, rhs));
    }
    for sigma in grid.types() {
        let a = Term::var("a", sigma.clone());
        let lhs = Term::app(identity(&sigma), a.clone());
        rows.push(run("i a = a", vec![sigma], lhs, a));
    }
    CorollaryReport { rows }
}

fn ground_vars(names: &[&str], avoid: &[&Term]) -> Vec<Var> {
    let mut taken: Vec<String> = avoid
        .iter()
        .flat_map(|t| t.free_vars())
        .map(|v| v.name().to_string())
        .collect();
    names
        .iter()
        .map(|base| {
            let n = fresh_name(base, |c| taken.iter().any(|t| t == c));
            taken.push(n.clone());
            Var::new(&n, FiniteType::Ground)
        })
        .collect()
}

/// `rec m (λ*c.λ*a. succ a) n`, which normalizes to `m + n`.
pub fn add_term(m: &Term, n: &Term) -> Term {
    let g = FiniteType::Ground;
    let vs = ground_vars(&["c", "a"], &[m, n]);
    let step = lambdas(&vs, &Term::app(Term::succ(), vs[1].term()));
    Term::rec(&g).apply([m.clone(), step, n.clone()])
}

/// `rec 0 (λ*c.λ*a. a + m) n`, which normalizes to `m * n`.
pub fn mul_term(m: &Term, n: &Term) -> Term {
    let g = FiniteType::Ground;
    let vs = ground_vars(&["c", "a"], &[m, n]);
    let step = lambdas(&vs, &add_term(&vs[1].term(), m));
    Term::rec(&g).apply([Term::zero(), step, n.clone()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::{normal_form, numeral_value};
    use crate::syntax::{numeral, parse_term, Context};

    fn g() -> FiniteType {
        FiniteType::Ground
    }

    fn g2g() -> FiniteType {
        FiniteType::arrow(g(), g())
    }

    #[test]
    fn subst_examples() {
        let f = Term::var("f", g2g());
        let x = Var::new("x", g());
        let fx = Term::app(f.clone(), x.term());
        assert_eq!(subst(&fx, &x, &numeral(0)).unwrap(), Term::app(f, Term::zero()));
        let y = Term::var("y", g());
        assert_eq!(subst(&y, &x, &numeral(3)).unwrap(), y);

        let h = Var::new("h", g2g());
        let hh = Term::app(h.term(), h.term());
        let kterm = Term::app(Term::k(&g(), &g()), Term::zero());
        let replaced = replace(&hh, &h, &kterm);
        assert_eq!(replaced, Term::app(kterm.clone(), kterm));
        assert!(matches!(
            subst(&fx, &x, &f_term()),
            Err(AbstractionError::SubstMismatch { .. })
        ));
    }

    fn f_term() -> Term {
        Term::var("f", g2g())
    }

    #[test]
    fn bracket_of_the_variable_is_skk() {
        let x = Var::new("x", g());
        let r = bracket(&x, &x.term()).unwrap();
        assert_eq!(r.term.to_string(), "s{0,(0>0),0} k{0,(0>0)} k{0,0}");
        assert_eq!(r.term.type_of().unwrap(), g2g());
    }

    #[test]
    fn bracket_constant_case() {
        let x = Var::new("x", g());
        let y = Term::var("y", g());
        let r = bracket(&x, &y).unwrap();
        assert_eq!(r.term, Term::app(Term::k(&g(), &g()), y));
        assert!(r.growth > 1.0);
    }

    #[test]
    fn bracket_beta_on_application() {
        let x = Var::new("x", g());
        let body = Term::app(f_term(), x.term());
        let abs = bracket(&x, &body).unwrap().term;
        assert!(!abs.contains_var(&x));
        assert_eq!(abs.type_of().unwrap(), g2g());
        let a = numeral(2);
        assert_eq!(
            normal_form(&Term::app(abs, a.clone())).unwrap(),
            normal_form(&Term::app(f_term(), a)).unwrap()
        );
    }

    #[test]
    fn derived_signatures() {
        let grid = Grid::Small.tuples(3);
        for d in Derived::ALL {
            for params in &grid {
                let ps = &params[..d.arity()];
                let term = d.instantiate(ps).unwrap();
                assert_eq!(
                    term.type_of().unwrap(),
                    d.signature(ps).unwrap(),
                    "{} at {:?}",
                    d.name(),
                    ps
                );
                assert!(term.free_vars().is_empty());
            }
        }
    }

    #[test]
    fn b_def_and_q_def_at_ground() {
        let mut c = Context::new();
        c.declare("x", g2g()).unwrap();
        c.declare("y", g2g()).unwrap();
        c.declare("z", g()).unwrap();
        let lhs = b_def(&g(), &g(), &g()).apply([
            parse_term("x", &c).unwrap(),
            parse_term("y", &c).unwrap(),
            parse_term("z", &c).unwrap(),
        ]);
        assert_eq!(normal_form(&lhs).unwrap(), parse_term("x (y z)", &c).unwrap());

        let mut c = Context::new();
        c.declare("x", g2g()).unwrap();
        c.declare("y", g()).unwrap();
        c.declare("z", g2g()).unwrap();
        let lhs = q_def(&g(), &g(), &g()).apply([
            parse_term("x", &c).unwrap(),
            parse_term("y", &c).unwrap(),
            parse_term("z", &c).unwrap(),
        ]);
        assert_eq!(normal_form(&lhs).unwrap(), parse_term("x (z y)", &c).unwrap());
    }

    #[test]
    fn q_def_matches_an_inferred_skeleton() {
        // Independent route: let the parser infer every parameter of the
        // untyped skeleton, with b spelled as s (k s) k.
        let mut c = Context::new();
        c.declare("x", g2g()).unwrap();
        c.declare("y", g()).unwrap();
        c.declare("z", g2g()).unwrap();
        let b = "(s (k s) k)";
        let text = format!("{b} (s ({b} {b} s) (k k)) {b} x y z");
        let inferred = parse_term(&text, &c).unwrap();
        let built = q_def(&g(), &g(), &g()).apply([
            Term::var("x", g2g()),
            Term::var("y", g()),
            Term::var("z", g2g()),
        ]);
        assert_eq!(inferred, built);
    }

    #[test]
    fn corollary_small_grid() {
        let report = verify_corollary(Grid::Small);
        assert!(report.all_passed());
        assert_eq!(report.count("b_def x y z = x (y z)"), 64);
        assert_eq!(report.count("q_def x y z = x (z y)"), 64);
        assert_eq!(report.count("i a = a"), 4);
    }

    #[test]
    fn addition_two_plus_three() {
        let t = add_term(&numeral(2), &numeral(3));
        assert_eq!(t.type_of().unwrap(), g());
        assert_eq!(numeral_value(&t, 10_000).unwrap(), Some(5));
    }

    #[test]
    fn multiplication_small() {
        let t = mul_term(&numeral(3), &numeral(4));
        assert_eq!(numeral_value(&t, 100_000).unwrap(), Some(12));
        assert_eq!(numeral_value(&mul_term(&numeral(0), &numeral(5)), 100_000).unwrap(), Some(0));
    }

    #[test]
    fn arity_errors() {
        assert!(Derived::BDef.instantiate(&[g()]).is_err());
        assert!(Derived::I.signature(&[]).is_err());
    }
}
