//! Generated derivations: congruence of observational equality, its
//! equivalence laws, and the observational principle.
//!
//! No generator cites a congruence law above type `0`; the higher cases go
//! through the `b` and `q` combinator equations.

use std::sync::Arc;

use super::{
    apply_rule, check, discharge, imp_refl, Axiom, CheckError, CombAxiom, Derivation, Judgment,
    KernelError, Proof, Rule, Step,
};
use crate::abstraction::{identity, t_comb};
use crate::logic::{eq, Formula};
use crate::syntax::{FiniteType, Term, Var};

#[derive(Clone, Debug)]
pub(crate) struct Line {
    pub proof: Arc<Proof>,
    pub step: Step,
}

impl Line {
    pub fn concl(&self) -> &Formula {
        &self.step.concl
    }
}

/// Forward proof construction under a fixed hypothesis list. Every line
/// carries its conclusion as computed by the kernel rules.
pub(crate) struct Builder {
    hyps: Vec<Formula>,
}

fn rule_error(reason: super::CheckFailure) -> KernelError {
    KernelError::Check(CheckError {
        path: "builder".into(),
        reason,
    })
}

impl Builder {
    pub fn new(hyps: Vec<Formula>) -> Self {
        Builder { hyps }
    }

    fn apply(&self, r: Rule<'_>, premises: &[&Line], proof: Proof) -> Result<Line, KernelError> {
        let steps: Vec<&Step> = premises.iter().map(|l| &l.step).collect();
        let step = apply_rule(r, &steps, &self.hyps).map_err(rule_error)?;
        Ok(Line {
            proof: Arc::new(proof),
            step,
        })
    }

    pub fn axiom(&self, a: Axiom) -> Result<Line, KernelError> {
        let step = apply_rule(Rule::Axiom(&a), &[], &self.hyps).map_err(rule_error)?;
        Ok(Line {
            proof: Arc::new(Proof::Axiom(a)),
            step,
        })
    }

    pub fn hyp(&self, i: usize) -> Result<Line, KernelError> {
        self.apply(Rule::Hyp(i), &[], Proof::Hyp(i))
    }

    pub fn mp(&self, major: &Line, minor: &Line) -> Result<Line, KernelError> {
        let p = Proof::Mp(major.proof.clone(), minor.proof.clone());
        self.apply(Rule::Mp, &[major, minor], p)
    }

    pub fn gen(&self, x: &Var, l: &Line) -> Result<Line, KernelError> {
        let p = Proof::Gen(x.clone(), l.proof.clone());
        self.apply(Rule::Gen(x), &[l], p)
    }

    pub fn gen_imp(&self, x: &Var, l: &Line) -> Result<Line, KernelError> {
        let p = Proof::GenImp(x.clone(), l.proof.clone());
        self.apply(Rule::GenImp(x), &[l], p)
    }

    pub fn ex_elim(&self, x: &Var, l: &Line) -> Result<Line, KernelError> {
        let p = Proof::ExElim(x.clone(), l.proof.clone());
        self.apply(Rule::ExElim(x), &[l], p)
    }

    pub fn gens(&self, xs: &[Var], l: &Line) -> Result<Line, KernelError> {
        xs.iter().rev().try_fold(l.clone(), |acc, x| self.gen(x, &acc))
    }

    /// From `all x. A` infer `A[t/x]`.
    pub fn inst(&self, l: &Line, t: &Term) -> Result<Line, KernelError> {
        let (x, body) = l.concl().as_forall().ok_or_else(|| {
            KernelError::Statement(format!("cannot instantiate `{}`", l.concl()))
        })?;
        let elim = self.axiom(Axiom::ForallElim {
            var: x.clone(),
            body: body.clone(),
            term: t.clone(),
        })?;
        self.mp(&elim, l)
    }

    pub fn insts(&self, l: &Line, ts: &[Term]) -> Result<Line, KernelError> {
        ts.iter().try_fold(l.clone(), |acc, t| self.inst(&acc, t))
    }

    fn sides(l: &Line) -> Result<(Term, Term), KernelError> {
        match l.concl() {
            Formula::Eq0(a, b) => Ok((a.clone(), b.clone())),
            other => Err(KernelError::Statement(format!("`{}` is not an equation", other))),
        }
    }

    /// From `a == b` infer `b == a`.
    pub fn sym(&self, l: &Line) -> Result<Line, KernelError> {
        let (a, b) = Self::sides(l)?;
        let ax = self.axiom(Axiom::Eq0Sym)?;
        let imp = self.insts(&ax, &[a, b])?;
        self.mp(&imp, l)
    }

    /// From `a == b` and `b == c` infer `a == c`.
    pub fn trans(&self, l1: &Line, l2: &Line) -> Result<Line, KernelError> {
        let (a, b) = Self::sides(l1)?;
        let (_, c) = Self::sides(l2)?;
        let ax = self.axiom(Axiom::Eq0Trans)?;
        let imp = self.insts(&ax, &[a, b, c])?;
        let intro = self.axiom(Axiom::AndIntro {
            a: l1.concl().clone(),
            b: l2.concl().clone(),
        })?;
        let both = self.mp(&self.mp(&intro, l1)?, l2)?;
        self.mp(&imp, &both)
    }

    pub fn chain(&self, ls: &[Line]) -> Result<Line, KernelError> {
        let mut acc = ls[0].clone();
        for l in &ls[1..] {
            acc = self.trans(&acc, l)?;
        }
        Ok(acc)
    }

    /// A combinator equation at type `0`, instantiated at `args`.
    pub fn comb(&self, c: CombAxiom, params: &[FiniteType], args: &[Term]) -> Result<Line, KernelError> {
        let ax = self.axiom(Axiom::comb(c, params))?;
        self.insts(&ax, args)
    }

    /// A finished derivation over the same hypotheses, as a line.
    pub fn adopt(&self, d: Derivation) -> Result<Line, KernelError> {
        let j = check(&d)?;
        Ok(Line {
            proof: Arc::new(d.proof),
            step: Step {
                concl: j.conclusion().clone(),
                used: j.used_hyps().clone(),
            },
        })
    }

    pub fn derivation(&self, l: &Line) -> Derivation {
        Derivation::new(self.hyps.clone(), l.proof.as_ref().clone())
    }
}

/// A closed derivation with the statement it is meant to prove.
#[derive(Clone, Debug)]
pub struct Theorem {
    pub name: String,
    pub derivation: Derivation,
    pub statement: Formula,
}

impl Theorem {
    /// Checks the derivation and compares its conclusion with the statement.
    pub fn check(&self) -> Result<Judgment, KernelError> {
        let j = check(&self.derivation)?;
        if !j.hyps().is_empty() || !j.conclusion().alpha_eq(&self.statement) {
            return Err(KernelError::Statement(format!(
                "{} concludes `{}`, expected `{}`",
                self.name,
                j.conclusion(),
                self.statement
            )));
        }
        Ok(j)
    }
}

fn arrow(a: &FiniteType, b: &FiniteType) -> FiniteType {
    FiniteType::arrow(a.clone(), b.clone())
}

fn observer(f: &Formula) -> Var {
    f.as_forall().expect("higher-type equality").0.clone()
}

fn closed_line(l: &Line, under: &Builder) -> Result<Line, KernelError> {
    let d = discharge(&under.derivation(l), 0)?;
    Builder::new(Vec::new()).adopt(d)
}

fn theorem(name: String, vars: &[Var], body: &Line, statement: Formula) -> Result<Theorem, KernelError> {
    let b = Builder::new(Vec::new());
    let l = b.gens(vars, body)?;
    let t = Theorem {
        name,
        derivation: b.derivation(&l),
        statement,
    };
    t.check()?;
    Ok(t)
}

/// `all f x y. x =σ y -> f x =τ f y` for `f : σ>τ`.
pub fn prove_cong_arg(sigma: &FiniteType, tau: &FiniteType) -> Result<Theorem, KernelError> {
    let g = FiniteType::Ground;
    let f = Var::new("f", arrow(sigma, tau));
    let x = Var::new("x", sigma.clone());
    let y = Var::new("y", sigma.clone());
    let (fx, fy) = (Term::app(f.term(), x.term()), Term::app(f.term(), y.term()));
    let hyp = eq(&x.term(), &y.term())?;
    let goal = eq(&fx, &fy)?;
    let statement = Formula::foralls(&[f.clone(), x.clone(), y.clone()], Formula::imp(hyp.clone(), goal.clone()));
    let name = format!("cong_arg_{}_{}", sigma.slug(), tau.slug());
    let vars = [f.clone(), x.clone(), y.clone()];

    let top = Builder::new(Vec::new());
    if tau.is_ground() {
        if sigma.is_ground() {
            // the congruence axiom at its own variable is the statement
            let l = top.axiom(Axiom::Cong0 { f: f.term() })?;
            let t = Theorem {
                name,
                derivation: top.derivation(&l),
                statement,
            };
            t.check()?;
            return Ok(t);
        }
        let (obs, body) = hyp.as_forall().expect("higher-type equality");
        let l = top.axiom(Axiom::ForallElim {
            var: obs.clone(),
            body: body.clone(),
            term: f.term(),
        })?;
        return theorem(name, &vars, &l, statement);
    }

    let b = Builder::new(vec![hyp.clone()]);
    let u = observer(&goal);
    let buf = Term::b(sigma, tau, &g).apply([u.term(), f.term()]);
    let mid = if sigma.is_ground() {
        let cong = b.axiom(Axiom::Cong0 { f: buf.clone() })?;
        let imp = b.insts(&cong, &[u.term(), f.term(), x.term(), y.term()])?;
        b.mp(&imp, &b.hyp(0)?)?
    } else {
        b.inst(&b.hyp(0)?, &buf)?
    };
    let params = [sigma.clone(), tau.clone(), g.clone()];
    let bx = b.comb(CombAxiom::B, &params, &[u.term(), f.term(), x.term()])?;
    let by = b.comb(CombAxiom::B, &params, &[u.term(), f.term(), y.term()])?;
    let chain = b.chain(&[b.sym(&bx)?, mid, by])?;
    let under = b.gen(&u, &chain)?;
    let l = closed_line(&under, &b)?;
    theorem(name, &vars, &l, statement)
}

/// `all f g x. f =(σ>τ) g -> f x =τ g x`.
pub fn prove_cong_fun(sigma: &FiniteType, tau: &FiniteType) -> Result<Theorem, KernelError> {
    let gr = FiniteType::Ground;
    let f = Var::new("f", arrow(sigma, tau));
    let g = Var::new("g", arrow(sigma, tau));
    let x = Var::new("x", sigma.clone());
    let (fx, gx) = (Term::app(f.term(), x.term()), Term::app(g.term(), x.term()));
    let hyp = eq(&f.term(), &g.term())?;
    let goal = eq(&fx, &gx)?;
    let statement = Formula::foralls(&[f.clone(), g.clone(), x.clone()], Formula::imp(hyp.clone(), goal.clone()));
    let name = format!("cong_fun_{}_{}", sigma.slug(), tau.slug());
    let vars = [f.clone(), g.clone(), x.clone()];

    let b = Builder::new(vec![hyp]);
    let under = if tau.is_ground() {
        // t x f reduces to f x through q, s and k
        let tx = Term::app(t_comb(sigma, &gr), x.term());
        let mid = b.inst(&b.hyp(0)?, &tx)?;
        let i = identity(&gr);
        let g2g = arrow(&gr, &gr);
        let k1 = Term::k(&gr, &g2g);
        let k2 = Term::k(&gr, &gr);
        let reduce = |h: &Var, hx: &Term| -> Result<Line, KernelError> {
            let q = b.comb(CombAxiom::Q, &[sigma.clone(), gr.clone(), gr.clone()], &[i.clone(), x.term(), h.term()])?;
            let s = b.comb(CombAxiom::S, &[gr.clone(), g2g.clone(), gr.clone()], &[k1.clone(), k2.clone(), hx.clone()])?;
            let k = b.comb(CombAxiom::K, &[gr.clone(), g2g.clone()], &[hx.clone(), Term::app(k2.clone(), hx.clone())])?;
            b.chain(&[q, s, k])
        };
        let lf = reduce(&f, &fx)?;
        let lg = reduce(&g, &gx)?;
        b.chain(&[b.sym(&lf)?, mid, lg])?
    } else {
        let u = observer(&goal);
        let qux = Term::q(sigma, tau, &gr).apply([u.term(), x.term()]);
        let mid = b.inst(&b.hyp(0)?, &qux)?;
        let params = [sigma.clone(), tau.clone(), gr.clone()];
        let qf = b.comb(CombAxiom::Q, &params, &[u.term(), x.term(), f.term()])?;
        let qg = b.comb(CombAxiom::Q, &params, &[u.term(), x.term(), g.term()])?;
        let chain = b.chain(&[b.sym(&qf)?, mid, qg])?;
        b.gen(&u, &chain)?
    };
    let l = closed_line(&under, &b)?;
    theorem(name, &vars, &l, statement)
}

/// `all x. x =σ x`.
pub fn prove_eq_refl(sigma: &FiniteType) -> Result<Theorem, KernelError> {
    let x = Var::new("x", sigma.clone());
    let statement = Formula::forall(x.clone(), eq(&x.term(), &x.term())?);
    let name = format!("eq_refl_{}", sigma.slug());
    let b = Builder::new(Vec::new());
    let refl = b.axiom(Axiom::Eq0Refl)?;
    if sigma.is_ground() {
        return theorem(name, &[], &refl, statement);
    }
    let f = observer(&eq(&x.term(), &x.term())?);
    let l = b.inst(&refl, &Term::app(f.term(), x.term()))?;
    let l = b.gen(&f, &l)?;
    theorem(name, &[x], &l, statement)
}

/// `all x y. x =σ y -> y =σ x`.
pub fn prove_eq_sym(sigma: &FiniteType) -> Result<Theorem, KernelError> {
    let x = Var::new("x", sigma.clone());
    let y = Var::new("y", sigma.clone());
    let hyp = eq(&x.term(), &y.term())?;
    let goal = eq(&y.term(), &x.term())?;
    let statement = Formula::foralls(&[x.clone(), y.clone()], Formula::imp(hyp.clone(), goal.clone()));
    let name = format!("eq_sym_{}", sigma.slug());
    if sigma.is_ground() {
        let b = Builder::new(Vec::new());
        return theorem(name, &[], &b.axiom(Axiom::Eq0Sym)?, statement);
    }
    let b = Builder::new(vec![hyp]);
    let f = observer(&goal);
    let at = b.inst(&b.hyp(0)?, &f.term())?;
    let l = b.gen(&f, &b.sym(&at)?)?;
    let l = closed_line(&l, &b)?;
    theorem(name, &[x, y], &l, statement)
}

/// `all x y z. x =σ y & y =σ z -> x =σ z`.
pub fn prove_eq_trans(sigma: &FiniteType) -> Result<Theorem, KernelError> {
    let x = Var::new("x", sigma.clone());
    let y = Var::new("y", sigma.clone());
    let z = Var::new("z", sigma.clone());
    let xy = eq(&x.term(), &y.term())?;
    let yz = eq(&y.term(), &z.term())?;
    let goal = eq(&x.term(), &z.term())?;
    let hyp = Formula::and(xy.clone(), yz.clone());
    let statement = Formula::foralls(&[x.clone(), y.clone(), z.clone()], Formula::imp(hyp.clone(), goal.clone()));
    let name = format!("eq_trans_{}", sigma.slug());
    if sigma.is_ground() {
        let b = Builder::new(Vec::new());
        return theorem(name, &[], &b.axiom(Axiom::Eq0Trans)?, statement);
    }
    let b = Builder::new(vec![hyp]);
    let f = observer(&goal);
    let h = b.hyp(0)?;
    let left = b.mp(&b.axiom(Axiom::AndElimL { a: xy.clone(), b: yz.clone() })?, &h)?;
    let right = b.mp(&b.axiom(Axiom::AndElimR { a: xy, b: yz })?, &h)?;
    let l = b.trans(&b.inst(&left, &f.term())?, &b.inst(&right, &f.term())?)?;
    let l = closed_line(&b.gen(&f, &l)?, &b)?;
    theorem(name, &[x, y, z], &l, statement)
}

/// `all x y. (all f. f x == f y) -> x =σ y` at a higher type `σ`.
pub fn prove_obs(sigma: &FiniteType) -> Result<Theorem, KernelError> {
    if sigma.is_ground() {
        return Err(KernelError::Statement(
            "the observational principle is stated at higher types only".into(),
        ));
    }
    let x = Var::new("x", sigma.clone());
    let y = Var::new("y", sigma.clone());
    let f = Var::new("f", arrow(sigma, &FiniteType::Ground));
    let obs = Formula::forall(
        f.clone(),
        Formula::Eq0(Term::app(f.term(), x.term()), Term::app(f.term(), y.term())),
    );
    let goal = eq(&x.term(), &y.term())?;
    let statement = Formula::foralls(&[x.clone(), y.clone()], Formula::imp(obs.clone(), goal));
    let b = Builder::new(Vec::new());
    let l = b.adopt(Derivation::closed(imp_refl(&obs)))?;
    theorem(format!("obs_{}", sigma.slug()), &[x, y], &l, statement)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;

    fn scan(t: &Theorem) {
        for a in t.derivation.proof.axioms() {
            if let Axiom::Cong0 { f } = a {
                assert_eq!(f.type_of().unwrap(), arrow(&FiniteType::Ground, &FiniteType::Ground));
            }
        }
    }

    #[test]
    fn congruence_grid() {
        let types = Grid::Small.types();
        for s in &types {
            for t in &types {
                let a = prove_cong_arg(s, t).unwrap();
                a.check().unwrap();
                scan(&a);
                let f = prove_cong_fun(s, t).unwrap();
                f.check().unwrap();
                scan(&f);
            }
        }
    }

    #[test]
    fn cong_arg_ground_is_the_axiom() {
        let g = FiniteType::Ground;
        let t = prove_cong_arg(&g, &g).unwrap();
        assert_eq!(t.derivation.proof.size(), 1);
        assert_eq!(
            t.statement.to_string(),
            "all f:(0>0). all x:0. all y:0. x == y -> f x == f y"
        );
    }

    #[test]
    fn cong_arg_higher_result_uses_b() {
        let g = FiniteType::Ground;
        let t = prove_cong_arg(&g, &arrow(&g, &g)).unwrap();
        assert!(t.derivation.proof.axiom_ids().contains("comb-b"));
        let t = prove_cong_fun(&g, &arrow(&g, &g)).unwrap();
        assert!(t.derivation.proof.axiom_ids().contains("comb-q"));
        let t = prove_cong_fun(&g, &g).unwrap();
        let ids = t.derivation.proof.axiom_ids();
        for id in ["comb-q", "comb-s", "comb-k"] {
            assert!(ids.contains(id), "{}", id);
        }
    }

    #[test]
    fn equivalence_grid() {
        for s in Grid::Small.types() {
            prove_eq_refl(&s).unwrap();
            prove_eq_sym(&s).unwrap();
            prove_eq_trans(&s).unwrap();
        }
    }

    #[test]
    fn refl_at_arrow() {
        let t = prove_eq_refl(&arrow(&FiniteType::Ground, &FiniteType::Ground)).unwrap();
        assert_eq!(
            t.check().unwrap().conclusion().to_string(),
            "all x:(0>0). all f:((0>0)>0). f x == f x"
        );
    }

    #[test]
    fn obs_only_at_higher_types() {
        assert!(prove_obs(&FiniteType::Ground).is_err());
        for s in Grid::Small.higher_types() {
            prove_obs(&s).unwrap();
        }
    }
}
