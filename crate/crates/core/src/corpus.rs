//! Seeded random corpora: well-typed terms, β-law triples and
//! derivations under hypotheses.
//!
//! Everything is driven by a `ChaCha8Rng`, so a seed fixes the corpus on
//! every platform.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::kernel::{Axiom, Builder, CombAxiom, Derivation, Line};
use crate::logic::Formula;
use crate::syntax::{numeral, FiniteType, Term, Var};

fn g() -> FiniteType {
    FiniteType::Ground
}

fn arr(a: &FiniteType, b: &FiniteType) -> FiniteType {
    FiniteType::arrow(a.clone(), b.clone())
}

/// Type-directed generator of well-typed terms.
pub struct TermGenerator {
    rng: ChaCha8Rng,
    depth: u32,
    max_numeral: u64,
    env: Vec<Var>,
}

impl TermGenerator {
    pub fn new(seed: u64) -> Self {
        TermGenerator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            depth: 3,
            max_numeral: 3,
            env: Vec::new(),
        }
    }

    pub fn with_depth(mut self, depth: u32) -> Self {
        self.depth = depth;
        self
    }

    pub fn with_max_numeral(mut self, n: u64) -> Self {
        self.max_numeral = n;
        self
    }

    /// Variables that may appear free in generated terms.
    pub fn with_vars(mut self, vars: Vec<Var>) -> Self {
        self.env = vars;
        self
    }

    pub fn set_vars(&mut self, vars: Vec<Var>) {
        self.env = vars;
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A small type, `0` half of the time.
    pub fn random_type(&mut self) -> FiniteType {
        let g2g = arr(&g(), &g());
        match self.rng.gen_range(0..8) {
            0..=3 => g(),
            4 => g2g,
            5 => arr(&g2g, &g()),
            6 => FiniteType::product(g(), g()),
            _ => arr(&g(), &arr(&g(), &g())),
        }
    }

    /// Types used for hidden intermediate positions; kept tiny so terms
    /// stay small.
    fn mid_type(&mut self) -> FiniteType {
        if self.rng.gen_bool(0.7) {
            g()
        } else {
            arr(&g(), &g())
        }
    }

    pub fn term(&mut self, ty: &FiniteType) -> Term {
        let d = self.depth;
        self.gen(ty, d)
    }

    pub fn closed_term(&mut self) -> Term {
        let saved = std::mem::take(&mut self.env);
        let ty = self.random_type();
        let t = self.term(&ty);
        self.env = saved;
        t
    }

    fn var_of(&mut self, ty: &FiniteType) -> Option<Term> {
        let vs: Vec<&Var> = self.env.iter().filter(|v| v.ty() == ty).collect();
        vs.choose(&mut self.rng).map(|v| v.term())
    }

    /// A total fallback at depth zero.
    pub fn leaf(&mut self, ty: &FiniteType) -> Term {
        if self.rng.gen_bool(0.5) {
            if let Some(v) = self.var_of(ty) {
                return v;
            }
        }
        match ty {
            FiniteType::Ground => numeral(self.rng.gen_range(0..=self.max_numeral)),
            FiniteType::Arrow(a, c) => {
                if a.is_ground() && c.is_ground() && self.rng.gen_bool(0.3) {
                    return Term::succ();
                }
                let body = self.leaf(c);
                Term::app(Term::k(c, a), body)
            }
            FiniteType::Product(l, r) => {
                let (a, b) = (self.leaf(l), self.leaf(r));
                Term::pair(l, r).apply([a, b])
            }
        }
    }

    fn gen(&mut self, ty: &FiniteType, depth: u32) -> Term {
        if depth == 0 {
            return self.leaf(ty);
        }
        let d = depth - 1;
        let choice = self.rng.gen_range(0..12);
        match choice {
            0 => self.var_of(ty).unwrap_or_else(|| self.leaf(ty)),
            1 => {
                let s = self.mid_type();
                let (a, b) = (self.gen(ty, d), self.gen(&s, d));
                Term::k(ty, &s).apply([a, b])
            }
            2 => {
                let (r, s) = (self.mid_type(), self.mid_type());
                let x = self.gen(&arr(&r, &arr(&s, ty)), d);
                let y = self.gen(&arr(&r, &s), d);
                let z = self.gen(&r, d);
                Term::s(&r, &s, ty).apply([x, y, z])
            }
            3 => {
                let (r, s) = (self.mid_type(), self.mid_type());
                let x = self.gen(&arr(&s, ty), d);
                let y = self.gen(&arr(&r, &s), d);
                let z = self.gen(&r, d);
                Term::b(&r, &s, ty).apply([x, y, z])
            }
            4 => {
                let (r, s) = (self.mid_type(), self.mid_type());
                let x = self.gen(&arr(&s, ty), d);
                let y = self.gen(&r, d);
                let z = self.gen(&arr(&r, &s), d);
                Term::q(&r, &s, ty).apply([x, y, z])
            }
            5 => {
                let s = self.mid_type();
                let pr = self.gen(&FiniteType::product(ty.clone(), s.clone()), d);
                Term::app(Term::fst(ty, &s), pr)
            }
            6 => {
                let s = self.mid_type();
                let pr = self.gen(&FiniteType::product(s.clone(), ty.clone()), d);
                Term::app(Term::snd(&s, ty), pr)
            }
            7 => {
                let x = self.gen(ty, d);
                let y = self.gen(&arr(&g(), &arr(ty, ty)), d);
                let n = if self.rng.gen_bool(0.7) {
                    numeral(self.rng.gen_range(0..=self.max_numeral))
                } else {
                    self.gen(&g(), d)
                };
                Term::rec(ty).apply([x, y, n])
            }
            8 => {
                let s = self.mid_type();
                let f = self.gen(&arr(&s, ty), d);
                let a = self.gen(&s, d);
                Term::app(f, a)
            }
            _ => self.intro(ty, d),
        }
    }

    /// Forms whose head matches the shape of `ty`.
    fn intro(&mut self, ty: &FiniteType, d: u32) -> Term {
        match ty {
            FiniteType::Ground => {
                if self.rng.gen_bool(0.5) {
                    Term::app(Term::succ(), self.gen(ty, d))
                } else {
                    numeral(self.rng.gen_range(0..=self.max_numeral))
                }
            }
            FiniteType::Product(l, r) => {
                let (a, b) = (self.gen(l, d), self.gen(r, d));
                Term::pair(l, r).apply([a, b])
            }
            FiniteType::Arrow(a, c) => {
                let s = self.mid_type();
                match self.rng.gen_range(0..5) {
                    0 => Term::app(Term::k(c, a), self.gen(c, d)),
                    1 => {
                        let x = self.gen(&arr(a, &arr(&s, c)), d);
                        let y = self.gen(&arr(a, &s), d);
                        Term::s(a, &s, c).apply([x, y])
                    }
                    2 => {
                        let x = self.gen(&arr(&s, c), d);
                        let y = self.gen(&arr(a, &s), d);
                        Term::b(a, &s, c).apply([x, y])
                    }
                    3 if a.is_ground() => {
                        let x = self.gen(c, d);
                        let y = self.gen(&arr(&g(), &arr(c, c)), d);
                        Term::rec(c).apply([x, y])
                    }
                    _ => match a.as_arrow() {
                        // q x y : (r > s) > t
                        Some((r, s)) => {
                            let x = self.gen(&arr(s, c), d);
                            let y = self.gen(r, d);
                            Term::q(r, s, c).apply([x, y])
                        }
                        None => Term::app(Term::k(c, a), self.gen(c, d)),
                    },
                }
            }
        }
    }
}

/// An instance of the β-law: `(λ*x. body) arg` against `body[arg/x]`.
#[derive(Clone, Debug)]
pub struct BetaCase {
    pub var: Var,
    pub body: Term,
    pub arg: Term,
}

/// `n` β-law triples. Bodies may mention `x` and one other free variable.
pub fn beta_corpus(seed: u64, n: usize) -> Vec<BetaCase> {
    let mut gen = TermGenerator::new(seed);
    (0..n)
        .map(|_| {
            let sigma = gen.random_type();
            let x = Var::new("x", sigma.clone());
            let y = Var::new("y", gen.random_type());
            gen.set_vars(Vec::new());
            let arg = gen.term(&sigma);
            gen.set_vars(vec![x.clone(), x.clone(), y]);
            let ty = gen.random_type();
            let body = gen.term(&ty);
            BetaCase { var: x, body, arg }
        })
        .collect()
}

/// `n` closed well-typed terms.
pub fn closed_corpus(seed: u64, n: usize) -> Vec<Term> {
    let mut gen = TermGenerator::new(seed);
    (0..n).map(|_| gen.closed_term()).collect()
}

/// Random derivations under a small list of hypotheses, built forward
/// from a pool of lines.
pub struct DerivationGenerator {
    rng: ChaCha8Rng,
    terms: TermGenerator,
    steps: usize,
}

fn ground(name: &str) -> Var {
    Var::new(name, g())
}

impl DerivationGenerator {
    pub fn new(seed: u64) -> Self {
        let vars = vec![
            ground("a"),
            ground("c"),
            ground("e"),
            Var::new("f", arr(&g(), &g())),
        ];
        DerivationGenerator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            terms: TermGenerator::new(seed ^ 0x5eed).with_depth(1).with_vars(vars),
            steps: 12,
        }
    }

    fn atom(&mut self) -> Formula {
        let l = self.terms.term(&g());
        let r = self.terms.term(&g());
        Formula::Eq0(l, r)
    }

    fn formula(&mut self, depth: u32) -> Formula {
        if depth == 0 {
            return self.atom();
        }
        match self.rng.gen_range(0..6) {
            0 | 1 => self.atom(),
            2 => Formula::imp(self.formula(depth - 1), self.formula(depth - 1)),
            3 => Formula::and(self.formula(depth - 1), self.formula(depth - 1)),
            4 => Formula::or(self.formula(depth - 1), self.formula(depth - 1)),
            _ => {
                let body = self.formula(depth - 1);
                Formula::forall(ground("a"), body)
            }
        }
    }

    fn hyps(&mut self) -> Vec<Formula> {
        let n = self.rng.gen_range(1..=3);
        let mut hs: Vec<Formula> = (0..n).map(|_| self.formula(1)).collect();
        // Something to apply modus ponens to.
        if self.rng.gen_bool(0.6) {
            let a = hs[0].clone();
            let b = self.formula(1);
            hs.push(Formula::imp(a, b));
        }
        hs
    }

    pub fn derivation(&mut self) -> Derivation {
        let hyps = self.hyps();
        let bld = Builder::new(hyps.clone());
        let mut pool: Vec<_> = (0..hyps.len()).filter_map(|i| bld.hyp(i).ok()).collect();
        if let Ok(refl) = bld.axiom(Axiom::Eq0Refl) {
            let t = self.terms.term(&g());
            if let Ok(l) = bld.inst(&refl, &t) {
                pool.push(l);
            }
        }
        if let Ok(k) = bld.comb(CombAxiom::K, &[g(), g()], &[Term::var("a", g()), Term::var("c", g())]) {
            pool.push(k);
        }
        for _ in 0..self.steps {
            if let Some(l) = self.extend(&bld, &pool) {
                pool.push(l);
            }
        }
        // Prefer a conclusion that depends on some hypothesis.
        let used: Vec<_> = pool.iter().filter(|l| !l.step.used.is_empty()).collect();
        let last = used.last().copied().unwrap_or_else(|| pool.last().expect("nonempty pool"));
        bld.derivation(last)
    }

    fn free_ground(&mut self, f: &Formula) -> Var {
        let vs: Vec<Var> = f.free_vars().into_iter().collect();
        match vs.choose(&mut self.rng) {
            Some(v) if self.rng.gen_bool(0.7) => v.clone(),
            _ => ground("w"),
        }
    }

    fn extend(&mut self, bld: &Builder, pool: &[Line]) -> Option<Line> {
        let pick = |rng: &mut ChaCha8Rng| pool.choose(rng).expect("nonempty pool").clone();
        let l = pick(&mut self.rng);
        match self.rng.gen_range(0..9) {
            0 => {
                let other = pick(&mut self.rng).concl().clone();
                let ax = bld
                    .axiom(Axiom::ImpK {
                        a: l.concl().clone(),
                        b: other,
                    })
                    .ok()?;
                bld.mp(&ax, &l).ok()
            }
            1 => {
                let m = pick(&mut self.rng);
                let ax = bld
                    .axiom(Axiom::AndIntro {
                        a: l.concl().clone(),
                        b: m.concl().clone(),
                    })
                    .ok()?;
                bld.mp(&bld.mp(&ax, &l).ok()?, &m).ok()
            }
            2 => {
                let Formula::And(a, b) = l.concl() else { return None };
                let ax = if self.rng.gen_bool(0.5) {
                    Axiom::AndElimL { a: (**a).clone(), b: (**b).clone() }
                } else {
                    Axiom::AndElimR { a: (**a).clone(), b: (**b).clone() }
                };
                bld.mp(&bld.axiom(ax).ok()?, &l).ok()
            }
            3 | 4 => {
                let (a, _) = l.concl().as_imp()?;
                let m = pool.iter().find(|m| m.concl().alpha_eq(a))?;
                bld.mp(&l, m).ok()
            }
            5 => {
                let x = self.free_ground(l.concl());
                bld.gen(&x, &l).ok()
            }
            6 => {
                let (b, a) = l.concl().as_imp()?;
                let x = self.free_ground(a);
                if b.has_free(&x) {
                    return None;
                }
                bld.gen_imp(&x, &l).ok()
            }
            7 => {
                let (a, b) = l.concl().as_imp()?;
                let x = self.free_ground(a);
                if b.has_free(&x) {
                    return None;
                }
                bld.ex_elim(&x, &l).ok()
            }
            _ => {
                if let Some((x, _)) = l.concl().as_forall() {
                    let t = self.terms.term(x.ty());
                    return bld.inst(&l, &t).ok();
                }
                let x = self.free_ground(l.concl());
                let ax = bld
                    .axiom(Axiom::ExistsIntro {
                        var: x.clone(),
                        body: l.concl().clone(),
                        term: x.term(),
                    })
                    .ok()?;
                bld.mp(&ax, &l).ok()
            }
        }
    }
}

/// `n` derivations, each with at least one hypothesis.
pub fn derivation_corpus(seed: u64, n: usize) -> Vec<Derivation> {
    let mut gen = DerivationGenerator::new(seed);
    (0..n).map(|_| gen.derivation()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::check;
    use crate::reduction::normal_form;

    #[test]
    fn terms_are_well_typed() {
        let mut gen = TermGenerator::new(7);
        for _ in 0..300 {
            let ty = gen.random_type();
            let t = gen.term(&ty);
            assert_eq!(t.type_of().unwrap(), ty, "{}", t);
        }
    }

    #[test]
    fn closed_terms_are_closed_and_normalize() {
        for t in closed_corpus(3, 200) {
            assert!(t.free_vars().is_empty());
            normal_form(&t).unwrap();
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let a: Vec<String> = closed_corpus(11, 20).iter().map(|t| t.to_string()).collect();
        let b: Vec<String> = closed_corpus(11, 20).iter().map(|t| t.to_string()).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn beta_cases_are_typed() {
        for c in beta_corpus(5, 100) {
            assert_eq!(c.arg.type_of().unwrap(), *c.var.ty());
            c.body.type_of().unwrap();
            assert!(c.arg.free_vars().is_empty());
        }
    }

    #[test]
    fn derivations_check() {
        let ds = derivation_corpus(1, 100);
        let mut using = 0;
        for d in &ds {
            let j = check(d).unwrap();
            if !j.used_hyps().is_empty() {
                using += 1;
            }
        }
        assert!(using > 50, "{}", using);
    }
}
