//! Discharging a hypothesis.
//!
//! `discharge(d, k)` turns a derivation of `C` under hypotheses `..., H, ...`
//! (with `H` at index `k`) into a derivation of `H -> C` without it. The
//! construction follows the proof tree:
//!
//! * a subproof that does not cite `H` is weakened with `impk`;
//! * `H` itself becomes `H -> H`;
//! * modus ponens is rebuilt with `imps`;
//! * `gen x` becomes `genimp x`, which needs `x` not free in `H`;
//! * `genimp` and `exelim` are moved past `H` by currying and permuting.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use super::{apply_rule, check, Axiom, CheckError, Derivation, Proof, Rule, Step};
use crate::logic::Formula;
use crate::syntax::Var;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DeductionError {
    #[error("input does not check: {0}")]
    Check(#[from] CheckError),
    #[error("no hypothesis {index} (only {len})")]
    NoSuchHyp { index: usize, len: usize },
    #[error("`{0}` is not among the hypotheses")]
    NotFound(Formula),
    #[error("generalized variable {var} is free in the discharged hypothesis `{hyp}`")]
    Eigenvariable { var: Var, hyp: Formula },
}

/// `A -> A`, from `imps` and two `impk`.
pub fn imp_refl(a: &Formula) -> Proof {
    let aa = Formula::imp(a.clone(), a.clone());
    let s = Proof::Axiom(Axiom::ImpS {
        a: a.clone(),
        b: aa.clone(),
        c: a.clone(),
    });
    let k1 = Proof::Axiom(Axiom::ImpK {
        a: a.clone(),
        b: aa,
    });
    let k2 = Proof::Axiom(Axiom::ImpK {
        a: a.clone(),
        b: a.clone(),
    });
    Proof::mp(Proof::mp(s, k1), k2)
}

fn discharge_all(hyps: Vec<Formula>, proof: Proof) -> Proof {
    let mut d = Derivation::new(hyps, proof);
    while !d.hyps.is_empty() {
        let last = d.hyps.len() - 1;
        d = discharge(&d, last).expect("helper lemma discharges");
    }
    d.proof
}

fn hyp(i: usize) -> Proof {
    Proof::Hyp(i)
}

/// `(A -> (B -> C)) -> (B -> (A -> C))`
fn permute(a: &Formula, b: &Formula, c: &Formula) -> Proof {
    let abc = Formula::imp(a.clone(), Formula::imp(b.clone(), c.clone()));
    let body = Proof::mp(Proof::mp(hyp(0), hyp(2)), hyp(1));
    discharge_all(vec![abc, b.clone(), a.clone()], body)
}

/// `((A & B) -> C) -> (A -> (B -> C))`
fn curry(a: &Formula, b: &Formula, c: &Formula) -> Proof {
    let abc = Formula::imp(Formula::and(a.clone(), b.clone()), c.clone());
    let intro = Proof::Axiom(Axiom::AndIntro {
        a: a.clone(),
        b: b.clone(),
    });
    let ab = Proof::mp(Proof::mp(intro, hyp(1)), hyp(2));
    discharge_all(vec![abc, a.clone(), b.clone()], Proof::mp(hyp(0), ab))
}

/// `(A -> (B -> C)) -> ((A & B) -> C)`
fn uncurry(a: &Formula, b: &Formula, c: &Formula) -> Proof {
    let abc = Formula::imp(a.clone(), Formula::imp(b.clone(), c.clone()));
    let l = Proof::mp(
        Proof::Axiom(Axiom::AndElimL {
            a: a.clone(),
            b: b.clone(),
        }),
        hyp(1),
    );
    let r = Proof::mp(
        Proof::Axiom(Axiom::AndElimR {
            a: a.clone(),
            b: b.clone(),
        }),
        hyp(1),
    );
    let body = Proof::mp(Proof::mp(hyp(0), l), r);
    discharge_all(vec![abc, Formula::and(a.clone(), b.clone())], body)
}

#[derive(Clone)]
struct Out {
    proof: Arc<Proof>,
    step: Step,
    /// Whether `proof` already concludes `H -> C`.
    discharged: bool,
}

struct Discharger<'a> {
    hyps: &'a [Formula],
    k: usize,
    h: Formula,
    memo: HashMap<*const Proof, Out>,
}

impl Discharger<'_> {
    fn rule(&self, r: Rule<'_>, premises: &[&Step]) -> Step {
        apply_rule(r, premises, self.hyps).expect("input was checked")
    }

    /// Brings a plain subproof of `C` to `H -> C`.
    fn lift(&self, o: &Out) -> Arc<Proof> {
        if o.discharged {
            return o.proof.clone();
        }
        let k = Proof::Axiom(Axiom::ImpK {
            a: o.step.concl.clone(),
            b: self.h.clone(),
        });
        Arc::new(Proof::Mp(Arc::new(k), o.proof.clone()))
    }

    fn eigen(&self, x: &Var) -> Result<(), DeductionError> {
        if self.h.has_free(x) {
            Err(DeductionError::Eigenvariable {
                var: x.clone(),
                hyp: self.h.clone(),
            })
        } else {
            Ok(())
        }
    }

    fn go(&mut self, p: &Proof) -> Result<Out, DeductionError> {
        let key = p as *const Proof;
        if let Some(o) = self.memo.get(&key) {
            return Ok(o.clone());
        }
        let out = match p {
            Proof::Axiom(a) => Out {
                proof: Arc::new(p.clone()),
                step: self.rule(Rule::Axiom(a), &[]),
                discharged: false,
            },
            Proof::Hyp(i) => {
                let step = self.rule(Rule::Hyp(*i), &[]);
                if *i == self.k {
                    Out {
                        proof: Arc::new(imp_refl(&self.h)),
                        step,
                        discharged: true,
                    }
                } else {
                    let j = if *i > self.k { i - 1 } else { *i };
                    Out {
                        proof: Arc::new(Proof::Hyp(j)),
                        step,
                        discharged: false,
                    }
                }
            }
            Proof::Mp(a, b) => {
                let oa = self.go(a)?;
                let ob = self.go(b)?;
                let step = self.rule(Rule::Mp, &[&oa.step, &ob.step]);
                if !oa.discharged && !ob.discharged {
                    Out {
                        proof: Arc::new(Proof::Mp(oa.proof, ob.proof)),
                        step,
                        discharged: false,
                    }
                } else {
                    let (ante, cons) = oa.step.concl.as_imp().expect("checked major premise");
                    let s = Proof::Axiom(Axiom::ImpS {
                        a: self.h.clone(),
                        b: ante.clone(),
                        c: cons.clone(),
                    });
                    let la = self.lift(&oa);
                    let lb = self.lift(&ob);
                    let inner = Proof::Mp(Arc::new(s), la);
                    Out {
                        proof: Arc::new(Proof::Mp(Arc::new(inner), lb)),
                        step,
                        discharged: true,
                    }
                }
            }
            Proof::Gen(x, q) => {
                let oq = self.go(q)?;
                let step = self.rule(Rule::Gen(x), &[&oq.step]);
                if oq.discharged {
                    self.eigen(x)?;
                    Out {
                        proof: Arc::new(Proof::GenImp(x.clone(), oq.proof)),
                        step,
                        discharged: true,
                    }
                } else {
                    Out {
                        proof: Arc::new(Proof::Gen(x.clone(), oq.proof)),
                        step,
                        discharged: false,
                    }
                }
            }
            Proof::GenImp(x, q) => {
                let oq = self.go(q)?;
                let step = self.rule(Rule::GenImp(x), &[&oq.step]);
                if oq.discharged {
                    self.eigen(x)?;
                    let (b, a) = oq.step.concl.as_imp().expect("checked premise");
                    // H -> (B -> A)  ~>  (H & B) -> A  ~>  (H & B) -> all x.A
                    let un = Proof::Mp(Arc::new(uncurry(&self.h, b, a)), oq.proof);
                    let gen = Proof::GenImp(x.clone(), Arc::new(un));
                    let all = Formula::forall(x.clone(), a.clone());
                    let cu = Proof::Mp(Arc::new(curry(&self.h, b, &all)), Arc::new(gen));
                    Out {
                        proof: Arc::new(cu),
                        step,
                        discharged: true,
                    }
                } else {
                    Out {
                        proof: Arc::new(Proof::GenImp(x.clone(), oq.proof)),
                        step,
                        discharged: false,
                    }
                }
            }
            Proof::ExElim(x, q) => {
                let oq = self.go(q)?;
                let step = self.rule(Rule::ExElim(x), &[&oq.step]);
                if oq.discharged {
                    self.eigen(x)?;
                    let (a, b) = oq.step.concl.as_imp().expect("checked premise");
                    // H -> (A -> B)  ~>  A -> (H -> B)  ~>  (ex x.A) -> (H -> B)
                    let p1 = Proof::Mp(Arc::new(permute(&self.h, a, b)), oq.proof);
                    let el = Proof::ExElim(x.clone(), Arc::new(p1));
                    let ex = Formula::exists(x.clone(), a.clone());
                    let p2 = Proof::Mp(Arc::new(permute(&ex, &self.h, b)), Arc::new(el));
                    Out {
                        proof: Arc::new(p2),
                        step,
                        discharged: true,
                    }
                } else {
                    Out {
                        proof: Arc::new(Proof::ExElim(x.clone(), oq.proof)),
                        step,
                        discharged: false,
                    }
                }
            }
        };
        self.memo.insert(key, out.clone());
        Ok(out)
    }
}

/// Removes hypothesis `k`, concluding `hyps[k] -> C`. Later hypotheses
/// shift down by one.
pub fn discharge(d: &Derivation, k: usize) -> Result<Derivation, DeductionError> {
    if k >= d.hyps.len() {
        return Err(DeductionError::NoSuchHyp {
            index: k,
            len: d.hyps.len(),
        });
    }
    check(d)?;
    let mut ds = Discharger {
        hyps: &d.hyps,
        k,
        h: d.hyps[k].clone(),
        memo: HashMap::new(),
    };
    let root = ds.go(&d.proof)?;
    let proof = ds.lift(&root);
    let mut hyps = d.hyps.clone();
    hyps.remove(k);
    Ok(Derivation::new(hyps, Arc::unwrap_or_clone(proof)))
}

/// Discharges the first hypothesis alpha-equal to `hyp`.
pub fn deduction(hyp: &Formula, d: &Derivation) -> Result<Derivation, DeductionError> {
    let k = d
        .hyps
        .iter()
        .position(|h| h.alpha_eq(hyp))
        .ok_or_else(|| DeductionError::NotFound(hyp.clone()))?;
    discharge(d, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{FiniteType, Term};

    fn atom(n: u64) -> Formula {
        Formula::Eq0(crate::syntax::numeral(n), crate::syntax::numeral(n))
    }

    #[test]
    fn identity() {
        let a = atom(1);
        let d = Derivation::new(vec![a.clone()], Proof::Hyp(0));
        let out = deduction(&a, &d).unwrap();
        assert!(out.hyps.is_empty());
        let j = check(&out).unwrap();
        assert_eq!(j.conclusion(), &Formula::imp(a.clone(), a));
    }

    #[test]
    fn twice_over_modus_ponens() {
        let (a, b) = (atom(1), atom(2));
        let ab = Formula::imp(a.clone(), b.clone());
        let d = Derivation::new(
            vec![ab.clone(), a.clone()],
            Proof::mp(Proof::Hyp(0), Proof::Hyp(1)),
        );
        let once = deduction(&a, &d).unwrap();
        assert_eq!(once.hyps, vec![ab.clone()]);
        assert_eq!(check(&once).unwrap().conclusion(), &ab);
        let twice = deduction(&ab, &once).unwrap();
        assert_eq!(
            check(&twice).unwrap().conclusion(),
            &Formula::imp(ab.clone(), ab)
        );
    }

    #[test]
    fn later_indices_shift() {
        let (a, b) = (atom(1), atom(2));
        let d = Derivation::new(vec![a.clone(), b.clone()], Proof::Hyp(1));
        let out = discharge(&d, 0).unwrap();
        assert_eq!(out.proof.axiom_ids().len(), 1);
        let j = check(&out).unwrap();
        assert_eq!(j.conclusion(), &Formula::imp(a, b.clone()));
        assert_eq!(out.hyps, vec![b]);
    }

    #[test]
    fn across_generalization() {
        // under a hypothesis without x, generalize a use of it
        let x = Var::new("x", FiniteType::Ground);
        let a = atom(3);
        let xx = Formula::Eq0(x.term(), x.term());
        // a -> (x == x) from efq-free route: impk on refl instance
        let refl_x = Proof::mp(
            Proof::Axiom(Axiom::ForallElim {
                var: x.clone(),
                body: xx.clone(),
                term: x.term(),
            }),
            Proof::Axiom(Axiom::Eq0Refl),
        );
        let with_h = Proof::mp(
            Proof::mp(
                Proof::Axiom(Axiom::ImpK {
                    a: Formula::imp(a.clone(), xx.clone()),
                    b: a.clone(),
                }),
                Proof::mp(
                    Proof::Axiom(Axiom::ImpK {
                        a: xx.clone(),
                        b: a.clone(),
                    }),
                    refl_x,
                ),
            ),
            Proof::Hyp(0),
        );
        // with_h : a -> (x == x), citing hyp a
        let body = Proof::mp(with_h, Proof::Hyp(0));
        let d = Derivation::new(vec![a.clone()], Proof::gen(x.clone(), body));
        let c = check(&d).unwrap().conclusion().clone();
        let out = discharge(&d, 0).unwrap();
        assert_eq!(check(&out).unwrap().conclusion(), &Formula::imp(a, c));
    }

    #[test]
    fn generalized_variable_free_in_hypothesis() {
        // The input itself violates the eigenvariable condition, so it
        // is rejected before any rewriting.
        let x = Var::new("x", FiniteType::Ground);
        let h = Formula::Eq0(x.term(), Term::zero());
        let d = Derivation::new(vec![h.clone()], Proof::gen(x, Proof::Hyp(0)));
        assert!(matches!(discharge(&d, 0), Err(DeductionError::Check(_))));
    }

    #[test]
    fn genimp_and_exelim_are_carried() {
        let x = Var::new("x", FiniteType::Ground);
        let h = atom(0);
        let xx = Formula::Eq0(x.term(), x.term());
        // weaken with h so that the genimp premise cites h
        let uses_h = Proof::mp(
            Proof::mp(
                Proof::Axiom(Axiom::ImpK {
                    a: Formula::imp(Formula::Bottom, xx.clone()),
                    b: h.clone(),
                }),
                Proof::Axiom(Axiom::ExFalso { a: xx.clone() }),
            ),
            Proof::Hyp(0),
        );
        let d = Derivation::new(vec![h.clone()], Proof::gen_imp(x.clone(), uses_h));
        let c = check(&d).unwrap().conclusion().clone();
        let out = discharge(&d, 0).unwrap();
        assert_eq!(check(&out).unwrap().conclusion(), &Formula::imp(h.clone(), c));

        // exelim: (x == x -> h) under h, then (ex x. x == x) -> h
        let xh = Proof::mp(
            Proof::Axiom(Axiom::ImpK {
                a: h.clone(),
                b: xx.clone(),
            }),
            Proof::Hyp(0),
        );
        let d = Derivation::new(vec![h.clone()], Proof::ex_elim(x, xh));
        let c = check(&d).unwrap().conclusion().clone();
        let out = discharge(&d, 0).unwrap();
        assert_eq!(check(&out).unwrap().conclusion(), &Formula::imp(h, c));
    }

    #[test]
    fn missing_hypothesis() {
        let d = Derivation::new(vec![atom(1)], Proof::Hyp(0));
        assert!(matches!(deduction(&atom(2), &d), Err(DeductionError::NotFound(_))));
        assert!(matches!(discharge(&d, 4), Err(DeductionError::NoSuchHyp { .. })));
    }
}
