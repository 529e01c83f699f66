//! The Dialectica translation `A  ~>  ex x. all y. A_D`.
//!
//! Quantifier-free formulas translate to themselves. For the rest, with
//! `A^D = ex x. all y. A_D` and `B^D = ex u. all v. B_D`:
//!
//! ```text
//! (A & B)^D    = ex x u. all y v. A_D & B_D
//! (A | B)^D    = ex d x u. all y v. (d == 0 -> A_D) & (not d == 0 -> B_D)
//! (all z. A)^D = ex X. all z y. A_D[X z / x]
//! (ex z. A)^D  = ex z x. all y. A_D
//! (A -> B)^D   = ex U Y. all x v. A_D[Y x v / y] -> B_D[U x / u]
//! ```
//!
//! Witness functionals take their arguments one at a time, so `X : z > x`
//! and `Y : x1 > ... > v1 > ... > y`.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;

use crate::grid::Grid;
use crate::kernel::{Axiom, CombAxiom};
use crate::logic::Formula;
use crate::syntax::{fresh_name, FiniteType, Term, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DialecticaForm {
    pub exists: Vec<Var>,
    pub forall: Vec<Var>,
    pub matrix: Formula,
}

impl DialecticaForm {
    /// `ex x. all y. A_D` as a formula.
    pub fn to_formula(&self) -> Formula {
        let inner = Formula::foralls(&self.forall, self.matrix.clone());
        self.exists
            .iter()
            .rev()
            .fold(inner, |acc, x| Formula::exists(x.clone(), acc))
    }
}

fn show_tuple(vs: &[Var]) -> String {
    if vs.is_empty() {
        "()".to_string()
    } else {
        vs.iter().map(|v| v.to_string()).join(", ")
    }
}

impl fmt::Display for DialecticaForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "exists: {}", show_tuple(&self.exists))?;
        writeln!(f, "forall: {}", show_tuple(&self.forall))?;
        write!(f, "matrix: {}", self.matrix)
    }
}

struct Names {
    claimed: BTreeSet<String>,
}

impl Names {
    fn claim(&mut self, base: &str) -> String {
        let n = if self.claimed.contains(base) || crate::syntax::is_reserved(base) {
            fresh_name(base, |n| self.claimed.contains(n))
        } else {
            base.to_string()
        };
        self.claimed.insert(n.clone());
        n
    }

    fn var(&mut self, base: &str, ty: FiniteType) -> Var {
        Var::new(&self.claim(base), ty)
    }
}

fn subst_all(matrix: &Formula, pairs: &[(Var, Term)]) -> Formula {
    // The matrix is quantifier-free, so plain replacement is capture-free.
    pairs.iter().fold(matrix.clone(), |acc, (x, t)| {
        let names = t.free_vars().iter().map(|v| v.name().to_string()).collect();
        acc.subst_unchecked(x, t, &names)
    })
}

fn upper(name: &str) -> String {
    let mut cs = name.chars();
    match cs.next() {
        Some(c) => c.to_uppercase().chain(cs).collect(),
        None => "W".into(),
    }
}

fn tr(phi: &Formula, names: &mut Names) -> DialecticaForm {
    if phi.is_quantifier_free() {
        return DialecticaForm {
            exists: Vec::new(),
            forall: Vec::new(),
            matrix: phi.clone(),
        };
    }
    match phi {
        Formula::Bottom | Formula::Eq0(..) => unreachable!("quantifier-free"),
        Formula::And(a, b) => {
            let da = tr(a, names);
            let db = tr(b, names);
            DialecticaForm {
                exists: [da.exists, db.exists].concat(),
                forall: [da.forall, db.forall].concat(),
                matrix: Formula::and(da.matrix, db.matrix),
            }
        }
        Formula::Or(a, b) => {
            let d = names.var("d", FiniteType::Ground);
            let da = tr(a, names);
            let db = tr(b, names);
            let is_zero = Formula::Eq0(d.term(), Term::zero());
            let matrix = Formula::and(
                Formula::imp(is_zero.clone(), da.matrix),
                Formula::imp(Formula::negation(is_zero), db.matrix),
            );
            let mut exists = vec![d];
            exists.extend(da.exists);
            exists.extend(db.exists);
            DialecticaForm {
                exists,
                forall: [da.forall, db.forall].concat(),
                matrix,
            }
        }
        Formula::Forall(z, body) | Formula::Exists(z, body) => {
            let (z, body) = claim_binder(z, body, names);
            let d = tr(&body, names);
            if matches!(phi, Formula::Exists(..)) {
                let mut exists = vec![z];
                exists.extend(d.exists);
                return DialecticaForm {
                    exists,
                    forall: d.forall,
                    matrix: d.matrix,
                };
            }
            let mut pairs = Vec::new();
            let mut exists = Vec::new();
            for x in &d.exists {
                let big = names.var(&upper(x.name()), FiniteType::arrow(z.ty().clone(), x.ty().clone()));
                pairs.push((x.clone(), Term::app(big.term(), z.term())));
                exists.push(big);
            }
            let mut forall = vec![z];
            forall.extend(d.forall);
            DialecticaForm {
                exists,
                forall,
                matrix: subst_all(&d.matrix, &pairs),
            }
        }
        Formula::Imp(a, b) => {
            let da = tr(a, names);
            let db = tr(b, names);
            let xs: Vec<Term> = da.exists.iter().map(Var::term).collect();
            let vs: Vec<Term> = db.forall.iter().map(Var::term).collect();
            let x_tys: Vec<FiniteType> = da.exists.iter().map(|v| v.ty().clone()).collect();
            let v_tys: Vec<FiniteType> = db.forall.iter().map(|v| v.ty().clone()).collect();
            let mut exists = Vec::new();
            let mut u_pairs = Vec::new();
            for u in &db.exists {
                let big = names.var(&upper(u.name()), FiniteType::curried(x_tys.iter().cloned(), u.ty().clone()));
                u_pairs.push((u.clone(), big.term().apply(xs.iter().cloned())));
                exists.push(big);
            }
            let mut y_pairs = Vec::new();
            for y in &da.forall {
                let ty = FiniteType::curried(x_tys.iter().chain(v_tys.iter()).cloned(), y.ty().clone());
                let big = names.var(&upper(y.name()), ty);
                y_pairs.push((y.clone(), big.term().apply(xs.iter().chain(vs.iter()).cloned())));
                exists.push(big);
            }
            let matrix = Formula::imp(subst_all(&da.matrix, &y_pairs), subst_all(&db.matrix, &u_pairs));
            DialecticaForm {
                exists,
                forall: [da.exists, db.forall].concat(),
                matrix,
            }
        }
    }
}

/// Claims a name for a binder, renaming it when the name is taken.
fn claim_binder(z: &Var, body: &Formula, names: &mut Names) -> (Var, Formula) {
    if !names.claimed.contains(z.name()) {
        names.claimed.insert(z.name().to_string());
        return (z.clone(), body.clone());
    }
    let mut taken = names.claimed.clone();
    taken.extend(body.names());
    let fresh = z.renamed(&fresh_name(z.name(), |n| taken.contains(n)));
    names.claimed.insert(fresh.name().to_string());
    let renamed = body.subst_unchecked(z, &fresh.term(), &BTreeSet::from([fresh.name().to_string()]));
    (fresh, renamed)
}

pub fn translate(phi: &Formula) -> DialecticaForm {
    let mut names = Names {
        claimed: phi.free_vars().iter().map(|v| v.name().to_string()).collect(),
    };
    tr(phi, &mut names)
}

/// No witnesses, and `all y. A_D` is `phi` up to the order of its prefix.
pub fn self_interpreted(phi: &Formula) -> bool {
    let d = translate(phi);
    if !d.exists.is_empty() {
        return false;
    }
    let (prefix, _) = phi.strip_foralls();
    if prefix.len() != d.forall.len() {
        return false;
    }
    let want: Vec<&FiniteType> = prefix.iter().map(Var::ty).collect();
    d.forall
        .iter()
        .permutations(d.forall.len())
        .filter(|p| p.iter().map(|v| v.ty()).eq(want.iter().copied()))
        .any(|p| {
            let vars: Vec<Var> = p.into_iter().cloned().collect();
            Formula::foralls(&vars, d.matrix.clone()).alpha_eq(phi)
        })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifyRow {
    pub schema: String,
    pub instance: String,
    pub universal: bool,
    pub self_interpreted: bool,
    pub expected: bool,
}

impl CertifyRow {
    pub fn passed(&self) -> bool {
        self.self_interpreted == self.expected
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CertifyReport {
    pub rows: Vec<CertifyRow>,
}

impl CertifyReport {
    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(CertifyRow::passed)
    }

    pub fn failures(&self) -> Vec<&CertifyRow> {
        self.rows.iter().filter(|r| !r.passed()).collect()
    }
}

fn row(schema: &str, instance: String, axiom: &Axiom, expected: bool) -> CertifyRow {
    let f = axiom.formula().expect("well-formed axiom instance");
    CertifyRow {
        schema: schema.to_string(),
        instance,
        universal: f.is_universal(),
        self_interpreted: self_interpreted(&f),
        expected,
    }
}

/// Every equality, congruence, successor and combinator axiom over the
/// grid must be self-interpreted; the induction schema must not be.
pub fn certify_axiom_base(grid: Grid) -> CertifyReport {
    let g = FiniteType::Ground;
    let g2g = FiniteType::arrow(g.clone(), g.clone());
    let mut rows = vec![
        row("eq-refl", String::new(), &Axiom::Eq0Refl, true),
        row("eq-sym", String::new(), &Axiom::Eq0Sym, true),
        row("eq-trans", String::new(), &Axiom::Eq0Trans, true),
        row("cong0", "f".into(), &Axiom::Cong0 { f: Term::var("f", g2g.clone()) }, true),
        row("cong0", "succ".into(), &Axiom::Cong0 { f: Term::succ() }, true),
        row("succ-nonzero", String::new(), &Axiom::SuccNonzero, true),
        row("succ-inj", String::new(), &Axiom::SuccInj, true),
    ];
    for c in CombAxiom::ALL {
        for ps in grid.tuples(c.arity()) {
            let inst = ps.iter().map(|t| t.to_string()).join(",");
            rows.push(row(c.id(), inst, &Axiom::comb(c, &ps), true));
        }
    }
    let x = Var::new("x", g);
    let induction = Axiom::Induction {
        var: x.clone(),
        body: Formula::Eq0(x.term(), x.term()),
    };
    rows.push(row("induction", "x == x".into(), &induction, false));
    CertifyReport { rows }
}
