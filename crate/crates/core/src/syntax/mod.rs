//! Finite types, typed combinatory terms and their typing discipline.
//!
//! Terms are binder-free: a term is a variable (which carries its own type),
//! a constant instance with explicit type parameters, or an application.
//! Every well-formed term has exactly one type, computed by [`Term::type_of`].

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

mod parse;

pub use parse::{parse_term, parse_term_file, parse_type, Context, ParseError};
pub(crate) use parse::{elaborate, split_declarations, Parser, Tok};

/// A finite type: the ground type `0`, function types and binary products.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum FiniteType {
    Ground,
    Arrow(Arc<FiniteType>, Arc<FiniteType>),
    Product(Arc<FiniteType>, Arc<FiniteType>),
}

impl FiniteType {
    pub fn arrow(domain: FiniteType, codomain: FiniteType) -> Self {
        FiniteType::Arrow(Arc::new(domain), Arc::new(codomain))
    }

    pub fn product(left: FiniteType, right: FiniteType) -> Self {
        FiniteType::Product(Arc::new(left), Arc::new(right))
    }

    /// `a1 -> (a2 -> ... -> result)`.
    pub fn curried<I>(args: I, result: FiniteType) -> Self
    where
        I: IntoIterator<Item = FiniteType>,
        I::IntoIter: DoubleEndedIterator,
    {
        args.into_iter()
            .rev()
            .fold(result, |acc, arg| FiniteType::arrow(arg, acc))
    }

    pub fn is_ground(&self) -> bool {
        matches!(self, FiniteType::Ground)
    }

    pub fn as_arrow(&self) -> Option<(&FiniteType, &FiniteType)> {
        match self {
            FiniteType::Arrow(d, c) => Some((d, c)),
            _ => None,
        }
    }

    pub fn as_product(&self) -> Option<(&FiniteType, &FiniteType)> {
        match self {
            FiniteType::Product(l, r) => Some((l, r)),
            _ => None,
        }
    }

    /// Filename-safe spelling, e.g. `arrow00` for `0 -> 0`.
    pub fn slug(&self) -> String {
        match self {
            FiniteType::Ground => "0".to_string(),
            FiniteType::Arrow(d, c) => format!("arrow{}{}", d.slug(), c.slug()),
            FiniteType::Product(l, r) => format!("prod{}{}", l.slug(), r.slug()),
        }
    }
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteType::Ground => write!(f, "0"),
            FiniteType::Arrow(d, c) => write!(f, "({}>{})", d, c),
            FiniteType::Product(l, r) => write!(f, "({}*{})", l, r),
        }
    }
}

/// The type algebra shared by concrete types and the parser's
/// inference types, so constant signatures are written once.
pub(crate) trait TypeAlgebra: Clone {
    fn ground() -> Self;
    fn arrow(d: Self, c: Self) -> Self;
    fn product(l: Self, r: Self) -> Self;
}

impl std::str::FromStr for FiniteType {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_type(s)
    }
}

impl TypeAlgebra for FiniteType {
    fn ground() -> Self {
        FiniteType::Ground
    }
    fn arrow(d: Self, c: Self) -> Self {
        FiniteType::arrow(d, c)
    }
    fn product(l: Self, r: Self) -> Self {
        FiniteType::product(l, r)
    }
}

/// A typed variable. Two variables are the same iff name and type agree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Var {
    name: Arc<str>,
    ty: FiniteType,
}

impl Var {
    pub fn new(name: &str, ty: FiniteType) -> Self {
        Var {
            name: Arc::from(name),
            ty,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ty(&self) -> &FiniteType {
        &self.ty
    }

    pub fn renamed(&self, name: &str) -> Self {
        Var::new(name, self.ty.clone())
    }

    pub fn term(&self) -> Term {
        Term::Var(self.clone())
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.name, self.ty)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum ConstTag {
    K,
    S,
    B,
    Q,
    P,
    P0,
    P1,
    Zero,
    Succ,
    R,
}

impl ConstTag {
    pub const ALL: [ConstTag; 10] = [
        ConstTag::K,
        ConstTag::S,
        ConstTag::B,
        ConstTag::Q,
        ConstTag::P,
        ConstTag::P0,
        ConstTag::P1,
        ConstTag::Zero,
        ConstTag::Succ,
        ConstTag::R,
    ];

    /// Number of type parameters.
    pub fn arity(self) -> usize {
        match self {
            ConstTag::K | ConstTag::P | ConstTag::P0 | ConstTag::P1 => 2,
            ConstTag::S | ConstTag::B | ConstTag::Q => 3,
            ConstTag::Zero | ConstTag::Succ => 0,
            ConstTag::R => 1,
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            ConstTag::K => "k",
            ConstTag::S => "s",
            ConstTag::B => "b",
            ConstTag::Q => "q",
            ConstTag::P => "p",
            ConstTag::P0 => "p0",
            ConstTag::P1 => "p1",
            ConstTag::Zero => "zero",
            ConstTag::Succ => "succ",
            ConstTag::R => "rec",
        }
    }

    pub fn from_keyword(word: &str) -> Option<ConstTag> {
        ConstTag::ALL.into_iter().find(|t| t.keyword() == word)
    }
}

impl fmt::Display for ConstTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// Words that can never name a variable.
pub const RESERVED: [&str; 13] = [
    "k", "s", "b", "q", "p", "p0", "p1", "zero", "succ", "rec", "all", "ex", "bot",
];

pub fn is_reserved(name: &str) -> bool {
    RESERVED.contains(&name)
}

pub(crate) fn signature<T: TypeAlgebra>(tag: ConstTag, params: &[T]) -> T {
    let arr = T::arrow;
    let p = |i: usize| params[i].clone();
    match tag {
        // k : s -> (t -> s)
        ConstTag::K => arr(p(0), arr(p(1), p(0))),
        // s : (r -> (s -> t)) -> ((r -> s) -> (r -> t))
        ConstTag::S => arr(
            arr(p(0), arr(p(1), p(2))),
            arr(arr(p(0), p(1)), arr(p(0), p(2))),
        ),
        // b : (s -> t) -> ((r -> s) -> (r -> t))
        ConstTag::B => arr(arr(p(1), p(2)), arr(arr(p(0), p(1)), arr(p(0), p(2)))),
        // q : (s -> t) -> (r -> ((r -> s) -> t))
        ConstTag::Q => arr(arr(p(1), p(2)), arr(p(0), arr(arr(p(0), p(1)), p(2)))),
        ConstTag::P => arr(p(0), arr(p(1), T::product(p(0), p(1)))),
        ConstTag::P0 => arr(T::product(p(0), p(1)), p(0)),
        ConstTag::P1 => arr(T::product(p(0), p(1)), p(1)),
        ConstTag::Zero => T::ground(),
        ConstTag::Succ => arr(T::ground(), T::ground()),
        // R : s -> ((0 -> (s -> s)) -> (0 -> s))
        ConstTag::R => arr(
            p(0),
            arr(arr(T::ground(), arr(p(0), p(0))), arr(T::ground(), p(0))),
        ),
    }
}

/// The declared type of a constant instance.
pub fn constant_signature(tag: ConstTag, params: &[FiniteType]) -> Result<FiniteType, TypingError> {
    if params.len() != tag.arity() {
        return Err(TypingError {
            kind: TypingErrorKind::Arity {
                tag,
                given: params.len(),
            },
            path: TermPath::default(),
            expected: None,
            actual: None,
        });
    }
    Ok(signature(tag, params))
}

/// A constant together with its (always explicit) type parameters.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Const {
    tag: ConstTag,
    params: Arc<[FiniteType]>,
}

impl Const {
    pub fn new(tag: ConstTag, params: Vec<FiniteType>) -> Result<Self, TypingError> {
        constant_signature(tag, &params)?;
        Ok(Const {
            tag,
            params: params.into(),
        })
    }

    pub fn tag(&self) -> ConstTag {
        self.tag
    }

    pub fn params(&self) -> &[FiniteType] {
        &self.params
    }

    pub fn signature(&self) -> FiniteType {
        signature(self.tag, &self.params)
    }
}

impl fmt::Display for Const {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag)?;
        if self.params.is_empty() {
            return Ok(());
        }
        write!(f, "{{")?;
        for (i, ty) in self.params.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", ty)?;
        }
        write!(f, "}}")
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Term {
    Var(Var),
    Const(Const),
    App(Arc<Term>, Arc<Term>),
}

impl Term {
    pub fn var(name: &str, ty: FiniteType) -> Self {
        Term::Var(Var::new(name, ty))
    }

    pub fn constant(tag: ConstTag, params: Vec<FiniteType>) -> Result<Self, TypingError> {
        Ok(Term::Const(Const::new(tag, params)?))
    }

    fn fixed(tag: ConstTag, params: &[&FiniteType]) -> Self {
        Term::Const(Const {
            tag,
            params: params.iter().map(|t| (*t).clone()).collect(),
        })
    }

    pub fn k(s: &FiniteType, t: &FiniteType) -> Self {
        Term::fixed(ConstTag::K, &[s, t])
    }

    pub fn s(r: &FiniteType, s: &FiniteType, t: &FiniteType) -> Self {
        Term::fixed(ConstTag::S, &[r, s, t])
    }

    pub fn b(r: &FiniteType, s: &FiniteType, t: &FiniteType) -> Self {
        Term::fixed(ConstTag::B, &[r, s, t])
    }

    pub fn q(r: &FiniteType, s: &FiniteType, t: &FiniteType) -> Self {
        Term::fixed(ConstTag::Q, &[r, s, t])
    }

    pub fn pair(r: &FiniteType, s: &FiniteType) -> Self {
        Term::fixed(ConstTag::P, &[r, s])
    }

    pub fn fst(r: &FiniteType, s: &FiniteType) -> Self {
        Term::fixed(ConstTag::P0, &[r, s])
    }

    pub fn snd(r: &FiniteType, s: &FiniteType) -> Self {
        Term::fixed(ConstTag::P1, &[r, s])
    }

    pub fn zero() -> Self {
        Term::fixed(ConstTag::Zero, &[])
    }

    pub fn succ() -> Self {
        Term::fixed(ConstTag::Succ, &[])
    }

    pub fn rec(s: &FiniteType) -> Self {
        Term::fixed(ConstTag::R, &[s])
    }

    /// Unchecked application; use [`Term::type_of`] to validate.
    pub fn app(fun: Term, arg: Term) -> Self {
        Term::App(Arc::new(fun), Arc::new(arg))
    }

    pub fn apply<I: IntoIterator<Item = Term>>(self, args: I) -> Self {
        args.into_iter().fold(self, Term::app)
    }

    pub fn type_of(&self) -> Result<FiniteType, TypingError> {
        let mut path = Vec::new();
        self.type_at(&mut path)
    }

    fn type_at(&self, path: &mut Vec<PathStep>) -> Result<FiniteType, TypingError> {
        match self {
            Term::Var(v) => Ok(v.ty.clone()),
            Term::Const(c) => Ok(c.signature()),
            Term::App(f, a) => {
                path.push(PathStep::Fun);
                let fun_ty = f.type_at(path)?;
                path.pop();
                let (dom, cod) = match &fun_ty {
                    FiniteType::Arrow(d, c) => (d, c),
                    _ => {
                        let mut at = path.clone();
                        at.push(PathStep::Fun);
                        return Err(TypingError {
                            kind: TypingErrorKind::NotAFunction,
                            path: TermPath(at),
                            expected: None,
                            actual: Some(fun_ty.clone()),
                        });
                    }
                };
                path.push(PathStep::Arg);
                let arg_ty = a.type_at(path)?;
                if &arg_ty != dom.as_ref() {
                    return Err(TypingError {
                        kind: TypingErrorKind::DomainMismatch,
                        path: TermPath(path.clone()),
                        expected: Some(dom.as_ref().clone()),
                        actual: Some(arg_ty),
                    });
                }
                path.pop();
                Ok(cod.as_ref().clone())
            }
        }
    }

    /// Head and arguments of an application spine: `h a1 ... an`.
    pub fn spine(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::new();
        let mut head = self;
        while let Term::App(f, a) = head {
            args.push(a.as_ref());
            head = f;
        }
        args.reverse();
        (head, args)
    }

    pub fn as_const(&self) -> Option<&Const> {
        match self {
            Term::Const(c) => Some(c),
            _ => None,
        }
    }

    pub fn as_var(&self) -> Option<&Var> {
        match self {
            Term::Var(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_const(&self, tag: ConstTag) -> bool {
        matches!(self, Term::Const(c) if c.tag == tag)
    }

    pub fn contains_var(&self, x: &Var) -> bool {
        match self {
            Term::Var(v) => v == x,
            Term::Const(_) => false,
            Term::App(f, a) => f.contains_var(x) || a.contains_var(x),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.visit_vars(&mut |v| {
            out.insert(v.clone());
        });
        out
    }

    /// Free variables in order of first occurrence, left to right.
    pub fn vars_in_order(&self) -> Vec<Var> {
        let mut out: Vec<Var> = Vec::new();
        self.visit_vars(&mut |v| {
            if !out.contains(v) {
                out.push(v.clone());
            }
        });
        out
    }

    pub(crate) fn visit_vars(&self, f: &mut impl FnMut(&Var)) {
        match self {
            Term::Var(v) => f(v),
            Term::Const(_) => {}
            Term::App(g, a) => {
                g.visit_vars(f);
                a.visit_vars(f);
            }
        }
    }

    /// Number of variable and constant occurrences.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Const(_) => 1,
            Term::App(f, a) => f.size() + a.size(),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v.name()),
            Term::Const(c) => write!(f, "{}", c),
            Term::App(g, a) => {
                write!(f, "{} ", g)?;
                if matches!(a.as_ref(), Term::App(..)) {
                    write!(f, "({})", a)
                } else {
                    write!(f, "{}", a)
                }
            }
        }
    }
}

/// `succ` applied `n` times to `zero`.
pub fn numeral(n: u64) -> Term {
    (0..n).fold(Term::zero(), |acc, _| Term::app(Term::succ(), acc))
}

/// Reads a numeral back, if the term is literally one.
pub fn as_numeral(t: &Term) -> Option<u64> {
    let mut n = 0;
    let mut cur = t;
    loop {
        match cur {
            Term::Const(c) if c.tag == ConstTag::Zero => return Some(n),
            Term::App(f, a) if f.is_const(ConstTag::Succ) => {
                n += 1;
                cur = a;
            }
            _ => return None,
        }
    }
}

/// Picks a name not satisfying `taken`, starting from `base` with any
/// numeric suffix stripped and then appending 1, 2, ...
pub fn fresh_name(base: &str, taken: impl Fn(&str) -> bool) -> String {
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
    let stem = if stem.is_empty() { "v" } else { stem };
    if !taken(stem) && !is_reserved(stem) {
        return stem.to_string();
    }
    (1..)
        .map(|i| format!("{}{}", stem, i))
        .find(|n| !taken(n) && !is_reserved(n))
        .expect("unbounded supply")
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum PathStep {
    Fun,
    Arg,
}

/// Location of a subterm, as a walk from the root.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct TermPath(pub Vec<PathStep>);

impl fmt::Display for TermPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "root")?;
        for step in &self.0 {
            match step {
                PathStep::Fun => write!(f, ".fun")?,
                PathStep::Arg => write!(f, ".arg")?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TypingErrorKind {
    Arity { tag: ConstTag, given: usize },
    DomainMismatch,
    NotAFunction,
    UnknownIdentifier(String),
}

impl fmt::Display for TypingErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypingErrorKind::Arity { tag, given } => write!(
                f,
                "`{}` takes {} type parameters, {} given",
                tag,
                tag.arity(),
                given
            ),
            TypingErrorKind::DomainMismatch => write!(f, "argument type does not match domain"),
            TypingErrorKind::NotAFunction => write!(f, "applying a term that is not a function"),
            TypingErrorKind::UnknownIdentifier(name) => write!(f, "unknown identifier `{}`", name),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub struct TypingError {
    pub kind: TypingErrorKind,
    pub path: TermPath,
    pub expected: Option<FiniteType>,
    pub actual: Option<FiniteType>,
}

impl fmt::Display for TypingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}", self.kind, self.path)?;
        if let Some(e) = &self.expected {
            write!(f, ", expected {}", e)?;
        }
        if let Some(a) = &self.actual {
            write!(f, ", found {}", a)?;
        }
        Ok(())
    }
}

impl TypingError {
    pub(crate) fn mismatch(expected: &FiniteType, actual: &FiniteType) -> Self {
        TypingError {
            kind: TypingErrorKind::DomainMismatch,
            path: TermPath::default(),
            expected: Some(expected.clone()),
            actual: Some(actual.clone()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g() -> FiniteType {
        FiniteType::Ground
    }

    fn g2g() -> FiniteType {
        FiniteType::arrow(g(), g())
    }

    #[test]
    fn signatures_match_constant_list() {
        let k = constant_signature(ConstTag::K, &[g(), g()]).unwrap();
        assert_eq!(k, FiniteType::arrow(g(), g2g()));

        let r = constant_signature(ConstTag::R, &[g()]).unwrap();
        let step = FiniteType::arrow(g(), g2g());
        assert_eq!(
            r,
            FiniteType::arrow(g(), FiniteType::arrow(step, g2g()))
        );

        let p0 = constant_signature(ConstTag::P0, &[g(), g2g()]).unwrap();
        assert_eq!(
            p0,
            FiniteType::arrow(FiniteType::product(g(), g2g()), g())
        );
        assert_eq!(p0.to_string(), "((0*(0>0))>0)");
    }

    #[test]
    fn arity_mismatch_is_reported() {
        let err = constant_signature(ConstTag::S, &[g(), g()]).unwrap_err();
        assert_eq!(
            err.kind,
            TypingErrorKind::Arity {
                tag: ConstTag::S,
                given: 2
            }
        );
    }

    #[test]
    fn succ_zero_has_ground_type() {
        let t = Term::app(Term::succ(), Term::zero());
        assert_eq!(t.type_of().unwrap(), g());
    }

    #[test]
    fn zero_is_not_a_function() {
        let t = Term::app(Term::zero(), Term::zero());
        let err = t.type_of().unwrap_err();
        assert_eq!(err.kind, TypingErrorKind::NotAFunction);
        assert_eq!(err.path, TermPath(vec![PathStep::Fun]));
        assert_eq!(err.actual, Some(g()));
    }

    #[test]
    fn domain_mismatch_points_at_argument() {
        let x = Term::var("x", g());
        let t = Term::app(Term::s(&g(), &g(), &g()), x);
        let err = t.type_of().unwrap_err();
        assert_eq!(err.kind, TypingErrorKind::DomainMismatch);
        assert_eq!(err.path, TermPath(vec![PathStep::Arg]));
        assert_eq!(err.actual, Some(g()));
    }

    #[test]
    fn skk_at_ground() {
        // s{0,0>0,0} k{0,0>0} k{0,0}
        let i = Term::s(&g(), &g2g(), &g())
            .apply([Term::k(&g(), &g2g()), Term::k(&g(), &g())]);
        assert_eq!(i.type_of().unwrap(), g2g());
    }

    #[test]
    fn numerals() {
        assert_eq!(numeral(0), Term::zero());
        assert_eq!(
            numeral(2),
            Term::app(Term::succ(), Term::app(Term::succ(), Term::zero()))
        );
        assert_eq!(numeral(7).type_of().unwrap(), g());
        assert_eq!(as_numeral(&numeral(13)), Some(13));
        assert_eq!(as_numeral(&Term::app(Term::succ(), Term::var("x", g()))), None);
    }

    #[test]
    fn variables_differ_by_type() {
        assert_ne!(Var::new("x", g()), Var::new("x", g2g()));
    }

    #[test]
    fn fresh_names_skip_reserved_and_taken() {
        assert_eq!(fresh_name("f", |_| false), "f");
        assert_eq!(fresh_name("f3", |n| n == "f"), "f1");
        assert_eq!(fresh_name("k", |_| false), "k1");
    }

    #[test]
    fn slugs() {
        assert_eq!(g2g().slug(), "arrow00");
        assert_eq!(FiniteType::arrow(g2g(), g()).slug(), "arrowarrow000");
        assert_eq!(FiniteType::product(g(), g()).slug(), "prod00");
    }
}
