//! Surface syntax for types and terms.
//!
//! ```text
//! type ::= "0" | "(" type ">" type ")" | "(" type "*" type ")"
//! term ::= ident | const ["{" type ("," type)* "}"] | term term | "(" term ")"
//! ```
//!
//! A constant written without braces has its type parameters inferred by
//! unification against the surrounding applications; parameters that no
//! application constrains default to `0`. The resulting AST always stores
//! them resolved.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::{
    signature, Const, ConstTag, FiniteType, Term, TypeAlgebra, TypingError, TypingErrorKind,
    TermPath, Var,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("type error near offset {pos}: {error}")]
    Type { pos: usize, error: TypingError },
    #[error("cannot infer types at offset {pos}: {msg}")]
    Inference { pos: usize, msg: String },
}

impl ParseError {
    pub(crate) fn syntax(pos: usize, msg: impl Into<String>) -> Self {
        ParseError::Syntax {
            pos,
            msg: msg.into(),
        }
    }

    pub fn pos(&self) -> usize {
        match self {
            ParseError::Syntax { pos, .. }
            | ParseError::Type { pos, .. }
            | ParseError::Inference { pos, .. } => *pos,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Num(u64),
    LBrace,
    RBrace,
    Comma,
    LParen,
    RParen,
    Gt,
    Star,
    Colon,
    Dot,
    EqEq,
    Amp,
    Bar,
    Arrow,
    Semi,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{}`", s),
            Tok::Num(n) => write!(f, "`{}`", n),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Gt => f.write_str("`>`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::EqEq => f.write_str("`==`"),
            Tok::Amp => f.write_str("`&`"),
            Tok::Bar => f.write_str("`|`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Semi => f.write_str("`;`"),
        }
    }
}

pub(crate) fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'#' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
                continue;
            }
            b'{' => out.push((Tok::LBrace, start)),
            b'}' => out.push((Tok::RBrace, start)),
            b',' => out.push((Tok::Comma, start)),
            b'(' => out.push((Tok::LParen, start)),
            b')' => out.push((Tok::RParen, start)),
            b'>' => out.push((Tok::Gt, start)),
            b'*' => out.push((Tok::Star, start)),
            b':' => out.push((Tok::Colon, start)),
            b'.' => out.push((Tok::Dot, start)),
            b'&' => out.push((Tok::Amp, start)),
            b'|' => out.push((Tok::Bar, start)),
            b';' => out.push((Tok::Semi, start)),
            b'=' if bytes.get(i + 1) == Some(&b'=') => {
                out.push((Tok::EqEq, start));
                i += 2;
                continue;
            }
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                out.push((Tok::Arrow, start));
                i += 2;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = text[start..i]
                    .parse()
                    .map_err(|_| ParseError::syntax(start, "number too large"))?;
                out.push((Tok::Num(n), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_' || bytes[i] == b'\'')
                {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(ParseError::syntax(start, format!("unexpected character `{}`", ch)));
            }
        }
        i += 1;
    }
    Ok(out)
}

/// Term syntax before name resolution and parameter inference.
#[derive(Clone, Debug)]
pub(crate) enum RawTerm {
    Var {
        name: String,
        pos: usize,
    },
    Const {
        tag: ConstTag,
        params: Option<Vec<FiniteType>>,
        pos: usize,
    },
    App(Box<RawTerm>, Box<RawTerm>, usize),
}

impl RawTerm {
    fn pos(&self) -> usize {
        match self {
            RawTerm::Var { pos, .. } | RawTerm::Const { pos, .. } | RawTerm::App(_, _, pos) => *pos,
        }
    }

    fn fully_annotated(&self) -> bool {
        match self {
            RawTerm::Var { .. } => true,
            RawTerm::Const { params, .. } => params.is_some(),
            RawTerm::App(f, a, _) => f.fully_annotated() && a.fully_annotated(),
        }
    }
}

const FORMULA_WORDS: [&str; 3] = ["all", "ex", "bot"];

pub(crate) struct Parser {
    toks: Vec<(Tok, usize)>,
    i: usize,
    eof: usize,
}

impl Parser {
    pub(crate) fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(text)?,
            i: 0,
            eof: text.len(),
        })
    }

    pub(crate) fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(t, _)| t)
    }

    pub(crate) fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.i + k).map(|(t, _)| t)
    }

    pub(crate) fn pos(&self) -> usize {
        self.toks.get(self.i).map(|(_, p)| *p).unwrap_or(self.eof)
    }

    pub(crate) fn mark(&self) -> usize {
        self.i
    }

    pub(crate) fn reset(&mut self, mark: usize) {
        self.i = mark;
    }

    pub(crate) fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.i).map(|(t, _)| t.clone());
        if t.is_some() {
            self.i += 1;
        }
        t
    }

    pub(crate) fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, tok: &Tok) -> Result<(), ParseError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.unexpected(&tok.to_string()))
        }
    }

    pub(crate) fn unexpected(&self, wanted: &str) -> ParseError {
        let found = match self.peek() {
            Some(t) => t.to_string(),
            None => "end of input".to_string(),
        };
        ParseError::syntax(self.pos(), format!("expected {}, found {}", wanted, found))
    }

    pub(crate) fn at_end(&self) -> bool {
        self.i >= self.toks.len()
    }

    pub(crate) fn finish(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    pub(crate) fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.i += 1;
                Ok(s)
            }
            _ => Err(self.unexpected("identifier")),
        }
    }

    pub(crate) fn ty(&mut self) -> Result<FiniteType, ParseError> {
        match self.peek() {
            Some(Tok::Num(0)) => {
                self.i += 1;
                Ok(FiniteType::Ground)
            }
            Some(Tok::LParen) => {
                self.i += 1;
                let left = self.ty()?;
                let t = if self.eat(&Tok::Gt) {
                    FiniteType::arrow(left, self.ty()?)
                } else if self.eat(&Tok::Star) {
                    FiniteType::product(left, self.ty()?)
                } else {
                    return Err(self.unexpected("`>` or `*`"));
                };
                self.expect(&Tok::RParen)?;
                Ok(t)
            }
            _ => Err(self.unexpected("type")),
        }
    }

    fn at_term_start(&self) -> bool {
        match self.peek() {
            Some(Tok::Ident(s)) => !FORMULA_WORDS.contains(&s.as_str()),
            Some(Tok::LParen) => true,
            _ => false,
        }
    }

    pub(crate) fn raw_term(&mut self) -> Result<RawTerm, ParseError> {
        let mut t = self.raw_atom()?;
        while self.at_term_start() {
            let pos = self.pos();
            let a = self.raw_atom()?;
            t = RawTerm::App(Box::new(t), Box::new(a), pos);
        }
        Ok(t)
    }

    fn raw_atom(&mut self) -> Result<RawTerm, ParseError> {
        let pos = self.pos();
        match self.peek() {
            Some(Tok::LParen) => {
                self.i += 1;
                let t = self.raw_term()?;
                self.expect(&Tok::RParen)?;
                Ok(t)
            }
            Some(Tok::Ident(name)) if !FORMULA_WORDS.contains(&name.as_str()) => {
                let name = name.clone();
                self.i += 1;
                match ConstTag::from_keyword(&name) {
                    Some(tag) => {
                        let params = if self.eat(&Tok::LBrace) {
                            let mut ps = Vec::new();
                            if !self.eat(&Tok::RBrace) {
                                loop {
                                    ps.push(self.ty()?);
                                    if self.eat(&Tok::RBrace) {
                                        break;
                                    }
                                    self.expect(&Tok::Comma)?;
                                }
                            }
                            Some(ps)
                        } else if tag.arity() == 0 {
                            Some(Vec::new())
                        } else {
                            None
                        };
                        Ok(RawTerm::Const { tag, params, pos })
                    }
                    None => Ok(RawTerm::Var { name, pos }),
                }
            }
            _ => Err(self.unexpected("term")),
        }
    }
}

/// Types of free variables available to the parser.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Context {
    vars: BTreeMap<String, FiniteType>,
}

impl Context {
    pub fn new() -> Self {
        Context::default()
    }

    pub fn from_vars<'a, I: IntoIterator<Item = &'a Var>>(vars: I) -> Result<Self, ParseError> {
        let mut ctx = Context::new();
        for v in vars {
            ctx.declare(v.name(), v.ty().clone())?;
        }
        Ok(ctx)
    }

    /// Redeclaring a name at the same type is a no-op; at a different
    /// type it is an error.
    pub fn declare(&mut self, name: &str, ty: FiniteType) -> Result<(), ParseError> {
        if super::is_reserved(name) {
            return Err(ParseError::syntax(0, format!("`{}` is reserved", name)));
        }
        match self.vars.get(name) {
            Some(old) if *old != ty => Err(ParseError::syntax(
                0,
                format!("`{}` declared at both {} and {}", name, old, ty),
            )),
            _ => {
                self.vars.insert(name.to_string(), ty);
                Ok(())
            }
        }
    }

    pub fn get(&self, name: &str) -> Option<Var> {
        self.vars.get(name).map(|ty| Var::new(name, ty.clone()))
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.vars.iter().map(|(n, t)| Var::new(n, t.clone()))
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }
}

pub fn parse_type(text: &str) -> Result<FiniteType, ParseError> {
    let mut p = Parser::new(text)?;
    let t = p.ty()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_term(text: &str, ctx: &Context) -> Result<Term, ParseError> {
    let mut p = Parser::new(text)?;
    let raw = p.raw_term()?;
    p.finish()?;
    elaborate(&raw, &|n| ctx.get(n), None)
}

/// Splits a file into `name : type` declaration lines and the remaining body.
/// `#` starts a comment.
pub(crate) fn split_declarations(text: &str) -> Result<(Context, String), ParseError> {
    let mut ctx = Context::new();
    let mut body = String::new();
    for line in text.lines() {
        let code = line.split('#').next().unwrap_or("");
        if code.trim().is_empty() {
            continue;
        }
        let mut p = Parser::new(code)?;
        let is_decl = matches!(p.peek(), Some(Tok::Ident(n)) if !super::is_reserved(n))
            && p.peek_at(1) == Some(&Tok::Colon);
        if is_decl {
            let name = p.ident()?;
            p.expect(&Tok::Colon)?;
            let ty = p.ty()?;
            p.finish()?;
            ctx.declare(&name, ty)?;
        } else {
            body.push_str(code);
            body.push('\n');
        }
    }
    Ok((ctx, body))
}

/// A term file: `name : type` headers followed by one term.
pub fn parse_term_file(text: &str) -> Result<(Context, Term), ParseError> {
    let (ctx, body) = split_declarations(text)?;
    let t = parse_term(&body, &ctx)?;
    Ok((ctx, t))
}

pub(crate) fn elaborate(
    raw: &RawTerm,
    lookup: &dyn Fn(&str) -> Option<Var>,
    expected: Option<&FiniteType>,
) -> Result<Term, ParseError> {
    if raw.fully_annotated() {
        let t = build_annotated(raw, lookup)?;
        let ty = t.type_of().map_err(|error| ParseError::Type {
            pos: raw.pos(),
            error,
        })?;
        if let Some(e) = expected {
            if &ty != e {
                return Err(ParseError::Type {
                    pos: raw.pos(),
                    error: TypingError::mismatch(e, &ty),
                });
            }
        }
        return Ok(t);
    }
    let mut inf = Inference::default();
    let (m, ty) = inf.infer(raw, lookup)?;
    if let Some(e) = expected {
        if !inf.unify(&ty, &MTy::from(e)) {
            return Err(ParseError::Inference {
                pos: raw.pos(),
                msg: format!("term has type {}, expected {}", inf.show(&ty), e),
            });
        }
    }
    inf.zonk_term(&m)
}

fn build_annotated(raw: &RawTerm, lookup: &dyn Fn(&str) -> Option<Var>) -> Result<Term, ParseError> {
    match raw {
        RawTerm::Var { name, pos } => lookup(name).map(Term::Var).ok_or_else(|| unknown(name, *pos)),
        RawTerm::Const { tag, params, pos } => {
            let params = params.clone().unwrap_or_default();
            Const::new(*tag, params)
                .map(Term::Const)
                .map_err(|error| ParseError::Type { pos: *pos, error })
        }
        RawTerm::App(f, a, _) => Ok(Term::app(
            build_annotated(f, lookup)?,
            build_annotated(a, lookup)?,
        )),
    }
}

fn unknown(name: &str, pos: usize) -> ParseError {
    ParseError::Type {
        pos,
        error: TypingError {
            kind: TypingErrorKind::UnknownIdentifier(name.to_string()),
            path: TermPath::default(),
            expected: None,
            actual: None,
        },
    }
}

#[derive(Clone, Debug)]
enum MTy {
    Meta(usize),
    Ground,
    Arrow(Box<MTy>, Box<MTy>),
    Product(Box<MTy>, Box<MTy>),
}

impl TypeAlgebra for MTy {
    fn ground() -> Self {
        MTy::Ground
    }
    fn arrow(d: Self, c: Self) -> Self {
        MTy::Arrow(Box::new(d), Box::new(c))
    }
    fn product(l: Self, r: Self) -> Self {
        MTy::Product(Box::new(l), Box::new(r))
    }
}

impl From<&FiniteType> for MTy {
    fn from(t: &FiniteType) -> Self {
        match t {
            FiniteType::Ground => MTy::Ground,
            FiniteType::Arrow(d, c) => MTy::arrow(MTy::from(d.as_ref()), MTy::from(c.as_ref())),
            FiniteType::Product(l, r) => {
                MTy::product(MTy::from(l.as_ref()), MTy::from(r.as_ref()))
            }
        }
    }
}

enum MTerm {
    Var(Var),
    Const {
        tag: ConstTag,
        params: Vec<MTy>,
        pos: usize,
    },
    App(Box<MTerm>, Box<MTerm>),
}

#[derive(Default)]
struct Inference {
    solution: Vec<Option<MTy>>,
}

impl Inference {
    fn fresh(&mut self) -> MTy {
        self.solution.push(None);
        MTy::Meta(self.solution.len() - 1)
    }

    fn shallow(&self, t: &MTy) -> MTy {
        let mut cur = t.clone();
        while let MTy::Meta(m) = cur {
            match &self.solution[m] {
                Some(s) => cur = s.clone(),
                None => break,
            }
        }
        cur
    }

    fn occurs(&self, m: usize, t: &MTy) -> bool {
        match self.shallow(t) {
            MTy::Meta(n) => n == m,
            MTy::Ground => false,
            MTy::Arrow(a, b) | MTy::Product(a, b) => self.occurs(m, &a) || self.occurs(m, &b),
        }
    }

    fn unify(&mut self, a: &MTy, b: &MTy) -> bool {
        match (self.shallow(a), self.shallow(b)) {
            (MTy::Meta(m), MTy::Meta(n)) if m == n => true,
            (MTy::Meta(m), t) | (t, MTy::Meta(m)) => {
                if self.occurs(m, &t) {
                    return false;
                }
                self.solution[m] = Some(t);
                true
            }
            (MTy::Ground, MTy::Ground) => true,
            (MTy::Arrow(a1, b1), MTy::Arrow(a2, b2))
            | (MTy::Product(a1, b1), MTy::Product(a2, b2)) => {
                self.unify(&a1, &a2) && self.unify(&b1, &b2)
            }
            _ => false,
        }
    }

    /// Parameters left unconstrained by unification do not affect the
    /// term's type; they default to `0`.
    fn zonk_or_ground(&self, t: &MTy) -> FiniteType {
        match self.shallow(t) {
            MTy::Meta(_) | MTy::Ground => FiniteType::Ground,
            MTy::Arrow(a, b) => FiniteType::arrow(self.zonk_or_ground(&a), self.zonk_or_ground(&b)),
            MTy::Product(a, b) => {
                FiniteType::product(self.zonk_or_ground(&a), self.zonk_or_ground(&b))
            }
        }
    }

    fn show(&self, t: &MTy) -> String {
        match self.shallow(t) {
            MTy::Meta(m) => format!("?{}", m),
            MTy::Ground => "0".to_string(),
            MTy::Arrow(a, b) => format!("({}>{})", self.show(&a), self.show(&b)),
            MTy::Product(a, b) => format!("({}*{})", self.show(&a), self.show(&b)),
        }
    }

    fn infer(
        &mut self,
        raw: &RawTerm,
        lookup: &dyn Fn(&str) -> Option<Var>,
    ) -> Result<(MTerm, MTy), ParseError> {
        match raw {
            RawTerm::Var { name, pos } => {
                let v = lookup(name).ok_or_else(|| unknown(name, *pos))?;
                let ty = MTy::from(v.ty());
                Ok((MTerm::Var(v), ty))
            }
            RawTerm::Const { tag, params, pos } => {
                let params: Vec<MTy> = match params {
                    Some(ps) => {
                        if ps.len() != tag.arity() {
                            return Err(ParseError::Type {
                                pos: *pos,
                                error: TypingError {
                                    kind: TypingErrorKind::Arity {
                                        tag: *tag,
                                        given: ps.len(),
                                    },
                                    path: TermPath::default(),
                                    expected: None,
                                    actual: None,
                                },
                            });
                        }
                        ps.iter().map(MTy::from).collect()
                    }
                    None => (0..tag.arity()).map(|_| self.fresh()).collect(),
                };
                let ty = signature(*tag, &params);
                Ok((
                    MTerm::Const {
                        tag: *tag,
                        params,
                        pos: *pos,
                    },
                    ty,
                ))
            }
            RawTerm::App(f, a, pos) => {
                let (mf, tf) = self.infer(f, lookup)?;
                let (ma, ta) = self.infer(a, lookup)?;
                let result = self.fresh();
                let want = MTy::arrow(ta.clone(), result.clone());
                if !self.unify(&tf, &want) {
                    return Err(ParseError::Inference {
                        pos: *pos,
                        msg: format!(
                            "cannot apply a term of type {} to an argument of type {}",
                            self.show(&tf),
                            self.show(&ta)
                        ),
                    });
                }
                Ok((MTerm::App(Box::new(mf), Box::new(ma)), result))
            }
        }
    }

    fn zonk_term(&self, m: &MTerm) -> Result<Term, ParseError> {
        match m {
            MTerm::Var(v) => Ok(Term::Var(v.clone())),
            MTerm::Const { tag, params, pos } => {
                let resolved: Vec<FiniteType> = params.iter().map(|p| self.zonk_or_ground(p)).collect();
                Const::new(*tag, resolved)
                    .map(Term::Const)
                    .map_err(|error| ParseError::Type { pos: *pos, error })
            }
            MTerm::App(f, a) => Ok(Term::app(self.zonk_term(f)?, self.zonk_term(a)?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g() -> FiniteType {
        FiniteType::Ground
    }

    fn ctx(decls: &[(&str, &str)]) -> Context {
        let mut c = Context::new();
        for (n, t) in decls {
            c.declare(n, parse_type(t).unwrap()).unwrap();
        }
        c
    }

    #[test]
    fn application_associates_left() {
        let c = ctx(&[("x", "0"), ("y", "0")]);
        let t = parse_term("k{0,0} x y", &c).unwrap();
        let expected = Term::app(
            Term::app(Term::k(&g(), &g()), Term::var("x", g())),
            Term::var("y", g()),
        );
        assert_eq!(t, expected);
        assert_eq!(expected.to_string(), "k{0,0} x y");
    }

    #[test]
    fn explicit_domain_mismatch_is_a_type_error() {
        let c = ctx(&[("x", "0")]);
        let err = parse_term("s{0,0,0} x", &c).unwrap_err();
        match err {
            ParseError::Type { error, .. } => {
                assert_eq!(error.kind, TypingErrorKind::DomainMismatch)
            }
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn infers_parameters_of_skk() {
        let c = ctx(&[("x", "0")]);
        let t = parse_term("s k k x", &c).unwrap();
        assert_eq!(t.to_string(), "s{0,(0>0),0} k{0,(0>0)} k{0,0} x");
        assert_eq!(t.type_of().unwrap(), g());
    }

    #[test]
    fn unconstrained_parameters_default_to_ground() {
        let t = parse_term("s k k", &Context::new()).unwrap();
        assert_eq!(t.to_string(), "s{0,(0>0),0} k{0,(0>0)} k{0,0}");
    }

    #[test]
    fn ill_typed_inferred_application() {
        let err = parse_term("succ (k zero)", &Context::new()).unwrap_err();
        assert!(matches!(err, ParseError::Inference { .. }), "{:?}", err);
    }

    #[test]
    fn unknown_identifier() {
        let err = parse_term("succ n", &Context::new()).unwrap_err();
        match err {
            ParseError::Type { error, pos } => {
                assert_eq!(pos, 5);
                assert_eq!(error.kind, TypingErrorKind::UnknownIdentifier("n".into()));
            }
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn syntax_error_has_position() {
        let err = parse_term("k{0,0 x", &Context::new()).unwrap_err();
        assert_eq!(err.pos(), 6);
    }

    #[test]
    fn types_round_trip() {
        for s in ["0", "(0>0)", "((0>0)>0)", "(0*(0>0))", "((0*0)>(0>0))"] {
            assert_eq!(parse_type(s).unwrap().to_string(), s);
        }
        assert!(parse_type("(0)").is_err());
        assert!(parse_type("1").is_err());
    }

    #[test]
    fn term_file_headers() {
        let text = "# the t combinator applied\nx : 0\ny : (0>0)\nq (s k k) x y\n";
        let (c, t) = parse_term_file(text).unwrap();
        assert_eq!(c.get("y").unwrap().ty(), &FiniteType::arrow(g(), g()));
        assert_eq!(t.type_of().unwrap(), g());
    }

    #[test]
    fn conflicting_declarations() {
        assert!(parse_term_file("x : 0\nx : (0>0)\nx").is_err());
        assert!(parse_term_file("k : 0\nzero").is_err());
    }
}
