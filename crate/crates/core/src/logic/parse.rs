//! Formula syntax.
//!
//! ```text
//! formula ::= "all" x ":" type "." formula | "ex" x ":" type "." formula
//!           | disj ["->" formula]
//! disj    ::= conj ("|" conj)*
//! conj    ::= unit ("&" unit)*
//! unit    ::= "bot" | term "==" term | term "=={" type "}" term
//!           | "(" formula ")" | quantified formula
//! ```
//!
//! `s =={T} t` is sugar for the equality macro at type `T`.

use crate::syntax::{
    elaborate, is_reserved, split_declarations, Context, FiniteType, ParseError, Parser, Tok, Var,
};

use super::{equality_view, Formula};

pub fn parse_formula(text: &str, ctx: &Context) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text)?;
    let f = formula_in_scope(&mut p, ctx)?;
    p.finish()?;
    Ok(f)
}

/// A formula file: `name : type` headers followed by one formula.
pub fn parse_formula_file(text: &str) -> Result<(Context, Formula), ParseError> {
    let (ctx, body) = split_declarations(text)?;
    let f = parse_formula(&body, &ctx)?;
    Ok((ctx, f))
}

/// Parses one formula from `p`, leaving any trailing tokens.
pub(crate) fn formula_in_scope(p: &mut Parser, ctx: &Context) -> Result<Formula, ParseError> {
    FormulaParser {
        p,
        ctx,
        bound: Vec::new(),
    }
    .formula()
}

struct FormulaParser<'a, 'b> {
    p: &'a mut Parser,
    ctx: &'b Context,
    bound: Vec<Var>,
}

impl FormulaParser<'_, '_> {
    fn formula(&mut self) -> Result<Formula, ParseError> {
        if let Some(q) = self.quantified()? {
            return Ok(q);
        }
        let lhs = self.disj()?;
        if self.p.eat(&Tok::Arrow) {
            let rhs = self.formula()?;
            Ok(Formula::imp(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn quantified(&mut self) -> Result<Option<Formula>, ParseError> {
        let universal = match self.p.peek() {
            Some(Tok::Ident(w)) if w == "all" => true,
            Some(Tok::Ident(w)) if w == "ex" => false,
            _ => return Ok(None),
        };
        self.p.bump();
        let pos = self.p.pos();
        let name = self.p.ident()?;
        if is_reserved(&name) {
            return Err(ParseError::syntax(pos, format!("`{}` is reserved", name)));
        }
        self.p.expect(&Tok::Colon)?;
        let ty = self.p.ty()?;
        self.p.expect(&Tok::Dot)?;
        let x = Var::new(&name, ty);
        self.bound.push(x.clone());
        let body = self.formula();
        self.bound.pop();
        let body = body?;
        Ok(Some(if universal {
            Formula::forall(x, body)
        } else {
            Formula::exists(x, body)
        }))
    }

    fn disj(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.conj()?;
        while self.p.eat(&Tok::Bar) {
            let g = self.conj()?;
            f = Formula::or(f, g);
        }
        Ok(f)
    }

    fn conj(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.unit()?;
        while self.p.eat(&Tok::Amp) {
            let g = self.unit()?;
            f = Formula::and(f, g);
        }
        Ok(f)
    }

    fn unit(&mut self) -> Result<Formula, ParseError> {
        if let Some(q) = self.quantified()? {
            return Ok(q);
        }
        if matches!(self.p.peek(), Some(Tok::Ident(w)) if w == "bot") {
            self.p.bump();
            return Ok(Formula::Bottom);
        }
        if self.p.peek() == Some(&Tok::LParen) {
            // `(` opens either a term or a formula; try the equation first.
            let mark = self.p.mark();
            let as_eq = self.equation();
            let eq_pos = self.p.pos();
            match as_eq {
                Ok(f) => return Ok(f),
                Err(e_eq) => {
                    self.p.reset(mark);
                    self.p.bump();
                    let inner = self.formula().and_then(|f| {
                        self.p.expect(&Tok::RParen)?;
                        Ok(f)
                    });
                    return match inner {
                        Ok(f) => Ok(f),
                        Err(e_f) => Err(if e_f.pos() >= eq_pos.max(e_eq.pos()) {
                            e_f
                        } else {
                            e_eq
                        }),
                    };
                }
            }
        }
        self.equation()
    }

    fn equation(&mut self) -> Result<Formula, ParseError> {
        let lhs_raw = self.p.raw_term()?;
        let pos = self.p.pos();
        self.p.expect(&Tok::EqEq)?;
        let at = if self.p.eat(&Tok::LBrace) {
            let t = self.p.ty()?;
            self.p.expect(&Tok::RBrace)?;
            Some(t)
        } else {
            None
        };
        let rhs_raw = self.p.raw_term()?;
        let bound = &self.bound;
        let ctx = self.ctx;
        let lookup = |n: &str| {
            bound
                .iter()
                .rev()
                .find(|v| v.name() == n)
                .cloned()
                .or_else(|| ctx.get(n))
        };
        let ground = FiniteType::Ground;
        let want = at.as_ref().unwrap_or(&ground);
        let lhs = elaborate(&lhs_raw, &lookup, Some(want))?;
        let rhs = elaborate(&rhs_raw, &lookup, Some(want))?;
        match at {
            None => Ok(Formula::Eq0(lhs, rhs)),
            Some(_) => equality_view(&lhs, &rhs)
                .map(|v| v.expansion)
                .map_err(|e| ParseError::syntax(pos, e.to_string())),
        }
    }
}
