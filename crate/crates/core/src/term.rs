//! Untyped term trees shared by every derivation grammar.
//!
//! A term is `head`, `head(t, ..)`, `head[p, ..]` or `head[p, ..](t, ..)`
//! where each parameter is a natural number or a formula. The infix form
//! `g . f` abbreviates `comp(f, g)` and associates to the right.

use std::fmt;

use crate::error::ParseError;
use crate::syntax::{Formula, Parser, Tok};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Param {
    Nat(usize),
    Formula(Formula),
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Nat(n) => write!(f, "{n}"),
            Param::Formula(a) => write!(f, "{a}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Term {
    pub head: String,
    pub params: Vec<Param>,
    pub args: Vec<Term>,
    /// Byte offset of the head in the source text.
    pub offset: usize,
}

impl Term {
    pub fn new(head: &str, params: Vec<Param>, args: Vec<Term>) -> Term {
        Term {
            head: head.to_string(),
            params,
            args,
            offset: 0,
        }
    }

    pub fn leaf(head: &str) -> Term {
        Term::new(head, vec![], vec![])
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.offset, msg)
    }

    /// Check the shape `head[params](args)` and return the parameters.
    pub fn expect_shape(&self, nparams: usize, nargs: usize) -> Result<&[Param], ParseError> {
        if self.params.len() != nparams {
            return Err(self.err(format!(
                "`{}` takes {} parameter(s), found {}",
                self.head,
                nparams,
                self.params.len()
            )));
        }
        if self.args.len() != nargs {
            return Err(self.err(format!(
                "`{}` takes {} argument(s), found {}",
                self.head,
                nargs,
                self.args.len()
            )));
        }
        Ok(&self.params)
    }

    pub fn nat_param(&self, i: usize) -> Result<usize, ParseError> {
        match self.params.get(i) {
            Some(Param::Nat(n)) => Ok(*n),
            _ => Err(self.err(format!(
                "`{}` expects a number at parameter {}",
                self.head, i
            ))),
        }
    }

    pub fn formula_param(&self, i: usize) -> Result<Formula, ParseError> {
        match self.params.get(i) {
            Some(Param::Formula(a)) => Ok(a.clone()),
            _ => Err(self.err(format!(
                "`{}` expects a formula at parameter {}",
                self.head, i
            ))),
        }
    }

    pub fn unknown(&self, calculus: &str) -> ParseError {
        self.err(format!("unknown {calculus} rule `{}`", self.head))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.head == "comp" && self.params.is_empty() && self.args.len() == 2 {
            let (first, second) = (&self.args[0], &self.args[1]);
            if second.head == "comp" && second.args.len() == 2 {
                write!(f, "({second}) . {first}")
            } else {
                write!(f, "{second} . {first}")
            }
        } else {
            f.write_str(&self.head)?;
            if !self.params.is_empty() {
                let ps: Vec<String> = self.params.iter().map(|p| p.to_string()).collect();
                write!(f, "[{}]", ps.join(", "))?;
            }
            if !self.args.is_empty() {
                let ts: Vec<String> = self.args.iter().map(|t| t.to_string()).collect();
                write!(f, "({})", ts.join(", "))?;
            }
            Ok(())
        }
    }
}

impl Parser {
    fn term(&mut self) -> Result<Term, ParseError> {
        let lhs = self.term_app()?;
        if self.peek() == Some(&Tok::Dot) {
            let at = self.offset();
            self.bump();
            let rhs = self.term()?;
            Ok(Term {
                head: "comp".to_string(),
                params: vec![],
                args: vec![rhs, lhs],
                offset: at,
            })
        } else {
            Ok(lhs)
        }
    }

    fn term_app(&mut self) -> Result<Term, ParseError> {
        let offset = self.offset();
        match self.peek() {
            Some(Tok::LParen) => {
                self.bump();
                let t = self.term()?;
                self.expect(&Tok::RParen)?;
                return Ok(t);
            }
            Some(Tok::Ident(_)) => {}
            _ => return Err(self.unexpected("a term")),
        }
        let Some(Tok::Ident(head)) = self.bump() else {
            unreachable!()
        };
        let mut params = Vec::new();
        if self.eat(&Tok::LBrack) {
            loop {
                if let Some(Tok::Nat(n)) = self.peek() {
                    let n = *n;
                    self.bump();
                    params.push(Param::Nat(n));
                } else {
                    params.push(Param::Formula(self.formula()?));
                }
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
            self.expect(&Tok::RBrack)?;
        }
        let mut args = Vec::new();
        if self.eat(&Tok::LParen) && !self.eat(&Tok::RParen) {
            loop {
                args.push(self.term()?);
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
            self.expect(&Tok::RParen)?;
        }
        Ok(Term {
            head,
            params,
            args,
            offset,
        })
    }
}

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(text)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    #[test]
    fn parses_params_and_args() {
        let t = parse_term("impL[2](pass(ax), ax)").unwrap();
        assert_eq!(t.head, "impL");
        assert_eq!(t.params, vec![Param::Nat(2)]);
        assert_eq!(t.args.len(), 2);
        assert_eq!(t.args[0].args[0].head, "ax");
        let t = parse_term("L[X, Y -o Z, X]").unwrap();
        assert_eq!(
            t.params[1],
            Param::Formula(parse_formula("Y -o Z").unwrap())
        );
        assert_eq!(parse_term("i'[X,Y](j[X])").unwrap().head, "i'");
    }

    #[test]
    fn infix_composition() {
        let t = parse_term("g . f").unwrap();
        assert_eq!(t.to_string(), "g . f");
        assert_eq!(t.head, "comp");
        assert_eq!(t.args[0].head, "f");
        let t = parse_term("h . g . f").unwrap();
        assert_eq!(t.args[0].head, "comp");
        assert_eq!(t.to_string(), "h . g . f");
        let t = parse_term("(h . g) . f").unwrap();
        assert_eq!(t.args[1].head, "comp");
        assert_eq!(t.to_string(), "(h . g) . f");
        assert_eq!(parse_term("comp(f, g)").unwrap().to_string(), "g . f");
    }

    #[test]
    fn errors_are_located() {
        let e = parse_term("pass(ax").unwrap_err();
        assert_eq!(e.offset, 7);
        let e = parse_term("impL[](ax)").unwrap_err();
        assert_eq!(e.offset, 5);
    }
}
