//! Formulae, sequents and their concrete syntax.
//!
//! Formulae are built from atoms with a single right implication `-o`
//! (also accepted as `⊸` on input). Sequents are written
//! `Stoup | Ctx |- F` where the stoup is either `-` or a formula:
//!
//! ```text
//! X | |- X
//! - | X -o Y, X |- Y
//! (X -o Y) -o (X -o Z) | X -o Y, X -o X, X |- Z
//! ```

use std::fmt;
use std::sync::Arc;

use crate::error::ParseError;

/// Atom names are shared strings; there is no fixed atom universe.
pub type Atom = Arc<str>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Formula {
    Atom(Atom),
    Imp(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(Arc::from(name))
    }

    pub fn imp(antecedent: Formula, consequent: Formula) -> Formula {
        Formula::Imp(Box::new(antecedent), Box::new(consequent))
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Formula::Atom(_))
    }

    pub fn as_imp(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Imp(a, b) => Some((a, b)),
            Formula::Atom(_) => None,
        }
    }

    /// Number of atom occurrences plus number of implications.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) => 1,
            Formula::Imp(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Nesting depth of implications; atoms have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::Imp(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    pub fn atoms(&self, out: &mut Vec<Atom>) {
        match self {
            Formula::Atom(x) => {
                if !out.contains(x) {
                    out.push(x.clone());
                }
            }
            Formula::Imp(a, b) => {
                a.atoms(out);
                b.atoms(out);
            }
        }
    }

    /// All subformulae, each listed once, in pre-order.
    pub fn subformulas(&self, out: &mut Vec<Formula>) {
        if !out.contains(self) {
            out.push(self.clone());
        }
        if let Formula::Imp(a, b) = self {
            a.subformulas(out);
            b.subformulas(out);
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(x) => write!(f, "{x}"),
            Formula::Imp(a, b) => {
                if a.is_atomic() {
                    write!(f, "{a} -o {b}")
                } else {
                    write!(f, "({a}) -o {b}")
                }
            }
        }
    }
}

/// The stoup: an optional formula.
pub type Stoup = Option<Formula>;

/// An ordered list of formulae.
pub type Context = Vec<Formula>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Sequent {
    pub stoup: Stoup,
    pub context: Context,
    pub succedent: Formula,
}

impl Sequent {
    pub fn new(stoup: Stoup, context: Context, succedent: Formula) -> Self {
        Sequent {
            stoup,
            context,
            succedent,
        }
    }

    /// Total formula size of stoup, context and succedent.
    pub fn size(&self) -> usize {
        self.stoup.as_ref().map_or(0, Formula::size)
            + self.context.iter().map(Formula::size).sum::<usize>()
            + self.succedent.size()
    }

    pub fn atoms(&self) -> Vec<Atom> {
        let mut out = Vec::new();
        if let Some(a) = &self.stoup {
            a.atoms(&mut out);
        }
        for a in &self.context {
            a.atoms(&mut out);
        }
        self.succedent.atoms(&mut out);
        out
    }

    pub fn subformulas(&self) -> Vec<Formula> {
        let mut out = Vec::new();
        if let Some(a) = &self.stoup {
            a.subformulas(&mut out);
        }
        for a in &self.context {
            a.subformulas(&mut out);
        }
        self.succedent.subformulas(&mut out);
        out
    }
}

pub fn print_stoup(s: &Stoup) -> String {
    match s {
        None => "-".to_string(),
        Some(a) => a.to_string(),
    }
}

pub fn print_context(ctx: &[Formula]) -> String {
    ctx.iter()
        .map(|a| a.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} |", print_stoup(&self.stoup))?;
        if !self.context.is_empty() {
            write!(f, " {}", print_context(&self.context))?;
        }
        write!(f, " |- {}", self.succedent)
    }
}

pub fn print_formula(f: &Formula) -> String {
    f.to_string()
}

pub fn print_sequent(s: &Sequent) -> String {
    s.to_string()
}

/// Phase annotations of the focused and normal natural deduction calculi.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Phase {
    I,
    P,
    F,
    Nf,
    Pn,
    Ne,
}

impl Phase {
    /// Phases whose sequents always carry a formula in the stoup.
    pub fn requires_stoup(self) -> bool {
        matches!(self, Phase::F | Phase::Ne)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Phase::I => "I",
            Phase::P => "P",
            Phase::F => "F",
            Phase::Nf => "nf",
            Phase::Pn => "p",
            Phase::Ne => "ne",
        };
        f.write_str(s)
    }
}

// ---------------------------------------------------------------------------
// Lexing

#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) enum Tok {
    Ident(String),
    Nat(usize),
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Lolli,
    Dash,
    Bar,
    Turnstile,
    Dot,
    Colon,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Nat(n) => write!(f, "`{n}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBrack => f.write_str("`[`"),
            Tok::RBrack => f.write_str("`]`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Lolli => f.write_str("`-o`"),
            Tok::Dash => f.write_str("`-`"),
            Tok::Bar => f.write_str("`|`"),
            Tok::Turnstile => f.write_str("`|-`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Colon => f.write_str("`:`"),
        }
    }
}

pub(crate) fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'[' => Tok::LBrack,
            b']' => Tok::RBrack,
            b',' => Tok::Comma,
            b'.' => Tok::Dot,
            b':' => Tok::Colon,
            b'|' => {
                if bytes.get(i + 1) == Some(&b'-') {
                    i += 1;
                    Tok::Turnstile
                } else {
                    Tok::Bar
                }
            }
            b'-' => {
                if bytes.get(i + 1) == Some(&b'o') {
                    i += 1;
                    Tok::Lolli
                } else {
                    Tok::Dash
                }
            }
            c if c.is_ascii_alphabetic() => {
                while i + 1 < bytes.len()
                    && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_')
                {
                    i += 1;
                }
                if bytes.get(i + 1) == Some(&b'\'') {
                    i += 1;
                }
                Tok::Ident(text[start..=i].to_string())
            }
            c if c.is_ascii_digit() => {
                while i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let n = text[start..=i]
                    .parse()
                    .map_err(|_| ParseError::new(start, "number out of range"))?;
                Tok::Nat(n)
            }
            _ => {
                if text[i..].starts_with('⊸') {
                    i += '⊸'.len_utf8() - 1;
                    Tok::Lolli
                } else {
                    let ch = text[i..].chars().next().unwrap_or('?');
                    return Err(ParseError::new(i, format!("unexpected character `{ch}`")));
                }
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

pub(crate) struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    pub(crate) fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
            end: text.len(),
        })
    }

    pub(crate) fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    pub(crate) fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    pub(crate) fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
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
        match self.peek() {
            Some(t) => ParseError::new(self.offset(), format!("expected {wanted}, found {t}")),
            None => ParseError::new(
                self.offset(),
                format!("expected {wanted}, found end of input"),
            ),
        }
    }

    pub(crate) fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(ParseError::new(
                self.offset(),
                format!("unexpected trailing {t}"),
            )),
        }
    }

    pub(crate) fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.formula_atomic()?;
        if self.eat(&Tok::Lolli) {
            let rhs = self.formula()?;
            Ok(Formula::imp(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn formula_atomic(&mut self) -> Result<Formula, ParseError> {
        let at = self.offset();
        match self.peek() {
            Some(Tok::Ident(name)) => {
                if name.ends_with('\'') {
                    return Err(ParseError::new(at, format!("invalid atom name `{name}`")));
                }
                let f = Formula::atom(name);
                self.bump();
                Ok(f)
            }
            Some(Tok::LParen) => {
                self.bump();
                let f = self.formula()?;
                self.expect(&Tok::RParen)?;
                Ok(f)
            }
            _ => Err(self.unexpected("a formula")),
        }
    }

    pub(crate) fn stoup(&mut self) -> Result<Stoup, ParseError> {
        if self.eat(&Tok::Dash) {
            Ok(None)
        } else {
            Ok(Some(self.formula()?))
        }
    }

    /// `S | Γ |- C`, or the categorical shorthand `S |- C` / `|- C` for an
    /// empty context.
    pub(crate) fn sequent(&mut self) -> Result<Sequent, ParseError> {
        if self.eat(&Tok::Turnstile) {
            return Ok(Sequent::new(None, Vec::new(), self.formula()?));
        }
        let stoup = self.stoup()?;
        if self.eat(&Tok::Turnstile) {
            return Ok(Sequent::new(stoup, Vec::new(), self.formula()?));
        }
        self.expect(&Tok::Bar)?;
        let mut context = Vec::new();
        if self.peek() != Some(&Tok::Turnstile) {
            context.push(self.formula()?);
            while self.eat(&Tok::Comma) {
                context.push(self.formula()?);
            }
        }
        self.expect(&Tok::Turnstile)?;
        let succedent = self.formula()?;
        Ok(Sequent::new(stoup, context, succedent))
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

pub fn parse_sequent(text: &str) -> Result<Sequent, ParseError> {
    let mut p = Parser::new(text)?;
    let s = p.sequent()?;
    p.finish()?;
    Ok(s)
}

/// Parse a comma-separated (possibly empty) list of formulae.
pub fn parse_context(text: &str) -> Result<Context, ParseError> {
    let mut p = Parser::new(text)?;
    let mut out = Vec::new();
    if p.peek().is_some() {
        out.push(p.formula()?);
        while p.eat(&Tok::Comma) {
            out.push(p.formula()?);
        }
    }
    p.finish()?;
    Ok(out)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn x() -> Formula {
        Formula::atom("X")
    }
    pub(crate) fn y() -> Formula {
        Formula::atom("Y")
    }
    pub(crate) fn z() -> Formula {
        Formula::atom("Z")
    }

    #[test]
    fn parses_atoms_and_right_associative_implication() {
        assert_eq!(parse_formula("X").unwrap(), x());
        assert_eq!(
            parse_formula("X -o Y -o Z").unwrap(),
            Formula::imp(x(), Formula::imp(y(), z()))
        );
        assert_eq!(
            parse_formula("(X -o Y) -o (X -o Z)").unwrap(),
            Formula::imp(Formula::imp(x(), y()), Formula::imp(x(), z()))
        );
        assert_eq!(parse_formula("X ⊸ Y").unwrap(), Formula::imp(x(), y()));
    }

    #[test]
    fn prints_minimal_parentheses() {
        assert_eq!(
            Formula::imp(x(), Formula::imp(y(), z())).to_string(),
            "X -o Y -o Z"
        );
        assert_eq!(
            Formula::imp(Formula::imp(x(), y()), z()).to_string(),
            "(X -o Y) -o Z"
        );
    }

    #[test]
    fn parses_sequents() {
        assert_eq!(
            parse_sequent("X | |- X").unwrap(),
            Sequent::new(Some(x()), vec![], x())
        );
        assert_eq!(
            parse_sequent("- | X |- X").unwrap(),
            Sequent::new(None, vec![x()], x())
        );
        let s = parse_sequent("(X -o Y) -o (X -o Z) | X -o Y, X -o X, X |- Z").unwrap();
        assert_eq!(
            s.stoup,
            Some(Formula::imp(Formula::imp(x(), y()), Formula::imp(x(), z())))
        );
        assert_eq!(
            s.context,
            vec![Formula::imp(x(), y()), Formula::imp(x(), x()), x()]
        );
        assert_eq!(s.succedent, z());
        assert_eq!(Sequent::new(None, vec![x()], x()).to_string(), "- | X |- X");
        assert_eq!(parse_sequent("-|X|-X").unwrap().to_string(), "- | X |- X");
        assert_eq!(
            parse_sequent("X -o Y |- X -o Y").unwrap().to_string(),
            "X -o Y | |- X -o Y"
        );
        assert_eq!(
            parse_sequent("|- X -o X").unwrap().to_string(),
            "- | |- X -o X"
        );
    }

    #[test]
    fn reports_byte_offsets() {
        let e = parse_formula("X -o").unwrap_err();
        assert_eq!(e.offset, 4);
        let e = parse_formula("X -o )").unwrap_err();
        assert_eq!(e.offset, 5);
        let e = parse_sequent("X | X X").unwrap_err();
        assert_eq!(e.offset, 6);
        let e = parse_formula("X $").unwrap_err();
        assert_eq!(e.offset, 2);
        assert!(parse_formula("X'").is_err());
    }

    pub(crate) fn arb_formula(depth: u32) -> impl Strategy<Value = Formula> {
        let leaf = prop_oneof![Just(x()), Just(y()), Just(Formula::atom("Z_1"))];
        leaf.prop_recursive(depth, 64, 2, |inner| {
            (inner.clone(), inner).prop_map(|(a, b)| Formula::imp(a, b))
        })
    }

    pub(crate) fn arb_sequent() -> impl Strategy<Value = Sequent> {
        (
            proptest::option::of(arb_formula(3)),
            proptest::collection::vec(arb_formula(3), 0..4),
            arb_formula(3),
        )
            .prop_map(|(s, g, c)| Sequent::new(s, g, c))
    }

    proptest! {
        #[test]
        fn formula_print_parse_roundtrip(f in arb_formula(6)) {
            let printed = print_formula(&f);
            prop_assert_eq!(parse_formula(&printed).unwrap(), f);
            prop_assert_eq!(print_formula(&parse_formula(&printed).unwrap()), printed);
        }

        #[test]
        fn sequent_print_parse_roundtrip(s in arb_sequent()) {
            let printed = print_sequent(&s);
            prop_assert_eq!(parse_sequent(&printed).unwrap(), s);
        }
    }
}
