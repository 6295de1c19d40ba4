//! The free skew prounital closed category on a skew multigraph.
//!
//! A multigraph is a set of atoms and definite clauses `c : T|Z1..Zn⟶Z`
//! (`T` an optional atom). Sequent calculus derivations over it extend the
//! plain calculus with two rules:
//!
//! ```text
//!  iota[c](a1, .., an, g)  T|Γ1..Γn,Δ ⟶ C   from ai : −|Γi⟶Zi, g : Z|Δ⟶C
//!  impC[p](f, g)           S|Δ0,A⊸B,Γ,Δ1 ⟶ C from f : −|Γ⟶A, g : S|Δ0,B,Δ1⟶C
//! ```
//!
//! where `p = |Δ0|`. `iota` packages a clause together with the cuts that
//! feed its premises and consume its conclusion, so no cut rule is needed.
//! The focused calculus is the plain one plus the same `iota` step in
//! phase F; `m_focus` normalizes into it.

use std::collections::HashSet;
use std::fmt;

use crate::coherence::{Search, SearchError};
use crate::error::{Error, ParseError, Result, TypeError};
use crate::focused::{self, FocF, FocI, FocP};
use crate::syntax::{parse_sequent, Formula, Sequent};
use crate::term::{Param, Term};
use crate::{check_arity, inst_der, Inst};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClauseDef {
    pub name: String,
    pub stoup: Option<Formula>,
    pub premises: Vec<Formula>,
    pub conclusion: Formula,
}

impl ClauseDef {
    pub fn sequent(&self) -> Sequent {
        Sequent::new(
            self.stoup.clone(),
            self.premises.clone(),
            self.conclusion.clone(),
        )
    }
}

impl fmt::Display for ClauseDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "clause {} : {}", self.name, self.sequent())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Multigraph {
    pub atoms: Vec<String>,
    pub clauses: Vec<ClauseDef>,
}

impl Multigraph {
    pub fn empty() -> Self {
        Multigraph::default()
    }

    pub fn clause(&self, name: &str) -> Option<&ClauseDef> {
        self.clauses.iter().find(|c| c.name == name)
    }

    /// Build a graph from clause sequents, declaring every atom they use.
    pub fn from_clauses(clauses: &[(&str, &str)]) -> Result<Multigraph> {
        let mut text = String::new();
        let mut atoms = Vec::new();
        for (_, s) in clauses {
            for a in parse_sequent(s)?.atoms() {
                if !atoms.contains(&a) {
                    atoms.push(a);
                }
            }
        }
        for a in atoms {
            text.push_str(&format!("atom {a}\n"));
        }
        for (n, s) in clauses {
            text.push_str(&format!("clause {n} : {s}\n"));
        }
        Multigraph::parse(&text)
    }

    /// Read the line format `atom <name>` / `clause <name> : <T|-> | <Φ> |- <Z>`.
    /// Blank lines and lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Multigraph> {
        let mut g = Multigraph::empty();
        let mut offset = 0;
        for line in text.lines() {
            let start = offset;
            offset += line.len() + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let bad = |m: String| Error::Parse(ParseError::new(start, m));
            if let Some(rest) = trimmed.strip_prefix("atom ") {
                let name = rest.trim();
                if name.is_empty() || name.contains(char::is_whitespace) {
                    return Err(bad(format!("bad atom declaration `{trimmed}`")));
                }
                if !g.atoms.iter().any(|a| a == name) {
                    g.atoms.push(name.to_string());
                }
            } else if let Some(rest) = trimmed.strip_prefix("clause ") {
                let Some((name, body)) = rest.split_once(':') else {
                    return Err(bad("clause lines need `name : sequent`".into()));
                };
                let name = name.trim().to_string();
                if name.is_empty() {
                    return Err(bad("clause without a name".into()));
                }
                if g.clause(&name).is_some() {
                    return Err(bad(format!("duplicate clause `{name}`")));
                }
                let s = parse_sequent(body.trim()).map_err(|e| {
                    ParseError::new(start + (line.len() - body.len()) + e.offset, e.message)
                })?;
                let mut fs: Vec<&Formula> = s.context.iter().collect();
                fs.extend(s.stoup.iter());
                fs.push(&s.succedent);
                for f in fs {
                    match f {
                        Formula::Atom(a) if g.atoms.iter().any(|x| **x == **a) => {}
                        Formula::Atom(a) => {
                            return Err(bad(format!("undeclared atom `{a}` in clause `{name}`")))
                        }
                        _ => {
                            return Err(bad(format!(
                                "clause `{name}` mentions the non-atomic formula {f}"
                            )))
                        }
                    }
                }
                g.clauses.push(ClauseDef {
                    name,
                    stoup: s.stoup,
                    premises: s.context,
                    conclusion: s.succedent,
                });
            } else {
                return Err(bad(format!("unrecognized line `{trimmed}`")));
            }
        }
        Ok(g)
    }

    /// The three-clause graph `X|Y⟶Z`, `−|X⟶Y`, `Y|⟶X` used by the tests.
    pub fn test_graph() -> Multigraph {
        Multigraph::from_clauses(&[("f", "X | Y |- Z"), ("g", "- | X |- Y"), ("h", "Y | |- X")])
            .expect("well-formed")
    }

    /// `{g0 : −|X⟶Z}`: a loose map with no tight counterpart.
    pub fn witness_graph() -> Multigraph {
        Multigraph::from_clauses(&[("g0", "- | X |- Z")]).expect("well-formed")
    }
}

impl fmt::Display for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.atoms {
            writeln!(f, "atom {a}")?;
        }
        for c in &self.clauses {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Sequent calculus derivations

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum MSeq {
    Ax,
    Pass(Box<MSeq>),
    ImpR(Box<MSeq>),
    ImpL(usize, Box<MSeq>, Box<MSeq>),
    ImpC(usize, Box<MSeq>, Box<MSeq>),
    Iota {
        name: String,
        args: Vec<MSeq>,
        cont: Box<MSeq>,
    },
}

pub fn m_pass(f: MSeq) -> MSeq {
    MSeq::Pass(Box::new(f))
}

pub fn m_imp_r(f: MSeq) -> MSeq {
    MSeq::ImpR(Box::new(f))
}

pub fn m_imp_l(k: usize, f: MSeq, g: MSeq) -> MSeq {
    MSeq::ImpL(k, Box::new(f), Box::new(g))
}

pub fn m_imp_c(pos: usize, f: MSeq, g: MSeq) -> MSeq {
    MSeq::ImpC(pos, Box::new(f), Box::new(g))
}

pub fn m_iota(name: &str, args: Vec<MSeq>, cont: MSeq) -> MSeq {
    MSeq::Iota {
        name: name.to_string(),
        args,
        cont: Box::new(cont),
    }
}

impl MSeq {
    pub fn ctx_len(&self) -> usize {
        match self {
            MSeq::Ax => 0,
            MSeq::Pass(f) => f.ctx_len() + 1,
            MSeq::ImpR(f) => f.ctx_len() - 1,
            MSeq::ImpL(_, f, g) | MSeq::ImpC(_, f, g) => f.ctx_len() + g.ctx_len(),
            MSeq::Iota { args, cont, .. } => {
                args.iter().map(MSeq::ctx_len).sum::<usize>() + cont.ctx_len()
            }
        }
    }

    pub fn size(&self) -> usize {
        match self {
            MSeq::Ax => 1,
            MSeq::Pass(f) | MSeq::ImpR(f) => 1 + f.size(),
            MSeq::ImpL(_, f, g) | MSeq::ImpC(_, f, g) => 1 + f.size() + g.size(),
            MSeq::Iota { args, cont, .. } => {
                1 + args.iter().map(MSeq::size).sum::<usize>() + cont.size()
            }
        }
    }

    pub fn to_term(&self) -> Term {
        match self {
            MSeq::Ax => Term::leaf("ax"),
            MSeq::Pass(f) => Term::new("pass", vec![], vec![f.to_term()]),
            MSeq::ImpR(f) => Term::new("impR", vec![], vec![f.to_term()]),
            MSeq::ImpL(k, f, g) => {
                Term::new("impL", vec![Param::Nat(*k)], vec![f.to_term(), g.to_term()])
            }
            MSeq::ImpC(p, f, g) => {
                Term::new("impC", vec![Param::Nat(*p)], vec![f.to_term(), g.to_term()])
            }
            MSeq::Iota { name, args, cont } => {
                let mut ts: Vec<Term> = args.iter().map(MSeq::to_term).collect();
                ts.push(cont.to_term());
                Term::new("iota", vec![Param::Formula(Formula::atom(name))], ts)
            }
        }
    }

    pub fn from_term(t: &Term) -> Result<MSeq> {
        Ok(match t.head.as_str() {
            "ax" => {
                t.expect_shape(0, 0)?;
                MSeq::Ax
            }
            "pass" => {
                t.expect_shape(0, 1)?;
                m_pass(MSeq::from_term(&t.args[0])?)
            }
            "impR" => {
                t.expect_shape(0, 1)?;
                m_imp_r(MSeq::from_term(&t.args[0])?)
            }
            "impL" | "impC" => {
                t.expect_shape(1, 2)?;
                let f = MSeq::from_term(&t.args[0])?;
                let g = MSeq::from_term(&t.args[1])?;
                if t.head == "impL" {
                    m_imp_l(t.nat_param(0)?, f, g)
                } else {
                    m_imp_c(t.nat_param(0)?, f, g)
                }
            }
            "iota" => {
                let name = match (t.params.as_slice(), t.args.is_empty()) {
                    ([Param::Formula(Formula::Atom(n))], false) => n.to_string(),
                    _ => {
                        return Err(ParseError::new(
                            t.offset,
                            "iota expects `iota[name](args.., cont)`",
                        )
                        .into())
                    }
                };
                let (last, init) = t.args.split_last().expect("nonempty");
                MSeq::Iota {
                    name,
                    args: init.iter().map(MSeq::from_term).collect::<Result<_>>()?,
                    cont: Box::new(MSeq::from_term(last)?),
                }
            }
            _ => return Err(t.unknown("multigraph sequent").into()),
        })
    }
}

impl fmt::Display for MSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_term())
    }
}

fn fail<T>(msg: impl Into<String>) -> Result<T, TypeError> {
    Err(TypeError::new(msg))
}

pub fn m_check(g: &Multigraph, d: &MSeq, goal: &Sequent) -> Result<(), TypeError> {
    match d {
        MSeq::Ax => match &goal.stoup {
            Some(a) if goal.context.is_empty() && *a == goal.succedent => Ok(()),
            _ => fail(format!("ax does not conclude {goal}")),
        },
        MSeq::Pass(f) => {
            if goal.stoup.is_some() {
                return fail("pass needs an empty stoup");
            }
            let Some((a, rest)) = goal.context.split_first() else {
                return fail("pass needs a nonempty context");
            };
            let s = Sequent::new(Some(a.clone()), rest.to_vec(), goal.succedent.clone());
            m_check(g, f, &s).map_err(|e| e.under(0))
        }
        MSeq::ImpR(f) => {
            let Some((a, b)) = goal.succedent.as_imp() else {
                return fail("impR needs an implication succedent");
            };
            let mut ctx = goal.context.clone();
            ctx.push(a.clone());
            m_check(g, f, &Sequent::new(goal.stoup.clone(), ctx, b.clone())).map_err(|e| e.under(0))
        }
        MSeq::ImpL(k, f, h) => {
            let Some((a, b)) = goal.stoup.as_ref().and_then(Formula::as_imp) else {
                return fail("impL needs an implication in the stoup");
            };
            if *k > goal.context.len() {
                return fail(format!("split {k} out of range"));
            }
            let (gamma, delta) = goal.context.split_at(*k);
            m_check(g, f, &Sequent::new(None, gamma.to_vec(), a.clone()))
                .map_err(|e| e.under(0))?;
            m_check(
                g,
                h,
                &Sequent::new(Some(b.clone()), delta.to_vec(), goal.succedent.clone()),
            )
            .map_err(|e| e.under(1))
        }
        MSeq::ImpC(p, f, h) => {
            let n = f.ctx_len();
            if p + 1 + n > goal.context.len() {
                return fail(format!("impC at {p} overruns the context"));
            }
            let Some((a, b)) = goal.context[*p].as_imp() else {
                return fail(format!("impC: context formula {p} is not an implication"));
            };
            let gamma = &goal.context[p + 1..p + 1 + n];
            m_check(g, f, &Sequent::new(None, gamma.to_vec(), a.clone()))
                .map_err(|e| e.under(0))?;
            let mut ctx = goal.context[..*p].to_vec();
            ctx.push(b.clone());
            ctx.extend(goal.context[p + 1 + n..].iter().cloned());
            m_check(
                g,
                h,
                &Sequent::new(goal.stoup.clone(), ctx, goal.succedent.clone()),
            )
            .map_err(|e| e.under(1))
        }
        MSeq::Iota { name, args, cont } => {
            let Some(c) = g.clause(name) else {
                return fail(format!("unknown clause `{name}`"));
            };
            if c.stoup != goal.stoup {
                return fail(format!(
                    "clause `{name}` does not match the stoup of {goal}"
                ));
            }
            if c.premises.len() != args.len() {
                return fail(format!(
                    "clause `{name}` takes {} argument(s)",
                    c.premises.len()
                ));
            }
            let mut off = 0;
            for (n, (a, z)) in args.iter().zip(&c.premises).enumerate() {
                let len = a.ctx_len();
                if off + len > goal.context.len() {
                    return Err(TypeError::new("clause arguments overrun the context").under(n));
                }
                let s = Sequent::new(None, goal.context[off..off + len].to_vec(), z.clone());
                m_check(g, a, &s).map_err(|e| e.under(n))?;
                off += len;
            }
            let s = Sequent::new(
                Some(c.conclusion.clone()),
                goal.context[off..].to_vec(),
                goal.succedent.clone(),
            );
            m_check(g, cont, &s).map_err(|e| e.under(args.len()))
        }
    }
}

// ---------------------------------------------------------------------------
// Focusing

/// `iota` in phase I: the continuation's `impR`s float to the root.
pub fn iota_i(name: &str, args: Vec<FocI>, cont: &FocI) -> FocI {
    match cont {
        FocI::ImpR(c) => focused::imp_r(iota_i(name, args, c)),
        FocI::P2I(p) => match &**p {
            FocP::F2P(cf) => focused::p2i(focused::f2p(FocF::Clause {
                name: name.to_string(),
                args,
                cont: cf.clone(),
            })),
            FocP::Pass(_) => unreachable!("iota: the continuation has a stoup"),
        },
    }
}

/// `⊸C` in phase I, as `ccut(pass(⊸L(f, ax)), g)`.
pub fn imp_c_i(pos: usize, f: &FocI, b: &Formula, g: &FocI) -> FocI {
    let head = focused::pass_i(&focused::imp_l_i(f.ctx_len(), f, &focused::ax_i(b)));
    focused::ccut_i(&head, g, pos)
}

/// Normalize a derivation of `goal` (assumed well typed).
pub fn m_focus(g: &Multigraph, d: &MSeq, goal: &Sequent) -> FocI {
    match d {
        MSeq::Ax => focused::ax_i(&goal.succedent),
        MSeq::Pass(f) => {
            let (a, rest) = goal.context.split_first().expect("pass with context");
            let s = Sequent::new(Some(a.clone()), rest.to_vec(), goal.succedent.clone());
            focused::pass_i(&m_focus(g, f, &s))
        }
        MSeq::ImpR(f) => {
            let (a, b) = goal.succedent.as_imp().expect("impR at implication");
            let mut ctx = goal.context.clone();
            ctx.push(a.clone());
            focused::imp_r(m_focus(
                g,
                f,
                &Sequent::new(goal.stoup.clone(), ctx, b.clone()),
            ))
        }
        MSeq::ImpL(k, f, h) => {
            let (a, b) = goal
                .stoup
                .as_ref()
                .and_then(Formula::as_imp)
                .expect("impL at implication");
            let fs = Sequent::new(None, goal.context[..*k].to_vec(), a.clone());
            let hs = Sequent::new(
                Some(b.clone()),
                goal.context[*k..].to_vec(),
                goal.succedent.clone(),
            );
            focused::imp_l_i(*k, &m_focus(g, f, &fs), &m_focus(g, h, &hs))
        }
        MSeq::ImpC(p, f, h) => {
            let n = f.ctx_len();
            let (a, b) = goal.context[*p].as_imp().expect("impC at implication");
            let fs = Sequent::new(None, goal.context[p + 1..p + 1 + n].to_vec(), a.clone());
            let mut ctx = goal.context[..*p].to_vec();
            ctx.push(b.clone());
            ctx.extend(goal.context[p + 1 + n..].iter().cloned());
            let hs = Sequent::new(goal.stoup.clone(), ctx, goal.succedent.clone());
            imp_c_i(*p, &m_focus(g, f, &fs), b, &m_focus(g, h, &hs))
        }
        MSeq::Iota { name, args, cont } => {
            let c = g.clause(name).expect("checked clause");
            let mut off = 0;
            let mut fargs = Vec::new();
            for (a, z) in args.iter().zip(&c.premises) {
                let len = a.ctx_len();
                let s = Sequent::new(None, goal.context[off..off + len].to_vec(), z.clone());
                fargs.push(m_focus(g, a, &s));
                off += len;
            }
            let s = Sequent::new(
                Some(c.conclusion.clone()),
                goal.context[off..].to_vec(),
                goal.succedent.clone(),
            );
            iota_i(name, fargs, &m_focus(g, cont, &s))
        }
    }
}

pub fn m_focus_checked(g: &Multigraph, d: &MSeq, goal: &Sequent) -> Result<FocI> {
    m_check(g, d, goal)?;
    Ok(m_focus(g, d, goal))
}

pub fn m_emb_i(d: &FocI) -> MSeq {
    match d {
        FocI::ImpR(f) => m_imp_r(m_emb_i(f)),
        FocI::P2I(p) => m_emb_p(p),
    }
}

pub fn m_emb_p(d: &FocP) -> MSeq {
    match d {
        FocP::Pass(p) => m_pass(m_emb_p(p)),
        FocP::F2P(f) => m_emb_f(f),
    }
}

pub fn m_emb_f(d: &FocF) -> MSeq {
    match d {
        FocF::Ax => MSeq::Ax,
        FocF::ImpL(k, a, g) => m_imp_l(*k, m_emb_i(a), m_emb_f(g)),
        FocF::Clause { name, args, cont } => MSeq::Iota {
            name: name.clone(),
            args: args.iter().map(m_emb_i).collect(),
            cont: Box::new(m_emb_f(cont)),
        },
    }
}

// ---------------------------------------------------------------------------
// Cuts

/// `scut`: from `f : S|Γ⟶A` and `h : A|Δ⟶C` build `S|Γ,Δ⟶C`.
pub fn m_scut(
    g: &Multigraph,
    f: &MSeq,
    fs: &Sequent,
    h: &MSeq,
    hs: &Sequent,
) -> Result<(MSeq, Sequent)> {
    m_check(g, f, fs)?;
    m_check(g, h, hs)?;
    if hs.stoup.as_ref() != Some(&fs.succedent) {
        return Err(TypeError::new("scut: cut formula mismatch").into());
    }
    let mut ctx = fs.context.clone();
    ctx.extend(hs.context.iter().cloned());
    let s = Sequent::new(fs.stoup.clone(), ctx, hs.succedent.clone());
    let d = focused::scut_i(&m_focus(g, f, fs), &m_focus(g, h, hs));
    Ok((m_emb_i(&d), s))
}

/// `ccut`: from `e : −|Γ⟶A` and `h : S|Δ0,A,Δ1⟶C` (A at `pos`) build
/// `S|Δ0,Γ,Δ1⟶C`.
pub fn m_ccut(
    g: &Multigraph,
    e: &MSeq,
    es: &Sequent,
    h: &MSeq,
    hs: &Sequent,
    pos: usize,
) -> Result<(MSeq, Sequent)> {
    m_check(g, e, es)?;
    m_check(g, h, hs)?;
    if es.stoup.is_some() {
        return Err(TypeError::new("ccut: cut derivation must have an empty stoup").into());
    }
    if hs.context.get(pos) != Some(&es.succedent) {
        return Err(TypeError::new(format!("ccut: cut formula mismatch at {pos}")).into());
    }
    let mut ctx = hs.context[..pos].to_vec();
    ctx.extend(es.context.iter().cloned());
    ctx.extend(hs.context[pos + 1..].iter().cloned());
    let s = Sequent::new(hs.stoup.clone(), ctx, hs.succedent.clone());
    let d = focused::ccut_i(&m_focus(g, e, es), &m_focus(g, h, hs), pos);
    Ok((m_emb_i(&d), s))
}

/// `ccut_Fma`: from `f : A′|Γ⟶A` and `h : S|Δ0,A,Δ1⟶C` build
/// `S|Δ0,A′,Γ,Δ1⟶C`, by passivating `f` first.
pub fn m_ccut_fma(
    g: &Multigraph,
    f: &MSeq,
    fs: &Sequent,
    h: &MSeq,
    hs: &Sequent,
    pos: usize,
) -> Result<(MSeq, Sequent)> {
    let Some(a1) = &fs.stoup else {
        return Err(TypeError::new("ccut_Fma: the cut derivation needs a stoup").into());
    };
    let mut ctx = vec![a1.clone()];
    ctx.extend(fs.context.iter().cloned());
    let ps = Sequent::new(None, ctx, fs.succedent.clone());
    m_ccut(g, &m_pass(f.clone()), &ps, h, hs, pos)
}

// ---------------------------------------------------------------------------
// Search and left-normality

pub fn m_count(g: &Multigraph, s: &Sequent) -> Result<u128, SearchError> {
    Search::new(g).count(s)
}

pub fn m_enumerate(g: &Multigraph, s: &Sequent) -> Result<Vec<FocI>, SearchError> {
    Search::new(g).enumerate(s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ActOutcome {
    /// The derivation with the head of the context moved into the stoup.
    Moved(MSeq),
    /// `act` got stuck at a loose clause application.
    Stuck { clause: String },
}

/// Try to turn `−|A,Γ⟶C` into `A|Γ⟶C`. Over the plain calculus this always
/// succeeds; a loose clause application blocks it.
pub fn m_act_attempt(d: &MSeq) -> ActOutcome {
    match d {
        MSeq::Pass(f) => ActOutcome::Moved((**f).clone()),
        MSeq::ImpR(f) => match m_act_attempt(f) {
            ActOutcome::Moved(f1) => ActOutcome::Moved(m_imp_r(f1)),
            stuck => stuck,
        },
        MSeq::ImpC(0, f, h) => match m_act_attempt(h) {
            ActOutcome::Moved(h1) => ActOutcome::Moved(m_imp_l(f.ctx_len(), (**f).clone(), h1)),
            stuck => stuck,
        },
        MSeq::ImpC(p, f, h) => match m_act_attempt(h) {
            ActOutcome::Moved(h1) => ActOutcome::Moved(m_imp_c(p - 1, (**f).clone(), h1)),
            stuck => stuck,
        },
        MSeq::Iota { name, .. } => ActOutcome::Stuck {
            clause: name.clone(),
        },
        MSeq::Ax | MSeq::ImpL(..) => unreachable!("act: the input has an empty stoup"),
    }
}

// ---------------------------------------------------------------------------
// Commutative conversions of ⊸C

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MFamily {
    ImpCImpR,
    PassImpC,
    PassImpL,
    ImpCImpLOuter,
    ImpCImpLInner,
    ImpCImpCExchange,
    ImpCImpCNested,
}

impl MFamily {
    pub const ALL: [MFamily; 7] = [
        MFamily::ImpCImpR,
        MFamily::PassImpC,
        MFamily::PassImpL,
        MFamily::ImpCImpLOuter,
        MFamily::ImpCImpLInner,
        MFamily::ImpCImpCExchange,
        MFamily::ImpCImpCNested,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MFamily::ImpCImpR => "impC-impR",
            MFamily::PassImpC => "pass-impC",
            MFamily::PassImpL => "pass-impL",
            MFamily::ImpCImpLOuter => "impC-impL-outer",
            MFamily::ImpCImpLInner => "impC-impL-inner",
            MFamily::ImpCImpCExchange => "impC-impC-exchange",
            MFamily::ImpCImpCNested => "impC-impC-nested",
        }
    }

    /// Number of derivation arguments and of context positions.
    ///
    /// * `ImpCImpR`: `f : −|Γ⟶A′`, `g : S|Δ0,B′,Δ1,A⟶B`; position of `B′`.
    /// * `PassImpC`: `f : −|Γ⟶A`, `g : A′|Δ0,B,Δ1⟶C`; position of `B`.
    /// * `PassImpL`: `f : −|Γ⟶A`, `g : B|Δ⟶C`.
    /// * `ImpCImpLOuter`: `f : −|Γ⟶A`, `g : −|Γ′⟶A′`, `h : B′|Δ0,B,Δ1⟶C`;
    ///   position of `B` in `h`.
    /// * `ImpCImpLInner`: `f : −|Γ⟶A`, `g : −|Δ0,B,Δ1⟶A′`, `h : B′|Δ⟶C`;
    ///   position of `B` in `g`.
    /// * `ImpCImpCExchange`: `f : −|Γ⟶A`, `g : −|Γ′⟶A′`,
    ///   `h : S|Δ0,B,Δ1,B′,Δ2⟶C`; positions of `B` and `B′`.
    /// * `ImpCImpCNested`: `f : −|Γ⟶A`, `g : −|Δ0,B,Δ1⟶A′`,
    ///   `h : S|Δ2,B′,Δ3⟶C`; position of `B` in `g`, of `B′` in `h`.
    pub fn arity(self) -> (usize, usize) {
        match self {
            MFamily::ImpCImpR | MFamily::PassImpC => (2, 1),
            MFamily::PassImpL => (2, 0),
            MFamily::ImpCImpLOuter | MFamily::ImpCImpLInner | MFamily::ImpCImpCNested => {
                (3, 1 + (self == MFamily::ImpCImpCNested) as usize)
            }
            MFamily::ImpCImpCExchange => (3, 2),
        }
    }
}

#[derive(Clone, Debug)]
pub struct MEquation {
    pub name: MFamily,
    pub sequent: Sequent,
    pub lhs: MSeq,
    pub rhs: MSeq,
}

fn loose(s: &Sequent, k: usize) -> Result<()> {
    if s.stoup.is_some() {
        return Err(TypeError::new(format!("argument {k} needs an empty stoup")).into());
    }
    Ok(())
}

fn pos_ok(s: &Sequent, p: usize, k: usize) -> Result<Formula> {
    s.context.get(p).cloned().ok_or_else(|| {
        TypeError::new(format!(
            "position {p} is outside the context of argument {k}"
        ))
        .into()
    })
}

/// Replace the context formula at `p` by `A⊸B` followed by `Γ`.
fn splice(ctx: &[Formula], p: usize, imp: Formula, gamma: &[Formula]) -> Vec<Formula> {
    let mut out = ctx[..p].to_vec();
    out.push(imp);
    out.extend(gamma.iter().cloned());
    out.extend(ctx[p + 1..].iter().cloned());
    out
}

/// Instantiate one commutative conversion of `⊸C`. Both sides are checked
/// against the computed sequent.
pub fn m_eq_generator(
    g: &Multigraph,
    fam: MFamily,
    args: &[Inst<MSeq>],
    positions: &[usize],
) -> Result<MEquation> {
    let (nd, np) = fam.arity();
    check_arity(fam.name(), args, nd)?;
    if positions.len() != np {
        return Err(Error::Invalid(format!(
            "arity mismatch: `{}` takes {np} position(s), got {}",
            fam.name(),
            positions.len()
        )));
    }
    for k in 0..args.len() {
        let (d, s) = inst_der(args, k)?;
        m_check(g, &d, &s).map_err(|e| e.under(k))?;
    }
    let (f, fs) = inst_der(args, 0)?;
    let (h1, h1s) = inst_der(args, 1)?;
    loose(&fs, 0)?;
    let imp = Formula::imp;
    let (sequent, lhs, rhs) = match fam {
        MFamily::ImpCImpR => {
            let p = positions[0];
            let b1 = pos_ok(&h1s, p, 1)?;
            let (last, init) = h1s
                .context
                .split_last()
                .ok_or_else(|| TypeError::new("argument 1 needs a nonempty context"))?;
            if p >= init.len() {
                return Err(
                    TypeError::new("position must precede the last context formula").into(),
                );
            }
            let ctx = splice(init, p, imp(fs.succedent.clone(), b1), &fs.context);
            let s = Sequent::new(
                h1s.stoup.clone(),
                ctx,
                imp(last.clone(), h1s.succedent.clone()),
            );
            (
                s,
                m_imp_c(p, f.clone(), m_imp_r(h1.clone())),
                m_imp_r(m_imp_c(p, f, h1)),
            )
        }
        MFamily::PassImpC => {
            let p = positions[0];
            let b = pos_ok(&h1s, p, 1)?;
            let Some(a1) = h1s.stoup.clone() else {
                return Err(TypeError::new("argument 1 needs a stoup").into());
            };
            let mut ctx = vec![a1];
            ctx.extend(splice(
                &h1s.context,
                p,
                imp(fs.succedent.clone(), b),
                &fs.context,
            ));
            let s = Sequent::new(None, ctx, h1s.succedent.clone());
            (
                s,
                m_pass(m_imp_c(p, f.clone(), h1.clone())),
                m_imp_c(p + 1, f, m_pass(h1)),
            )
        }
        MFamily::PassImpL => {
            let Some(b) = h1s.stoup.clone() else {
                return Err(TypeError::new("argument 1 needs a stoup").into());
            };
            let mut ctx = vec![imp(fs.succedent.clone(), b)];
            ctx.extend(fs.context.iter().cloned());
            ctx.extend(h1s.context.iter().cloned());
            let s = Sequent::new(None, ctx, h1s.succedent.clone());
            (
                s,
                m_pass(m_imp_l(fs.context.len(), f.clone(), h1.clone())),
                m_imp_c(0, f, m_pass(h1)),
            )
        }
        MFamily::ImpCImpLOuter => {
            let (h, hs) = inst_der(args, 2)?;
            loose(&h1s, 1)?;
            let p = positions[0];
            let b = pos_ok(&hs, p, 2)?;
            let Some(b1) = hs.stoup.clone() else {
                return Err(TypeError::new("argument 2 needs a stoup").into());
            };
            let n1 = h1s.context.len();
            let mut ctx = h1s.context.clone();
            ctx.extend(splice(
                &hs.context,
                p,
                imp(fs.succedent.clone(), b),
                &fs.context,
            ));
            let s = Sequent::new(
                Some(imp(h1s.succedent.clone(), b1)),
                ctx,
                hs.succedent.clone(),
            );
            (
                s,
                m_imp_c(n1 + p, f.clone(), m_imp_l(n1, h1.clone(), h.clone())),
                m_imp_l(n1, h1, m_imp_c(p, f, h)),
            )
        }
        MFamily::ImpCImpLInner => {
            let (h, hs) = inst_der(args, 2)?;
            loose(&h1s, 1)?;
            let p = positions[0];
            let b = pos_ok(&h1s, p, 1)?;
            let Some(b1) = hs.stoup.clone() else {
                return Err(TypeError::new("argument 2 needs a stoup").into());
            };
            let inner = splice(&h1s.context, p, imp(fs.succedent.clone(), b), &fs.context);
            let k = inner.len();
            let mut ctx = inner;
            ctx.extend(hs.context.iter().cloned());
            let s = Sequent::new(
                Some(imp(h1s.succedent.clone(), b1)),
                ctx,
                hs.succedent.clone(),
            );
            (
                s,
                m_imp_c(
                    p,
                    f.clone(),
                    m_imp_l(h1s.context.len(), h1.clone(), h.clone()),
                ),
                m_imp_l(k, m_imp_c(p, f, h1), h),
            )
        }
        MFamily::ImpCImpCExchange => {
            let (h, hs) = inst_der(args, 2)?;
            loose(&h1s, 1)?;
            let (p, q) = (positions[0], positions[1]);
            if p >= q {
                return Err(TypeError::new("the first position must precede the second").into());
            }
            let b = pos_ok(&hs, p, 2)?;
            let b1 = pos_ok(&hs, q, 2)?;
            let after_g = splice(&hs.context, q, imp(h1s.succedent.clone(), b1), &h1s.context);
            let ctx = splice(&after_g, p, imp(fs.succedent.clone(), b), &fs.context);
            let s = Sequent::new(hs.stoup.clone(), ctx, hs.succedent.clone());
            let shift = fs.context.len();
            (
                s,
                m_imp_c(p, f.clone(), m_imp_c(q, h1.clone(), h.clone())),
                m_imp_c(q + shift, h1, m_imp_c(p, f, h)),
            )
        }
        MFamily::ImpCImpCNested => {
            let (h, hs) = inst_der(args, 2)?;
            loose(&h1s, 1)?;
            let (p, q) = (positions[0], positions[1]);
            let b = pos_ok(&h1s, p, 1)?;
            let b1 = pos_ok(&hs, q, 2)?;
            let g_ctx = splice(&h1s.context, p, imp(fs.succedent.clone(), b), &fs.context);
            let ctx = splice(&hs.context, q, imp(h1s.succedent.clone(), b1), &g_ctx);
            let s = Sequent::new(hs.stoup.clone(), ctx, hs.succedent.clone());
            (
                s,
                m_imp_c(q + 1 + p, f.clone(), m_imp_c(q, h1.clone(), h.clone())),
                m_imp_c(q, m_imp_c(p, f, h1), h),
            )
        }
    };
    m_check(g, &lhs, &sequent).map_err(|e| Error::Invalid(format!("`{}` lhs: {e}", fam.name())))?;
    m_check(g, &rhs, &sequent).map_err(|e| Error::Invalid(format!("`{}` rhs: {e}", fam.name())))?;
    Ok(MEquation {
        name: fam,
        sequent,
        lhs,
        rhs,
    })
}

/// Clause names used anywhere in a derivation.
pub fn clauses_used(d: &MSeq, out: &mut HashSet<String>) {
    match d {
        MSeq::Ax => {}
        MSeq::Pass(f) | MSeq::ImpR(f) => clauses_used(f, out),
        MSeq::ImpL(_, f, g) | MSeq::ImpC(_, f, g) => {
            clauses_used(f, out);
            clauses_used(g, out);
        }
        MSeq::Iota { name, args, cont } => {
            out.insert(name.clone());
            for a in args {
                clauses_used(a, out);
            }
            clauses_used(cont, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::focused::check_foc_in;
    use crate::term::parse_term;

    fn seq(s: &str) -> Sequent {
        parse_sequent(s).unwrap()
    }

    fn mder(s: &str) -> MSeq {
        MSeq::from_term(&parse_term(s).unwrap()).unwrap()
    }

    #[test]
    fn parses_graph_files() {
        let g = Multigraph::parse("# test\natom X\natom Z\nclause g0 : - | X |- Z\n").unwrap();
        assert_eq!(g.atoms, vec!["X", "Z"]);
        assert_eq!(g.clauses[0].sequent(), seq("- | X |- Z"));
        assert!(Multigraph::parse("atom X\nclause c : X | |- Y\n").is_err());
        assert!(Multigraph::parse("atom X\nclause c : X | |- X -o X\n").is_err());
        assert!(Multigraph::parse("atom X\nclause c : X | |- X\nclause c : X | |- X\n").is_err());
        assert!(Multigraph::parse("atoms X\n").is_err());
        let again = Multigraph::parse(&Multigraph::test_graph().to_string()).unwrap();
        assert_eq!(again, Multigraph::test_graph());
    }

    #[test]
    fn checks_clause_rules() {
        let w = Multigraph::witness_graph();
        let d = mder("iota[g0](pass(ax), ax)");
        m_check(&w, &d, &seq("- | X |- Z")).unwrap();
        assert!(m_check(&w, &d, &seq("X | |- Z")).is_err());
        let g = Multigraph::from_clauses(&[("f", "X | Y |- Z")]).unwrap();
        // X | A -o Y, A |- Z: feed ⊸C into the clause premise.
        let d = mder("iota[f](impC[0](pass(ax), pass(ax)), ax)");
        m_check(&g, &d, &seq("X | A -o Y, A |- Z")).unwrap();
        assert!(m_check(&g, &mder("iota[f](ax)"), &seq("X | Y |- Z")).is_err());
    }

    #[test]
    fn witness_counts() {
        let w = Multigraph::witness_graph();
        assert_eq!(m_count(&w, &seq("- | X |- Z")).unwrap(), 1);
        assert_eq!(m_count(&w, &seq("X | |- Z")).unwrap(), 0);
        assert_eq!(m_count(&Multigraph::empty(), &seq("X | |- X")).unwrap(), 1);
        let g = Multigraph::from_clauses(&[("f", "X | Y |- Z")]).unwrap();
        assert!(m_count(&g, &seq("X | A -o Y, A |- Z")).unwrap() >= 1);
    }

    #[test]
    fn cyclic_graphs_are_reported() {
        let g = Multigraph::test_graph();
        assert!(matches!(
            m_count(&g, &seq("- | X |- X")),
            Err(SearchError::Infinite(_))
        ));
        assert_eq!(m_count(&g, &seq("Z | |- X")).unwrap(), 0);
        let mut s = Search::new(&g);
        let w = s.witness(&seq("- | X |- X")).unwrap();
        check_foc_in(&w, &seq("- | X |- X"), &g).unwrap();
    }

    #[test]
    fn act_gets_stuck_at_loose_clauses() {
        let d = mder("iota[g0](pass(ax), ax)");
        assert_eq!(
            m_act_attempt(&d),
            ActOutcome::Stuck {
                clause: "g0".into()
            }
        );
        assert_eq!(
            m_act_attempt(&mder("pass(ax)")),
            ActOutcome::Moved(MSeq::Ax)
        );
        let d = mder("impR(pass(ax))");
        assert_eq!(m_act_attempt(&d), ActOutcome::Moved(mder("impR(ax)")));
        let d = mder("impC[0](pass(ax), pass(ax))");
        m_check(&Multigraph::empty(), &d, &seq("- | X -o Y, X |- Y")).unwrap();
        match m_act_attempt(&d) {
            ActOutcome::Moved(e) => {
                m_check(&Multigraph::empty(), &e, &seq("X -o Y | X |- Y")).unwrap()
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn focus_retracts_embedding() {
        let g = Multigraph::from_clauses(&[("f", "X | Y |- Z"), ("k", "- | |- Y")]).unwrap();
        for s in [
            "X | A -o Y, A |- Z",
            "X | |- Z",
            "- | X |- Z",
            "X | |- (A -o Y) -o A -o Z",
        ] {
            for d in m_enumerate(&g, &seq(s)).unwrap() {
                check_foc_in(&d, &seq(s), &g).unwrap();
                let e = m_emb_i(&d);
                m_check(&g, &e, &seq(s)).unwrap();
                assert_eq!(m_focus(&g, &e, &seq(s)), d);
            }
        }
    }

    #[test]
    fn cuts_over_clauses() {
        let g = Multigraph::from_clauses(&[("f", "X | Y |- Z"), ("k", "- | W |- Y")]).unwrap();
        let (d, s) = m_ccut(
            &g,
            &mder("iota[k](pass(ax), ax)"),
            &seq("- | W |- Y"),
            &mder("iota[f](pass(ax), ax)"),
            &seq("X | Y |- Z"),
            0,
        )
        .unwrap();
        assert_eq!(s, seq("X | W |- Z"));
        m_check(&g, &d, &s).unwrap();
        let (d2, s2) = m_scut(&g, &d, &s, &MSeq::Ax, &seq("Z | |- Z")).unwrap();
        assert_eq!(s2, s);
        assert_eq!(m_focus(&g, &d2, &s2), m_focus(&g, &d, &s));
        let (d3, s3) = m_ccut_fma(&g, &MSeq::Ax, &seq("W | |- W"), &d, &s, 0).unwrap();
        assert_eq!(s3, seq("X | W |- Z"));
        m_check(&g, &d3, &s3).unwrap();
    }

    #[test]
    fn imp_c_families_typecheck() {
        let g = Multigraph::empty();
        let pa = (mder("pass(ax)"), seq("- | X |- X"));
        let inst = |d: &(MSeq, Sequent)| Inst::Der(d.0.clone(), d.1.clone());
        let eq = m_eq_generator(
            &g,
            MFamily::PassImpL,
            &[inst(&pa), inst(&(MSeq::Ax, seq("Y | |- Y")))],
            &[],
        )
        .unwrap();
        assert_eq!(eq.sequent, seq("- | X -o Y, X |- Y"));
        assert_eq!(
            m_focus(&g, &eq.lhs, &eq.sequent),
            m_focus(&g, &eq.rhs, &eq.sequent)
        );
        let eq = m_eq_generator(
            &g,
            MFamily::ImpCImpCExchange,
            &[
                inst(&pa),
                inst(&pa),
                inst(&(
                    mder("pass(impL[1](pass(ax), ax))"),
                    seq("- | Y -o Z, Y |- Z"),
                )),
            ],
            &[0, 1],
        )
        .unwrap();
        assert_eq!(eq.sequent, seq("- | X -o Y -o Z, X, X -o Y, X |- Z"));
        assert_eq!(
            m_focus(&g, &eq.lhs, &eq.sequent),
            m_focus(&g, &eq.rhs, &eq.sequent)
        );
    }
}
