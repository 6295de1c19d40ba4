//! The three-phase focused sequent calculus.
//!
//! ```text
//!  phase I:  impR(f)        S|Γ⟶I A⊸B   from S|Γ,A⟶I B
//!            p2i(f)         S|Γ⟶I X     from S|Γ⟶P X         (X atomic)
//!  phase P:  pass(f)        −|A,Γ⟶P C   from A|Γ⟶P C
//!            f2p(f)         A|Γ⟶P C     from A|Γ⟶F C
//!  phase F:  ax             X|⟶F X                           (X atomic)
//!            impL[k](f, g)  A⊸B|Γ,Δ⟶F C from −|Γ⟶I A and B|Δ⟶F C
//! ```
//!
//! Over a multigraph the F phase has one more rule, `iota[c](a1, .., an, g)`,
//! applying a clause `c : T|Z1..Zn⟶Z` to arguments `ai : −|Γi⟶I Zi` and
//! continuing with `g : Z|Δ⟶F C`. Its conclusion is `T|Γ1..Γn,Δ⟶F C`, so
//! a loose clause (no `T`) gives an F-phase sequent with an empty stoup.
//!
//! Two normalizers land here: `focus` for sequent calculus derivations and
//! `hered` (hereditary substitution) for natural deduction derivations.

use std::fmt;

use crate::error::{Result, TypeError};
use crate::multigraph::Multigraph;
use crate::nat_ded::{self, NdDerivation};
use crate::seq_calc::{self, SeqDerivation};
use crate::syntax::{Formula, Sequent};
use crate::term::{Param, Term};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum FocI {
    ImpR(Box<FocI>),
    P2I(Box<FocP>),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum FocP {
    Pass(Box<FocP>),
    F2P(Box<FocF>),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum FocF {
    Ax,
    ImpL(usize, Box<FocI>, Box<FocF>),
    Clause {
        name: String,
        args: Vec<FocI>,
        cont: Box<FocF>,
    },
}

/// Phase-I derivations are the canonical forms; this is the public name.
pub type FocDerivation = FocI;

pub fn imp_r(f: FocI) -> FocI {
    FocI::ImpR(Box::new(f))
}

pub fn p2i(p: FocP) -> FocI {
    FocI::P2I(Box::new(p))
}

pub fn pass_p(p: FocP) -> FocP {
    FocP::Pass(Box::new(p))
}

pub fn f2p(f: FocF) -> FocP {
    FocP::F2P(Box::new(f))
}

pub fn imp_l_f(k: usize, a: FocI, g: FocF) -> FocF {
    FocF::ImpL(k, Box::new(a), Box::new(g))
}

impl FocI {
    pub fn ctx_len(&self) -> usize {
        match self {
            FocI::ImpR(f) => f.ctx_len() - 1,
            FocI::P2I(p) => p.ctx_len(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            FocI::ImpR(f) => 1 + f.size(),
            FocI::P2I(p) => 1 + p.size(),
        }
    }

    pub fn to_term(&self) -> Term {
        match self {
            FocI::ImpR(f) => Term::new("impR", vec![], vec![f.to_term()]),
            FocI::P2I(p) => Term::new("p2i", vec![], vec![p.to_term()]),
        }
    }

    pub fn from_term(t: &Term) -> Result<FocI> {
        match t.head.as_str() {
            "impR" => {
                t.expect_shape(0, 1)?;
                Ok(imp_r(FocI::from_term(&t.args[0])?))
            }
            "p2i" => {
                t.expect_shape(0, 1)?;
                Ok(p2i(FocP::from_term(&t.args[0])?))
            }
            _ => Err(t.unknown("focused phase I").into()),
        }
    }
}

impl FocP {
    pub fn ctx_len(&self) -> usize {
        match self {
            FocP::Pass(p) => p.ctx_len() + 1,
            FocP::F2P(f) => f.ctx_len(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            FocP::Pass(p) => 1 + p.size(),
            FocP::F2P(f) => 1 + f.size(),
        }
    }

    pub fn to_term(&self) -> Term {
        match self {
            FocP::Pass(p) => Term::new("pass", vec![], vec![p.to_term()]),
            FocP::F2P(f) => Term::new("f2p", vec![], vec![f.to_term()]),
        }
    }

    pub fn from_term(t: &Term) -> Result<FocP> {
        match t.head.as_str() {
            "pass" => {
                t.expect_shape(0, 1)?;
                Ok(pass_p(FocP::from_term(&t.args[0])?))
            }
            "f2p" => {
                t.expect_shape(0, 1)?;
                Ok(f2p(FocF::from_term(&t.args[0])?))
            }
            _ => Err(t.unknown("focused phase P").into()),
        }
    }
}

impl FocF {
    pub fn ctx_len(&self) -> usize {
        match self {
            FocF::Ax => 0,
            FocF::ImpL(_, a, g) => a.ctx_len() + g.ctx_len(),
            FocF::Clause { args, cont, .. } => {
                args.iter().map(FocI::ctx_len).sum::<usize>() + cont.ctx_len()
            }
        }
    }

    pub fn size(&self) -> usize {
        match self {
            FocF::Ax => 1,
            FocF::ImpL(_, a, g) => 1 + a.size() + g.size(),
            FocF::Clause { args, cont, .. } => {
                1 + args.iter().map(FocI::size).sum::<usize>() + cont.size()
            }
        }
    }

    pub fn to_term(&self) -> Term {
        match self {
            FocF::Ax => Term::leaf("ax"),
            FocF::ImpL(k, a, g) => {
                Term::new("impL", vec![Param::Nat(*k)], vec![a.to_term(), g.to_term()])
            }
            FocF::Clause { name, args, cont } => {
                let mut ts: Vec<Term> = args.iter().map(FocI::to_term).collect();
                ts.push(cont.to_term());
                Term::new("iota", vec![Param::Formula(Formula::atom(name))], ts)
            }
        }
    }

    pub fn from_term(t: &Term) -> Result<FocF> {
        match t.head.as_str() {
            "ax" => {
                t.expect_shape(0, 0)?;
                Ok(FocF::Ax)
            }
            "impL" => {
                t.expect_shape(1, 2)?;
                Ok(imp_l_f(
                    t.nat_param(0)?,
                    FocI::from_term(&t.args[0])?,
                    FocF::from_term(&t.args[1])?,
                ))
            }
            "iota" => {
                if t.args.is_empty() {
                    t.expect_shape(1, 1)?;
                }
                let name = match t.formula_param(0)? {
                    Formula::Atom(n) if t.params.len() == 1 => n.to_string(),
                    _ => {
                        return Err(
                            crate::ParseError::new(t.offset, "iota expects a clause name").into(),
                        )
                    }
                };
                let (last, init) = t.args.split_last().expect("nonempty");
                Ok(FocF::Clause {
                    name,
                    args: init.iter().map(FocI::from_term).collect::<Result<_>>()?,
                    cont: Box::new(FocF::from_term(last)?),
                })
            }
            _ => Err(t.unknown("focused phase F").into()),
        }
    }
}

impl fmt::Display for FocI {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_term())
    }
}

impl fmt::Display for FocF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_term())
    }
}

// ---------------------------------------------------------------------------
// Checking

fn fail<T>(msg: impl Into<String>) -> Result<T, TypeError> {
    Err(TypeError::new(msg))
}

pub fn check_foc(d: &FocI, goal: &Sequent) -> Result<(), TypeError> {
    check_i(d, goal, &Multigraph::empty())
}

pub fn check_foc_in(d: &FocI, goal: &Sequent, graph: &Multigraph) -> Result<(), TypeError> {
    check_i(d, goal, graph)
}

pub fn check_i(d: &FocI, goal: &Sequent, graph: &Multigraph) -> Result<(), TypeError> {
    match d {
        FocI::ImpR(f) => {
            let Some((a, b)) = goal.succedent.as_imp() else {
                return fail("impR needs an implication succedent");
            };
            let mut ctx = goal.context.clone();
            ctx.push(a.clone());
            check_i(f, &Sequent::new(goal.stoup.clone(), ctx, b.clone()), graph)
                .map_err(|e| e.under(0))
        }
        FocI::P2I(p) => {
            if !goal.succedent.is_atomic() {
                return fail("p2i needs an atomic succedent");
            }
            check_p(p, goal, graph).map_err(|e| e.under(0))
        }
    }
}

pub fn check_p(d: &FocP, goal: &Sequent, graph: &Multigraph) -> Result<(), TypeError> {
    match d {
        FocP::Pass(p) => {
            if goal.stoup.is_some() {
                return fail("pass needs an empty stoup");
            }
            let Some((a, rest)) = goal.context.split_first() else {
                return fail("pass needs a nonempty context");
            };
            let premise = Sequent::new(Some(a.clone()), rest.to_vec(), goal.succedent.clone());
            check_p(p, &premise, graph).map_err(|e| e.under(0))
        }
        FocP::F2P(f) => {
            if goal.stoup.is_none() && !matches!(**f, FocF::Clause { .. }) {
                return fail("f2p needs a formula in the stoup");
            }
            check_f(f, goal, graph).map_err(|e| e.under(0))
        }
    }
}

pub fn check_f(d: &FocF, goal: &Sequent, graph: &Multigraph) -> Result<(), TypeError> {
    match d {
        FocF::Ax => match &goal.stoup {
            Some(a) if a.is_atomic() && goal.context.is_empty() && *a == goal.succedent => Ok(()),
            _ => fail(format!("ax does not conclude {goal} (atomic axiom)")),
        },
        FocF::ImpL(k, f, g) => {
            let Some((a, b)) = goal.stoup.as_ref().and_then(Formula::as_imp) else {
                return fail("impL needs an implication in the stoup");
            };
            if *k > goal.context.len() {
                return fail(format!("split {k} out of range"));
            }
            let (gamma, delta) = goal.context.split_at(*k);
            check_i(f, &Sequent::new(None, gamma.to_vec(), a.clone()), graph)
                .map_err(|e| e.under(0))?;
            check_f(
                g,
                &Sequent::new(Some(b.clone()), delta.to_vec(), goal.succedent.clone()),
                graph,
            )
            .map_err(|e| e.under(1))
        }
        FocF::Clause { name, args, cont } => {
            let Some(c) = graph.clause(name) else {
                return fail(format!("unknown clause `{name}`"));
            };
            if c.stoup != goal.stoup {
                return fail(format!("clause `{name}` does not match the stoup"));
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
                check_i(a, &s, graph).map_err(|e| e.under(n))?;
                off += len;
            }
            let s = Sequent::new(
                Some(c.conclusion.clone()),
                goal.context[off..].to_vec(),
                goal.succedent.clone(),
            );
            check_f(cont, &s, graph).map_err(|e| e.under(args.len()))
        }
    }
}

// ---------------------------------------------------------------------------
// Embeddings

pub fn emb_i(d: &FocI) -> SeqDerivation {
    match d {
        FocI::ImpR(f) => seq_calc::imp_r(emb_i(f)),
        FocI::P2I(p) => emb_p(p),
    }
}

pub fn emb_p(d: &FocP) -> SeqDerivation {
    match d {
        FocP::Pass(p) => seq_calc::pass(emb_p(p)),
        FocP::F2P(f) => emb_f(f),
    }
}

pub fn emb_f(d: &FocF) -> SeqDerivation {
    match d {
        FocF::Ax => SeqDerivation::Ax,
        FocF::ImpL(k, a, g) => seq_calc::imp_l(*k, emb_i(a), emb_f(g)),
        FocF::Clause { .. } => unreachable!("clauses only occur over a multigraph"),
    }
}

/// Embed into natural deduction. Types are needed to annotate the
/// argument formula of each `⊸e`.
pub fn emb_nd_i(d: &FocI, goal: &Sequent) -> NdDerivation {
    match d {
        FocI::ImpR(f) => {
            let (a, b) = goal.succedent.as_imp().expect("impR at implication");
            let mut ctx = goal.context.clone();
            ctx.push(a.clone());
            nat_ded::imp_i(emb_nd_i(
                f,
                &Sequent::new(goal.stoup.clone(), ctx, b.clone()),
            ))
        }
        FocI::P2I(p) => emb_nd_p(p, goal),
    }
}

pub fn emb_nd_p(d: &FocP, goal: &Sequent) -> NdDerivation {
    match d {
        FocP::Pass(p) => {
            let (a, rest) = goal.context.split_first().expect("pass with context");
            let s = Sequent::new(Some(a.clone()), rest.to_vec(), goal.succedent.clone());
            nat_ded::nd_pass(emb_nd_p(p, &s))
        }
        FocP::F2P(f) => emb_nd_f(f, goal),
    }
}

pub fn emb_nd_f(d: &FocF, goal: &Sequent) -> NdDerivation {
    let a = goal.stoup.clone().expect("F phase has a stoup");
    emb_nd_spine(NdDerivation::Ax, 0, &a, d, &goal.context)
}

/// `head : S|Γh ⟶ A` (with `|Γh| = head_len`), `d : A|Δ ⟶F C`.
fn emb_nd_spine(
    head: NdDerivation,
    head_len: usize,
    a: &Formula,
    d: &FocF,
    delta: &[Formula],
) -> NdDerivation {
    match d {
        FocF::Ax => head,
        FocF::ImpL(k, arg, g) => {
            let (a1, b1) = a.as_imp().expect("impL at implication");
            let s = Sequent::new(None, delta[..*k].to_vec(), a1.clone());
            let app = nat_ded::imp_e(head_len, a1.clone(), head, emb_nd_i(arg, &s));
            emb_nd_spine(app, head_len + k, b1, g, &delta[*k..])
        }
        FocF::Clause { .. } => unreachable!("clauses only occur over a multigraph"),
    }
}

// ---------------------------------------------------------------------------
// Admissible rules in phase I

/// `pass` in phase I: `A|Γ⟶I C` to `−|A,Γ⟶I C`.
pub fn pass_i(f: &FocI) -> FocI {
    match f {
        FocI::ImpR(g) => imp_r(pass_i(g)),
        FocI::P2I(p) => p2i(pass_p((**p).clone())),
    }
}

/// `⊸L` in phase I: from `−|Γ⟶I A` and `B|Δ⟶I C` build `A⊸B|Γ,Δ⟶I C`.
pub fn imp_l_i(k: usize, f: &FocI, g: &FocI) -> FocI {
    match g {
        FocI::ImpR(g1) => imp_r(imp_l_i(k, f, g1)),
        FocI::P2I(p) => match &**p {
            FocP::F2P(gf) => p2i(f2p(imp_l_f(k, f.clone(), (**gf).clone()))),
            FocP::Pass(_) => unreachable!("impL_I: second premise has a stoup"),
        },
    }
}

/// The η-long identity, built with `impL_I`.
pub fn ax_i(a: &Formula) -> FocI {
    match a {
        Formula::Atom(_) => p2i(f2p(FocF::Ax)),
        Formula::Imp(a1, b1) => imp_r(imp_l_i(1, &pass_i(&ax_i(a1)), &ax_i(b1))),
    }
}

/// The η-long identity, built as a spine of arguments without `impL_I`.
pub fn ax_i_nd(a: &Formula) -> FocI {
    reflect_spine(a, Vec::new())
}

fn reflect_spine(c: &Formula, args: Vec<FocI>) -> FocI {
    match c {
        Formula::Atom(_) => {
            let mut spine = FocF::Ax;
            for arg in args.into_iter().rev() {
                spine = imp_l_f(arg.ctx_len(), arg, spine);
            }
            p2i(f2p(spine))
        }
        Formula::Imp(c1, c2) => {
            let mut args = args;
            args.push(pass_i(&ax_i_nd(c1)));
            imp_r(reflect_spine(c2, args))
        }
    }
}

/// Normalize a sequent calculus derivation of `goal`.
pub fn focus(d: &SeqDerivation, goal: &Sequent) -> FocI {
    match d {
        SeqDerivation::Ax => ax_i(&goal.succedent),
        SeqDerivation::Pass(f) => {
            let (a, rest) = goal.context.split_first().expect("pass with context");
            let s = Sequent::new(Some(a.clone()), rest.to_vec(), goal.succedent.clone());
            pass_i(&focus(f, &s))
        }
        SeqDerivation::ImpR(f) => {
            let (a, b) = goal.succedent.as_imp().expect("impR at implication");
            let mut ctx = goal.context.clone();
            ctx.push(a.clone());
            imp_r(focus(f, &Sequent::new(goal.stoup.clone(), ctx, b.clone())))
        }
        SeqDerivation::ImpL(k, f, g) => {
            let (a, b) = goal
                .stoup
                .as_ref()
                .and_then(Formula::as_imp)
                .expect("impL at implication");
            let fs = Sequent::new(None, goal.context[..*k].to_vec(), a.clone());
            let gs = Sequent::new(
                Some(b.clone()),
                goal.context[*k..].to_vec(),
                goal.succedent.clone(),
            );
            imp_l_i(*k, &focus(f, &fs), &focus(g, &gs))
        }
    }
}

pub fn focus_checked(d: &SeqDerivation, goal: &Sequent) -> Result<FocI> {
    seq_calc::check_seq(d, goal)?;
    Ok(focus(d, goal))
}

// ---------------------------------------------------------------------------
// Hereditary substitution

/// `scut_I`: from `f : S|Γ⟶I A` and `g : A|Δ⟶I C` build `S|Γ,Δ⟶I C`.
pub fn scut_i(f: &FocI, g: &FocI) -> FocI {
    match g {
        FocI::ImpR(g1) => imp_r(scut_i(f, g1)),
        FocI::P2I(p) => match &**p {
            FocP::F2P(gf) => scut_if(f, gf),
            FocP::Pass(_) => unreachable!("scut_I: second premise has a stoup"),
        },
    }
}

/// Substitute a phase-I derivation into the stoup of an F-phase one with
/// atomic succedent; redexes created at `⊸L` are reduced on the spot.
fn scut_if(f: &FocI, g: &FocF) -> FocI {
    match g {
        FocF::Ax => f.clone(),
        FocF::ImpL(_, a, g2) => match f {
            FocI::ImpR(f1) => {
                let at = f.ctx_len();
                scut_if(&ccut_i(a, f1, at), g2)
            }
            FocI::P2I(_) => unreachable!("scut_I: implication in phase I is impR-rooted"),
        },
        FocF::Clause { .. } => match f {
            FocI::P2I(fp) => p2i(scut_p(fp, g)),
            FocI::ImpR(_) => unreachable!("scut_I: clause stoups are atomic"),
        },
    }
}

/// `scut_P`: from `f : S|Γ⟶P A` and `g : A|Δ⟶F C` build `S|Γ,Δ⟶P C`.
pub fn scut_p(f: &FocP, g: &FocF) -> FocP {
    match f {
        FocP::Pass(f1) => pass_p(scut_p(f1, g)),
        FocP::F2P(ff) => f2p(scut_f(ff, g)),
    }
}

/// `scut_F`: from `f : S|Γ⟶F A` and `g : A|Δ⟶F C` build `S|Γ,Δ⟶F C`.
pub fn scut_f(f: &FocF, g: &FocF) -> FocF {
    match f {
        FocF::Ax => g.clone(),
        FocF::ImpL(k, a, f2) => FocF::ImpL(*k, a.clone(), Box::new(scut_f(f2, g))),
        FocF::Clause { name, args, cont } => FocF::Clause {
            name: name.clone(),
            args: args.clone(),
            cont: Box::new(scut_f(cont, g)),
        },
    }
}

/// `ccut_I`: from `e : −|Γ⟶I A` and `g : S|Δ0,A,Δ1⟶I C` (A at `pos`)
/// build `S|Δ0,Γ,Δ1⟶I C`.
pub fn ccut_i(e: &FocI, g: &FocI, pos: usize) -> FocI {
    match g {
        FocI::ImpR(g1) => imp_r(ccut_i(e, g1, pos)),
        FocI::P2I(p) => p2i(ccut_p(e, p, pos)),
    }
}

/// `ccut_P` for succedents that are atomic, as in every phase-I derivation.
pub fn ccut_p(e: &FocI, g: &FocP, pos: usize) -> FocP {
    match g {
        FocP::Pass(g1) => {
            if pos == 0 {
                match scut_i(e, &p2i((**g1).clone())) {
                    FocI::P2I(p) => *p,
                    FocI::ImpR(_) => unreachable!("ccut_P: atomic succedent"),
                }
            } else {
                pass_p(ccut_p(e, g1, pos - 1))
            }
        }
        FocP::F2P(gf) => f2p(ccut_f(e, gf, pos)),
    }
}

pub fn ccut_f(e: &FocI, g: &FocF, pos: usize) -> FocF {
    match g {
        FocF::Ax => unreachable!("ccut_F: ax has an empty context"),
        FocF::ImpL(k, a, g2) => {
            if pos < *k {
                FocF::ImpL(k + e.ctx_len() - 1, Box::new(ccut_i(e, a, pos)), g2.clone())
            } else {
                FocF::ImpL(*k, a.clone(), Box::new(ccut_f(e, g2, pos - k)))
            }
        }
        FocF::Clause { name, args, cont } => {
            let mut off = 0;
            let mut args = args.clone();
            for a in args.iter_mut() {
                let len = a.ctx_len();
                if pos < off + len {
                    *a = ccut_i(e, a, pos - off);
                    return FocF::Clause {
                        name: name.clone(),
                        args,
                        cont: cont.clone(),
                    };
                }
                off += len;
            }
            FocF::Clause {
                name: name.clone(),
                args,
                cont: Box::new(ccut_f(e, cont, pos - off)),
            }
        }
    }
}

/// `⊸e` in phase I: the function part is necessarily `impR f`, and the
/// result is `ccut_I(g, f)`.
pub fn imp_e_i(f: &FocI, g: &FocI) -> FocI {
    match f {
        FocI::ImpR(f1) => ccut_i(g, f1, f.ctx_len()),
        FocI::P2I(_) => unreachable!("impE_I: implication in phase I is impR-rooted"),
    }
}

/// Normalize a natural deduction derivation of `goal`.
pub fn hered(d: &NdDerivation, goal: &Sequent) -> FocI {
    match d {
        NdDerivation::Ax => ax_i_nd(&goal.succedent),
        NdDerivation::Pass(f) => {
            let (a, rest) = goal.context.split_first().expect("pass with context");
            let s = Sequent::new(Some(a.clone()), rest.to_vec(), goal.succedent.clone());
            pass_i(&hered(f, &s))
        }
        NdDerivation::ImpI(f) => {
            let (a, b) = goal.succedent.as_imp().expect("impI at implication");
            let mut ctx = goal.context.clone();
            ctx.push(a.clone());
            imp_r(hered(f, &Sequent::new(goal.stoup.clone(), ctx, b.clone())))
        }
        NdDerivation::ImpE {
            split,
            arg,
            fun,
            val,
        } => {
            let fs = Sequent::new(
                goal.stoup.clone(),
                goal.context[..*split].to_vec(),
                Formula::imp(arg.clone(), goal.succedent.clone()),
            );
            let vs = Sequent::new(None, goal.context[*split..].to_vec(), arg.clone());
            imp_e_i(&hered(fun, &fs), &hered(val, &vs))
        }
    }
}

pub fn hered_checked(d: &NdDerivation, goal: &Sequent) -> Result<FocI> {
    nat_ded::check_nd(d, goal)?;
    Ok(hered(d, goal))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, parse_sequent};
    use crate::term::parse_term;

    fn seq(s: &str) -> Sequent {
        parse_sequent(s).unwrap()
    }

    fn fm(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn sder(s: &str) -> SeqDerivation {
        SeqDerivation::from_term(&parse_term(s).unwrap()).unwrap()
    }

    #[test]
    fn ax_expansions() {
        assert_eq!(ax_i(&fm("X")).to_string(), "p2i(f2p(ax))");
        let e = ax_i(&fm("X -o Y"));
        assert_eq!(
            e.to_string(),
            "impR(p2i(f2p(impL[1](p2i(pass(f2p(ax))), ax))))"
        );
        assert_eq!(focus(&SeqDerivation::Ax, &seq("X -o Y | |- X -o Y")), e);
        for f in [
            "X",
            "X -o Y",
            "(X -o Y) -o Z",
            "(X -o Y) -o (Y -o Z) -o X -o Z",
        ] {
            let a = fm(f);
            assert_eq!(ax_i_nd(&a), ax_i(&a));
            let s = Sequent::new(Some(a.clone()), vec![], a.clone());
            check_foc(&ax_i(&a), &s).unwrap();
        }
    }

    #[test]
    fn embeddings() {
        assert_eq!(emb_f(&FocF::Ax), SeqDerivation::Ax);
        let d = p2i(pass_p(f2p(FocF::Ax)));
        assert_eq!(emb_i(&d), sder("pass(ax)"));
        let s = seq("- | X |- X");
        check_foc(&d, &s).unwrap();
        assert_eq!(emb_nd_i(&d, &s).to_string(), "pass(ax)");
        let g = imp_l_f(1, p2i(pass_p(f2p(FocF::Ax))), FocF::Ax);
        let gs = seq("X -o Y | X |- Y");
        assert_eq!(emb_nd_f(&g, &gs).to_string(), "impE[0, X](ax, pass(ax))");
    }

    #[test]
    fn checker_enforces_phases() {
        let bad = p2i(f2p(FocF::Ax));
        assert!(check_foc(&bad, &seq("X -o Y | |- X -o Y")).is_err());
        assert!(check_foc(&bad, &seq("- | X |- X")).is_err());
        assert!(check_foc(&p2i(pass_p(f2p(FocF::Ax))), &seq("X | |- X")).is_err());
    }

    #[test]
    fn eta_generator_is_identified() {
        let s = seq("X -o Y | |- X -o Y");
        let lhs = focus(&SeqDerivation::Ax, &s);
        let rhs = focus(&sder("impR(impL[1](pass(ax), ax))"), &s);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn retraction_on_small_cases() {
        let s = seq("X -o Y | X |- Y");
        let g = p2i(f2p(imp_l_f(1, p2i(pass_p(f2p(FocF::Ax))), FocF::Ax)));
        check_foc(&g, &s).unwrap();
        assert_eq!(focus(&emb_i(&g), &s), g);
        assert_eq!(hered(&emb_nd_i(&g, &s), &s), g);
    }

    #[test]
    fn identity_substitution() {
        let s = seq("X -o Y | X |- Y");
        let g = p2i(f2p(imp_l_f(1, p2i(pass_p(f2p(FocF::Ax))), FocF::Ax)));
        let id_x = pass_i(&ax_i(&fm("X")));
        assert_eq!(ccut_i(&id_x, &g, 0), g);
        assert_eq!(scut_i(&ax_i(&fm("X -o Y")), &g), g);
        check_foc(&scut_i(&ax_i(&fm("X -o Y")), &g), &s).unwrap();
    }

    #[test]
    fn term_roundtrip() {
        let g = p2i(f2p(imp_l_f(1, p2i(pass_p(f2p(FocF::Ax))), FocF::Ax)));
        assert_eq!(FocI::from_term(&g.to_term()).unwrap(), g);
        let c = p2i(f2p(FocF::Clause {
            name: "g0".into(),
            args: vec![ax_i(&fm("X"))],
            cont: Box::new(FocF::Ax),
        }));
        assert_eq!(c.to_string(), "p2i(f2p(iota[g0](p2i(f2p(ax)), ax)))");
        assert_eq!(FocI::from_term(&c.to_term()).unwrap(), c);
    }
}
