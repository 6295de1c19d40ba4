//! The cut-free sequent calculus with a stoup.
//!
//! ```text
//!   S | Γ,A ⟶ B          A | Γ ⟶ C                            − | Γ ⟶ A    B | Δ ⟶ C
//!  ───────────── ⊸R     ──────────── pass    ───────── ax    ──────────────────────── ⊸L
//!   S | Γ ⟶ A⊸B         − | A,Γ ⟶ C          A | ⟶ A          A⊸B | Γ,Δ ⟶ C
//! ```
//!
//! `ImpL(k, f, g)` records the split: the first `k` context formulae of the
//! conclusion go to the loose premise `f`.

use crate::error::{Error, Result, TypeError};
use crate::syntax::{Formula, Sequent};
use crate::term::{Param, Term};
use crate::{check_arity, inst_der, inst_fma, Inst};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum SeqDerivation {
    Ax,
    Pass(Box<SeqDerivation>),
    ImpR(Box<SeqDerivation>),
    ImpL(usize, Box<SeqDerivation>, Box<SeqDerivation>),
}

use SeqDerivation::*;

pub fn pass(f: SeqDerivation) -> SeqDerivation {
    Pass(Box::new(f))
}

pub fn imp_r(f: SeqDerivation) -> SeqDerivation {
    ImpR(Box::new(f))
}

pub fn imp_l(k: usize, f: SeqDerivation, g: SeqDerivation) -> SeqDerivation {
    ImpL(k, Box::new(f), Box::new(g))
}

impl SeqDerivation {
    /// Length of the conclusion's context, computed from the tree alone.
    pub fn ctx_len(&self) -> usize {
        match self {
            Ax => 0,
            Pass(f) => f.ctx_len() + 1,
            ImpR(f) => f.ctx_len() - 1,
            ImpL(_, f, g) => f.ctx_len() + g.ctx_len(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Ax => 1,
            Pass(f) | ImpR(f) => 1 + f.size(),
            ImpL(_, f, g) => 1 + f.size() + g.size(),
        }
    }

    pub fn to_term(&self) -> Term {
        match self {
            Ax => Term::leaf("ax"),
            Pass(f) => Term::new("pass", vec![], vec![f.to_term()]),
            ImpR(f) => Term::new("impR", vec![], vec![f.to_term()]),
            ImpL(k, f, g) => {
                Term::new("impL", vec![Param::Nat(*k)], vec![f.to_term(), g.to_term()])
            }
        }
    }

    pub fn from_term(t: &Term) -> Result<SeqDerivation> {
        Ok(match t.head.as_str() {
            "ax" => {
                t.expect_shape(0, 0)?;
                Ax
            }
            "pass" => {
                t.expect_shape(0, 1)?;
                pass(Self::from_term(&t.args[0])?)
            }
            "impR" => {
                t.expect_shape(0, 1)?;
                imp_r(Self::from_term(&t.args[0])?)
            }
            "impL" => {
                t.expect_shape(1, 2)?;
                imp_l(
                    t.nat_param(0)?,
                    Self::from_term(&t.args[0])?,
                    Self::from_term(&t.args[1])?,
                )
            }
            _ => return Err(t.unknown("sequent calculus").into()),
        })
    }
}

impl std::fmt::Display for SeqDerivation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_term())
    }
}

fn fail<T>(msg: impl Into<String>) -> Result<T, TypeError> {
    Err(TypeError::new(msg))
}

pub fn check_seq(d: &SeqDerivation, goal: &Sequent) -> Result<(), TypeError> {
    match d {
        Ax => match &goal.stoup {
            Some(a) if goal.context.is_empty() && *a == goal.succedent => Ok(()),
            _ => fail(format!("ax does not conclude {goal}")),
        },
        Pass(f) => {
            if goal.stoup.is_some() {
                return fail("pass needs an empty stoup");
            }
            let Some((a, rest)) = goal.context.split_first() else {
                return fail("pass needs a nonempty context");
            };
            let premise = Sequent::new(Some(a.clone()), rest.to_vec(), goal.succedent.clone());
            check_seq(f, &premise).map_err(|e| e.under(0))
        }
        ImpR(f) => {
            let Some((a, b)) = goal.succedent.as_imp() else {
                return fail("impR needs an implication succedent");
            };
            let mut ctx = goal.context.clone();
            ctx.push(a.clone());
            let premise = Sequent::new(goal.stoup.clone(), ctx, b.clone());
            check_seq(f, &premise).map_err(|e| e.under(0))
        }
        ImpL(k, f, g) => {
            let Some((a, b)) = goal.stoup.as_ref().and_then(Formula::as_imp) else {
                return fail("impL needs an implication in the stoup");
            };
            if *k > goal.context.len() {
                return fail(format!("split {k} out of range"));
            }
            let (gamma, delta) = goal.context.split_at(*k);
            check_seq(f, &Sequent::new(None, gamma.to_vec(), a.clone())).map_err(|e| e.under(0))?;
            check_seq(
                g,
                &Sequent::new(Some(b.clone()), delta.to_vec(), goal.succedent.clone()),
            )
            .map_err(|e| e.under(1))
        }
    }
}

/// Stoup cut: from `f : S|Γ⟶A` and `g : A|Δ⟶C` build `S|Γ,Δ⟶C`.
/// Assumes well-typed input.
pub fn scut(f: &SeqDerivation, g: &SeqDerivation) -> SeqDerivation {
    match f {
        Ax => g.clone(),
        Pass(f1) => pass(scut(f1, g)),
        ImpL(k, f1, f2) => ImpL(*k, f1.clone(), Box::new(scut(f2, g))),
        ImpR(f1) => match g {
            Ax => f.clone(),
            ImpR(g1) => imp_r(scut(f, g1)),
            ImpL(_, g1, g2) => {
                let at = f1.ctx_len() - 1;
                scut(&ccut(g1, f1, at), g2)
            }
            Pass(_) => unreachable!("scut: pass cannot have a nonempty stoup"),
        },
    }
}

/// Context cut: from `e : −|Γ⟶A` and `g : S|Δ0,A,Δ1⟶C` with `A` at
/// position `pos`, build `S|Δ0,Γ,Δ1⟶C`. Assumes well-typed input.
pub fn ccut(e: &SeqDerivation, g: &SeqDerivation, pos: usize) -> SeqDerivation {
    match g {
        Ax => unreachable!("ccut: ax has an empty context"),
        Pass(g1) => {
            if pos == 0 {
                scut(e, g1)
            } else {
                pass(ccut(e, g1, pos - 1))
            }
        }
        ImpR(g1) => imp_r(ccut(e, g1, pos)),
        ImpL(k, g1, g2) => {
            if pos < *k {
                ImpL(k + e.ctx_len() - 1, Box::new(ccut(e, g1, pos)), g2.clone())
            } else {
                ImpL(*k, g1.clone(), Box::new(ccut(e, g2, pos - k)))
            }
        }
    }
}

/// The derived rule ⊸C: from `e : −|Γ⟶A` and `g : S|Δ0,B,Δ1⟶C` with `B` at
/// `pos`, build `S|Δ0,A⊸B,Γ,Δ1⟶C` as `ccut(pass(⊸L(e, ax)), g)`.
pub fn imp_c(e: &SeqDerivation, g: &SeqDerivation, pos: usize) -> SeqDerivation {
    ccut(&pass(imp_l(e.ctx_len(), e.clone(), Ax)), g, pos)
}

/// Invert `pass`: from `f : −|A,Γ⟶C` build `A|Γ⟶C`.
pub fn act(f: &SeqDerivation) -> Result<SeqDerivation> {
    match f {
        Pass(f1) => Ok((**f1).clone()),
        ImpR(f1) => Ok(imp_r(act(f1)?)),
        _ => Err(Error::Invalid(
            "act: input does not have an empty stoup and nonempty context".into(),
        )),
    }
}

pub fn scut_checked(
    f: &SeqDerivation,
    fs: &Sequent,
    g: &SeqDerivation,
    gs: &Sequent,
) -> Result<(SeqDerivation, Sequent)> {
    check_seq(f, fs)?;
    check_seq(g, gs)?;
    if gs.stoup.as_ref() != Some(&fs.succedent) {
        return Err(TypeError::new("scut: cut formula mismatch").into());
    }
    let mut ctx = fs.context.clone();
    ctx.extend(gs.context.iter().cloned());
    let s = Sequent::new(fs.stoup.clone(), ctx, gs.succedent.clone());
    Ok((scut(f, g), s))
}

pub fn ccut_checked(
    e: &SeqDerivation,
    es: &Sequent,
    g: &SeqDerivation,
    gs: &Sequent,
    pos: usize,
) -> Result<(SeqDerivation, Sequent)> {
    check_seq(e, es)?;
    check_seq(g, gs)?;
    if es.stoup.is_some() {
        return Err(TypeError::new("ccut: cut derivation must have an empty stoup").into());
    }
    if gs.context.get(pos) != Some(&es.succedent) {
        return Err(TypeError::new(format!("ccut: cut formula mismatch at {pos}")).into());
    }
    let mut ctx = gs.context[..pos].to_vec();
    ctx.extend(es.context.iter().cloned());
    ctx.extend(gs.context[pos + 1..].iter().cloned());
    let s = Sequent::new(gs.stoup.clone(), ctx, gs.succedent.clone());
    Ok((ccut(e, g, pos), s))
}

pub fn imp_c_checked(
    e: &SeqDerivation,
    es: &Sequent,
    g: &SeqDerivation,
    gs: &Sequent,
    pos: usize,
) -> Result<(SeqDerivation, Sequent)> {
    check_seq(e, es)?;
    check_seq(g, gs)?;
    if es.stoup.is_some() || pos >= gs.context.len() {
        return Err(TypeError::new("impC: ill-formed premises").into());
    }
    let mut ctx = gs.context[..pos].to_vec();
    ctx.push(Formula::imp(es.succedent.clone(), gs.context[pos].clone()));
    ctx.extend(es.context.iter().cloned());
    ctx.extend(gs.context[pos + 1..].iter().cloned());
    let s = Sequent::new(gs.stoup.clone(), ctx, gs.succedent.clone());
    Ok((imp_c(e, g, pos), s))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SeqFamily {
    Eta,
    CommPassImpR,
    CommImpLImpR,
}

impl SeqFamily {
    pub const ALL: [SeqFamily; 3] = [
        SeqFamily::Eta,
        SeqFamily::CommPassImpR,
        SeqFamily::CommImpLImpR,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SeqFamily::Eta => "eta",
            SeqFamily::CommPassImpR => "comm-pass-impR",
            SeqFamily::CommImpLImpR => "comm-impL-impR",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SeqEquation {
    pub name: SeqFamily,
    pub sequent: Sequent,
    pub lhs: SeqDerivation,
    pub rhs: SeqDerivation,
}

/// Instantiate one generator of ≗.
///
/// * `Eta`: formulae `A`, `B`.
/// * `CommPassImpR`: a derivation `f : A'|Γ,A⟶B`.
/// * `CommImpLImpR`: `f : −|Γ⟶A`, `g : B|Δ,A'⟶B'`.
pub fn seq_eq_generator(fam: SeqFamily, args: &[Inst<SeqDerivation>]) -> Result<SeqEquation> {
    let eq = match fam {
        SeqFamily::Eta => {
            check_arity(fam.name(), args, 2)?;
            let a = inst_fma(args, 0)?;
            let b = inst_fma(args, 1)?;
            let ab = Formula::imp(a, b);
            SeqEquation {
                name: fam,
                sequent: Sequent::new(Some(ab.clone()), vec![], ab),
                lhs: Ax,
                rhs: imp_r(imp_l(1, pass(Ax), Ax)),
            }
        }
        SeqFamily::CommPassImpR => {
            check_arity(fam.name(), args, 1)?;
            let (f, fs) = inst_der(args, 0)?;
            check_seq(&f, &fs)?;
            let (Some(a1), Some((a, gamma))) = (fs.stoup.clone(), fs.context.split_last()) else {
                return Err(TypeError::new("premise must be A'|Γ,A ⟶ B").into());
            };
            let mut ctx = vec![a1];
            ctx.extend(gamma.iter().cloned());
            SeqEquation {
                name: fam,
                sequent: Sequent::new(None, ctx, Formula::imp(a.clone(), fs.succedent.clone())),
                lhs: pass(imp_r(f.clone())),
                rhs: imp_r(pass(f)),
            }
        }
        SeqFamily::CommImpLImpR => {
            check_arity(fam.name(), args, 2)?;
            let (f, fs) = inst_der(args, 0)?;
            let (g, gs) = inst_der(args, 1)?;
            check_seq(&f, &fs)?;
            check_seq(&g, &gs)?;
            let (Some(b), Some((a1, delta))) = (gs.stoup.clone(), gs.context.split_last()) else {
                return Err(TypeError::new("second premise must be B|Δ,A' ⟶ B'").into());
            };
            if fs.stoup.is_some() {
                return Err(TypeError::new("first premise must have an empty stoup").into());
            }
            let k = fs.context.len();
            let mut ctx = fs.context.clone();
            ctx.extend(delta.iter().cloned());
            SeqEquation {
                name: fam,
                sequent: Sequent::new(
                    Some(Formula::imp(fs.succedent.clone(), b)),
                    ctx,
                    Formula::imp(a1.clone(), gs.succedent.clone()),
                ),
                lhs: imp_l(k, f.clone(), imp_r(g.clone())),
                rhs: imp_r(imp_l(k, f, g)),
            }
        }
    };
    check_seq(&eq.lhs, &eq.sequent)?;
    check_seq(&eq.rhs, &eq.sequent)?;
    Ok(eq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, parse_sequent};
    use crate::term::parse_term;

    fn seq(s: &str) -> Sequent {
        parse_sequent(s).unwrap()
    }

    fn der(s: &str) -> SeqDerivation {
        SeqDerivation::from_term(&parse_term(s).unwrap()).unwrap()
    }

    #[test]
    fn checks_basic_derivations() {
        assert!(check_seq(&Ax, &seq("X | |- X")).is_ok());
        assert!(check_seq(&der("impR(pass(ax))"), &seq("- | |- X -o X")).is_ok());
        assert!(check_seq(&Ax, &seq("X | |- Y")).is_err());
        let e = check_seq(&der("impL[0](ax, ax)"), &seq("X -o Y | |- Y")).unwrap_err();
        assert_eq!(e.path, vec![0]);
        let e = check_seq(&der("impL[2](ax, ax)"), &seq("X -o Y | X |- Y")).unwrap_err();
        assert!(e.message.contains("split"));
    }

    #[test]
    fn cut_units() {
        let f = der("impL[1](pass(ax), ax)");
        let fs = seq("X -o Y | X |- Y");
        assert_eq!(scut(&f, &Ax), f);
        assert_eq!(scut(&Ax, &f), f);
        let (c, cs) = ccut_checked(&der("pass(ax)"), &seq("- | X |- X"), &f, &fs, 0).unwrap();
        assert_eq!(cs, fs);
        assert!(check_seq(&c, &cs).is_ok());
        let e = der("impR(pass(impL[1](pass(ax), ax)))");
        let es = seq("- | X -o Y |- X -o Y");
        assert_eq!(ccut(&e, &pass(Ax), 0), e);
        assert!(check_seq(&ccut(&e, &pass(Ax), 0), &es).is_ok());
    }

    #[test]
    fn scut_reduces_principal_cut() {
        // ⊸R(pass ax) : −|⟶X⊸X cut against ⊸L(pass ax, ax) : X⊸X|X⟶X
        let f = der("impR(pass(ax))");
        let g = der("impL[1](pass(ax), ax)");
        let (h, hs) = scut_checked(&f, &seq("- | |- X -o X"), &g, &seq("X -o X | X |- X")).unwrap();
        assert_eq!(hs, seq("- | X |- X"));
        assert_eq!(h, pass(Ax));
    }

    #[test]
    fn imp_c_unfolds_definition() {
        let e = der("pass(ax)");
        let (h, hs) =
            imp_c_checked(&e, &seq("- | X |- X"), &pass(Ax), &seq("- | Y |- Y"), 0).unwrap();
        assert_eq!(hs, seq("- | X -o Y, X |- Y"));
        assert_eq!(h, pass(imp_l(1, pass(Ax), Ax)));
        assert!(check_seq(&h, &hs).is_ok());
    }

    #[test]
    fn act_inverts_pass() {
        assert_eq!(act(&pass(Ax)).unwrap(), Ax);
        assert_eq!(act(&der("impR(pass(ax))")).unwrap(), der("impR(ax)"));
        assert!(act(&Ax).is_err());
    }

    #[test]
    fn generators_typecheck() {
        let x = parse_formula("X").unwrap();
        let y = parse_formula("Y").unwrap();
        let eta = seq_eq_generator(SeqFamily::Eta, &[Inst::Fma(x.clone()), Inst::Fma(y)]).unwrap();
        assert_eq!(eta.rhs, der("impR(impL[1](pass(ax), ax))"));
        let c = seq_eq_generator(
            SeqFamily::CommPassImpR,
            &[Inst::Der(
                der("impL[1](pass(ax), ax)"),
                seq("X -o Y | X |- Y"),
            )],
        )
        .unwrap();
        assert_eq!(c.sequent, seq("- | X -o Y |- X -o Y"));
        let c = seq_eq_generator(
            SeqFamily::CommImpLImpR,
            &[
                Inst::Der(der("pass(ax)"), seq("- | X |- X")),
                Inst::Der(der("impL[1](pass(ax), ax)"), seq("Y -o Z | Y |- Z")),
            ],
        )
        .unwrap();
        assert_eq!(c.sequent, seq("X -o Y -o Z | X |- Y -o Z"));
        assert!(seq_eq_generator(SeqFamily::Eta, &[Inst::Fma(x)]).is_err());
    }

    #[test]
    fn term_roundtrip() {
        let d = der("impR(impL[1](pass(ax), impR(ax)))");
        assert_eq!(d.to_string(), "impR(impL[1](pass(ax), impR(ax)))");
        assert_eq!(SeqDerivation::from_term(&d.to_term()).unwrap(), d);
        assert!(SeqDerivation::from_term(&parse_term("foo").unwrap()).is_err());
    }
}
