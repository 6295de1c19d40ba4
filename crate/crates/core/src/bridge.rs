//! Translations between the calculi.
//!
//! `sound`/`cmplt` go between sequent calculus derivations of `S|Γ⟶C` and
//! categorical maps `S ⟹ ⟨Γ⟩C`, where `⟨Γ⟩C` is the iterated implication.
//! The remaining six functions are the isomorphism between focused
//! derivations and normal natural deduction derivations, phase by phase.

use crate::cat_calc::{self, infer_cat, CatDerivation};
use crate::error::{Error, Result, TypeError};
use crate::focused::{self, FocF, FocI, FocP};
use crate::normal_nd::{self, Ne, Nf, Pn};
use crate::seq_calc::{self, SeqDerivation};
use crate::syntax::{Formula, Sequent};

/// `⟨Γ⟩C`.
pub fn iter_hom(ctx: &[Formula], c: &Formula) -> Formula {
    ctx.iter()
        .rev()
        .fold(c.clone(), |acc, a| Formula::imp(a.clone(), acc))
}

/// `L*` over `Γ`: a map `A⊸D ⟹ ⟨Γ⟩A ⊸ ⟨Γ⟩D`.
pub fn lstar(ctx: &[Formula], a: &Formula, d: &Formula) -> CatDerivation {
    match ctx {
        [] => cat_calc::id(Formula::imp(a.clone(), d.clone())),
        [b] => cat_calc::l(b.clone(), a.clone(), d.clone()),
        [b, rest @ ..] => cat_calc::comp(
            lstar(rest, a, d),
            cat_calc::l(b.clone(), iter_hom(rest, a), iter_hom(rest, d)),
        ),
    }
}

/// From `f : S|Γ⟶C` build `S ⟹ ⟨Γ⟩C`. Assumes `f` checks against `goal`.
pub fn sound(f: &SeqDerivation, goal: &Sequent) -> CatDerivation {
    match f {
        SeqDerivation::Ax => cat_calc::id(goal.succedent.clone()),
        SeqDerivation::ImpR(f1) => {
            let (a, b) = goal.succedent.as_imp().expect("impR at implication");
            let mut ctx = goal.context.clone();
            ctx.push(a.clone());
            sound(f1, &Sequent::new(goal.stoup.clone(), ctx, b.clone()))
        }
        SeqDerivation::Pass(f1) => {
            let (a, rest) = goal.context.split_first().expect("pass with context");
            let s = Sequent::new(Some(a.clone()), rest.to_vec(), goal.succedent.clone());
            cat_calc::comp(
                cat_calc::j(a.clone()),
                cat_calc::imp(cat_calc::id(a.clone()), sound(f1, &s)),
            )
        }
        SeqDerivation::ImpL(k, f1, g1) => {
            let (a, b) = goal
                .stoup
                .as_ref()
                .and_then(Formula::as_imp)
                .expect("impL at implication");
            let (gamma, delta) = goal.context.split_at(*k);
            let fs = Sequent::new(None, gamma.to_vec(), a.clone());
            let gs = Sequent::new(Some(b.clone()), delta.to_vec(), goal.succedent.clone());
            let dc = iter_hom(delta, &goal.succedent);
            cat_calc::comp(
                cat_calc::imp(cat_calc::id(a.clone()), sound(g1, &gs)),
                cat_calc::comp(
                    lstar(gamma, a, &dc),
                    cat_calc::i(iter_hom(gamma, a), iter_hom(gamma, &dc), sound(f1, &fs)),
                ),
            )
        }
    }
}

pub fn sound_checked(f: &SeqDerivation, goal: &Sequent) -> Result<CatDerivation> {
    seq_calc::check_seq(f, goal)?;
    Ok(sound(f, goal))
}

/// `cmplt` at the empty context: `S ⟹ C` to `S|⟶C`. Needs no types.
pub fn cmplt0(d: &CatDerivation) -> Result<SeqDerivation> {
    use seq_calc::{imp_l, imp_r, pass, scut};
    use SeqDerivation::Ax;
    Ok(match d {
        CatDerivation::Id(_) => Ax,
        CatDerivation::Comp(f, g) => scut(&cmplt0(f)?, &cmplt0(g)?),
        CatDerivation::Imp(f, g) => imp_r(imp_l(1, pass(cmplt0(f)?), cmplt0(g)?)),
        CatDerivation::J(_) => imp_r(pass(Ax)),
        CatDerivation::I(_, _, e) => imp_l(0, cmplt0(e)?, Ax),
        CatDerivation::L(..) => imp_r(imp_r(imp_l(2, pass(imp_l(1, pass(Ax), Ax)), Ax))),
        CatDerivation::Gen(name) => {
            return Err(Error::Invalid(format!(
                "cmplt: generator `{name}` has no sequent calculus image"
            )))
        }
    })
}

/// `⟨Γ⟩C | Γ ⟶ C`, applying the iterated implication to its arguments.
fn ev(ctx: &[Formula]) -> SeqDerivation {
    match ctx {
        [] => SeqDerivation::Ax,
        [_, rest @ ..] => seq_calc::imp_l(1, seq_calc::pass(SeqDerivation::Ax), ev(rest)),
    }
}

/// From `d : S ⟹ ⟨Γ⟩C` build `S|Γ⟶C`; returns the derivation and its
/// sequent.
pub fn cmplt(d: &CatDerivation, ctx: &[Formula]) -> Result<(SeqDerivation, Sequent)> {
    let (s, mut c) = infer_cat(d)?;
    for a in ctx {
        match c.as_imp() {
            Some((a1, c1)) if a1 == a => c = c1.clone(),
            _ => {
                return Err(TypeError::new(format!(
                    "cmplt: the target does not decompose against context {}",
                    crate::syntax::print_context(ctx)
                ))
                .into())
            }
        }
    }
    let base = cmplt0(d)?;
    let f = if ctx.is_empty() {
        base
    } else {
        seq_calc::scut(&base, &ev(ctx))
    };
    Ok((f, Sequent::new(s, ctx.to_vec(), c)))
}

// ---------------------------------------------------------------------------
// Normal forms and focused derivations

pub fn nf2i(d: &Nf) -> FocI {
    match d {
        Nf::ImpI(f) => focused::imp_r(nf2i(f)),
        Nf::P2Nf(p) => focused::p2i(p2p_foc(p)),
    }
}

/// `p2P`.
pub fn p2p_foc(d: &Pn) -> FocP {
    match d {
        Pn::Pass(p) => focused::pass_p(p2p_foc(p)),
        Pn::Ne2P(n) => focused::f2p(ne2f(n)),
    }
}

pub fn ne2f(d: &Ne) -> FocF {
    ne2f_acc(d, FocF::Ax)
}

/// `ne2F′ f g`: `f : A|Γ⟶ne B`, `g : B|Δ⟶F C`, result `A|Γ,Δ⟶F C`.
pub fn ne2f_acc(d: &Ne, g: FocF) -> FocF {
    match d {
        Ne::Ax => g,
        Ne::ImpE(_, f, a) => ne2f_acc(f, focused::imp_l_f(a.ctx_len(), nf2i(a), g)),
    }
}

pub fn i2nf(d: &FocI) -> Nf {
    match d {
        FocI::ImpR(f) => normal_nd::imp_i(i2nf(f)),
        FocI::P2I(p) => normal_nd::p2nf(p2p_nf(p)),
    }
}

/// `P2p`.
pub fn p2p_nf(d: &FocP) -> Pn {
    match d {
        FocP::Pass(p) => normal_nd::pass_p(p2p_nf(p)),
        FocP::F2P(f) => normal_nd::ne2p(f2ne(f)),
    }
}

pub fn f2ne(d: &FocF) -> Ne {
    f2ne_acc(Ne::Ax, d)
}

/// `F2ne′ f g`: `f : A|Γ⟶ne B`, `g : B|Δ⟶F C`, result `A|Γ,Δ⟶ne C`.
pub fn f2ne_acc(f: Ne, g: &FocF) -> Ne {
    match g {
        FocF::Ax => f,
        FocF::ImpL(_, a, g2) => {
            let k = f.ctx_len();
            f2ne_acc(normal_nd::imp_e(k, f, i2nf(a)), g2)
        }
        FocF::Clause { .. } => unreachable!("clauses have no normal natural deduction image"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat_calc::check_cat;
    use crate::seq_calc::check_seq;
    use crate::syntax::{parse_context, parse_formula, parse_sequent};
    use crate::term::parse_term;

    fn fm(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn cat(s: &str) -> CatDerivation {
        CatDerivation::from_term(&parse_term(s).unwrap()).unwrap()
    }

    #[test]
    fn iterated_hom() {
        let ctx = parse_context("X, Y").unwrap();
        assert_eq!(iter_hom(&ctx, &fm("Z")), fm("X -o Y -o Z"));
        assert_eq!(iter_hom(&[], &fm("Z")), fm("Z"));
        let (g, d) = ctx.split_at(1);
        assert_eq!(
            iter_hom(&ctx, &fm("Z")),
            iter_hom(g, &iter_hom(d, &fm("Z")))
        );
    }

    #[test]
    fn lstar_types() {
        let a = fm("X");
        let d = fm("Y");
        assert_eq!(lstar(&[], &a, &d), cat_calc::id(fm("X -o Y")));
        assert_eq!(
            lstar(&[fm("Z")], &a, &d),
            cat_calc::l(fm("Z"), a.clone(), d.clone())
        );
        let ctx = parse_context("Z, W").unwrap();
        let goal = parse_sequent("X -o Y | |- (Z -o W -o X) -o Z -o W -o Y").unwrap();
        check_cat(&lstar(&ctx, &a, &d), &goal).unwrap();
    }

    #[test]
    fn cmplt_of_structural_laws() {
        assert_eq!(cmplt0(&cat("j[X]")).unwrap().to_string(), "impR(pass(ax))");
        assert_eq!(
            cmplt0(&cat("i[X -o X, Y](j[X])")).unwrap().to_string(),
            "impL[0](impR(pass(ax)), ax)"
        );
        assert_eq!(
            cmplt0(&cat("L[X,Y,Z]")).unwrap().to_string(),
            "impR(impR(impL[2](pass(impL[1](pass(ax), ax)), ax)))"
        );
        for t in [
            "j[X]",
            "i[X -o X, Y](j[X])",
            "L[X,Y,Z]",
            "imp(id[X], L[X,Y,Z])",
        ] {
            let d = cat(t);
            let (f, s) = cmplt(&d, &[]).unwrap();
            check_seq(&f, &s).unwrap();
        }
    }

    #[test]
    fn cmplt_with_context() {
        let d = cat("L[X,Y,Z]");
        let ctx = parse_context("X -o Y, X").unwrap();
        let (f, s) = cmplt(&d, &ctx).unwrap();
        assert_eq!(s, parse_sequent("Y -o Z | X -o Y, X |- Z").unwrap());
        check_seq(&f, &s).unwrap();
        assert!(cmplt(&d, &parse_context("Y").unwrap()).is_err());
    }

    #[test]
    fn sound_types() {
        for (t, s) in [
            ("ax", "X | |- X"),
            ("impR(pass(ax))", "- | |- X -o X"),
            ("impL[1](pass(ax), ax)", "X -o Y | X |- Y"),
            (
                "impR(impR(impL[2](pass(impL[1](pass(ax), ax)), ax)))",
                "Y -o Z | |- (X -o Y) -o X -o Z",
            ),
            (
                "pass(impL[2](pass(impL[1](pass(ax), ax)), ax))",
                "- | Y -o Z, X -o Y, X |- Z",
            ),
        ] {
            let f = SeqDerivation::from_term(&parse_term(t).unwrap()).unwrap();
            let goal = parse_sequent(s).unwrap();
            let d = sound_checked(&f, &goal).unwrap();
            let want = Sequent::new(
                goal.stoup.clone(),
                vec![],
                iter_hom(&goal.context, &goal.succedent),
            );
            check_cat(&d, &want).unwrap_or_else(|e| panic!("{t}: {e}"));
        }
    }

    #[test]
    fn ne_f_accumulators() {
        let n = normal_nd::imp_e(
            0,
            Ne::Ax,
            normal_nd::p2nf(normal_nd::pass_p(normal_nd::ne2p(Ne::Ax))),
        );
        let f = ne2f(&n);
        assert_eq!(f.to_string(), "impL[1](p2i(pass(f2p(ax))), ax)");
        assert_eq!(f2ne(&f), n);
        assert_eq!(ne2f(&Ne::Ax), ne2f_acc(&Ne::Ax, FocF::Ax));
    }
}
