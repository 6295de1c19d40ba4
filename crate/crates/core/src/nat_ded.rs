//! Natural deduction: a skew planar lambda calculus.
//!
//! ```text
//!   S | Γ,A ⟶ B          A | Γ ⟶ C                         S | Γ ⟶ A⊸B    − | Δ ⟶ A
//!  ───────────── ⊸i     ──────────── pass   ───────── ax   ───────────────────────── ⊸e
//!   S | Γ ⟶ A⊸B         − | A,Γ ⟶ C         A | ⟶ A          S | Γ,Δ ⟶ B
//! ```
//!
//! Variables are positional: planarity fixes the binding structure, so the
//! derivation tree is the term. `ImpE` records the context split and the
//! argument formula `A`, which cannot be recovered from a β-redex.

use crate::error::{Error, Result, TypeError};
use crate::syntax::{Formula, Sequent};
use crate::term::{Param, Term};
use crate::{check_arity, inst_der, Inst};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum NdDerivation {
    Ax,
    Pass(Box<NdDerivation>),
    ImpI(Box<NdDerivation>),
    ImpE {
        split: usize,
        arg: Formula,
        fun: Box<NdDerivation>,
        val: Box<NdDerivation>,
    },
}

use NdDerivation::*;

pub fn nd_pass(f: NdDerivation) -> NdDerivation {
    Pass(Box::new(f))
}

pub fn imp_i(f: NdDerivation) -> NdDerivation {
    ImpI(Box::new(f))
}

pub fn imp_e(split: usize, arg: Formula, fun: NdDerivation, val: NdDerivation) -> NdDerivation {
    ImpE {
        split,
        arg,
        fun: Box::new(fun),
        val: Box::new(val),
    }
}

impl NdDerivation {
    pub fn ctx_len(&self) -> usize {
        match self {
            Ax => 0,
            Pass(f) => f.ctx_len() + 1,
            ImpI(f) => f.ctx_len() - 1,
            ImpE { fun, val, .. } => fun.ctx_len() + val.ctx_len(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Ax => 1,
            Pass(f) | ImpI(f) => 1 + f.size(),
            ImpE { fun, val, .. } => 1 + fun.size() + val.size(),
        }
    }

    pub fn to_term(&self) -> Term {
        match self {
            Ax => Term::leaf("ax"),
            Pass(f) => Term::new("pass", vec![], vec![f.to_term()]),
            ImpI(f) => Term::new("impI", vec![], vec![f.to_term()]),
            ImpE {
                split,
                arg,
                fun,
                val,
            } => Term::new(
                "impE",
                vec![Param::Nat(*split), Param::Formula(arg.clone())],
                vec![fun.to_term(), val.to_term()],
            ),
        }
    }

    /// Read a fully annotated term (`impE[k, A](f, g)` everywhere).
    pub fn from_term(t: &Term) -> Result<NdDerivation> {
        Ok(match t.head.as_str() {
            "ax" => {
                t.expect_shape(0, 0)?;
                Ax
            }
            "pass" => {
                t.expect_shape(0, 1)?;
                nd_pass(Self::from_term(&t.args[0])?)
            }
            "impI" => {
                t.expect_shape(0, 1)?;
                imp_i(Self::from_term(&t.args[0])?)
            }
            "impE" => {
                t.expect_shape(2, 2)?;
                imp_e(
                    t.nat_param(0)?,
                    t.formula_param(1)?,
                    Self::from_term(&t.args[0])?,
                    Self::from_term(&t.args[1])?,
                )
            }
            _ => return Err(t.unknown("natural deduction").into()),
        })
    }

    /// Read a term against a goal sequent, inferring omitted `impE`
    /// argument formulae where the function or argument part determines
    /// it. The result is checked against the goal.
    pub fn elaborate(t: &Term, goal: &Sequent) -> Result<NdDerivation> {
        let d = elaborate(t, goal)?;
        check_nd(&d, goal)?;
        Ok(d)
    }
}

impl std::fmt::Display for NdDerivation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_term())
    }
}

/// Try to compute the succedent of a term from its antecedent.
fn synth(t: &Term, stoup: Option<&Formula>, ctx: &[Formula]) -> Option<Formula> {
    match t.head.as_str() {
        "ax" if ctx.is_empty() => stoup.cloned(),
        "pass" if stoup.is_none() && t.args.len() == 1 => {
            let (a, rest) = ctx.split_first()?;
            synth(&t.args[0], Some(a), rest)
        }
        "impE" if t.args.len() == 2 => {
            let k = t.nat_param(0).ok()?;
            if k > ctx.len() {
                return None;
            }
            let f = synth(&t.args[0], stoup, &ctx[..k])?;
            f.as_imp().map(|(_, b)| b.clone())
        }
        _ => None,
    }
}

fn elaborate(t: &Term, goal: &Sequent) -> Result<NdDerivation> {
    let wrap = |i: usize| {
        move |e: Error| match e {
            Error::Type(te) => Error::Type(te.under(i)),
            other => other,
        }
    };
    match t.head.as_str() {
        "ax" => {
            t.expect_shape(0, 0)?;
            Ok(Ax)
        }
        "pass" => {
            t.expect_shape(0, 1)?;
            let Some((a, rest)) = goal.context.split_first().filter(|_| goal.stoup.is_none())
            else {
                return Err(
                    TypeError::new("pass needs an empty stoup and nonempty context").into(),
                );
            };
            let premise = Sequent::new(Some(a.clone()), rest.to_vec(), goal.succedent.clone());
            Ok(nd_pass(elaborate(&t.args[0], &premise).map_err(wrap(0))?))
        }
        "impI" => {
            t.expect_shape(0, 1)?;
            let Some((a, b)) = goal.succedent.as_imp() else {
                return Err(TypeError::new("impI needs an implication succedent").into());
            };
            let mut ctx = goal.context.clone();
            ctx.push(a.clone());
            let premise = Sequent::new(goal.stoup.clone(), ctx, b.clone());
            Ok(imp_i(elaborate(&t.args[0], &premise).map_err(wrap(0))?))
        }
        "impE" => {
            if t.params.len() == 2 {
                t.expect_shape(2, 2)?;
            } else {
                t.expect_shape(1, 2)?;
            }
            let k = t.nat_param(0)?;
            if k > goal.context.len() {
                return Err(TypeError::new(format!("split {k} out of range")).into());
            }
            let (gamma, delta) = goal.context.split_at(k);
            let arg = if t.params.len() == 2 {
                t.formula_param(1)?
            } else if let Some(Formula::Imp(a, _)) = synth(&t.args[0], goal.stoup.as_ref(), gamma) {
                *a
            } else if let Some(a) = synth(&t.args[1], None, delta) {
                a
            } else {
                return Err(TypeError::new(
                    "cannot infer the argument formula of impE; write impE[k, A](f, g)",
                )
                .into());
            };
            let fs = Sequent::new(
                goal.stoup.clone(),
                gamma.to_vec(),
                Formula::imp(arg.clone(), goal.succedent.clone()),
            );
            let gs = Sequent::new(None, delta.to_vec(), arg.clone());
            let f = elaborate(&t.args[0], &fs).map_err(wrap(0))?;
            let g = elaborate(&t.args[1], &gs).map_err(wrap(1))?;
            Ok(imp_e(k, arg, f, g))
        }
        _ => Err(t.unknown("natural deduction").into()),
    }
}

fn fail<T>(msg: impl Into<String>) -> Result<T, TypeError> {
    Err(TypeError::new(msg))
}

pub fn check_nd(d: &NdDerivation, goal: &Sequent) -> Result<(), TypeError> {
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
            check_nd(f, &premise).map_err(|e| e.under(0))
        }
        ImpI(f) => {
            let Some((a, b)) = goal.succedent.as_imp() else {
                return fail("impI needs an implication succedent");
            };
            let mut ctx = goal.context.clone();
            ctx.push(a.clone());
            check_nd(f, &Sequent::new(goal.stoup.clone(), ctx, b.clone())).map_err(|e| e.under(0))
        }
        ImpE {
            split,
            arg,
            fun,
            val,
        } => {
            if *split > goal.context.len() {
                return fail(format!("split {split} out of range"));
            }
            let (gamma, delta) = goal.context.split_at(*split);
            let fs = Sequent::new(
                goal.stoup.clone(),
                gamma.to_vec(),
                Formula::imp(arg.clone(), goal.succedent.clone()),
            );
            check_nd(fun, &fs).map_err(|e| e.under(0))?;
            check_nd(val, &Sequent::new(None, delta.to_vec(), arg.clone())).map_err(|e| e.under(1))
        }
    }
}

/// Substitute `f : S|Γ⟶A` for the stoup variable of `g : A|Δ⟶C`.
pub fn nd_scut(f: &NdDerivation, g: &NdDerivation) -> NdDerivation {
    match g {
        Ax => f.clone(),
        ImpI(g1) => imp_i(nd_scut(f, g1)),
        ImpE {
            split,
            arg,
            fun,
            val,
        } => ImpE {
            split: split + f.ctx_len(),
            arg: arg.clone(),
            fun: Box::new(nd_scut(f, fun)),
            val: val.clone(),
        },
        Pass(_) => unreachable!("nd_scut: pass cannot have a nonempty stoup"),
    }
}

/// Substitute `e : −|Γ⟶A` for the context variable at `pos` in
/// `g : S|Δ0,A,Δ1⟶C`.
pub fn nd_ccut(e: &NdDerivation, g: &NdDerivation, pos: usize) -> NdDerivation {
    match g {
        Ax => unreachable!("nd_ccut: ax has an empty context"),
        Pass(g1) => {
            if pos == 0 {
                nd_scut(e, g1)
            } else {
                nd_pass(nd_ccut(e, g1, pos - 1))
            }
        }
        ImpI(g1) => imp_i(nd_ccut(e, g1, pos)),
        ImpE {
            split,
            arg,
            fun,
            val,
        } => {
            if pos < *split {
                ImpE {
                    split: split + e.ctx_len() - 1,
                    arg: arg.clone(),
                    fun: Box::new(nd_ccut(e, fun, pos)),
                    val: val.clone(),
                }
            } else {
                ImpE {
                    split: *split,
                    arg: arg.clone(),
                    fun: fun.clone(),
                    val: Box::new(nd_ccut(e, val, pos - split)),
                }
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NdFamily {
    Beta,
    Eta,
    CommPassImpI,
    CommPassImpE,
}

impl NdFamily {
    pub const ALL: [NdFamily; 4] = [
        NdFamily::Beta,
        NdFamily::Eta,
        NdFamily::CommPassImpI,
        NdFamily::CommPassImpE,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NdFamily::Beta => "beta",
            NdFamily::Eta => "eta",
            NdFamily::CommPassImpI => "comm-pass-impI",
            NdFamily::CommPassImpE => "comm-pass-impE",
        }
    }
}

#[derive(Clone, Debug)]
pub struct NdEquation {
    pub name: NdFamily,
    pub sequent: Sequent,
    pub lhs: NdDerivation,
    pub rhs: NdDerivation,
}

/// Instantiate one generator of ≑.
///
/// * `Beta`: `f : S|Γ,A⟶B`, `g : −|Δ⟶A`.
/// * `Eta`: `f : S|Γ⟶A⊸B`.
/// * `CommPassImpI`: `f : A'|Γ,A⟶B`.
/// * `CommPassImpE`: `f : A'|Γ⟶A⊸B`, `g : −|Δ⟶A`.
pub fn nd_eq_generator(fam: NdFamily, args: &[Inst<NdDerivation>]) -> Result<NdEquation> {
    let bad = |m: &str| -> Error { TypeError::new(m).into() };
    let eq = match fam {
        NdFamily::Beta => {
            check_arity(fam.name(), args, 2)?;
            let (f, fs) = inst_der(args, 0)?;
            let (g, gs) = inst_der(args, 1)?;
            check_nd(&f, &fs)?;
            check_nd(&g, &gs)?;
            let Some((a, gamma)) = fs.context.split_last() else {
                return Err(bad("first premise needs a nonempty context"));
            };
            if gs.stoup.is_some() || gs.succedent != *a {
                return Err(bad("second premise must be −|Δ ⟶ A"));
            }
            let k = gamma.len();
            let mut ctx = gamma.to_vec();
            ctx.extend(gs.context.iter().cloned());
            NdEquation {
                name: fam,
                sequent: Sequent::new(fs.stoup.clone(), ctx, fs.succedent.clone()),
                lhs: imp_e(k, a.clone(), imp_i(f.clone()), g.clone()),
                rhs: nd_ccut(&g, &f, k),
            }
        }
        NdFamily::Eta => {
            check_arity(fam.name(), args, 1)?;
            let (f, fs) = inst_der(args, 0)?;
            check_nd(&f, &fs)?;
            let Some((a, _)) = fs.succedent.as_imp() else {
                return Err(bad("premise must have an implication succedent"));
            };
            NdEquation {
                name: fam,
                sequent: fs.clone(),
                lhs: f.clone(),
                rhs: imp_i(imp_e(fs.context.len(), a.clone(), f, nd_pass(Ax))),
            }
        }
        NdFamily::CommPassImpI => {
            check_arity(fam.name(), args, 1)?;
            let (f, fs) = inst_der(args, 0)?;
            check_nd(&f, &fs)?;
            let (Some(a1), Some((a, gamma))) = (fs.stoup.clone(), fs.context.split_last()) else {
                return Err(bad("premise must be A'|Γ,A ⟶ B"));
            };
            let mut ctx = vec![a1];
            ctx.extend(gamma.iter().cloned());
            NdEquation {
                name: fam,
                sequent: Sequent::new(None, ctx, Formula::imp(a.clone(), fs.succedent.clone())),
                lhs: nd_pass(imp_i(f.clone())),
                rhs: imp_i(nd_pass(f)),
            }
        }
        NdFamily::CommPassImpE => {
            check_arity(fam.name(), args, 2)?;
            let (f, fs) = inst_der(args, 0)?;
            let (g, gs) = inst_der(args, 1)?;
            check_nd(&f, &fs)?;
            check_nd(&g, &gs)?;
            let (Some(a1), Some((a, b))) = (fs.stoup.clone(), fs.succedent.as_imp()) else {
                return Err(bad("first premise must be A'|Γ ⟶ A⊸B"));
            };
            if gs.stoup.is_some() || gs.succedent != *a {
                return Err(bad("second premise must be −|Δ ⟶ A"));
            }
            let k = fs.context.len();
            let mut ctx = vec![a1];
            ctx.extend(fs.context.iter().cloned());
            ctx.extend(gs.context.iter().cloned());
            NdEquation {
                name: fam,
                sequent: Sequent::new(None, ctx, b.clone()),
                lhs: nd_pass(imp_e(k, a.clone(), f.clone(), g.clone())),
                rhs: imp_e(k + 1, a.clone(), nd_pass(f), g),
            }
        }
    };
    check_nd(&eq.lhs, &eq.sequent)?;
    check_nd(&eq.rhs, &eq.sequent)?;
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

    fn der(s: &str, goal: &str) -> NdDerivation {
        NdDerivation::elaborate(&parse_term(s).unwrap(), &seq(goal)).unwrap()
    }

    #[test]
    fn checks_examples() {
        assert!(check_nd(&imp_i(nd_pass(Ax)), &seq("- | |- X -o X")).is_ok());
        let x = parse_formula("X").unwrap();
        let app = imp_e(0, x, Ax, nd_pass(Ax));
        assert!(check_nd(&app, &seq("X -o Y | X |- Y")).is_ok());
        assert!(check_nd(&app, &seq("X -o Y | Y |- Y")).is_err());
    }

    #[test]
    fn elaboration_infers_arguments() {
        let d = der("impE[0](ax, pass(ax))", "X -o Y | X |- Y");
        assert_eq!(d.to_string(), "impE[0, X](ax, pass(ax))");
        let d = der(
            "impE[0](impI(impE[0](ax, pass(ax))), pass(ax))",
            "X -o Y | X |- Y",
        );
        assert_eq!(
            d.to_string(),
            "impE[0, X](impI(impE[0, X](ax, pass(ax))), pass(ax))"
        );
        let e = NdDerivation::elaborate(
            &parse_term("impE[0](impI(ax), impI(pass(ax)))").unwrap(),
            &seq("Y | |- Y"),
        )
        .unwrap_err();
        assert!(e.to_string().contains("cannot infer"));
        let e = NdDerivation::elaborate(&parse_term("impI(ax)").unwrap(), &seq("X | |- Y -o X"))
            .unwrap_err();
        match e {
            Error::Type(te) => assert_eq!(te.path, vec![0]),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn cuts() {
        let f = der("impE[0](ax, pass(ax))", "X -o Y | X |- Y");
        assert_eq!(nd_scut(&f, &Ax), f);
        let e = der("pass(ax)", "- | X |- X");
        assert_eq!(nd_ccut(&e, &f, 0), f);
        let g = imp_i(f.clone());
        assert_eq!(nd_ccut(&e, &g, 0), imp_i(nd_ccut(&e, &f, 0)));
    }

    #[test]
    fn beta_contracts_by_context_cut() {
        // (λx. s x) applied to a passivated variable
        let f = der("impE[0](ax, pass(ax))", "X -o Y | X |- Y");
        let g = der("pass(ax)", "- | X |- X");
        let eq = nd_eq_generator(
            NdFamily::Beta,
            &[
                Inst::Der(f.clone(), seq("X -o Y | X |- Y")),
                Inst::Der(g, seq("- | X |- X")),
            ],
        )
        .unwrap();
        assert_eq!(eq.sequent, seq("X -o Y | X |- Y"));
        assert_eq!(eq.rhs, f);
    }

    #[test]
    fn all_generators_typecheck() {
        let f = der("impE[0](ax, pass(ax))", "X -o Y | X |- Y");
        let fs = seq("X -o Y | X |- Y");
        let ab = Ax;
        let abs = seq("X -o Y | |- X -o Y");
        let g = der("pass(ax)", "- | X |- X");
        let gs = seq("- | X |- X");
        let eta = nd_eq_generator(NdFamily::Eta, &[Inst::Der(ab.clone(), abs.clone())]).unwrap();
        assert_eq!(eta.rhs.to_string(), "impI(impE[0, X](ax, pass(ax)))");
        nd_eq_generator(NdFamily::CommPassImpI, &[Inst::Der(f, fs)]).unwrap();
        let c = nd_eq_generator(
            NdFamily::CommPassImpE,
            &[Inst::Der(ab, abs), Inst::Der(g, gs)],
        )
        .unwrap();
        assert_eq!(c.sequent, seq("- | X -o Y, X |- Y"));
    }
}
