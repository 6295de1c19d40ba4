//! Proof calculi for free skew prounital closed categories.
//!
//! Four presentations of the same free structure live here: a categorical
//! (combinator) calculus, a cut-free sequent calculus with a stoup, a
//! planar natural deduction calculus, and their focused / normal
//! subcalculi. Normalization goes through `focus`, hereditary
//! substitution (`hered`) or normalization by evaluation (`nbe`), and
//! exhaustive focused proof search decides equality of maps.

pub mod bridge;
pub mod cat_calc;
pub mod coherence;
pub mod error;
pub mod focused;
pub mod gen;
pub mod model;
pub mod multigraph;
pub mod nat_ded;
pub mod normal_nd;
pub mod seq_calc;
pub mod syntax;
pub mod term;

pub use error::{Error, ParseError, Result, TypeError};
pub use syntax::{parse_formula, parse_sequent, Formula, Sequent};

/// An instantiation argument for an equation generator: either a formula
/// for a metavariable or a derivation together with its sequent.
#[derive(Clone, Debug)]
pub enum Inst<D> {
    Fma(Formula),
    Der(D, Sequent),
}

pub(crate) fn inst_fma<D>(args: &[Inst<D>], i: usize) -> Result<Formula> {
    match args.get(i) {
        Some(Inst::Fma(a)) => Ok(a.clone()),
        _ => Err(Error::Invalid(format!("argument {i} must be a formula"))),
    }
}

pub(crate) fn inst_der<D: Clone>(args: &[Inst<D>], i: usize) -> Result<(D, Sequent)> {
    match args.get(i) {
        Some(Inst::Der(d, s)) => Ok((d.clone(), s.clone())),
        _ => Err(Error::Invalid(format!("argument {i} must be a derivation"))),
    }
}

pub(crate) fn check_arity<D>(name: &str, args: &[Inst<D>], n: usize) -> Result<()> {
    if args.len() == n {
        Ok(())
    } else {
        Err(Error::Invalid(format!(
            "arity mismatch: `{name}` takes {n} argument(s), got {}",
            args.len()
        )))
    }
}
