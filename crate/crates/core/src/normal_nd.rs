//! βη-long normal forms of natural deduction, and normalization by
//! evaluation.
//!
//! ```text
//!  nf:  impI(f)        S|Γ⟶nf A⊸B  from S|Γ,A⟶nf B
//!       p2nf(f)        S|Γ⟶nf X    from S|Γ⟶p X        (X atomic)
//!  p:   pass(f)        −|A,Γ⟶p C   from A|Γ⟶p C
//!       ne2p(f)        A|Γ⟶p C     from A|Γ⟶ne C
//!  ne:  ax             A|⟶ne A
//!       impE[k](f, g)  A|Γ,Δ⟶ne C  from A|Γ⟶ne B⊸C and −|Δ⟶nf B
//! ```
//!
//! Neutrals synthesize their succedent, so `impE` needs no annotation here.
//!
//! Semantic values live over worlds `S|Γ`. Only the lengths of contexts
//! matter to the construction, so a function value takes the length of the
//! extension `Δ` and an argument living over `−|Δ`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Result, TypeError};
use crate::nat_ded::{self, NdDerivation};
use crate::syntax::{Formula, Sequent};
use crate::term::{Param, Term};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Nf {
    ImpI(Box<Nf>),
    P2Nf(Box<Pn>),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Pn {
    Pass(Box<Pn>),
    Ne2P(Box<Ne>),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Ne {
    Ax,
    ImpE(usize, Box<Ne>, Box<Nf>),
}

/// Normal forms proper are the `nf` phase.
pub type NfDerivation = Nf;

pub fn imp_i(f: Nf) -> Nf {
    Nf::ImpI(Box::new(f))
}

pub fn p2nf(p: Pn) -> Nf {
    Nf::P2Nf(Box::new(p))
}

pub fn pass_p(p: Pn) -> Pn {
    Pn::Pass(Box::new(p))
}

pub fn ne2p(n: Ne) -> Pn {
    Pn::Ne2P(Box::new(n))
}

pub fn imp_e(k: usize, n: Ne, a: Nf) -> Ne {
    Ne::ImpE(k, Box::new(n), Box::new(a))
}

impl Nf {
    pub fn ctx_len(&self) -> usize {
        match self {
            Nf::ImpI(f) => f.ctx_len() - 1,
            Nf::P2Nf(p) => p.ctx_len(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Nf::ImpI(f) => 1 + f.size(),
            Nf::P2Nf(p) => 1 + p.size(),
        }
    }

    pub fn to_term(&self) -> Term {
        match self {
            Nf::ImpI(f) => Term::new("impI", vec![], vec![f.to_term()]),
            Nf::P2Nf(p) => Term::new("p2nf", vec![], vec![p.to_term()]),
        }
    }

    pub fn from_term(t: &Term) -> Result<Nf> {
        match t.head.as_str() {
            "impI" => {
                t.expect_shape(0, 1)?;
                Ok(imp_i(Nf::from_term(&t.args[0])?))
            }
            "p2nf" => {
                t.expect_shape(0, 1)?;
                Ok(p2nf(Pn::from_term(&t.args[0])?))
            }
            _ => Err(t.unknown("normal form").into()),
        }
    }
}

impl Pn {
    pub fn ctx_len(&self) -> usize {
        match self {
            Pn::Pass(p) => p.ctx_len() + 1,
            Pn::Ne2P(n) => n.ctx_len(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Pn::Pass(p) => 1 + p.size(),
            Pn::Ne2P(n) => 1 + n.size(),
        }
    }

    pub fn to_term(&self) -> Term {
        match self {
            Pn::Pass(p) => Term::new("pass", vec![], vec![p.to_term()]),
            Pn::Ne2P(n) => Term::new("ne2p", vec![], vec![n.to_term()]),
        }
    }

    pub fn from_term(t: &Term) -> Result<Pn> {
        match t.head.as_str() {
            "pass" => {
                t.expect_shape(0, 1)?;
                Ok(pass_p(Pn::from_term(&t.args[0])?))
            }
            "ne2p" => {
                t.expect_shape(0, 1)?;
                Ok(ne2p(Ne::from_term(&t.args[0])?))
            }
            _ => Err(t.unknown("passivation phase").into()),
        }
    }
}

impl Ne {
    pub fn ctx_len(&self) -> usize {
        match self {
            Ne::Ax => 0,
            Ne::ImpE(_, n, a) => n.ctx_len() + a.ctx_len(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Ne::Ax => 1,
            Ne::ImpE(_, n, a) => 1 + n.size() + a.size(),
        }
    }

    pub fn to_term(&self) -> Term {
        match self {
            Ne::Ax => Term::leaf("ax"),
            Ne::ImpE(k, n, a) => {
                Term::new("impE", vec![Param::Nat(*k)], vec![n.to_term(), a.to_term()])
            }
        }
    }

    pub fn from_term(t: &Term) -> Result<Ne> {
        match t.head.as_str() {
            "ax" => {
                t.expect_shape(0, 0)?;
                Ok(Ne::Ax)
            }
            "impE" => {
                t.expect_shape(1, 2)?;
                Ok(imp_e(
                    t.nat_param(0)?,
                    Ne::from_term(&t.args[0])?,
                    Nf::from_term(&t.args[1])?,
                ))
            }
            _ => Err(t.unknown("neutral").into()),
        }
    }
}

impl fmt::Display for Nf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_term())
    }
}

impl fmt::Display for Ne {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_term())
    }
}

// ---------------------------------------------------------------------------
// Checking

fn fail<T>(msg: impl Into<String>) -> Result<T, TypeError> {
    Err(TypeError::new(msg))
}

pub fn check_nf(d: &Nf, goal: &Sequent) -> Result<(), TypeError> {
    match d {
        Nf::ImpI(f) => {
            let Some((a, b)) = goal.succedent.as_imp() else {
                return fail("impI needs an implication succedent");
            };
            let mut ctx = goal.context.clone();
            ctx.push(a.clone());
            check_nf(f, &Sequent::new(goal.stoup.clone(), ctx, b.clone())).map_err(|e| e.under(0))
        }
        Nf::P2Nf(p) => {
            if !goal.succedent.is_atomic() {
                return fail("p2nf needs an atomic succedent");
            }
            check_pn(p, goal).map_err(|e| e.under(0))
        }
    }
}

pub fn check_pn(d: &Pn, goal: &Sequent) -> Result<(), TypeError> {
    match d {
        Pn::Pass(p) => {
            if goal.stoup.is_some() {
                return fail("pass needs an empty stoup");
            }
            let Some((a, rest)) = goal.context.split_first() else {
                return fail("pass needs a nonempty context");
            };
            check_pn(
                p,
                &Sequent::new(Some(a.clone()), rest.to_vec(), goal.succedent.clone()),
            )
            .map_err(|e| e.under(0))
        }
        Pn::Ne2P(n) => {
            let Some(a) = &goal.stoup else {
                return fail("ne2p needs a formula in the stoup");
            };
            let c = infer_ne(n, a, &goal.context).map_err(|e| e.under(0))?;
            if c != goal.succedent {
                return fail(format!("neutral has type {c}, expected {}", goal.succedent));
            }
            Ok(())
        }
    }
}

/// Synthesize the succedent of a neutral over `A|Γ`.
pub fn infer_ne(d: &Ne, a: &Formula, ctx: &[Formula]) -> Result<Formula, TypeError> {
    match d {
        Ne::Ax => {
            if ctx.is_empty() {
                Ok(a.clone())
            } else {
                fail("ax needs an empty context")
            }
        }
        Ne::ImpE(k, n, arg) => {
            if *k > ctx.len() {
                return fail(format!("split {k} out of range"));
            }
            let f = infer_ne(n, a, &ctx[..*k]).map_err(|e| e.under(0))?;
            let Some((b, c)) = f.as_imp() else {
                return Err(TypeError::new(format!("impE: {f} is not an implication")).under(0));
            };
            check_nf(arg, &Sequent::new(None, ctx[*k..].to_vec(), b.clone()))
                .map_err(|e| e.under(1))?;
            Ok(c.clone())
        }
    }
}

// ---------------------------------------------------------------------------
// Embedding into natural deduction

pub fn emb_nf(d: &Nf, goal: &Sequent) -> NdDerivation {
    match d {
        Nf::ImpI(f) => {
            let (a, b) = goal.succedent.as_imp().expect("impI at implication");
            let mut ctx = goal.context.clone();
            ctx.push(a.clone());
            nat_ded::imp_i(emb_nf(f, &Sequent::new(goal.stoup.clone(), ctx, b.clone())))
        }
        Nf::P2Nf(p) => emb_p(p, goal),
    }
}

pub fn emb_p(d: &Pn, goal: &Sequent) -> NdDerivation {
    match d {
        Pn::Pass(p) => {
            let (a, rest) = goal.context.split_first().expect("pass with context");
            nat_ded::nd_pass(emb_p(
                p,
                &Sequent::new(Some(a.clone()), rest.to_vec(), goal.succedent.clone()),
            ))
        }
        Pn::Ne2P(n) => {
            let a = goal.stoup.as_ref().expect("ne2p with stoup");
            emb_ne(n, a, &goal.context).0
        }
    }
}

/// Embed a neutral over `A|Γ`, returning the derivation and its succedent.
pub fn emb_ne(d: &Ne, a: &Formula, ctx: &[Formula]) -> (NdDerivation, Formula) {
    match d {
        Ne::Ax => (NdDerivation::Ax, a.clone()),
        Ne::ImpE(k, n, arg) => {
            let (f, ty) = emb_ne(n, a, &ctx[..*k]);
            let (b, c) = ty.as_imp().expect("impE at implication");
            let g = emb_nf(arg, &Sequent::new(None, ctx[*k..].to_vec(), b.clone()));
            (nat_ded::imp_e(*k, b.clone(), f, g), c.clone())
        }
    }
}

// ---------------------------------------------------------------------------
// Normalization by evaluation

/// A semantic value of some formula over a world `S|Γ`.
#[derive(Clone)]
pub enum Sem {
    /// At an atomic formula: a normal form over the world.
    Nf(Nf),
    /// At `A⊸B`: given `|Δ|` and a value of `A` over `−|Δ`, a value of `B`
    /// over `S|Γ,Δ`.
    Fun(Arc<dyn Fn(usize, Sem) -> Sem + Send + Sync>),
}

impl fmt::Debug for Sem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sem::Nf(n) => write!(f, "Sem::Nf({n})"),
            Sem::Fun(_) => f.write_str("Sem::Fun(..)"),
        }
    }
}

impl Sem {
    pub fn apply(&self, delta: usize, a: Sem) -> Sem {
        match self {
            Sem::Fun(f) => f(delta, a),
            Sem::Nf(_) => panic!("semantic value at atomic type applied"),
        }
    }
}

/// Interpretation of an antecedent over a world: the stoup value (if
/// any) and one value per context formula, each with the length of the
/// block of the world's context it lives over.
#[derive(Clone, Debug, Default)]
pub struct Env {
    pub stoup: Option<(usize, Sem)>,
    pub entries: Vec<(usize, Sem)>,
}

impl Env {
    /// Length of the world's context.
    pub fn world_len(&self) -> usize {
        self.stoup.as_ref().map_or(0, |(l, _)| *l)
            + self.entries.iter().map(|(l, _)| l).sum::<usize>()
    }
}

pub fn eval(d: &NdDerivation, env: &Env) -> Sem {
    match d {
        NdDerivation::Ax => {
            debug_assert!(env.entries.is_empty());
            env.stoup
                .as_ref()
                .expect("ax needs a stoup value")
                .1
                .clone()
        }
        NdDerivation::Pass(f) => {
            let (first, rest) = env.entries.split_first().expect("pass needs an entry");
            let env1 = Env {
                stoup: Some(first.clone()),
                entries: rest.to_vec(),
            };
            eval(f, &env1)
        }
        NdDerivation::ImpI(f) => {
            let body = f.clone();
            let env = env.clone();
            Sem::Fun(Arc::new(move |delta, a| {
                let mut env1 = env.clone();
                env1.entries.push((delta, a));
                eval(&body, &env1)
            }))
        }
        NdDerivation::ImpE {
            split, fun, val, ..
        } => {
            let env1 = Env {
                stoup: env.stoup.clone(),
                entries: env.entries[..*split].to_vec(),
            };
            let env2 = Env {
                stoup: None,
                entries: env.entries[*split..].to_vec(),
            };
            let vf = eval(fun, &env1);
            let va = eval(val, &env2);
            vf.apply(env2.world_len(), va)
        }
    }
}

/// Turn a neutral over a world whose context has length `world` into a
/// semantic value of `c`.
pub fn reflect(c: &Formula, n: Ne, world: usize) -> Sem {
    match c {
        Formula::Atom(_) => Sem::Nf(p2nf(ne2p(n))),
        Formula::Imp(a, b) => {
            let (a, b) = ((**a).clone(), (**b).clone());
            Sem::Fun(Arc::new(move |delta, v| {
                let arg = reify(&a, &v);
                reflect(&b, imp_e(world, n.clone(), arg), world + delta)
            }))
        }
    }
}

pub fn reify(c: &Formula, s: &Sem) -> Nf {
    match c {
        Formula::Atom(_) => match s {
            Sem::Nf(n) => n.clone(),
            Sem::Fun(_) => panic!("function value at atomic type"),
        },
        Formula::Imp(a, b) => {
            let fresh = sem_pass(&reflect(a, Ne::Ax, 0));
            imp_i(reify(b, &s.apply(1, fresh)))
        }
    }
}

/// Move a value over `A|Γ` to the world `−|A,Γ`.
pub fn sem_pass(s: &Sem) -> Sem {
    match s {
        Sem::Nf(Nf::P2Nf(p)) => Sem::Nf(p2nf(pass_p((**p).clone()))),
        Sem::Nf(Nf::ImpI(_)) => panic!("sem_pass: atomic values are p2nf-rooted"),
        Sem::Fun(f) => {
            let f = f.clone();
            Sem::Fun(Arc::new(move |delta, a| sem_pass(&f(delta, a))))
        }
    }
}

/// The identity environment of an antecedent.
pub fn gamma(goal: &Sequent) -> Env {
    Env {
        stoup: goal.stoup.as_ref().map(|a| (0, reflect(a, Ne::Ax, 0))),
        entries: goal
            .context
            .iter()
            .map(|a| (1, sem_pass(&reflect(a, Ne::Ax, 0))))
            .collect(),
    }
}

pub fn nbe(d: &NdDerivation, goal: &Sequent) -> Nf {
    reify(&goal.succedent, &eval(d, &gamma(goal)))
}

pub fn nbe_checked(d: &NdDerivation, goal: &Sequent) -> Result<Nf> {
    nat_ded::check_nd(d, goal)?;
    Ok(nbe(d, goal))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, parse_sequent};
    use crate::term::parse_term;

    fn seq(s: &str) -> Sequent {
        parse_sequent(s).unwrap()
    }

    fn nd(s: &str, goal: &str) -> NdDerivation {
        NdDerivation::elaborate(&parse_term(s).unwrap(), &seq(goal)).unwrap()
    }

    #[test]
    fn small_normal_forms() {
        assert_eq!(
            nbe(&NdDerivation::Ax, &seq("X | |- X")).to_string(),
            "p2nf(ne2p(ax))"
        );
        let id = nd("impI(pass(ax))", "- | |- X -o X");
        assert_eq!(
            nbe(&id, &seq("- | |- X -o X")).to_string(),
            "impI(p2nf(pass(ne2p(ax))))"
        );
        let eta = reify(
            &parse_formula("X -o Y").unwrap(),
            &reflect(&parse_formula("X -o Y").unwrap(), Ne::Ax, 0),
        );
        assert_eq!(
            eta.to_string(),
            "impI(p2nf(ne2p(impE[0](ax, p2nf(pass(ne2p(ax)))))))"
        );
        check_nf(&eta, &seq("X -o Y | |- X -o Y")).unwrap();
    }

    #[test]
    fn checker_and_embedding() {
        let n =
            Nf::from_term(&parse_term("p2nf(ne2p(impE[0](ax, p2nf(pass(ne2p(ax))))))").unwrap())
                .unwrap();
        let s = seq("X -o Y | X |- Y");
        check_nf(&n, &s).unwrap();
        assert!(check_nf(&n, &seq("X -o Y | Y |- Y")).is_err());
        let d = emb_nf(&n, &s);
        assert_eq!(d.to_string(), "impE[0, X](ax, pass(ax))");
        assert_eq!(nbe(&d, &s), n);
        // unrestricted ne axiom: not η-long, but well-typed
        let raw = p2nf(ne2p(Ne::Ax));
        assert!(check_nf(&raw, &seq("X -o Y | |- X -o Y")).is_err());
        assert!(check_pn(&ne2p(Ne::Ax), &seq("X -o Y | |- X -o Y")).is_ok());
    }

    #[test]
    fn beta_redex_normalizes() {
        // (λy. x y) z  over  X⊸Y | X
        let s = seq("X -o Y | X |- Y");
        let d = nd(
            "impE[0](impI(impE[0](ax, pass(ax))), pass(ax))",
            "X -o Y | X |- Y",
        );
        let expected = nbe(&nd("impE[0](ax, pass(ax))", "X -o Y | X |- Y"), &s);
        assert_eq!(nbe(&d, &s), expected);
    }

    #[test]
    fn sem_pass_commutes_with_reify() {
        let a = parse_formula("X -o Y").unwrap();
        let v = reflect(&a, Ne::Ax, 0);
        let moved = reify(&a, &sem_pass(&v));
        assert_eq!(
            moved.to_string(),
            "impI(p2nf(pass(ne2p(impE[0](ax, p2nf(pass(ne2p(ax))))))))"
        );
        check_nf(&moved, &seq("- | X -o Y |- X -o Y")).unwrap();
    }

    #[test]
    fn eval_ignores_how_the_environment_was_built() {
        let s = seq("- | X -o Y, X |- Y");
        let d = nd("pass(impE[0](ax, pass(ax)))", "- | X -o Y, X |- Y");
        let direct = gamma(&s);
        // Same values, obtained by evaluating η-expanded identities.
        let xy = parse_formula("X -o Y").unwrap();
        let eta_xy = nd("pass(impI(impE[0](ax, pass(ax))))", "- | X -o Y |- X -o Y");
        let v0 = eval(&eta_xy, &gamma(&seq("- | X -o Y |- X -o Y")));
        let v1 = eval(&nd("pass(ax)", "- | X |- X"), &gamma(&seq("- | X |- X")));
        let built = Env {
            stoup: None,
            entries: vec![(1, v0), (1, v1)],
        };
        let c = parse_formula("Y").unwrap();
        assert_eq!(reify(&c, &eval(&d, &direct)), reify(&c, &eval(&d, &built)));
        assert_eq!(
            reify(&xy, &direct.entries[0].1),
            reify(&xy, &built.entries[0].1)
        );
    }
}
