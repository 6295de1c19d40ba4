//! The categorical calculus: maps `S ⟹ C` from an optional formula.
//!
//! ```text
//!  id : A ⟹ A               comp(f, g) : S ⟹ C     for f : S ⟹ B, g : B ⟹ C
//!  j  : ⟹ A⊸A               imp(f, g)  : A⊸B ⟹ C⊸D for f : C ⟹ A, g : B ⟹ D
//!  i(e) : A⊸B ⟹ B  (e : ⟹ A) L : B⊸C ⟹ (A⊸B)⊸(A⊸C)
//! ```
//!
//! Polymorphic leaves carry their formulae, so every derivation has a
//! unique inferred type. Equality of maps is decided elsewhere (see
//! `coherence::decide_eq`); here we only build the generating pairs.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result, TypeError};
use crate::syntax::{Formula, Sequent, Stoup};
use crate::term::{Param, Term};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum CatDerivation {
    Id(Formula),
    Comp(Box<CatDerivation>, Box<CatDerivation>),
    Imp(Box<CatDerivation>, Box<CatDerivation>),
    J(Formula),
    I(Formula, Formula, Box<CatDerivation>),
    L(Formula, Formula, Formula),
    Gen(String),
}

use CatDerivation as C;

pub fn id(a: Formula) -> CatDerivation {
    C::Id(a)
}

/// `comp(f, g)`, written `g . f`: first `f`, then `g`.
pub fn comp(f: CatDerivation, g: CatDerivation) -> CatDerivation {
    C::Comp(Box::new(f), Box::new(g))
}

pub fn imp(f: CatDerivation, g: CatDerivation) -> CatDerivation {
    C::Imp(Box::new(f), Box::new(g))
}

pub fn j(a: Formula) -> CatDerivation {
    C::J(a)
}

pub fn i(a: Formula, b: Formula, e: CatDerivation) -> CatDerivation {
    C::I(a, b, Box::new(e))
}

pub fn l(a: Formula, b: Formula, c: Formula) -> CatDerivation {
    C::L(a, b, c)
}

/// `ĵ f = (A ⊸ f) ∘ j` for `f : A ⟹ B`, giving `⟹ A⊸B`.
pub fn jhat(a: Formula, f: CatDerivation) -> CatDerivation {
    comp(j(a.clone()), imp(id(a), f))
}

/// Types of generators: each name maps to `T ⟹ C`.
pub type GenSig = BTreeMap<String, (Stoup, Formula)>;

impl CatDerivation {
    pub fn size(&self) -> usize {
        match self {
            C::Comp(f, g) | C::Imp(f, g) => 1 + f.size() + g.size(),
            C::I(_, _, e) => 1 + e.size(),
            _ => 1,
        }
    }

    pub fn to_term(&self) -> Term {
        let f = |a: &Formula| Param::Formula(a.clone());
        match self {
            C::Id(a) => Term::new("id", vec![f(a)], vec![]),
            C::Comp(x, y) => Term::new("comp", vec![], vec![x.to_term(), y.to_term()]),
            C::Imp(x, y) => Term::new("imp", vec![], vec![x.to_term(), y.to_term()]),
            C::J(a) => Term::new("j", vec![f(a)], vec![]),
            C::I(a, b, e) => Term::new("i", vec![f(a), f(b)], vec![e.to_term()]),
            C::L(a, b, c) => Term::new("L", vec![f(a), f(b), f(c)], vec![]),
            C::Gen(name) => Term::new("gen", vec![], vec![Term::leaf(name)]),
        }
    }

    pub fn from_term(t: &Term) -> Result<CatDerivation> {
        Ok(match t.head.as_str() {
            "id" => {
                t.expect_shape(1, 0)?;
                id(t.formula_param(0)?)
            }
            "comp" => {
                t.expect_shape(0, 2)?;
                comp(Self::from_term(&t.args[0])?, Self::from_term(&t.args[1])?)
            }
            "imp" => {
                t.expect_shape(0, 2)?;
                imp(Self::from_term(&t.args[0])?, Self::from_term(&t.args[1])?)
            }
            "j" => {
                t.expect_shape(1, 0)?;
                j(t.formula_param(0)?)
            }
            "i" => {
                t.expect_shape(2, 1)?;
                i(
                    t.formula_param(0)?,
                    t.formula_param(1)?,
                    Self::from_term(&t.args[0])?,
                )
            }
            "L" => {
                t.expect_shape(3, 0)?;
                l(
                    t.formula_param(0)?,
                    t.formula_param(1)?,
                    t.formula_param(2)?,
                )
            }
            "gen" => {
                t.expect_shape(0, 1)?;
                let n = &t.args[0];
                if !n.params.is_empty() || !n.args.is_empty() {
                    return Err(
                        crate::ParseError::new(n.offset, "expected a generator name").into(),
                    );
                }
                C::Gen(n.head.clone())
            }
            _ => return Err(t.unknown("categorical").into()),
        })
    }
}

impl fmt::Display for CatDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_term())
    }
}

/// Infer `S ⟹ C` for a derivation with no generators.
pub fn infer_cat(d: &CatDerivation) -> Result<(Stoup, Formula), TypeError> {
    infer_cat_in(d, &GenSig::new())
}

pub fn infer_cat_in(d: &CatDerivation, sig: &GenSig) -> Result<(Stoup, Formula), TypeError> {
    match d {
        C::Id(a) => Ok((Some(a.clone()), a.clone())),
        C::Comp(f, g) => {
            let (s, b) = infer_cat_in(f, sig).map_err(|e| e.under(0))?;
            let (t, c) = infer_cat_in(g, sig).map_err(|e| e.under(1))?;
            if t.as_ref() != Some(&b) {
                return Err(TypeError::new(format!(
                    "comp: first map ends in {b} but second starts from {}",
                    crate::syntax::print_stoup(&t)
                )));
            }
            Ok((s, c))
        }
        C::Imp(f, g) => {
            let (s, a) = infer_cat_in(f, sig).map_err(|e| e.under(0))?;
            let (t, dd) = infer_cat_in(g, sig).map_err(|e| e.under(1))?;
            let (Some(c), Some(b)) = (s, t) else {
                return Err(TypeError::new("imp: both maps need a nonempty source"));
            };
            Ok((Some(Formula::imp(a, b)), Formula::imp(c, dd)))
        }
        C::J(a) => Ok((None, Formula::imp(a.clone(), a.clone()))),
        C::I(a, b, e) => {
            let (s, a1) = infer_cat_in(e, sig).map_err(|e| e.under(0))?;
            if s.is_some() || a1 != *a {
                return Err(
                    TypeError::new(format!("i[{a}, {b}]: argument must have type ⟹ {a}")).under(0),
                );
            }
            Ok((Some(Formula::imp(a.clone(), b.clone())), b.clone()))
        }
        C::L(a, b, c) => Ok((
            Some(Formula::imp(b.clone(), c.clone())),
            Formula::imp(
                Formula::imp(a.clone(), b.clone()),
                Formula::imp(a.clone(), c.clone()),
            ),
        )),
        C::Gen(name) => sig
            .get(name)
            .cloned()
            .ok_or_else(|| TypeError::new(format!("unknown generator `{name}`"))),
    }
}

pub fn check_cat(d: &CatDerivation, goal: &Sequent) -> Result<(), TypeError> {
    check_cat_in(d, goal, &GenSig::new())
}

pub fn check_cat_in(d: &CatDerivation, goal: &Sequent, sig: &GenSig) -> Result<(), TypeError> {
    if !goal.context.is_empty() {
        return Err(TypeError::new("categorical sequents have no context"));
    }
    let (s, c) = infer_cat_in(d, sig)?;
    if s != goal.stoup || c != goal.succedent {
        let found = Sequent::new(s, vec![], c);
        return Err(TypeError::new(format!("derivation has type {found}")));
    }
    Ok(())
}

/// Read a term against an expected type. `i[A, B](e)` normally means
/// `i : A⊸B ⟹ B`; when the second parameter is itself `A⊸B′` the term
/// may also be meant as `i : A⊸B′ ⟹ B′` (the parameter naming the whole
/// source). The first combination of readings that checks is returned.
pub fn elaborate_cat(t: &Term, goal: &Sequent, sig: &GenSig) -> Result<CatDerivation> {
    let d = CatDerivation::from_term(t)?;
    let first = match check_cat_in(&d, goal, sig) {
        Ok(()) => return Ok(d),
        Err(e) => e,
    };
    let mut sites = 0usize;
    count_source_readings(&d, &mut sites);
    if sites == 0 || sites > 12 {
        return Err(first.into());
    }
    for mask in 1u32..(1 << sites) {
        let mut n = 0;
        let alt = reread(&d, mask, &mut n);
        if check_cat_in(&alt, goal, sig).is_ok() {
            return Ok(alt);
        }
    }
    Err(first.into())
}

fn count_source_readings(d: &CatDerivation, n: &mut usize) {
    match d {
        C::Comp(f, g) | C::Imp(f, g) => {
            count_source_readings(f, n);
            count_source_readings(g, n);
        }
        C::I(a, b, e) => {
            if b.as_imp().is_some_and(|(a1, _)| a1 == a) {
                *n += 1;
            }
            count_source_readings(e, n);
        }
        _ => {}
    }
}

fn reread(d: &CatDerivation, mask: u32, n: &mut usize) -> CatDerivation {
    match d {
        C::Comp(f, g) => {
            let f = reread(f, mask, n);
            comp(f, reread(g, mask, n))
        }
        C::Imp(f, g) => {
            let f = reread(f, mask, n);
            imp(f, reread(g, mask, n))
        }
        C::I(a, b, e) => {
            let mut b2 = b.clone();
            if let Some((a1, b1)) = b.as_imp() {
                if a1 == a {
                    if mask & (1 << *n) != 0 {
                        b2 = b1.clone();
                    }
                    *n += 1;
                }
            }
            i(a.clone(), b2, reread(e, mask, n))
        }
        other => other.clone(),
    }
}

/// The sequent `S | |- C` of a derivation.
pub fn cat_sequent(d: &CatDerivation) -> Result<Sequent, TypeError> {
    let (s, c) = infer_cat(d)?;
    Ok(Sequent::new(s, vec![], c))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CatFamily {
    LeftUnit,
    RightUnit,
    Assoc,
    ImpId,
    ImpComp,
    JNat,
    INat,
    LNat,
    C1,
    C2,
    C3,
    C4,
    C5,
}

/// What each family is instantiated with.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Slot {
    Fma,
    Map,
}

impl CatFamily {
    pub const ALL: [CatFamily; 13] = [
        CatFamily::LeftUnit,
        CatFamily::RightUnit,
        CatFamily::Assoc,
        CatFamily::ImpId,
        CatFamily::ImpComp,
        CatFamily::JNat,
        CatFamily::INat,
        CatFamily::LNat,
        CatFamily::C1,
        CatFamily::C2,
        CatFamily::C3,
        CatFamily::C4,
        CatFamily::C5,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CatFamily::LeftUnit => "left-unit",
            CatFamily::RightUnit => "right-unit",
            CatFamily::Assoc => "assoc",
            CatFamily::ImpId => "imp-id",
            CatFamily::ImpComp => "imp-comp",
            CatFamily::JNat => "j-nat",
            CatFamily::INat => "i-nat",
            CatFamily::LNat => "L-nat",
            CatFamily::C1 => "c1",
            CatFamily::C2 => "c2",
            CatFamily::C3 => "c3",
            CatFamily::C4 => "c4",
            CatFamily::C5 => "c5",
        }
    }

    /// The argument signature expected by [`eq_generator`].
    ///
    /// * `LeftUnit`, `RightUnit`: `f`.
    /// * `Assoc`: `f : S⟹A`, `g : A⟹B`, `h : B⟹C`.
    /// * `ImpId`: `A`, `B`.
    /// * `ImpComp`: `f : C⟹A`, `g : B⟹D`, `h : E⟹C`, `k : D⟹F`.
    /// * `JNat`: `f : A⟹B`.
    /// * `INat`: `e : ⟹A`, `h : A⟹A'`, `g : B⟹B'`.
    /// * `LNat`: `f : A⟹A'`, `g : B'⟹B`, `h : C⟹C'`.
    /// * `C1`: `e : ⟹A`. `C2`: `A`, `C`. `C3`: `A`, `B`.
    /// * `C4`: `e : ⟹A`, `B`, `C`. `C5`: `A`, `B`, `C`, `D`.
    pub fn slots(self) -> &'static [Slot] {
        use Slot::*;
        match self {
            CatFamily::LeftUnit | CatFamily::RightUnit | CatFamily::JNat | CatFamily::C1 => &[Map],
            CatFamily::Assoc | CatFamily::INat | CatFamily::LNat => &[Map, Map, Map],
            CatFamily::ImpComp => &[Map, Map, Map, Map],
            CatFamily::ImpId | CatFamily::C2 | CatFamily::C3 => &[Fma, Fma],
            CatFamily::C4 => &[Map, Fma, Fma],
            CatFamily::C5 => &[Fma, Fma, Fma, Fma],
        }
    }
}

#[derive(Clone, Debug)]
pub enum CatArg {
    Fma(Formula),
    Map(CatDerivation),
}

#[derive(Clone, Debug)]
pub struct CatEquation {
    pub name: CatFamily,
    pub sequent: Sequent,
    pub lhs: CatDerivation,
    pub rhs: CatDerivation,
}

/// Instantiate one generating pair of ≐. See [`CatFamily::slots`].
pub fn eq_generator(fam: CatFamily, args: &[CatArg]) -> Result<CatEquation> {
    eq_generator_in(fam, args, &GenSig::new())
}

/// [`eq_generator`] with map arguments that may mention generators.
pub fn eq_generator_in(fam: CatFamily, args: &[CatArg], sig: &GenSig) -> Result<CatEquation> {
    let slots = fam.slots();
    if args.len() != slots.len() {
        return Err(Error::Invalid(format!(
            "arity mismatch: `{}` takes {} argument(s), got {}",
            fam.name(),
            slots.len(),
            args.len()
        )));
    }
    let mut fmas = Vec::new();
    let mut maps = Vec::new();
    for (k, (slot, arg)) in slots.iter().zip(args).enumerate() {
        match (slot, arg) {
            (Slot::Fma, CatArg::Fma(a)) => fmas.push(a.clone()),
            (Slot::Map, CatArg::Map(d)) => {
                let ty = infer_cat_in(d, sig).map_err(|e| e.under(k))?;
                maps.push((d.clone(), ty));
            }
            _ => {
                return Err(Error::Invalid(format!(
                    "`{}`: argument {k} must be a {}",
                    fam.name(),
                    if *slot == Slot::Fma { "formula" } else { "map" }
                )))
            }
        }
    }
    let tight = |k: usize| -> Result<(CatDerivation, Formula, Formula)> {
        let (d, (s, c)) = &maps[k];
        match s {
            Some(a) => Ok((d.clone(), a.clone(), c.clone())),
            None => Err(TypeError::new(format!("argument {k} needs a nonempty source")).into()),
        }
    };
    let loose = |k: usize| -> Result<(CatDerivation, Formula)> {
        let (d, (s, c)) = &maps[k];
        match s {
            None => Ok((d.clone(), c.clone())),
            Some(_) => Err(TypeError::new(format!("argument {k} needs an empty source")).into()),
        }
    };
    let fi = |k: usize| fmas[k].clone();
    let imp_f = Formula::imp;
    let (lhs, rhs) = match fam {
        CatFamily::LeftUnit => {
            let (f, (_, c)) = &maps[0];
            (comp(f.clone(), id(c.clone())), f.clone())
        }
        CatFamily::RightUnit => {
            let (f, (s, _)) = &maps[0];
            let Some(a) = s else {
                return Err(TypeError::new("argument 0 needs a nonempty source").into());
            };
            (f.clone(), comp(id(a.clone()), f.clone()))
        }
        CatFamily::Assoc => {
            let (f, _) = &maps[0];
            let (g, _, _) = tight(1)?;
            let (h, _, _) = tight(2)?;
            (
                comp(comp(f.clone(), g.clone()), h.clone()),
                comp(f.clone(), comp(g, h)),
            )
        }
        CatFamily::ImpId => (imp(id(fi(0)), id(fi(1))), id(imp_f(fi(0), fi(1)))),
        CatFamily::ImpComp => {
            let (f, _, _) = tight(0)?;
            let (g, _, _) = tight(1)?;
            let (h, _, _) = tight(2)?;
            let (k, _, _) = tight(3)?;
            (
                imp(comp(h.clone(), f.clone()), comp(g.clone(), k.clone())),
                comp(imp(f, g), imp(h, k)),
            )
        }
        CatFamily::JNat => {
            let (f, a, b) = tight(0)?;
            (
                comp(j(b.clone()), imp(f.clone(), id(b))),
                comp(j(a.clone()), imp(id(a), f)),
            )
        }
        CatFamily::INat => {
            let (e, a) = loose(0)?;
            let (h, _, a1) = tight(1)?;
            let (g, b, b1) = tight(2)?;
            (
                comp(
                    comp(imp(h.clone(), id(b.clone())), i(a, b, e.clone())),
                    g.clone(),
                ),
                comp(imp(id(a1.clone()), g), i(a1, b1, comp(e, h))),
            )
        }
        CatFamily::LNat => {
            let (f, a, a1) = tight(0)?;
            let (g, b1, b) = tight(1)?;
            let (h, c, c1) = tight(2)?;
            (
                comp(
                    l(a.clone(), b, c),
                    imp(imp(f.clone(), g.clone()), imp(id(a), h.clone())),
                ),
                comp(
                    comp(imp(g, h), l(a1.clone(), b1.clone(), c1.clone())),
                    imp(id(imp_f(a1, b1)), imp(f, id(c1))),
                ),
            )
        }
        CatFamily::C1 => {
            let (e, a) = loose(0)?;
            (comp(j(a.clone()), i(a.clone(), a, e.clone())), e)
        }
        CatFamily::C2 => {
            let (a, c) = (fi(0), fi(1));
            (
                comp(
                    l(a.clone(), a.clone(), c.clone()),
                    i(
                        imp_f(a.clone(), a.clone()),
                        imp_f(a.clone(), c.clone()),
                        j(a.clone()),
                    ),
                ),
                id(imp_f(a, c)),
            )
        }
        CatFamily::C3 => {
            let (a, b) = (fi(0), fi(1));
            (
                comp(j(b.clone()), l(a.clone(), b.clone(), b.clone())),
                j(imp_f(a, b)),
            )
        }
        CatFamily::C4 => {
            let (e, a) = loose(0)?;
            let (b, c) = (fi(0), fi(1));
            (
                comp(
                    l(a.clone(), b.clone(), c.clone()),
                    imp(
                        id(imp_f(a.clone(), b.clone())),
                        i(a.clone(), c.clone(), e.clone()),
                    ),
                ),
                imp(i(a, b, e), id(c)),
            )
        }
        CatFamily::C5 => {
            let (a, b, c, d) = (fi(0), fi(1), fi(2), fi(3));
            let ab = imp_f(a.clone(), b.clone());
            let ac = imp_f(a.clone(), c.clone());
            let ad = imp_f(a.clone(), d.clone());
            (
                comp(
                    l(b.clone(), c.clone(), d.clone()),
                    imp(
                        id(imp_f(b.clone(), c.clone())),
                        l(a.clone(), b.clone(), d.clone()),
                    ),
                ),
                comp(
                    comp(l(a.clone(), c.clone(), d), l(ab.clone(), ac, ad.clone())),
                    imp(l(a, b, c), id(imp_f(ab, ad))),
                ),
            )
        }
    };
    let (s, c) = infer_cat_in(&lhs, sig)?;
    let sequent = Sequent::new(s, vec![], c);
    let (s, c) = infer_cat_in(&rhs, sig)?;
    let rs = Sequent::new(s, vec![], c);
    if rs != sequent {
        return Err(TypeError::new(format!(
            "`{}`: sides have different types {sequent} and {rs}",
            fam.name()
        ))
        .into());
    }
    Ok(CatEquation {
        name: fam,
        sequent,
        lhs,
        rhs,
    })
}

// ---------------------------------------------------------------------------
// Stoup-free combinators

/// Stoup-free derivations `⟹ C`: application, `j`, `i'` and `L'`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum SfDerivation {
    /// `app(a, f)` with `a : ⟹ B` and `f : ⟹ B⊸C`.
    App(Box<SfDerivation>, Box<SfDerivation>),
    J(Formula),
    I(Formula, Formula, Box<SfDerivation>),
    L(Formula, Formula, Formula),
}

impl SfDerivation {
    pub fn to_term(&self) -> Term {
        let f = |a: &Formula| Param::Formula(a.clone());
        match self {
            SfDerivation::App(a, g) => Term::new("app", vec![], vec![a.to_term(), g.to_term()]),
            SfDerivation::J(a) => Term::new("j", vec![f(a)], vec![]),
            SfDerivation::I(a, b, e) => Term::new("i'", vec![f(a), f(b)], vec![e.to_term()]),
            SfDerivation::L(a, b, c) => Term::new("L'", vec![f(a), f(b), f(c)], vec![]),
        }
    }

    pub fn from_term(t: &Term) -> Result<SfDerivation> {
        Ok(match t.head.as_str() {
            "app" => {
                t.expect_shape(0, 2)?;
                SfDerivation::App(
                    Box::new(Self::from_term(&t.args[0])?),
                    Box::new(Self::from_term(&t.args[1])?),
                )
            }
            "j" => {
                t.expect_shape(1, 0)?;
                SfDerivation::J(t.formula_param(0)?)
            }
            "i'" => {
                t.expect_shape(2, 1)?;
                SfDerivation::I(
                    t.formula_param(0)?,
                    t.formula_param(1)?,
                    Box::new(Self::from_term(&t.args[0])?),
                )
            }
            "L'" => {
                t.expect_shape(3, 0)?;
                SfDerivation::L(
                    t.formula_param(0)?,
                    t.formula_param(1)?,
                    t.formula_param(2)?,
                )
            }
            _ => return Err(t.unknown("stoup-free").into()),
        })
    }
}

impl fmt::Display for SfDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_term())
    }
}

pub fn infer_sf(d: &SfDerivation) -> Result<Formula, TypeError> {
    match d {
        SfDerivation::App(a, g) => {
            let b = infer_sf(a).map_err(|e| e.under(0))?;
            let bc = infer_sf(g).map_err(|e| e.under(1))?;
            match bc.as_imp() {
                Some((b1, c)) if *b1 == b => Ok(c.clone()),
                _ => Err(TypeError::new(format!("app: cannot apply {bc} to {b}"))),
            }
        }
        SfDerivation::J(a) => Ok(Formula::imp(a.clone(), a.clone())),
        SfDerivation::I(a, b, e) => {
            let a1 = infer_sf(e).map_err(|e| e.under(0))?;
            if a1 != *a {
                return Err(
                    TypeError::new(format!("i'[{a}, {b}]: argument has type {a1}")).under(0),
                );
            }
            Ok(Formula::imp(Formula::imp(a.clone(), b.clone()), b.clone()))
        }
        SfDerivation::L(a, b, c) => Ok(Formula::imp(
            Formula::imp(b.clone(), c.clone()),
            Formula::imp(
                Formula::imp(a.clone(), b.clone()),
                Formula::imp(a.clone(), c.clone()),
            ),
        )),
    }
}

fn app(a: SfDerivation, f: SfDerivation) -> SfDerivation {
    SfDerivation::App(Box::new(a), Box::new(f))
}

/// Diagrammatic composition of `p : ⟹ P⊸Q` and `q : ⟹ Q⊸R`.
fn sf_then(
    p: SfDerivation,
    pq: (&Formula, &Formula),
    q: SfDerivation,
    r: &Formula,
) -> SfDerivation {
    let (pf, qf) = pq;
    app(
        p,
        app(q, SfDerivation::L(pf.clone(), qf.clone(), r.clone())),
    )
}

/// Translate a derivation with empty source into the stoup-free calculus.
/// Derivations with a nonempty source `A` are first sent through `ĵ`.
pub fn to_stoup_free(d: &CatDerivation) -> Result<SfDerivation> {
    match infer_cat(d)?.0 {
        None => tr_loose(d),
        Some(_) => tr_tight(d),
    }
}

fn tr_loose(d: &CatDerivation) -> Result<SfDerivation> {
    match d {
        C::J(a) => Ok(SfDerivation::J(a.clone())),
        C::Comp(f, g) => Ok(app(tr_loose(f)?, tr_tight(g)?)),
        C::Gen(n) => Err(Error::Invalid(format!(
            "generator `{n}` has no stoup-free image"
        ))),
        _ => Err(Error::Invalid(format!(
            "`{d}` does not have an empty source"
        ))),
    }
}

/// `ĵ`: a map `A ⟹ C` becomes an element of `A⊸C`.
fn tr_tight(d: &CatDerivation) -> Result<SfDerivation> {
    match d {
        C::Id(a) => Ok(SfDerivation::J(a.clone())),
        C::L(a, b, c) => Ok(SfDerivation::L(a.clone(), b.clone(), c.clone())),
        C::I(a, b, e) => Ok(SfDerivation::I(
            a.clone(),
            b.clone(),
            Box::new(tr_loose(e)?),
        )),
        C::Comp(f, g) => {
            let (Some(a), b) = infer_cat(f)? else {
                return Err(Error::Invalid("comp: expected a nonempty source".into()));
            };
            let (_, c) = infer_cat(g)?;
            Ok(sf_then(tr_tight(f)?, (&a, &b), tr_tight(g)?, &c))
        }
        C::Imp(f, g) => {
            // f : C ⟹ A, g : B ⟹ D, result ⟹ (A⊸B)⊸(C⊸D)
            let (Some(c), a) = infer_cat(f)? else {
                return Err(Error::Invalid("imp: expected a nonempty source".into()));
            };
            let (Some(b), dd) = infer_cat(g)? else {
                return Err(Error::Invalid("imp: expected a nonempty source".into()));
            };
            let imp_f = Formula::imp;
            let pre = sf_then(
                SfDerivation::L(c.clone(), a.clone(), b.clone()),
                (
                    &imp_f(a.clone(), b.clone()),
                    &imp_f(imp_f(c.clone(), a.clone()), imp_f(c.clone(), b.clone())),
                ),
                SfDerivation::I(
                    imp_f(c.clone(), a.clone()),
                    imp_f(c.clone(), b.clone()),
                    Box::new(tr_tight(f)?),
                ),
                &imp_f(c.clone(), b.clone()),
            );
            let post = app(
                tr_tight(g)?,
                SfDerivation::L(c.clone(), b.clone(), dd.clone()),
            );
            Ok(sf_then(
                pre,
                (&imp_f(a, b.clone()), &imp_f(c.clone(), b)),
                post,
                &imp_f(c, dd),
            ))
        }
        C::J(_) => Err(Error::Invalid("j has an empty source".into())),
        C::Gen(n) => Err(Error::Invalid(format!(
            "generator `{n}` has no stoup-free image"
        ))),
    }
}

/// Read a stoup-free derivation back as a map with empty source.
pub fn from_stoup_free(d: &SfDerivation) -> Result<CatDerivation> {
    Ok(match d {
        SfDerivation::J(a) => j(a.clone()),
        SfDerivation::App(a, f) => {
            let b = infer_sf(a)?;
            let bc = infer_sf(f)?;
            let Some((_, c)) = bc.as_imp() else {
                return Err(TypeError::new("app: function part is not an implication").into());
            };
            comp(from_stoup_free(f)?, i(b, c.clone(), from_stoup_free(a)?))
        }
        SfDerivation::I(a, b, e) => jhat(
            Formula::imp(a.clone(), b.clone()),
            i(a.clone(), b.clone(), from_stoup_free(e)?),
        ),
        SfDerivation::L(a, b, c) => jhat(
            Formula::imp(b.clone(), c.clone()),
            l(a.clone(), b.clone(), c.clone()),
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, parse_sequent};
    use crate::term::parse_term;

    fn fm(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn cat(s: &str) -> CatDerivation {
        CatDerivation::from_term(&parse_term(s).unwrap()).unwrap()
    }

    #[test]
    fn elaboration_reads_i_source_annotations() {
        let t = parse_term("comp(L[X,X,Y], i[X -o X, (X -o X) -o (X -o Y)](j[X]))").unwrap();
        let goal = parse_sequent("X -o Y |- X -o Y").unwrap();
        let d = elaborate_cat(&t, &goal, &GenSig::new()).unwrap();
        assert_eq!(d, cat("comp(L[X,X,Y], i[X -o X, X -o Y](j[X]))"));
        let t = parse_term("i[X -o X, Y](j[X])").unwrap();
        let goal = parse_sequent("(X -o X) -o Y |- Y").unwrap();
        assert_eq!(
            elaborate_cat(&t, &goal, &GenSig::new()).unwrap(),
            cat("i[X -o X, Y](j[X])")
        );
        let bad = parse_sequent("Y |- Y").unwrap();
        assert!(elaborate_cat(&t, &bad, &GenSig::new()).is_err());
    }

    #[test]
    fn checks_examples() {
        assert!(check_cat(&cat("id[X]"), &parse_sequent("X | |- X").unwrap()).is_ok());
        assert!(check_cat(
            &cat("L[X,Y,Z]"),
            &parse_sequent("Y -o Z | |- (X -o Y) -o (X -o Z)").unwrap()
        )
        .is_ok());
        assert!(check_cat(&cat("i[X, Y](j[X])"), &parse_sequent("Y | |- Y").unwrap()).is_err());
        let e = infer_cat(&cat("comp(j[X], id[Y])")).unwrap_err();
        assert!(e.path.is_empty());
        let e = infer_cat(&cat("imp(id[X], i[X, Y](id[X]))")).unwrap_err();
        assert_eq!(e.path, vec![1, 0]);
    }

    #[test]
    fn printing() {
        let d = cat("comp(L[X,X,Y], i[X -o X, (X -o X) -o (X -o Y)](j[X]))");
        assert_eq!(
            d.to_string(),
            "i[X -o X, (X -o X) -o X -o Y](j[X]) . L[X, X, Y]"
        );
        assert_eq!(CatDerivation::from_term(&d.to_term()).unwrap(), d);
        assert_eq!(cat("gen(g0)"), CatDerivation::Gen("g0".into()));
    }

    #[test]
    fn worked_instances() {
        let c2 =
            eq_generator(CatFamily::C2, &[CatArg::Fma(fm("X")), CatArg::Fma(fm("Y"))]).unwrap();
        assert_eq!(c2.rhs, id(fm("X -o Y")));
        assert_eq!(c2.lhs.to_string(), "i[X -o X, X -o Y](j[X]) . L[X, X, Y]");
        let c3 =
            eq_generator(CatFamily::C3, &[CatArg::Fma(fm("X")), CatArg::Fma(fm("Y"))]).unwrap();
        assert_eq!(c3.lhs.to_string(), "L[X, Y, Y] . j[Y]");
        assert_eq!(c3.rhs, j(fm("X -o Y")));
        let lu = eq_generator(CatFamily::LeftUnit, &[CatArg::Map(j(fm("X")))]).unwrap();
        assert_eq!(lu.lhs.to_string(), "id[X -o X] . j[X]");
    }

    #[test]
    fn arity_and_shape_errors() {
        assert!(eq_generator(CatFamily::C2, &[CatArg::Fma(fm("X"))]).is_err());
        assert!(eq_generator(CatFamily::C1, &[CatArg::Map(id(fm("X")))]).is_err());
        assert!(eq_generator(
            CatFamily::C2,
            &[CatArg::Map(id(fm("X"))), CatArg::Fma(fm("X"))]
        )
        .is_err());
        assert!(eq_generator(
            CatFamily::Assoc,
            &[
                CatArg::Map(id(fm("X"))),
                CatArg::Map(id(fm("Y"))),
                CatArg::Map(id(fm("Y")))
            ]
        )
        .is_err());
    }

    #[test]
    fn every_family_typechecks_at_atoms() {
        let x = fm("X");
        let y = fm("Y");
        let m = |d: CatDerivation| CatArg::Map(d);
        let f = |a: &Formula| CatArg::Fma(a.clone());
        let idx = || id(x.clone());
        for fam in CatFamily::ALL {
            let args: Vec<CatArg> = match fam {
                CatFamily::LeftUnit | CatFamily::RightUnit | CatFamily::JNat => vec![m(idx())],
                CatFamily::Assoc | CatFamily::INat | CatFamily::LNat => {
                    if fam == CatFamily::INat {
                        vec![m(j(x.clone())), m(id(fm("X -o X"))), m(idx())]
                    } else {
                        vec![m(idx()), m(idx()), m(idx())]
                    }
                }
                CatFamily::ImpComp => vec![m(idx()), m(idx()), m(idx()), m(idx())],
                CatFamily::C1 => vec![m(j(y.clone()))],
                CatFamily::C4 => vec![m(j(y.clone())), f(&x), f(&y)],
                CatFamily::C5 => vec![f(&x), f(&y), f(&x), f(&y)],
                _ => vec![f(&x), f(&y)],
            };
            eq_generator(fam, &args).unwrap_or_else(|e| panic!("{}: {e}", fam.name()));
        }
    }

    #[test]
    fn stoup_free_translation() {
        assert_eq!(
            to_stoup_free(&j(fm("X"))).unwrap(),
            SfDerivation::J(fm("X"))
        );
        assert_eq!(
            to_stoup_free(&l(fm("X"), fm("Y"), fm("Z"))).unwrap(),
            SfDerivation::L(fm("X"), fm("Y"), fm("Z"))
        );
        let samples = [
            "j[X]",
            "i[X -o X, X -o X](j[X]) . L[X, X, X] . j[X]",
            "imp(id[X], id[Y])",
            "imp(L[X, X, Y], id[Y])",
            "i[X -o X, Y](j[X])",
        ];
        for s in samples {
            let d = cat(s);
            let sf = to_stoup_free(&d).unwrap();
            let ty = infer_sf(&sf).unwrap();
            let (src, tgt) = infer_cat(&d).unwrap();
            match src {
                None => assert_eq!(ty, tgt),
                Some(a) => assert_eq!(ty, Formula::imp(a, tgt)),
            }
            let back = from_stoup_free(&sf).unwrap();
            assert!(infer_cat(&back).unwrap().0.is_none());
            assert_eq!(SfDerivation::from_term(&sf.to_term()).unwrap(), sf);
        }
    }
}
