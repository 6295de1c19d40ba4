//! Finite-set models.
//!
//! Objects are cardinalities drawn from `M`, the least set with `3 ∈ M` and
//! `n^m ∈ M` for `m, n ∈ M`. In plain mode `m ⊸ n = n^m` and loose maps
//! `−⟹C` are elements of `C`. In Kleisli mode over the reader monad
//! `T n = n^k`, a map `A⟹B` is a function `A → T B`, loose maps `−⟹C` are
//! elements of `T C`, and `m ⊸ n = m ⊸ T n = n^(k·m)`.
//!
//! Values are evaluated lazily, so maps between objects far beyond the
//! cardinality cap can still be compared. Equality is extensional: domains
//! of at most [`ENUM_LIMIT`] elements are enumerated, larger ones are
//! sampled with [`SAMPLES`] pseudo-random elements, and large argument
//! spaces are tested along random paths. Tables (and hence
//! [`interp_cat`]) are only produced within the cap.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex};

use crate::cat_calc::{self, infer_cat_in, CatArg, CatDerivation, CatFamily, GenSig};
use crate::error::{Error, ParseError, Result, TypeError};
use crate::syntax::{Formula, Sequent, Stoup};

pub const DEFAULT_CAP: u128 = 10_000_000;

/// Domains up to this size are enumerated when comparing maps.
pub const ENUM_LIMIT: u128 = 27;

/// Number of sample points for larger domains.
pub const SAMPLES: u64 = 5;

/// Argument spaces up to this size are compared exhaustively.
pub const EXHAUSTIVE_LIMIT: u128 = 4096;

/// Number of random argument paths for larger spaces.
pub const PATHS: u64 = 300;

/// Number of points a pseudo-random function inspects in its argument.
pub const PROBES: usize = 2;

/// Is `n ∈ M`? Only members up to `cap` are generated.
pub fn in_m(n: u128, cap: u128) -> bool {
    let mut members = vec![3u128];
    loop {
        let mut grew = false;
        for &m in &members.clone() {
            for &b in &members.clone() {
                let Ok(e) = u32::try_from(m) else { continue };
                if let Some(p) = b.checked_pow(e) {
                    if p <= cap && !members.contains(&p) {
                        members.push(p);
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            return members.contains(&n);
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CardObject(u64);

impl CardObject {
    pub fn new(n: u128, cap: u128) -> Result<CardObject> {
        if n > cap {
            return Err(Error::Cap(format!("cardinality {n} exceeds the cap {cap}")));
        }
        if !in_m(n, cap) {
            return Err(Error::Invalid(format!(
                "{n} is not an admissible cardinality"
            )));
        }
        Ok(CardObject(n as u64))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl fmt::Display for CardObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    Plain,
    Kleisli(CardObject),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelSpec {
    pub mode: Mode,
    pub assignment: BTreeMap<String, CardObject>,
    pub cap: u128,
    samples: SampleCache,
}

/// Memoized [`ModelSpec::elements`]; ignored by comparisons.
#[derive(Clone, Default)]
struct SampleCache(Arc<Mutex<HashMap<Formula, Arc<Vec<Value>>>>>);

impl PartialEq for SampleCache {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for SampleCache {}

impl fmt::Debug for SampleCache {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SampleCache")
    }
}

impl ModelSpec {
    pub fn new(mode: Mode, atoms: &[(&str, u64)]) -> Result<ModelSpec> {
        let mut assignment = BTreeMap::new();
        for (a, n) in atoms {
            assignment.insert(a.to_string(), CardObject::new(*n as u128, DEFAULT_CAP)?);
        }
        Ok(ModelSpec {
            mode,
            assignment,
            cap: DEFAULT_CAP,
            samples: SampleCache::default(),
        })
    }

    pub fn plain(atoms: &[(&str, u64)]) -> Result<ModelSpec> {
        ModelSpec::new(Mode::Plain, atoms)
    }

    pub fn kleisli(k: u64, atoms: &[(&str, u64)]) -> Result<ModelSpec> {
        ModelSpec::new(
            Mode::Kleisli(CardObject::new(k as u128, DEFAULT_CAP)?),
            atoms,
        )
    }

    /// Read `mode plain|kleisli <k>` and `atom <name> <cardinality>` lines.
    pub fn parse(text: &str) -> Result<ModelSpec> {
        let mut mode = None;
        let mut assignment = BTreeMap::new();
        let mut offset = 0;
        for line in text.lines() {
            let start = offset;
            offset += line.len() + 1;
            let words: Vec<&str> = line.split_whitespace().collect();
            let bad = |m: String| Error::Parse(ParseError::new(start, m));
            let num = |w: &str| {
                w.parse::<u128>()
                    .map_err(|_| bad(format!("`{w}` is not a number")))
            };
            match words.as_slice() {
                [] => {}
                [w, ..] if w.starts_with('#') => {}
                ["mode", "plain"] => mode = Some(Mode::Plain),
                ["mode", "kleisli", k] => {
                    mode = Some(Mode::Kleisli(CardObject::new(num(k)?, DEFAULT_CAP)?))
                }
                ["atom", name, n] => {
                    assignment.insert(name.to_string(), CardObject::new(num(n)?, DEFAULT_CAP)?);
                }
                _ => return Err(bad(format!("unrecognized line `{}`", line.trim()))),
            }
        }
        Ok(ModelSpec {
            mode: mode.ok_or_else(|| Error::Parse(ParseError::new(0, "missing `mode` line")))?,
            assignment,
            cap: DEFAULT_CAP,
            samples: SampleCache::default(),
        })
    }

    /// Size of the reader index set (1 in plain mode).
    pub fn reader(&self) -> u64 {
        match self.mode {
            Mode::Plain => 1,
            Mode::Kleisli(k) => k.get(),
        }
    }

    fn atom(&self, a: &str) -> Result<u64> {
        self.assignment
            .get(a)
            .map(|c| c.get())
            .ok_or_else(|| Error::Invalid(format!("atom `{a}` has no cardinality")))
    }

    /// Cardinality with no cap; `None` beyond `u128`.
    pub fn card(&self, f: &Formula) -> Result<Option<u128>> {
        Ok(match f {
            Formula::Atom(a) => Some(self.atom(a)? as u128),
            Formula::Imp(a, b) => {
                let (m, n) = (self.card(a)?, self.card(b)?);
                match (m, n) {
                    (Some(m), Some(n)) => m
                        .checked_mul(self.reader() as u128)
                        .and_then(|e| u32::try_from(e).ok())
                        .and_then(|e| n.checked_pow(e)),
                    _ => None,
                }
            }
        })
    }

    fn capped(&self, f: &Formula) -> Result<u128> {
        match self.card(f)? {
            Some(n) if n <= self.cap => Ok(n),
            _ => Err(Error::Cap(format!(
                "the interpretation of {f} exceeds the cap {}",
                self.cap
            ))),
        }
    }

    /// Cardinality of `T C` (equal to `C` in plain mode).
    fn t_capped(&self, f: &Formula) -> Result<u128> {
        let n = self.capped(f)?;
        n.checked_pow(self.reader() as u32)
            .filter(|t| *t <= self.cap)
            .ok_or_else(|| Error::Cap(format!("T({f}) exceeds the cap {}", self.cap)))
    }
}

pub fn interp_formula(spec: &ModelSpec, f: &Formula) -> Result<CardObject> {
    let n = spec.capped(f)?;
    Ok(CardObject(n as u64))
}

// ---------------------------------------------------------------------------
// Values

#[derive(Clone)]
pub enum Value {
    Elem(u64),
    Fun(Arc<dyn Fn(&Value) -> Value + Send + Sync>),
}

impl Value {
    fn elem(&self) -> u64 {
        match self {
            Value::Elem(n) => *n,
            Value::Fun(_) => unreachable!("expected an element of an atom"),
        }
    }

    fn call(&self, x: &Value) -> Value {
        match self {
            Value::Fun(f) => f(x),
            Value::Elem(_) => unreachable!("expected a function"),
        }
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Elem(n) => write!(f, "{n}"),
            Value::Fun(_) => write!(f, "<fun>"),
        }
    }
}

/// Denotation of a map `S⟹C`: the source value (absent for loose maps)
/// and the reader index give an element of `C`.
pub type Den = Arc<dyn Fn(Option<&Value>, u64) -> Value + Send + Sync>;

/// Denotations of generators.
pub type Env = BTreeMap<String, Den>;

fn mix(parts: &[u64]) -> u64 {
    let mut h = DefaultHasher::new();
    parts.hash(&mut h);
    h.finish()
}

fn fma_seed(f: &Formula) -> u64 {
    let mut h = DefaultHasher::new();
    f.hash(&mut h);
    h.finish()
}

fn digit(code: u128, pos: u128, base: u128, len: u128) -> u128 {
    (code / base.pow((len - 1 - pos) as u32)) % base
}

impl ModelSpec {
    /// Apply an element of `A⊸B` to `a` at reader index `r`.
    pub fn app(&self, h: &Value, a: &Value, r: u64) -> Value {
        match self.mode {
            Mode::Plain => h.call(a),
            Mode::Kleisli(_) => h.call(a).call(&Value::Elem(r)),
        }
    }

    /// Build an element of `A⊸B` from `(a, r) ↦ b`; plain mode ignores `r`.
    pub fn lam(&self, f: impl Fn(&Value, u64) -> Value + Send + Sync + 'static) -> Value {
        match self.mode {
            Mode::Plain => Value::Fun(Arc::new(move |a| f(a, 0))),
            Mode::Kleisli(_) => {
                let f = Arc::new(f);
                Value::Fun(Arc::new(move |a| {
                    let (a, f) = (a.clone(), f.clone());
                    Value::Fun(Arc::new(move |r| f(&a, r.elem())))
                }))
            }
        }
    }

    /// The element with the given big-endian code.
    pub fn decode(&self, f: &Formula, code: u128) -> Result<Value> {
        match f {
            Formula::Atom(_) => Ok(Value::Elem(code as u64)),
            Formula::Imp(a, b) => {
                let m = self.capped(a)?;
                let n = self
                    .card(b)?
                    .ok_or_else(|| Error::Cap(format!("{b} is too large to decode")))?;
                let k = self.reader() as u128;
                let len = m * k;
                let (spec, a, b) = (self.clone(), (**a).clone(), (**b).clone());
                Ok(self.lam(move |x, r| {
                    let i = spec.code(&a, x).expect("enumerable domain");
                    let d = digit(code, i * k + r as u128, n, len);
                    spec.decode(&b, d).expect("decodable codomain")
                }))
            }
        }
    }

    /// Big-endian code of an element; fails when the domain of some
    /// function type in `f` is too large to enumerate.
    pub fn code(&self, f: &Formula, v: &Value) -> Result<u128> {
        match f {
            Formula::Atom(_) => Ok(v.elem() as u128),
            Formula::Imp(a, b) => {
                let m = self.capped(a)?;
                let n = self
                    .card(b)?
                    .ok_or_else(|| Error::Cap(format!("{b} is too large to encode")))?;
                let mut acc: u128 = 0;
                for i in 0..m {
                    let x = self.decode(a, i)?;
                    for r in 0..self.reader() {
                        let d = self.code(b, &self.app(v, &x, r))?;
                        acc = acc
                            .checked_mul(n)
                            .and_then(|c| c.checked_add(d))
                            .ok_or_else(|| {
                                Error::Cap(format!("code of an element of {f} overflows"))
                            })?;
                    }
                }
                Ok(acc)
            }
        }
    }

    /// All elements of a small object, or a fixed pseudo-random sample.
    pub fn elements(&self, f: &Formula) -> Arc<Vec<Value>> {
        if let Some(v) = self.samples.0.lock().expect("cache").get(f) {
            return v.clone();
        }
        let v: Vec<Value> = match self.card(f) {
            Ok(Some(n)) if n <= ENUM_LIMIT => (0..n)
                .map(|i| self.decode(f, i).expect("small object"))
                .collect(),
            _ => {
                let s = fma_seed(f);
                (0..SAMPLES)
                    .map(|i| self.random_value(f, mix(&[s, i])))
                    .collect()
            }
        };
        let v = Arc::new(v);
        self.samples
            .0
            .lock()
            .expect("cache")
            .insert(f.clone(), v.clone());
        v
    }

    /// A hash of `v` determined by its values at a few probe points: the
    /// first [`PROBES`] sample elements, at the first and last reader index.
    pub fn fingerprint(&self, f: &Formula, v: &Value) -> u64 {
        match f {
            Formula::Atom(_) => v.elem(),
            Formula::Imp(a, b) => {
                let mut parts = vec![];
                let k = self.reader();
                for x in self.elements(a).iter().take(PROBES) {
                    for r in [0, k - 1].into_iter().take(if k > 1 { 2 } else { 1 }) {
                        parts.push(self.fingerprint(b, &self.app(v, x, r)));
                    }
                }
                mix(&parts)
            }
        }
    }

    /// A pseudo-random element. Functions are random in the fingerprint of
    /// their argument, so they respect extensional equality.
    pub fn random_value(&self, f: &Formula, seed: u64) -> Value {
        match f {
            Formula::Atom(a) => Value::Elem(seed % self.atom(a).expect("assigned atom")),
            Formula::Imp(a, b) => {
                let (spec, a, b) = (self.clone(), (**a).clone(), (**b).clone());
                self.lam(move |x, r| {
                    let h = mix(&[seed, spec.fingerprint(&a, x), r]);
                    spec.random_value(&b, h)
                })
            }
        }
    }

    /// A pseudo-random map `S⟹C`.
    pub fn random_map(&self, s: &Stoup, c: &Formula, seed: u64) -> Den {
        let (spec, s, c) = (self.clone(), s.clone(), c.clone());
        Arc::new(move |x, r| {
            let fp = match (&s, x) {
                (Some(a), Some(x)) => spec.fingerprint(a, x),
                _ => 0,
            };
            spec.random_value(&c, mix(&[seed, fp, r]))
        })
    }

    pub fn eq_value(&self, f: &Formula, v: &Value, w: &Value) -> bool {
        let (v, w) = (v.clone(), w.clone());
        let d1: Den = Arc::new(move |_, _| v.clone());
        let d2: Den = Arc::new(move |_, _| w.clone());
        self.eq_core(vec![None], 1, f, &d1, &d2)
    }

    /// Extensional equality of two maps `S⟹C`.
    pub fn eq_den(&self, s: &Stoup, c: &Formula, d1: &Den, d2: &Den) -> bool {
        let sources: Vec<Option<Value>> = match s {
            None => vec![None],
            Some(a) => self.elements(a).iter().cloned().map(Some).collect(),
        };
        self.eq_core(sources, self.reader(), c, d1, d2)
    }

    /// Compare `d1` and `d2` after feeding them a source, a reader index and
    /// then arguments along the spine of `c` down to an atom. Small argument
    /// spaces are covered exhaustively, larger ones by [`PATHS`] seeded
    /// random choices.
    fn eq_core(
        &self,
        sources: Vec<Option<Value>>,
        k0: u64,
        c: &Formula,
        d1: &Den,
        d2: &Den,
    ) -> bool {
        let mut doms = vec![];
        let mut t = c;
        while let Formula::Imp(a, b) = t {
            doms.push(self.elements(a));
            t = b;
        }
        let k = self.reader();
        let mut radix = vec![sources.len() as u128, k0 as u128];
        for d in &doms {
            radix.push(d.len() as u128);
            radix.push(k as u128);
        }
        let total = radix.iter().try_fold(1u128, |acc, r| acc.checked_mul(*r));
        let leaf = |idx: &[u128]| {
            let x = sources[idx[0] as usize].as_ref();
            let r0 = idx[1] as u64;
            let (mut v, mut w) = (d1(x, r0), d2(x, r0));
            for (i, d) in doms.iter().enumerate() {
                let a = &d[idx[2 + 2 * i] as usize];
                let r = idx[3 + 2 * i] as u64;
                v = self.app(&v, a, r);
                w = self.app(&w, a, r);
            }
            v.elem() == w.elem()
        };
        match total {
            Some(n) if n <= EXHAUSTIVE_LIMIT => (0..n).all(|mut i| {
                let mut idx = vec![0; radix.len()];
                for (slot, r) in idx.iter_mut().zip(&radix).rev() {
                    *slot = i % r;
                    i /= r;
                }
                leaf(&idx)
            }),
            _ => (0..PATHS).all(|p| {
                let idx: Vec<u128> = radix
                    .iter()
                    .enumerate()
                    .map(|(j, r)| mix(&[p, j as u64]) as u128 % r)
                    .collect();
                leaf(&idx)
            }),
        }
    }
}

// ---------------------------------------------------------------------------
// Interpretation of categorical derivations

/// Denotation of a derivation whose generators are given by `env`.
pub fn den(spec: &ModelSpec, d: &CatDerivation, env: &Env) -> Result<Den> {
    use CatDerivation as C;
    let sp = spec.clone();
    Ok(match d {
        C::Id(_) => Arc::new(|x, _| x.expect("tight map").clone()),
        C::Comp(f, g) => {
            let (f, g) = (den(spec, f, env)?, den(spec, g, env)?);
            Arc::new(move |x, r| g(Some(&f(x, r)), r))
        }
        C::Imp(f, g) => {
            let (f, g) = (den(spec, f, env)?, den(spec, g, env)?);
            Arc::new(move |h, _| {
                let (h, f, g, sp2) = (
                    h.expect("tight map").clone(),
                    f.clone(),
                    g.clone(),
                    sp.clone(),
                );
                sp.lam(move |c, r| g(Some(&sp2.app(&h, &f(Some(c), r), r)), r))
            })
        }
        C::J(_) => Arc::new(move |_, _| sp.lam(|x, _| x.clone())),
        C::I(_, _, e) => {
            let e = den(spec, e, env)?;
            Arc::new(move |h, r| sp.app(h.expect("tight map"), &e(None, r), r))
        }
        C::L(..) => Arc::new(move |g, _| {
            let (g, sp1) = (g.expect("tight map").clone(), sp.clone());
            sp.lam(move |h, _| {
                let (g, h, sp2) = (g.clone(), h.clone(), sp1.clone());
                sp1.lam(move |x, r| sp2.app(&g, &sp2.app(&h, x, r), r))
            })
        }),
        C::Gen(name) => env
            .get(name)
            .cloned()
            .ok_or_else(|| TypeError::new(format!("generator `{name}` has no interpretation")))?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMap {
    pub domain: u64,
    pub codomain: u64,
    pub table: Vec<u64>,
}

/// A map `A⟹C` becomes a function table from `A` to `C` (to `T C` in
/// Kleisli mode); a loose map `−⟹C` becomes an element of `C` (of `T C`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Interp {
    Map(FiniteMap),
    Element { object: u64, value: u64 },
}

impl fmt::Display for Interp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Interp::Map(m) => {
                let t: Vec<String> = m.table.iter().map(u64::to_string).collect();
                write!(f, "map {} -> {} [{}]", m.domain, m.codomain, t.join(", "))
            }
            Interp::Element { object, value } => write!(f, "element {value} of {object}"),
        }
    }
}

impl ModelSpec {
    /// Code of the element of `T C` given by `r ↦ d(x, r)`.
    fn t_code(&self, c: &Formula, d: &Den, x: Option<&Value>) -> Result<u64> {
        let n = self.capped(c)?;
        let mut acc = 0u128;
        for r in 0..self.reader() {
            acc = acc * n + self.code(c, &d(x, r))?;
        }
        Ok(acc as u64)
    }
}

pub fn interp_cat(spec: &ModelSpec, d: &CatDerivation) -> Result<Interp> {
    let (s, c) = cat_calc::infer_cat(d)?;
    let v = den(spec, d, &Env::new())?;
    let object = spec.t_capped(&c)? as u64;
    match s {
        None => Ok(Interp::Element {
            object,
            value: spec.t_code(&c, &v, None)?,
        }),
        Some(a) => {
            let m = spec.capped(&a)?;
            let mut table = Vec::with_capacity(m as usize);
            for i in 0..m {
                let x = spec.decode(&a, i)?;
                table.push(spec.t_code(&c, &v, Some(&x))?);
            }
            Ok(Interp::Map(FiniteMap {
                domain: m as u64,
                codomain: object,
                table,
            }))
        }
    }
}

/// Do two derivations of the same sequent denote the same map?
pub fn models_agree(spec: &ModelSpec, d1: &CatDerivation, d2: &CatDerivation) -> Result<bool> {
    let (s, c) = cat_calc::infer_cat(d1)?;
    if (s.clone(), c.clone()) != cat_calc::infer_cat(d2)? {
        return Err(TypeError::new("the derivations have different types").into());
    }
    let (v1, v2) = (den(spec, d1, &Env::new())?, den(spec, d2, &Env::new())?);
    Ok(spec.eq_den(&s, &c, &v1, &v2))
}

// ---------------------------------------------------------------------------
// Axioms

/// Object tuples beyond this many are subsampled.
pub const TUPLE_LIMIT: usize = 64;

#[derive(Clone, Debug)]
pub struct AxiomFailure {
    pub family: CatFamily,
    pub sequent: Sequent,
    pub lhs: CatDerivation,
    pub rhs: CatDerivation,
}

impl fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} fails at {}: {} vs {}",
            self.family.name(),
            self.sequent,
            self.lhs,
            self.rhs
        )
    }
}

#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    pub checked: usize,
    pub failures: Vec<AxiomFailure>,
}

/// The families checked by [`check_axioms`]: (c1)–(c5) and the
/// naturality of `j`, `i` and `L`.
pub const AXIOM_FAMILIES: [CatFamily; 8] = [
    CatFamily::C1,
    CatFamily::C2,
    CatFamily::C3,
    CatFamily::C4,
    CatFamily::C5,
    CatFamily::JNat,
    CatFamily::INat,
    CatFamily::LNat,
];

/// How many object slots each family needs and how they are assigned to
/// its arguments: a formula slot takes one object, a map slot is a
/// generator typed by one or two objects (`None` for a loose source).
type SlotShape = Result<usize, (Option<usize>, usize)>;

fn axiom_shape(fam: CatFamily) -> (usize, Vec<SlotShape>) {
    match fam {
        CatFamily::C1 => (1, vec![Err((None, 0))]),
        CatFamily::C2 | CatFamily::C3 => (2, vec![Ok(0), Ok(1)]),
        CatFamily::C4 => (3, vec![Err((None, 0)), Ok(1), Ok(2)]),
        CatFamily::C5 => (4, vec![Ok(0), Ok(1), Ok(2), Ok(3)]),
        CatFamily::JNat => (2, vec![Err((Some(0), 1))]),
        CatFamily::INat => (
            4,
            vec![Err((None, 0)), Err((Some(0), 1)), Err((Some(2), 3))],
        ),
        CatFamily::LNat => (
            6,
            vec![Err((Some(0), 1)), Err((Some(2), 3)), Err((Some(4), 5))],
        ),
        _ => unreachable!("not an axiom family"),
    }
}

fn tuples(n: usize, arity: usize, seed: u64) -> Vec<Vec<usize>> {
    let total = n.checked_pow(arity as u32).unwrap_or(usize::MAX);
    let nth = |mut i: usize| {
        let mut t = vec![0; arity];
        for slot in t.iter_mut().rev() {
            *slot = i % n;
            i /= n;
        }
        t
    };
    if total <= TUPLE_LIMIT {
        return (0..total).map(nth).collect();
    }
    let mut out: Vec<Vec<usize>> = (0..n).map(|i| vec![i; arity]).collect();
    let mut k = 0;
    while out.len() < TUPLE_LIMIT {
        let t = nth((mix(&[seed, k]) % total as u64) as usize);
        if !out.contains(&t) {
            out.push(t);
        }
        k += 1;
    }
    out
}

/// Check the defining equations at the given objects. Map arguments of
/// the families are pseudo-random maps of the model.
pub fn check_axioms(spec: &ModelSpec, objects: &[Formula]) -> Result<AxiomReport> {
    let mut report = AxiomReport::default();
    if objects.is_empty() {
        return Ok(report);
    }
    for (fi, fam) in AXIOM_FAMILIES.into_iter().enumerate() {
        let (arity, shape) = axiom_shape(fam);
        for (ti, t) in tuples(objects.len(), arity, fi as u64)
            .into_iter()
            .enumerate()
        {
            let mut sig = GenSig::new();
            let mut env = Env::new();
            let mut args = Vec::new();
            for (si, slot) in shape.iter().enumerate() {
                match slot {
                    Ok(o) => args.push(CatArg::Fma(objects[t[*o]].clone())),
                    Err((s, c)) => {
                        let name = format!("m{si}");
                        let s = s.map(|o| objects[t[o]].clone());
                        let c = objects[t[*c]].clone();
                        env.insert(
                            name.clone(),
                            spec.random_map(&s, &c, mix(&[fi as u64, ti as u64, si as u64])),
                        );
                        sig.insert(name.clone(), (s, c));
                        args.push(CatArg::Map(CatDerivation::Gen(name)));
                    }
                }
            }
            let eq = cat_calc::eq_generator_in(fam, &args, &sig)?;
            let (l, r) = (den(spec, &eq.lhs, &env)?, den(spec, &eq.rhs, &env)?);
            report.checked += 1;
            if !spec.eq_den(&eq.sequent.stoup, &eq.sequent.succedent, &l, &r) {
                report.failures.push(AxiomFailure {
                    family: fam,
                    sequent: eq.sequent,
                    lhs: eq.lhs,
                    rhs: eq.rhs,
                });
            }
        }
    }
    Ok(report)
}

/// Formulae over the given atoms of nesting depth at most `depth`.
pub fn formulas_up_to_depth(atoms: &[&str], depth: usize) -> Vec<Formula> {
    let mut out: Vec<Formula> = atoms.iter().map(|a| Formula::atom(a)).collect();
    for _ in 0..depth {
        let prev = out.clone();
        for a in &prev {
            for b in &prev {
                let f = Formula::imp(a.clone(), b.clone());
                if !out.contains(&f) {
                    out.push(f);
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Left-normality

/// Size of the image of `ĵ : C(A,B) → C(−, A⊸B)` next to the size of its
/// codomain. Every map `A⟹B` is enumerated, so `A⊸B` must be within the cap.
pub fn jhat_image(spec: &ModelSpec, a: &Formula, b: &Formula) -> Result<(u128, u128)> {
    let ab = Formula::imp(a.clone(), b.clone());
    let maps = spec.capped(&ab)?;
    let codomain = spec
        .card(&ab)?
        .and_then(|n| n.checked_pow(spec.reader() as u32))
        .ok_or_else(|| Error::Cap(format!("T({ab}) overflows")))?;
    let mut sig = GenSig::new();
    sig.insert("f".into(), (Some(a.clone()), b.clone()));
    let jf = cat_calc::jhat(a.clone(), CatDerivation::Gen("f".into()));
    infer_cat_in(&jf, &sig)?;
    let mut image = HashSet::new();
    for i in 0..maps {
        let h = spec.decode(&ab, i)?;
        let sp = spec.clone();
        let f: Den = Arc::new(move |x, r| sp.app(&h, x.expect("tight map"), r));
        let env = Env::from([("f".to_string(), f)]);
        let v = den(spec, &jf, &env)?;
        let mut code = 0u128;
        for r in 0..spec.reader() {
            code = code * spec.card(&ab)?.expect("bounded") + spec.code(&ab, &v(None, r))?;
        }
        image.insert(code);
    }
    Ok((image.len() as u128, codomain))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat_calc::{comp, i, id, j, l};
    use crate::syntax::parse_formula;

    fn fm(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn plain() -> ModelSpec {
        ModelSpec::plain(&[("X", 3), ("Y", 3), ("Z", 3)]).unwrap()
    }

    fn kleisli() -> ModelSpec {
        ModelSpec::kleisli(3, &[("X", 3), ("Y", 3), ("Z", 3)]).unwrap()
    }

    #[test]
    fn admissible_cardinalities() {
        for n in [3, 27, 19683] {
            assert!(in_m(n, DEFAULT_CAP));
        }
        for n in [1, 2, 9, 81] {
            assert!(!in_m(n, DEFAULT_CAP));
        }
        assert!(ModelSpec::plain(&[("X", 9)]).is_err());
    }

    #[test]
    fn formula_cardinalities() {
        let p = plain();
        assert_eq!(interp_formula(&p, &fm("X -o X")).unwrap().get(), 27);
        assert_eq!(interp_formula(&p, &fm("X")).unwrap().get(), 3);
        assert_eq!(
            interp_formula(&kleisli(), &fm("X -o Y")).unwrap().get(),
            19683
        );
        assert!(matches!(
            interp_formula(&p, &fm("(X -o X) -o X -o X")),
            Err(Error::Cap(_))
        ));
        assert!(interp_formula(&p, &fm("W")).is_err());
    }

    #[test]
    fn parses_model_files() {
        let s = ModelSpec::parse("# m\nmode kleisli 3\natom X 3\n\natom Y 27\n").unwrap();
        assert_eq!(s.reader(), 3);
        assert_eq!(s.assignment["Y"].get(), 27);
        assert!(ModelSpec::parse("atom X 3\n").is_err());
        assert!(ModelSpec::parse("mode plain\natom X 4\n").is_err());
        assert!(ModelSpec::parse("mode odd\n").is_err());
    }

    #[test]
    fn codes_round_trip() {
        for spec in [plain(), kleisli()] {
            for f in ["X", "X -o Y"] {
                let f = fm(f);
                let n = spec.card(&f).unwrap().unwrap();
                for c in [0, 1, n / 2, n - 1] {
                    assert_eq!(spec.code(&f, &spec.decode(&f, c).unwrap()).unwrap(), c);
                }
            }
        }
    }

    #[test]
    fn interprets_structure() {
        let p = plain();
        let x = fm("X");
        // Independent oracle: the identity table [0,1,2] in base 3.
        let ident = [0u64, 1, 2].iter().fold(0, |acc, d| acc * 3 + d);
        assert_eq!(
            interp_cat(&p, &j(x.clone())).unwrap(),
            Interp::Element {
                object: 27,
                value: ident
            }
        );
        assert_eq!(
            interp_cat(&p, &id(x.clone())).unwrap(),
            Interp::Map(FiniteMap {
                domain: 3,
                codomain: 3,
                table: vec![0, 1, 2]
            })
        );
        let xx = fm("X -o X");
        let c2 = comp(
            l(x.clone(), x.clone(), x.clone()),
            i(xx.clone(), xx.clone(), j(x.clone())),
        );
        assert!(models_agree(&p, &c2, &id(xx.clone())).unwrap());
        let c1 = comp(j(xx.clone()), i(xx.clone(), xx.clone(), j(x.clone())));
        assert!(models_agree(&p, &c1, &j(x.clone())).unwrap());
        assert!(matches!(
            interp_cat(&p, &l(x.clone(), x.clone(), x.clone())),
            Err(Error::Cap(_))
        ));
    }

    #[test]
    fn kleisli_elements_live_in_t() {
        let k = kleisli();
        let x = fm("X");
        assert!(matches!(interp_cat(&k, &j(x.clone())), Err(Error::Cap(_))));
        // j is constant in the reader.
        let v = den(&k, &j(x.clone()), &Env::new()).unwrap();
        let xx = fm("X -o X");
        assert!(k.eq_value(&xx, &v(None, 0), &v(None, 2)));
        assert_eq!(
            k.code(&xx, &v(None, 1)).unwrap(),
            k.code(&xx, &v(None, 0)).unwrap()
        );
        match interp_cat(&k, &id(x)).unwrap() {
            Interp::Map(m) => {
                assert_eq!(m.codomain, 27);
                // a ↦ (r ↦ a): digits a, a, a in base 3.
                assert_eq!(m.table, vec![0, 13, 26]);
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn axioms_hold() {
        for spec in [plain(), kleisli()] {
            for objs in [
                vec![fm("X")],
                vec![fm("X -o X")],
                vec![fm("X"), fm("Y -o X")],
            ] {
                let r = check_axioms(&spec, &objs).unwrap();
                assert!(r.checked > 0);
                assert!(r.failures.is_empty(), "{}", r.failures[0]);
            }
        }
    }

    #[test]
    fn broken_structure_is_caught() {
        // A wrong L (ignoring its argument) must violate (c2).
        let p = plain();
        let x = fm("X");
        let eq = cat_calc::eq_generator(
            CatFamily::C2,
            &[CatArg::Fma(x.clone()), CatArg::Fma(x.clone())],
        )
        .unwrap();
        let v = den(&p, &eq.lhs, &Env::new()).unwrap();
        let sp = p.clone();
        let constant: Den = Arc::new(move |_, _| sp.lam(|_, _| Value::Elem(0)));
        assert!(p.eq_den(
            &eq.sequent.stoup,
            &eq.sequent.succedent,
            &v,
            &den(&p, &id(fm("X -o X")), &Env::new()).unwrap()
        ));
        assert!(!p.eq_den(&eq.sequent.stoup, &eq.sequent.succedent, &v, &constant));
    }

    #[test]
    fn left_normality() {
        let x = fm("X");
        assert_eq!(jhat_image(&plain(), &x, &x).unwrap(), (27, 27));
        let (image, codomain) = jhat_image(&kleisli(), &x, &x).unwrap();
        assert_eq!(image, 19683);
        assert_eq!(codomain, 3u128.pow(27));
    }
}
