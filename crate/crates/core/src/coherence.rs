//! Exhaustive focused proof search: enumeration and counting of homsets,
//! and the decision procedure for equality of categorical maps.
//!
//! The search space of a sequent is finite (every premise is built from
//! subformulae and subcontexts of its conclusion). Over a multigraph
//! with clauses that can feed into each other a goal may be reachable
//! from itself; if such a cycle runs through inhabited goals only, the
//! homset is infinite and search reports [`SearchError::Infinite`].

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::rc::Rc;

use crate::bridge::cmplt0;
use crate::cat_calc::{infer_cat, CatDerivation};
use crate::error::{Error, Result};
use crate::focused::{self, FocF, FocI, FocP};
use crate::multigraph::Multigraph;
use crate::syntax::{Formula, Phase, Sequent};

pub const DEFAULT_CAP: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchError {
    /// More derivations than the cap allows.
    Cap { count: Option<u128>, cap: u128 },
    /// A goal is reachable from itself through inhabited goals.
    Infinite(Sequent),
}

impl fmt::Display for SearchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchError::Cap {
                count: Some(n),
                cap,
            } => {
                write!(f, "{n} derivations exceed the cap of {cap}")
            }
            SearchError::Cap { count: None, cap } => {
                write!(f, "derivation count overflows (cap {cap})")
            }
            SearchError::Infinite(s) => write!(
                f,
                "infinitely many derivations: {s} is reachable from itself"
            ),
        }
    }
}

impl From<SearchError> for Error {
    fn from(e: SearchError) -> Error {
        Error::Cap(e.to_string())
    }
}

type Key = (Phase, Sequent);

#[derive(Clone, Debug)]
enum Rule {
    ImpR,
    P2I,
    Pass,
    F2P,
    Ax,
    ImpL(usize),
    Clause(usize),
}

#[derive(Clone, Debug)]
struct Step {
    rule: Rule,
    premises: Vec<Key>,
}

#[derive(Clone, Debug)]
enum Der {
    I(FocI),
    P(FocP),
    F(FocF),
}

impl Der {
    fn i(self) -> FocI {
        match self {
            Der::I(d) => d,
            _ => unreachable!("phase I premise"),
        }
    }
    fn p(self) -> FocP {
        match self {
            Der::P(d) => d,
            _ => unreachable!("phase P premise"),
        }
    }
    fn f(self) -> FocF {
        match self {
            Der::F(d) => d,
            _ => unreachable!("phase F premise"),
        }
    }
}

/// All ways of cutting a prefix of a context of length `len` into `n`
/// consecutive blocks, shortest first blocks first.
fn compositions(len: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(left: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur.push(k);
            go(left - k, n - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(len, n, &mut Vec::new(), &mut out);
    out
}

/// A proof search session over a fixed multigraph (empty by default).
pub struct Search<'g> {
    graph: &'g Multigraph,
    cap: u128,
    steps: HashMap<Key, Rc<Vec<Step>>>,
    inhabited: HashMap<Key, bool>,
    witness: HashMap<Key, usize>,
    counts: HashMap<Key, u128>,
    lists: HashMap<Key, Rc<Vec<Der>>>,
}

static EMPTY_GRAPH: Multigraph = Multigraph {
    atoms: Vec::new(),
    clauses: Vec::new(),
};

impl Search<'static> {
    /// Search in the free category on the atoms alone.
    pub fn plain() -> Self {
        Search::new(&EMPTY_GRAPH)
    }
}

impl<'g> Search<'g> {
    pub fn new(graph: &'g Multigraph) -> Self {
        Search {
            graph,
            cap: DEFAULT_CAP,
            steps: HashMap::new(),
            inhabited: HashMap::new(),
            witness: HashMap::new(),
            counts: HashMap::new(),
            lists: HashMap::new(),
        }
    }

    pub fn with_cap(mut self, cap: u128) -> Self {
        self.cap = cap;
        self
    }

    fn rules(&self, (phase, goal): &Key) -> Vec<Step> {
        let mut out = Vec::new();
        match phase {
            Phase::I => {
                if let Some((a, b)) = goal.succedent.as_imp() {
                    let mut ctx = goal.context.clone();
                    ctx.push(a.clone());
                    out.push(Step {
                        rule: Rule::ImpR,
                        premises: vec![(
                            Phase::I,
                            Sequent::new(goal.stoup.clone(), ctx, b.clone()),
                        )],
                    });
                } else {
                    out.push(Step {
                        rule: Rule::P2I,
                        premises: vec![(Phase::P, goal.clone())],
                    });
                }
            }
            Phase::P => {
                if goal.stoup.is_none() {
                    if let Some((a, rest)) = goal.context.split_first() {
                        out.push(Step {
                            rule: Rule::Pass,
                            premises: vec![(
                                Phase::P,
                                Sequent::new(
                                    Some(a.clone()),
                                    rest.to_vec(),
                                    goal.succedent.clone(),
                                ),
                            )],
                        });
                    }
                }
                if goal.stoup.is_some() || self.graph.clauses.iter().any(|c| c.stoup.is_none()) {
                    out.push(Step {
                        rule: Rule::F2P,
                        premises: vec![(Phase::F, goal.clone())],
                    });
                }
            }
            Phase::F => {
                if let Some(s) = &goal.stoup {
                    if s.is_atomic() && goal.context.is_empty() && *s == goal.succedent {
                        out.push(Step {
                            rule: Rule::Ax,
                            premises: vec![],
                        });
                    }
                    if let Some((a, b)) = s.as_imp() {
                        for k in 0..=goal.context.len() {
                            let (g, d) = goal.context.split_at(k);
                            out.push(Step {
                                rule: Rule::ImpL(k),
                                premises: vec![
                                    (Phase::I, Sequent::new(None, g.to_vec(), a.clone())),
                                    (
                                        Phase::F,
                                        Sequent::new(
                                            Some(b.clone()),
                                            d.to_vec(),
                                            goal.succedent.clone(),
                                        ),
                                    ),
                                ],
                            });
                        }
                    }
                }
                for (ci, c) in self.graph.clauses.iter().enumerate() {
                    if c.stoup != goal.stoup {
                        continue;
                    }
                    for blocks in compositions(goal.context.len(), c.premises.len()) {
                        let mut off = 0;
                        let mut premises = Vec::new();
                        for (len, z) in blocks.iter().zip(&c.premises) {
                            premises.push((
                                Phase::I,
                                Sequent::new(
                                    None,
                                    goal.context[off..off + len].to_vec(),
                                    z.clone(),
                                ),
                            ));
                            off += len;
                        }
                        premises.push((
                            Phase::F,
                            Sequent::new(
                                Some(c.conclusion.clone()),
                                goal.context[off..].to_vec(),
                                goal.succedent.clone(),
                            ),
                        ));
                        out.push(Step {
                            rule: Rule::Clause(ci),
                            premises,
                        });
                    }
                }
            }
            _ => unreachable!("search runs over focused phases"),
        }
        out
    }

    fn steps_of(&mut self, key: &Key) -> Rc<Vec<Step>> {
        if let Some(s) = self.steps.get(key) {
            return s.clone();
        }
        let s = Rc::new(self.rules(key));
        self.steps.insert(key.clone(), s.clone());
        s
    }

    /// Decide inhabitation of every goal reachable from `root` by a least
    /// fixpoint over the finite reachable set.
    fn solve_inhabitation(&mut self, root: &Key) {
        if self.inhabited.contains_key(root) {
            return;
        }
        let mut order = Vec::new();
        let mut seen = HashSet::new();
        let mut stack = vec![root.clone()];
        while let Some(k) = stack.pop() {
            if self.inhabited.contains_key(&k) || !seen.insert(k.clone()) {
                continue;
            }
            let steps = self.steps_of(&k);
            for st in steps.iter() {
                for p in &st.premises {
                    stack.push(p.clone());
                }
            }
            order.push(k);
        }
        let mut inh: HashMap<Key, bool> = order.iter().map(|k| (k.clone(), false)).collect();
        loop {
            let mut changed = false;
            for k in &order {
                if inh[k] {
                    continue;
                }
                let ok = self.steps[k].iter().position(|st| {
                    st.premises
                        .iter()
                        .all(|p| self.inhabited.get(p).copied().unwrap_or_else(|| inh[p]))
                });
                if let Some(w) = ok {
                    // Premises were marked before `k`, so witnesses are well founded.
                    inh.insert(k.clone(), true);
                    self.witness.insert(k.clone(), w);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        self.inhabited.extend(inh);
    }

    fn is_inhabited(&mut self, key: &Key) -> bool {
        self.solve_inhabitation(key);
        self.inhabited[key]
    }

    /// Whether `goal` has a derivation in the given focused phase.
    pub fn inhabited_in(&mut self, phase: Phase, goal: &Sequent) -> bool {
        self.is_inhabited(&(phase, goal.clone()))
    }

    pub fn inhabited(&mut self, goal: &Sequent) -> bool {
        self.inhabited_in(Phase::I, goal)
    }

    /// Some phase-I derivation of `goal`, found without counting (so it
    /// also works for infinite homsets).
    pub fn witness(&mut self, goal: &Sequent) -> Option<FocI> {
        let key = (Phase::I, goal.clone());
        if !self.is_inhabited(&key) {
            return None;
        }
        Some(self.build_witness(&key).i())
    }

    fn build_witness(&mut self, key: &Key) -> Der {
        let w = self.witness[key];
        let st = self.steps_of(key)[w].clone();
        let ps = st.premises.iter().map(|p| self.build_witness(p)).collect();
        self.build(&st, ps)
    }

    fn count_key(&mut self, key: &Key, active: &mut HashSet<Key>) -> Result<u128, SearchError> {
        if let Some(&n) = self.counts.get(key) {
            return Ok(n);
        }
        if !self.is_inhabited(key) {
            self.counts.insert(key.clone(), 0);
            return Ok(0);
        }
        if !active.insert(key.clone()) {
            return Err(SearchError::Infinite(key.1.clone()));
        }
        let steps = self.steps_of(key);
        let mut total: u128 = 0;
        for st in steps.iter() {
            if !st.premises.iter().all(|p| self.is_inhabited(p)) {
                continue;
            }
            let mut prod: u128 = 1;
            for p in &st.premises {
                let n = self.count_key(p, active)?;
                prod = prod.checked_mul(n).ok_or(SearchError::Cap {
                    count: None,
                    cap: self.cap,
                })?;
            }
            total = total.checked_add(prod).ok_or(SearchError::Cap {
                count: None,
                cap: self.cap,
            })?;
        }
        active.remove(key);
        self.counts.insert(key.clone(), total);
        Ok(total)
    }

    /// Number of phase-I derivations of `goal`, without building them.
    pub fn count(&mut self, goal: &Sequent) -> Result<u128, SearchError> {
        self.count_key(&(Phase::I, goal.clone()), &mut HashSet::new())
    }

    fn build(&self, step: &Step, mut ps: Vec<Der>) -> Der {
        let mut next = || ps.remove(0);
        match step.rule {
            Rule::ImpR => Der::I(focused::imp_r(next().i())),
            Rule::P2I => Der::I(focused::p2i(next().p())),
            Rule::Pass => Der::P(focused::pass_p(next().p())),
            Rule::F2P => Der::P(focused::f2p(next().f())),
            Rule::Ax => Der::F(FocF::Ax),
            Rule::ImpL(k) => {
                let a = next().i();
                Der::F(focused::imp_l_f(k, a, next().f()))
            }
            Rule::Clause(ci) => {
                let c = &self.graph.clauses[ci];
                let args = (0..c.premises.len()).map(|_| next().i()).collect();
                Der::F(FocF::Clause {
                    name: c.name.clone(),
                    args,
                    cont: Box::new(next().f()),
                })
            }
        }
    }

    fn list_key(&mut self, key: &Key) -> Rc<Vec<Der>> {
        if let Some(l) = self.lists.get(key) {
            return l.clone();
        }
        let mut out = Vec::new();
        if self.counts.get(key).copied().unwrap_or(0) > 0 {
            let steps = self.steps_of(key);
            for st in steps.iter() {
                if !st
                    .premises
                    .iter()
                    .all(|p| self.counts.get(p).copied().unwrap_or(0) > 0)
                {
                    continue;
                }
                let lists: Vec<Rc<Vec<Der>>> =
                    st.premises.iter().map(|p| self.list_key(p)).collect();
                let mut idx = vec![0usize; lists.len()];
                'outer: loop {
                    let ps = idx.iter().zip(&lists).map(|(&i, l)| l[i].clone()).collect();
                    out.push(self.build(st, ps));
                    for slot in (0..idx.len()).rev() {
                        idx[slot] += 1;
                        if idx[slot] < lists[slot].len() {
                            continue 'outer;
                        }
                        idx[slot] = 0;
                    }
                    break;
                }
            }
        }
        let out = Rc::new(out);
        self.lists.insert(key.clone(), out.clone());
        out
    }

    /// All phase-I derivations of `goal`, in search order.
    pub fn enumerate(&mut self, goal: &Sequent) -> Result<Vec<FocI>, SearchError> {
        let n = self.count(goal)?;
        if n > self.cap {
            return Err(SearchError::Cap {
                count: Some(n),
                cap: self.cap,
            });
        }
        let l = self.list_key(&(Phase::I, goal.clone()));
        Ok(l.iter().cloned().map(Der::i).collect())
    }

    /// The `n`-th derivation of `goal` in search order, built without
    /// materializing the others.
    pub fn nth(&mut self, goal: &Sequent, n: u128) -> Result<Option<FocI>, SearchError> {
        if n >= self.count(goal)? {
            return Ok(None);
        }
        Ok(Some(self.unrank(&(Phase::I, goal.clone()), n).i()))
    }

    fn unrank(&mut self, key: &Key, mut n: u128) -> Der {
        let steps = self.steps_of(key);
        for st in steps.iter() {
            let sizes: Vec<u128> = st
                .premises
                .iter()
                .map(|p| self.counts.get(p).copied().unwrap_or(0))
                .collect();
            let total: u128 = sizes.iter().product();
            if n >= total {
                n -= total;
                continue;
            }
            let mut digits = vec![0u128; sizes.len()];
            for slot in (0..sizes.len()).rev() {
                digits[slot] = n % sizes[slot];
                n /= sizes[slot];
            }
            let ps = st
                .premises
                .iter()
                .zip(digits)
                .map(|(p, d)| self.unrank(p, d))
                .collect();
            return self.build(st, ps);
        }
        unreachable!("rank within count")
    }
}

pub fn count(goal: &Sequent) -> Result<u128, SearchError> {
    Search::plain().count(goal)
}

pub fn enumerate(goal: &Sequent) -> Result<Vec<FocI>, SearchError> {
    Search::plain().enumerate(goal)
}

/// The normal form of a categorical derivation, with its type.
pub fn cat_normal_form(d: &CatDerivation) -> Result<(FocI, Sequent)> {
    let (s, c) = infer_cat(d)?;
    let goal = Sequent::new(s, vec![], c);
    Ok((focused::focus(&cmplt0(d)?, &goal), goal))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    Distinct { left: FocI, right: FocI },
}

/// Decide `d1 ≐ d2` by comparing focused normal forms.
pub fn decide_eq(d1: &CatDerivation, d2: &CatDerivation) -> Result<Verdict> {
    let (n1, s1) = cat_normal_form(d1)?;
    let (n2, s2) = cat_normal_form(d2)?;
    if s1 != s2 {
        return Err(
            crate::TypeError::new(format!("the maps have different types {s1} and {s2}")).into(),
        );
    }
    Ok(if n1 == n2 {
        Verdict::Equal
    } else {
        Verdict::Distinct {
            left: n1,
            right: n2,
        }
    })
}

/// All formulae over `atoms` of size exactly `n`.
pub fn formulas_of_size(atoms: &[Formula], n: usize) -> Vec<Formula> {
    let mut table: Vec<Vec<Formula>> = vec![Vec::new(); n + 1];
    for s in 1..=n {
        if s == 1 {
            table[1] = atoms.to_vec();
            continue;
        }
        let mut v = Vec::new();
        for l in 1..s - 1 {
            let r = s - 1 - l;
            for a in &table[l] {
                for b in &table[r] {
                    v.push(Formula::imp(a.clone(), b.clone()));
                }
            }
        }
        table[s] = v;
    }
    if n == 0 {
        Vec::new()
    } else {
        std::mem::take(&mut table[n])
    }
}

/// Every sequent over `atoms` whose total formula size is at most `max`.
pub fn sequents_up_to(atoms: &[Formula], max: usize) -> Vec<Sequent> {
    let by_size: Vec<Vec<Formula>> = (0..=max).map(|n| formulas_of_size(atoms, n)).collect();
    // Lists of formulae with total size exactly n.
    let mut lists: Vec<Vec<Vec<Formula>>> = vec![Vec::new(); max + 1];
    lists[0].push(Vec::new());
    for n in 1..=max {
        let mut v = Vec::new();
        for first in 1..=n {
            for a in &by_size[first] {
                for rest in &lists[n - first] {
                    let mut l = vec![a.clone()];
                    l.extend(rest.iter().cloned());
                    v.push(l);
                }
            }
        }
        lists[n] = v;
    }
    let mut out = Vec::new();
    for sc in 1..=max {
        for c in &by_size[sc] {
            for (ss, fs) in by_size.iter().enumerate().take(max - sc + 1) {
                let stoups: Vec<Option<Formula>> = if ss == 0 {
                    vec![None]
                } else {
                    fs.iter().cloned().map(Some).collect()
                };
                for s in &stoups {
                    for ctxs in &lists[..=max - sc - ss] {
                        for ctx in ctxs {
                            out.push(Sequent::new(s.clone(), ctx.clone(), c.clone()));
                        }
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::focused::check_foc;
    use crate::syntax::{parse_formula, parse_sequent};
    use crate::term::parse_term;

    fn seq(s: &str) -> Sequent {
        parse_sequent(s).unwrap()
    }

    fn cat(s: &str) -> CatDerivation {
        CatDerivation::from_term(&parse_term(s).unwrap()).unwrap()
    }

    #[test]
    fn small_counts() {
        assert_eq!(count(&seq("X | |- X")).unwrap(), 1);
        assert_eq!(count(&seq("- | |- X")).unwrap(), 0);
        assert_eq!(count(&seq("- | |- X -o X")).unwrap(), 1);
        assert_eq!(
            count(&seq("(X -o Y) -o (X -o Z) | X -o Y, X -o X, X |- Z")).unwrap(),
            2
        );
    }

    #[test]
    fn enumeration_is_sound_and_duplicate_free() {
        let goal = seq("(X -o Y) -o (X -o Z) | X -o Y, X -o X, X |- Z");
        let all = enumerate(&goal).unwrap();
        assert_eq!(all.len(), 2);
        assert_ne!(all[0], all[1]);
        for g in &all {
            check_foc(g, &goal).unwrap();
        }
    }

    #[test]
    fn unrank_matches_enumeration() {
        let goal = seq("(X -o Y) -o (X -o Z) | X -o Y, X -o X, X |- Z");
        let mut s = Search::plain();
        let all = s.enumerate(&goal).unwrap();
        assert!(all.len() > 1);
        for (n, g) in all.iter().enumerate() {
            assert_eq!(s.nth(&goal, n as u128).unwrap().as_ref(), Some(g));
        }
        assert_eq!(s.nth(&goal, all.len() as u128).unwrap(), None);
    }

    #[test]
    fn cap_is_enforced() {
        let goal = seq("- | X -o X, X -o X, X -o X, X |- X");
        let n = count(&goal).unwrap();
        let mut s = Search::plain().with_cap(n - 1);
        assert!(matches!(s.enumerate(&goal), Err(SearchError::Cap { .. })));
    }

    #[test]
    fn decides_structural_laws() {
        assert_eq!(
            decide_eq(
                &cat("comp(L[X,X,Y], i[X -o X, X -o Y](j[X]))"),
                &cat("id[X -o Y]")
            )
            .unwrap(),
            Verdict::Equal
        );
        assert_eq!(
            decide_eq(&cat("comp(j[Y], L[X,Y,Y])"), &cat("j[X -o Y]")).unwrap(),
            Verdict::Equal
        );
        assert!(decide_eq(&cat("j[X]"), &cat("j[Y]")).is_err());
    }

    #[test]
    fn formula_and_sequent_spaces() {
        let atoms = [parse_formula("X").unwrap(), parse_formula("Y").unwrap()];
        let sizes: Vec<usize> = (1..=7).map(|n| formulas_of_size(&atoms, n).len()).collect();
        assert_eq!(sizes, vec![2, 0, 4, 0, 16, 0, 80]);
        let all = sequents_up_to(&atoms, 3);
        assert!(all.iter().all(|s| s.size() <= 3));
        let distinct: HashSet<_> = all.iter().map(|s| s.to_string()).collect();
        assert_eq!(distinct.len(), all.len());
        // c alone, stoup+c, ctx+c (two or three atoms total), and X-o-Y shaped succedents
        assert!(all.contains(&seq("X | Y |- X")));
        assert!(all.contains(&seq("- | |- X -o Y")));
    }
}
