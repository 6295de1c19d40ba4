//! Seeded random generation of formulae, derivations and equation
//! instances, for property tests and the acceptance suite.
//!
//! Derivations are built goal-directed: at each node a rule is picked
//! uniformly among those whose premises are inhabited, so generation never
//! dead-ends. Rules that can grow without bound (cuts in the categorical
//! and natural deduction calculi, clauses over cyclic graphs) spend fuel;
//! once it runs out the search witness for the remaining goal is used.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bridge;
use crate::cat_calc::{self, CatArg, CatDerivation, CatEquation, CatFamily, Slot};
use crate::coherence::Search;
use crate::focused::{self, FocI};
use crate::multigraph::{self as mg, MEquation, MFamily, MSeq, Multigraph};
use crate::nat_ded::{self, NdDerivation, NdEquation, NdFamily};
use crate::seq_calc::{self, SeqDerivation, SeqEquation, SeqFamily};
use crate::syntax::{Formula, Sequent, Stoup};
use crate::Inst;

/// Whether a generated sequent must have a formula in the stoup.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StoupReq {
    Empty,
    Full,
    Any,
}

pub struct Gen<'g> {
    rng: ChaCha8Rng,
    atoms: Vec<Formula>,
    search: Search<'g>,
    graph: &'g Multigraph,
}

static NO_GRAPH: Multigraph = Multigraph {
    atoms: Vec::new(),
    clauses: Vec::new(),
};

impl Gen<'static> {
    pub fn new(seed: u64, atoms: &[&str]) -> Self {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            atoms: atoms.iter().map(|a| Formula::atom(a)).collect(),
            search: Search::plain(),
            graph: &NO_GRAPH,
        }
    }
}

impl<'g> Gen<'g> {
    /// Generation over a multigraph, using its atoms.
    pub fn with_graph(seed: u64, graph: &'g Multigraph) -> Self {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            atoms: graph.atoms.iter().map(|a| Formula::atom(a)).collect(),
            search: Search::new(graph),
            graph,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn inhabited(&mut self, s: &Sequent) -> bool {
        self.search.inhabited(s)
    }

    fn atom(&mut self) -> Formula {
        self.atoms
            .choose(&mut self.rng)
            .expect("at least one atom")
            .clone()
    }

    /// A formula of nesting depth at most `depth`.
    pub fn formula(&mut self, depth: usize) -> Formula {
        if depth == 0 || self.rng.gen_bool(0.4) {
            self.atom()
        } else {
            let a = self.formula(depth - 1);
            let b = self.formula(depth - 1);
            Formula::imp(a, b)
        }
    }

    /// A random sequent, not necessarily inhabited. Context formulae have
    /// depth at most 1.
    pub fn sequent(
        &mut self,
        stoup: StoupReq,
        min_ctx: usize,
        max_ctx: usize,
        depth: usize,
    ) -> Sequent {
        let has_stoup = match stoup {
            StoupReq::Empty => false,
            StoupReq::Full => true,
            StoupReq::Any => self.rng.gen_bool(0.5),
        };
        let s = has_stoup.then(|| self.formula(depth));
        let n = self.rng.gen_range(min_ctx..=max_ctx);
        let ctx = (0..n).map(|_| self.formula(depth.min(1))).collect();
        let c = self.formula(depth);
        Sequent::new(s, ctx, c)
    }

    /// A random inhabited sequent.
    pub fn inhabited_sequent(
        &mut self,
        stoup: StoupReq,
        min_ctx: usize,
        max_ctx: usize,
        depth: usize,
    ) -> Sequent {
        for _ in 0..100_000 {
            let s = self.sequent(stoup, min_ctx, max_ctx, depth);
            if self.inhabited(&s) {
                return s;
            }
        }
        panic!(
            "no inhabited sequent found for {stoup:?} with {min_ctx}..={max_ctx} context formulae"
        );
    }

    fn witness(&mut self, s: &Sequent) -> FocI {
        self.search.witness(s).expect("inhabited goal")
    }

    // -----------------------------------------------------------------------
    // Sequent calculus

    /// A random cut-free derivation of an inhabited sequent.
    pub fn seq(&mut self, goal: &Sequent) -> SeqDerivation {
        let mut options: Vec<SeqOpt> = Vec::new();
        if goal.stoup.as_ref() == Some(&goal.succedent) && goal.context.is_empty() {
            options.push(SeqOpt::Ax);
        }
        if goal.stoup.is_none() && !goal.context.is_empty() {
            let p = pass_premise(goal);
            if self.inhabited(&p) {
                options.push(SeqOpt::Pass(p));
            }
        }
        if let Some((a, b)) = goal.succedent.as_imp() {
            let p = imp_r_premise(goal, a, b);
            if self.inhabited(&p) {
                options.push(SeqOpt::ImpR(p));
            }
        }
        if let Some((a, b)) = goal.stoup.as_ref().and_then(Formula::as_imp) {
            for k in 0..=goal.context.len() {
                let (l, r) = imp_l_premises(goal, a, b, k);
                if self.inhabited(&l) && self.inhabited(&r) {
                    options.push(SeqOpt::ImpL(k, l, r));
                }
            }
        }
        let pick = options
            .choose(&mut self.rng)
            .cloned()
            .expect("inhabited goal");
        match pick {
            SeqOpt::Ax => SeqDerivation::Ax,
            SeqOpt::Pass(p) => seq_calc::pass(self.seq(&p)),
            SeqOpt::ImpR(p) => seq_calc::imp_r(self.seq(&p)),
            SeqOpt::ImpL(k, l, r) => {
                let f = self.seq(&l);
                seq_calc::imp_l(k, f, self.seq(&r))
            }
        }
    }

    /// A focused derivation, uniformly among all of them when the homset is
    /// small enough to count.
    pub fn foc(&mut self, goal: &Sequent) -> FocI {
        if let Ok(n) = self.search.count(goal) {
            if n > 0 {
                let i = self.rng.gen_range(0..n);
                if let Ok(Some(d)) = self.search.nth(goal, i) {
                    return d;
                }
            }
        }
        if self.graph.clauses.is_empty() {
            let d = self.seq(goal);
            focused::focus(&d, goal)
        } else {
            let d = self.mseq(goal, 4);
            mg::m_focus(self.graph, &d, goal)
        }
    }

    // -----------------------------------------------------------------------
    // Natural deduction

    /// A random derivation, possibly with detours. Each `impE` spends one
    /// unit of fuel.
    pub fn nd(&mut self, goal: &Sequent, fuel: usize) -> NdDerivation {
        let mut options: Vec<NdOpt> = Vec::new();
        if goal.stoup.as_ref() == Some(&goal.succedent) && goal.context.is_empty() {
            options.push(NdOpt::Ax);
        }
        if goal.stoup.is_none() && !goal.context.is_empty() {
            let p = pass_premise(goal);
            if self.inhabited(&p) {
                options.push(NdOpt::Pass(p));
            }
        }
        if let Some((a, b)) = goal.succedent.as_imp() {
            let p = imp_r_premise(goal, a, b);
            if self.inhabited(&p) {
                options.push(NdOpt::ImpI(p));
            }
        }
        if fuel > 0 {
            let mut cands = goal.subformulas();
            cands.extend(self.atoms.clone());
            cands.sort();
            cands.dedup();
            for a in cands {
                if a.size() > 3 {
                    continue;
                }
                for k in 0..=goal.context.len() {
                    let fs = Sequent::new(
                        goal.stoup.clone(),
                        goal.context[..k].to_vec(),
                        Formula::imp(a.clone(), goal.succedent.clone()),
                    );
                    let vs = Sequent::new(None, goal.context[k..].to_vec(), a.clone());
                    if self.inhabited(&fs) && self.inhabited(&vs) {
                        options.push(NdOpt::ImpE(k, a.clone(), fs, vs));
                    }
                }
            }
        }
        let Some(pick) = options.choose(&mut self.rng).cloned() else {
            let w = self.witness(goal);
            return focused::emb_nd_i(&w, goal);
        };
        match pick {
            NdOpt::Ax => NdDerivation::Ax,
            NdOpt::Pass(p) => nat_ded::nd_pass(self.nd(&p, fuel)),
            NdOpt::ImpI(p) => nat_ded::imp_i(self.nd(&p, fuel)),
            NdOpt::ImpE(k, a, fs, vs) => {
                let left = fuel / 2;
                let f = self.nd(&fs, left);
                let v = self.nd(&vs, fuel - 1 - left);
                nat_ded::imp_e(k, a, f, v)
            }
        }
    }

    /// A derivation of size at most `max_size`, by rejection.
    pub fn nd_sized(&mut self, goal: &Sequent, max_size: usize) -> Option<NdDerivation> {
        for _ in 0..200 {
            let fuel = self.rng.gen_range(0..=3);
            let d = self.nd(goal, fuel);
            if d.size() <= max_size {
                return Some(d);
            }
        }
        None
    }

    // -----------------------------------------------------------------------
    // Categorical calculus

    /// A random derivation of `S ⟹ C` (which must be inhabited). Each
    /// composition spends one unit of fuel.
    pub fn cat(&mut self, s: &Stoup, c: &Formula, fuel: usize) -> CatDerivation {
        let goal = Sequent::new(s.clone(), vec![], c.clone());
        debug_assert!(self.inhabited(&goal));
        let mut options: Vec<CatOpt> = Vec::new();
        if s.as_ref() == Some(c) {
            options.push(CatOpt::Id);
        }
        match (s, c.as_imp()) {
            (None, Some((a, b))) if a == b => options.push(CatOpt::J),
            _ => {}
        }
        if let (Some(Formula::Imp(b, c1)), Some((ab, ac))) = (s, c.as_imp()) {
            if let (Some((a, b2)), Some((a2, c2))) = (ab.as_imp(), ac.as_imp()) {
                if a == a2 && **b == *b2 && **c1 == *c2 {
                    options.push(CatOpt::L);
                }
            }
        }
        if let Some(Formula::Imp(a, b)) = s {
            if **b == *c && self.inhabited(&Sequent::new(None, vec![], (**a).clone())) {
                options.push(CatOpt::I);
            }
            if let Some((c1, d)) = c.as_imp() {
                let l = Sequent::new(Some(c1.clone()), vec![], (**a).clone());
                let r = Sequent::new(Some((**b).clone()), vec![], d.clone());
                if self.inhabited(&l) && self.inhabited(&r) {
                    options.push(CatOpt::Imp);
                }
            }
        }
        if fuel > 0 {
            let mut mids = goal.subformulas();
            mids.extend(self.atoms.clone());
            mids.sort();
            mids.dedup();
            for m in mids {
                let l = Sequent::new(s.clone(), vec![], m.clone());
                let r = Sequent::new(Some(m.clone()), vec![], c.clone());
                if self.inhabited(&l) && self.inhabited(&r) {
                    options.push(CatOpt::Comp(m));
                }
            }
        }
        let Some(pick) = options.choose(&mut self.rng).cloned() else {
            let w = self.witness(&goal);
            return bridge::sound(&focused::emb_i(&w), &goal);
        };
        match pick {
            CatOpt::Id => cat_calc::id(c.clone()),
            CatOpt::J => cat_calc::j(c.as_imp().expect("imp").0.clone()),
            CatOpt::L => {
                let (ab, ac) = c.as_imp().expect("imp");
                let (a, b) = ab.as_imp().expect("imp");
                cat_calc::l(a.clone(), b.clone(), ac.as_imp().expect("imp").1.clone())
            }
            CatOpt::I => {
                let (a, b) = s.as_ref().and_then(Formula::as_imp).expect("imp");
                let e = self.cat(&None, a, fuel);
                cat_calc::i(a.clone(), b.clone(), e)
            }
            CatOpt::Imp => {
                let (a, b) = s.as_ref().and_then(Formula::as_imp).expect("imp");
                let (c1, d) = c.as_imp().expect("imp");
                let f = self.cat(&Some(c1.clone()), a, fuel);
                let g = self.cat(&Some(b.clone()), d, fuel);
                cat_calc::imp(f, g)
            }
            CatOpt::Comp(m) => {
                let left = (fuel - 1) / 2;
                let f = self.cat(s, &m, left);
                let g = self.cat(&Some(m), c, fuel - 1 - left);
                cat_calc::comp(f, g)
            }
        }
    }

    /// A formula `C` of depth at most `depth` with `S ⟹ C` inhabited.
    fn target(&mut self, s: &Stoup, depth: usize) -> Formula {
        for _ in 0..200 {
            let c = self.formula(depth);
            if self.inhabited(&Sequent::new(s.clone(), vec![], c.clone())) {
                return c;
            }
        }
        match s {
            Some(a) => a.clone(),
            None => {
                let a = self.atom();
                Formula::imp(a.clone(), a)
            }
        }
    }

    /// A formula `A` of depth at most `depth` with `A ⟹ C` inhabited.
    fn source(&mut self, c: &Formula, depth: usize) -> Formula {
        for _ in 0..200 {
            let a = self.formula(depth);
            if self.inhabited(&Sequent::new(Some(a.clone()), vec![], c.clone())) {
                return a;
            }
        }
        c.clone()
    }

    fn tight_map(&mut self, depth: usize) -> (CatDerivation, Formula, Formula) {
        let a = self.formula(depth);
        let b = self.target(&Some(a.clone()), depth);
        (self.cat(&Some(a.clone()), &b, 3), a, b)
    }

    fn loose_map(&mut self, depth: usize) -> (CatDerivation, Formula) {
        let a = self.target(&None, depth);
        (self.cat(&None, &a, 3), a)
    }

    /// A random instance of a generating equation of ≐, with formulae of
    /// depth at most `depth`.
    pub fn cat_instance(&mut self, fam: CatFamily, depth: usize) -> CatEquation {
        let d = depth;
        let map = |g: &mut Self, s: Stoup, c: &Formula| CatArg::Map(g.cat(&s, c, 3));
        let args: Vec<CatArg> = match fam {
            CatFamily::LeftUnit => {
                let s = if self.rng.gen_bool(0.3) {
                    None
                } else {
                    Some(self.formula(d))
                };
                let c = self.target(&s, d);
                vec![map(self, s, &c)]
            }
            CatFamily::RightUnit | CatFamily::JNat => vec![CatArg::Map(self.tight_map(d).0)],
            CatFamily::Assoc => {
                let s = if self.rng.gen_bool(0.3) {
                    None
                } else {
                    Some(self.formula(d))
                };
                let a = self.target(&s, d);
                let b = self.target(&Some(a.clone()), d);
                let c = self.target(&Some(b.clone()), d);
                vec![
                    map(self, s, &a),
                    map(self, Some(a), &b),
                    map(self, Some(b), &c),
                ]
            }
            CatFamily::ImpComp => {
                // f : C⟹A, g : B⟹D, h : E⟹C, k : D⟹F
                let (f, c, _) = self.tight_map(d);
                let (g, _, dd) = self.tight_map(d);
                let e = self.source(&c, d);
                let ff = self.target(&Some(dd.clone()), d);
                vec![
                    CatArg::Map(f),
                    CatArg::Map(g),
                    map(self, Some(e), &c),
                    map(self, Some(dd), &ff),
                ]
            }
            CatFamily::INat => {
                let (e, a) = self.loose_map(d);
                let a1 = self.target(&Some(a.clone()), d);
                let (g, _, _) = self.tight_map(d);
                vec![CatArg::Map(e), map(self, Some(a), &a1), CatArg::Map(g)]
            }
            CatFamily::LNat => (0..3).map(|_| CatArg::Map(self.tight_map(d).0)).collect(),
            CatFamily::C1 => vec![CatArg::Map(self.loose_map(d).0)],
            CatFamily::C4 => {
                let e = CatArg::Map(self.loose_map(d).0);
                vec![
                    e,
                    CatArg::Fma(self.formula(d)),
                    CatArg::Fma(self.formula(d)),
                ]
            }
            _ => fam
                .slots()
                .iter()
                .map(|s| {
                    debug_assert_eq!(*s, Slot::Fma);
                    CatArg::Fma(self.formula(d))
                })
                .collect(),
        };
        cat_calc::eq_generator(fam, &args).unwrap_or_else(|e| panic!("{}: {e}", fam.name()))
    }

    // -----------------------------------------------------------------------
    // Equation instances for the other calculi

    fn seq_der(&mut self, stoup: StoupReq, min_ctx: usize) -> Inst<SeqDerivation> {
        let s = self.inhabited_sequent(stoup, min_ctx, min_ctx + 2, 2);
        Inst::Der(self.seq(&s), s)
    }

    pub fn seq_instance(&mut self, fam: SeqFamily) -> SeqEquation {
        let args = match fam {
            SeqFamily::Eta => vec![Inst::Fma(self.formula(2)), Inst::Fma(self.formula(2))],
            SeqFamily::CommPassImpR => vec![self.seq_der(StoupReq::Full, 1)],
            SeqFamily::CommImpLImpR => vec![
                self.seq_der(StoupReq::Empty, 0),
                self.seq_der(StoupReq::Full, 1),
            ],
        };
        seq_calc::seq_eq_generator(fam, &args).unwrap_or_else(|e| panic!("{}: {e}", fam.name()))
    }

    fn nd_der(&mut self, s: Sequent) -> Inst<NdDerivation> {
        let fuel = self.rng.gen_range(0..=2);
        Inst::Der(self.nd(&s, fuel), s)
    }

    /// A loose derivation `−|Δ⟶A`.
    fn nd_loose_for(&mut self, a: &Formula) -> Inst<NdDerivation> {
        for _ in 0..50 {
            let n = self.rng.gen_range(0..=2);
            let ctx: Vec<Formula> = (0..n).map(|_| self.formula(1)).collect();
            let s = Sequent::new(None, ctx, a.clone());
            if self.inhabited(&s) {
                return self.nd_der(s);
            }
        }
        self.nd_der(Sequent::new(None, vec![a.clone()], a.clone()))
    }

    pub fn nd_instance(&mut self, fam: NdFamily) -> NdEquation {
        let args = match fam {
            NdFamily::Beta => {
                let s = self.inhabited_sequent(StoupReq::Any, 1, 3, 2);
                let a = s.context.last().expect("nonempty").clone();
                vec![self.nd_der(s), self.nd_loose_for(&a)]
            }
            NdFamily::Eta => {
                let s = loop {
                    let s = self.inhabited_sequent(StoupReq::Any, 0, 2, 2);
                    if !s.succedent.is_atomic() {
                        break s;
                    }
                };
                vec![self.nd_der(s)]
            }
            NdFamily::CommPassImpI => {
                let s = self.inhabited_sequent(StoupReq::Full, 1, 3, 2);
                vec![self.nd_der(s)]
            }
            NdFamily::CommPassImpE => {
                let s = loop {
                    let s = self.inhabited_sequent(StoupReq::Full, 0, 2, 2);
                    if !s.succedent.is_atomic() {
                        break s;
                    }
                };
                let a = s.succedent.as_imp().expect("imp").0.clone();
                vec![self.nd_der(s), self.nd_loose_for(&a)]
            }
        };
        nat_ded::nd_eq_generator(fam, &args).unwrap_or_else(|e| panic!("{}: {e}", fam.name()))
    }

    // -----------------------------------------------------------------------
    // Multigraph derivations

    /// A random derivation over the graph, using `⊸C` and clauses. Clause
    /// steps and `⊸C` spend fuel.
    pub fn mseq(&mut self, goal: &Sequent, fuel: usize) -> MSeq {
        let mut options: Vec<MOpt> = Vec::new();
        if goal.stoup.as_ref() == Some(&goal.succedent) && goal.context.is_empty() {
            options.push(MOpt::Ax);
        }
        if goal.stoup.is_none() && !goal.context.is_empty() {
            let p = pass_premise(goal);
            if self.inhabited(&p) {
                options.push(MOpt::Pass(p));
            }
        }
        if let Some((a, b)) = goal.succedent.as_imp() {
            let p = imp_r_premise(goal, a, b);
            if self.inhabited(&p) {
                options.push(MOpt::ImpR(p));
            }
        }
        if let Some((a, b)) = goal.stoup.as_ref().and_then(Formula::as_imp) {
            for k in 0..=goal.context.len() {
                let (l, r) = imp_l_premises(goal, a, b, k);
                if self.inhabited(&l) && self.inhabited(&r) {
                    options.push(MOpt::ImpL(k, l, r));
                }
            }
        }
        if fuel > 0 {
            let n = goal.context.len();
            for p in 0..n {
                let Some((a, b)) = goal.context[p].as_imp() else {
                    continue;
                };
                for len in 0..n - p {
                    let fs =
                        Sequent::new(None, goal.context[p + 1..p + 1 + len].to_vec(), a.clone());
                    let mut ctx = goal.context[..p].to_vec();
                    ctx.push(b.clone());
                    ctx.extend(goal.context[p + 1 + len..].iter().cloned());
                    let gs = Sequent::new(goal.stoup.clone(), ctx, goal.succedent.clone());
                    if self.inhabited(&fs) && self.inhabited(&gs) {
                        options.push(MOpt::ImpC(p, fs, gs));
                    }
                }
            }
            for c in self.graph.clauses.clone() {
                if c.stoup != goal.stoup {
                    continue;
                }
                for blocks in splits(n, c.premises.len()) {
                    let mut off = 0;
                    let mut prem = Vec::new();
                    for (len, z) in blocks.iter().zip(&c.premises) {
                        prem.push(Sequent::new(
                            None,
                            goal.context[off..off + len].to_vec(),
                            z.clone(),
                        ));
                        off += len;
                    }
                    prem.push(Sequent::new(
                        Some(c.conclusion.clone()),
                        goal.context[off..].to_vec(),
                        goal.succedent.clone(),
                    ));
                    if prem.iter().all(|p| self.search.inhabited(p)) {
                        options.push(MOpt::Iota(c.name.clone(), prem));
                    }
                }
            }
        }
        let Some(pick) = options.choose(&mut self.rng).cloned() else {
            let w = self.witness(goal);
            return mg::m_emb_i(&w);
        };
        let sub = fuel.saturating_sub(1);
        match pick {
            MOpt::Ax => MSeq::Ax,
            MOpt::Pass(p) => mg::m_pass(self.mseq(&p, fuel)),
            MOpt::ImpR(p) => mg::m_imp_r(self.mseq(&p, fuel)),
            MOpt::ImpL(k, l, r) => {
                let f = self.mseq(&l, fuel / 2);
                mg::m_imp_l(k, f, self.mseq(&r, fuel / 2))
            }
            MOpt::ImpC(p, fs, gs) => {
                let f = self.mseq(&fs, sub / 2);
                mg::m_imp_c(p, f, self.mseq(&gs, sub / 2))
            }
            MOpt::Iota(name, prem) => {
                let (last, init) = prem.split_last().expect("continuation");
                let args = init.iter().map(|p| self.mseq(p, sub / 2)).collect();
                let cont = self.mseq(last, sub / 2);
                mg::m_iota(&name, args, cont)
            }
        }
    }

    fn m_der(&mut self, stoup: StoupReq, min_ctx: usize) -> (Inst<MSeq>, Sequent) {
        let s = self.inhabited_sequent(stoup, min_ctx, min_ctx + 2, 1);
        let fuel = self.rng.gen_range(1..=3);
        (Inst::Der(self.mseq(&s, fuel), s.clone()), s)
    }

    /// A random instance of one of the `⊸C` conversions over the graph.
    pub fn m_instance(&mut self, fam: MFamily) -> MEquation {
        loop {
            let (f, _) = self.m_der(StoupReq::Empty, 0);
            let (args, positions) = match fam {
                MFamily::ImpCImpR => {
                    let (g, gs) = self.m_der(StoupReq::Any, 2);
                    let p = self.rng.gen_range(0..gs.context.len() - 1);
                    (vec![f, g], vec![p])
                }
                MFamily::PassImpC => {
                    let (g, gs) = self.m_der(StoupReq::Full, 1);
                    let p = self.rng.gen_range(0..gs.context.len());
                    (vec![f, g], vec![p])
                }
                MFamily::PassImpL => {
                    let (g, _) = self.m_der(StoupReq::Full, 0);
                    (vec![f, g], vec![])
                }
                MFamily::ImpCImpLOuter => {
                    let (g, _) = self.m_der(StoupReq::Empty, 0);
                    let (h, hs) = self.m_der(StoupReq::Full, 1);
                    let p = self.rng.gen_range(0..hs.context.len());
                    (vec![f, g, h], vec![p])
                }
                MFamily::ImpCImpLInner => {
                    let (g, gs) = self.m_der(StoupReq::Empty, 1);
                    let (h, _) = self.m_der(StoupReq::Full, 0);
                    let p = self.rng.gen_range(0..gs.context.len());
                    (vec![f, g, h], vec![p])
                }
                MFamily::ImpCImpCExchange => {
                    let (g, _) = self.m_der(StoupReq::Empty, 0);
                    let (h, hs) = self.m_der(StoupReq::Any, 2);
                    let q = self.rng.gen_range(1..hs.context.len());
                    let p = self.rng.gen_range(0..q);
                    (vec![f, g, h], vec![p, q])
                }
                MFamily::ImpCImpCNested => {
                    let (g, gs) = self.m_der(StoupReq::Empty, 1);
                    let (h, hs) = self.m_der(StoupReq::Any, 1);
                    let p = self.rng.gen_range(0..gs.context.len());
                    let q = self.rng.gen_range(0..hs.context.len());
                    (vec![f, g, h], vec![p, q])
                }
            };
            if let Ok(eq) = mg::m_eq_generator(self.graph, fam, &args, &positions) {
                return eq;
            }
        }
    }
}

/// Ordered block lengths `l1..lk` with sum at most `n`.
fn splits(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..=n {
        for mut rest in splits(n - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn pass_premise(goal: &Sequent) -> Sequent {
    let (a, rest) = goal.context.split_first().expect("nonempty context");
    Sequent::new(Some(a.clone()), rest.to_vec(), goal.succedent.clone())
}

fn imp_r_premise(goal: &Sequent, a: &Formula, b: &Formula) -> Sequent {
    let mut ctx = goal.context.clone();
    ctx.push(a.clone());
    Sequent::new(goal.stoup.clone(), ctx, b.clone())
}

fn imp_l_premises(goal: &Sequent, a: &Formula, b: &Formula, k: usize) -> (Sequent, Sequent) {
    (
        Sequent::new(None, goal.context[..k].to_vec(), a.clone()),
        Sequent::new(
            Some(b.clone()),
            goal.context[k..].to_vec(),
            goal.succedent.clone(),
        ),
    )
}

#[derive(Clone)]
enum SeqOpt {
    Ax,
    Pass(Sequent),
    ImpR(Sequent),
    ImpL(usize, Sequent, Sequent),
}

#[derive(Clone)]
enum NdOpt {
    Ax,
    Pass(Sequent),
    ImpI(Sequent),
    ImpE(usize, Formula, Sequent, Sequent),
}

#[derive(Clone)]
enum CatOpt {
    Id,
    J,
    L,
    I,
    Imp,
    Comp(Formula),
}

#[derive(Clone)]
enum MOpt {
    Ax,
    Pass(Sequent),
    ImpR(Sequent),
    ImpL(usize, Sequent, Sequent),
    ImpC(usize, Sequent, Sequent),
    Iota(String, Vec<Sequent>),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat_calc::check_cat;
    use crate::multigraph::m_check;
    use crate::nat_ded::check_nd;
    use crate::seq_calc::check_seq;

    #[test]
    fn generated_derivations_check() {
        let mut g = Gen::new(7, &["X", "Y", "Z"]);
        for _ in 0..50 {
            let s = g.inhabited_sequent(StoupReq::Any, 0, 3, 2);
            check_seq(&g.seq(&s), &s).unwrap();
            check_nd(&g.nd(&s, 3), &s).unwrap();
            focused::check_foc(&g.foc(&s), &s).unwrap();
            let c = Sequent::new(
                s.stoup.clone(),
                vec![],
                bridge::iter_hom(&s.context, &s.succedent),
            );
            check_cat(&g.cat(&c.stoup, &c.succedent, 3), &c).unwrap();
        }
    }

    #[test]
    fn generated_instances_are_well_typed() {
        let mut g = Gen::new(11, &["X", "Y", "Z"]);
        for fam in CatFamily::ALL {
            for _ in 0..5 {
                let eq = g.cat_instance(fam, 2);
                check_cat(&eq.lhs, &eq.sequent).unwrap();
            }
        }
        for fam in SeqFamily::ALL {
            g.seq_instance(fam);
        }
        for fam in NdFamily::ALL {
            g.nd_instance(fam);
        }
    }

    #[test]
    fn graph_derivations_check() {
        let graph = Multigraph::test_graph();
        let mut g = Gen::with_graph(3, &graph);
        for _ in 0..30 {
            let s = g.inhabited_sequent(StoupReq::Any, 0, 3, 1);
            m_check(&graph, &g.mseq(&s, 4), &s).unwrap();
        }
        for fam in MFamily::ALL {
            let eq = g.m_instance(fam);
            m_check(&graph, &eq.lhs, &eq.sequent).unwrap();
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let (mut g1, mut g2) = (Gen::new(5, &["X", "Y"]), Gen::new(5, &["X", "Y"]));
        let a: Vec<Formula> = (0..10).map(|_| g1.formula(2)).collect();
        let b: Vec<Formula> = (0..10).map(|_| g2.formula(2)).collect();
        assert_eq!(a, b);
    }
}
