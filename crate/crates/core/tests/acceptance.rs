//! The acceptance suite. Runs every criterion, prints one line per
//! criterion and fails if any criterion fails or runs over its time budget.

use std::panic::{self, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use skew_closed::bridge::{self, f2ne, i2nf, ne2f, nf2i, p2p_foc, p2p_nf};
use skew_closed::cat_calc::{CatEquation, CatFamily};
use skew_closed::coherence::{self, decide_eq, sequents_up_to, Search, Verdict};
use skew_closed::focused::{self, emb_i, emb_nd_i, focus, hered, FocF, FocI, FocP};
use skew_closed::gen::{Gen, StoupReq};
use skew_closed::model::{self, ModelSpec};
use skew_closed::multigraph::{self as mg, MFamily, Multigraph};
use skew_closed::nat_ded::NdFamily;
use skew_closed::normal_nd::{emb_nf, nbe};
use skew_closed::seq_calc::{self, SeqFamily};
use skew_closed::{parse_sequent, Formula, Sequent};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Every sequent of total size at most 7 over {X, Y} with all its focused
/// derivations.
fn corpus() -> Vec<(Sequent, Vec<FocI>)> {
    let atoms = [Formula::atom("X"), Formula::atom("Y")];
    let mut search = Search::plain();
    sequents_up_to(&atoms, 7)
        .into_iter()
        .map(|s| {
            let ds = search.enumerate(&s).expect("finite homsets");
            (s, ds)
        })
        .collect()
}

fn c1() -> Outcome {
    let s = "(X -o Y) -o (X -o Z) | X -o Y, X -o X, X |- Z";
    let n = coherence::count(&parse_sequent(s).unwrap()).map_err(|e| e.to_string())?;
    ensure(n == 2, || format!("library count {n}"))?;
    let out = Command::new(env!("CARGO_BIN_EXE_skewcl"))
        .args(["enumerate", "--count-only", s])
        .output()
        .map_err(|e| e.to_string())?;
    let text = String::from_utf8_lossy(&out.stdout).trim().to_string();
    ensure(out.status.success() && text == "2", || {
        format!("cli printed `{text}`")
    })?;
    Ok("count = 2".into())
}

fn c2(pairs: &mut Vec<CatEquation>) -> Outcome {
    let mut g = Gen::new(2, &["X", "Y", "Z"]);
    for fam in CatFamily::ALL {
        for k in 0..100 {
            let eq = g.cat_instance(fam, 2);
            match decide_eq(&eq.lhs, &eq.rhs).map_err(|e| e.to_string())? {
                Verdict::Equal => pairs.push(eq),
                Verdict::Distinct { .. } => {
                    return Err(format!(
                        "{} instance {k} distinct: {} vs {}",
                        fam.name(),
                        eq.lhs,
                        eq.rhs
                    ))
                }
            }
        }
    }
    Ok(format!("{} instances equal", pairs.len()))
}

fn c3() -> Outcome {
    let mut g = Gen::new(3, &["X", "Y", "Z"]);
    let mut n = 0;
    for fam in SeqFamily::ALL {
        for k in 0..100 {
            let eq = g.seq_instance(fam);
            let (l, r) = (focus(&eq.lhs, &eq.sequent), focus(&eq.rhs, &eq.sequent));
            ensure(l == r, || {
                format!("{} instance {k}: focus gives {l} and {r}", fam.name())
            })?;
            n += 1;
        }
    }
    for fam in NdFamily::ALL {
        for k in 0..100 {
            let eq = g.nd_instance(fam);
            let (l, r) = (nbe(&eq.lhs, &eq.sequent), nbe(&eq.rhs, &eq.sequent));
            ensure(l == r, || {
                format!("{} instance {k}: nbe gives {l} and {r}", fam.name())
            })?;
            let (l, r) = (hered(&eq.lhs, &eq.sequent), hered(&eq.rhs, &eq.sequent));
            ensure(l == r, || {
                format!("{} instance {k}: hered gives {l} and {r}", fam.name())
            })?;
            n += 1;
        }
    }
    Ok(format!("{n} instances identified"))
}

fn c4(corpus: &[(Sequent, Vec<FocI>)]) -> Outcome {
    let mut n = 0;
    for (s, ds) in corpus {
        for g in ds {
            ensure(focus(&emb_i(g), s) == *g, || {
                format!("focus(emb {g}) at {s}")
            })?;
            ensure(hered(&emb_nd_i(g, s), s) == *g, || {
                format!("hered(emb_nd {g}) at {s}")
            })?;
            let nf = i2nf(g);
            ensure(nbe(&emb_nf(&nf, s), s) == nf, || {
                format!("nbe(emb_nf {nf}) at {s}")
            })?;
            n += 1;
        }
    }
    Ok(format!("{} sequents, {n} derivations", corpus.len()))
}

fn c5() -> Outcome {
    let mut g = Gen::new(5, &["X", "Y", "Z"]);
    let mut n = 0;
    while n < 500 {
        let s = g.inhabited_sequent(StoupReq::Any, 0, 2, 2);
        let Some(d) = g.nd_sized(&s, 8) else { continue };
        let (a, b) = (nf2i(&nbe(&d, &s)), hered(&d, &s));
        ensure(a == b, || format!("{s}: nf2I(nbe) = {a}, hered = {b}"))?;
        n += 1;
    }
    Ok(format!("{n} derivations agree"))
}

fn inverse_f(f: &FocF) -> Result<(), String> {
    ensure(ne2f(&f2ne(f)) == *f, || {
        format!("ne2F(F2ne f) differs for {f}")
    })?;
    if let FocF::ImpL(_, a, h) = f {
        inverse_i(a)?;
        inverse_f(h)?;
    }
    Ok(())
}

fn inverse_p(p: &FocP) -> Result<(), String> {
    ensure(p2p_foc(&p2p_nf(p)) == *p, || {
        format!("p pair differs for {}", p.to_term())
    })?;
    match p {
        FocP::Pass(q) => inverse_p(q),
        FocP::F2P(f) => inverse_f(f),
    }
}

fn inverse_i(d: &FocI) -> Result<(), String> {
    let n = i2nf(d);
    ensure(nf2i(&n) == *d, || format!("nf2I(I2nf d) differs for {d}"))?;
    ensure(i2nf(&nf2i(&n)) == n, || {
        format!("I2nf(nf2I n) differs for {n}")
    })?;
    match d {
        FocI::ImpR(e) => inverse_i(e),
        FocI::P2I(p) => inverse_p(p),
    }
}

fn c6(corpus: &[(Sequent, Vec<FocI>)]) -> Outcome {
    let mut n = 0;
    for (_, ds) in corpus {
        for d in ds {
            inverse_i(d)?;
            n += 1;
        }
        let mut images: Vec<_> = ds.iter().map(i2nf).collect();
        images.sort();
        images.dedup();
        ensure(images.len() == ds.len(), || "I2nf is not injective".into())?;
    }
    let mut g = Gen::new(6, &["X", "Y", "Z"]);
    for k in 0..100 {
        let s = g.inhabited_sequent(StoupReq::Any, 0, 0, 2);
        let d = g.cat(&s.stoup, &s.succedent, 3);
        let (f, fs) = bridge::cmplt(&d, &[]).map_err(|e| e.to_string())?;
        let back = bridge::sound(&f, &fs);
        let v = decide_eq(&back, &d).map_err(|e| e.to_string())?;
        ensure(v == Verdict::Equal, || {
            format!("derivation {k}: sound(cmplt d) differs from {d}")
        })?;
    }
    Ok(format!(
        "{n} derivations round-trip, 100 categorical derivations"
    ))
}

fn c7(corpus: &[(Sequent, Vec<FocI>)]) -> Outcome {
    let (mut acts, mut passes) = (0, 0);
    for (s, ds) in corpus {
        for g in ds {
            let f = emb_i(g);
            if s.stoup.is_some() {
                let back = seq_calc::act(&seq_calc::pass(f.clone())).map_err(|e| e.to_string())?;
                ensure(back == f, || format!("act(pass f) differs at {s}"))?;
                acts += 1;
            } else if !s.context.is_empty() {
                let (a, rest) = s.context.split_first().unwrap();
                let t = Sequent::new(Some(a.clone()), rest.to_vec(), s.succedent.clone());
                let moved = seq_calc::act(&f).map_err(|e| e.to_string())?;
                seq_calc::check_seq(&moved, &t).map_err(|e| e.to_string())?;
                ensure(focus(&seq_calc::pass(moved), s) == *g, || {
                    format!("focus(pass(act f)) differs at {s}")
                })?;
                passes += 1;
            }
        }
    }
    let w = Multigraph::witness_graph();
    let loose =
        mg::m_count(&w, &parse_sequent("- | X |- Z").unwrap()).map_err(|e| e.to_string())?;
    let tight = mg::m_count(&w, &parse_sequent("X | |- Z").unwrap()).map_err(|e| e.to_string())?;
    ensure(loose == 1 && tight == 0, || {
        format!("witness counts {loose} and {tight}")
    })?;
    Ok(format!(
        "{acts} act-pass, {passes} pass-act checks; witness counts 1 and 0"
    ))
}

fn c8(pairs: &[CatEquation]) -> Outcome {
    let objects = model::formulas_up_to_depth(&["X"], 2);
    let specs = [
        ModelSpec::plain(&[("X", 3), ("Y", 3), ("Z", 3)]).unwrap(),
        ModelSpec::kleisli(3, &[("X", 3), ("Y", 3), ("Z", 3)]).unwrap(),
    ];
    let mut checked = 0;
    for spec in &specs {
        let r = model::check_axioms(spec, &objects).map_err(|e| e.to_string())?;
        if let Some(f) = r.failures.first() {
            return Err(format!("{:?}: {f}", spec.mode));
        }
        checked += r.checked;
        for eq in pairs {
            let ok = model::models_agree(spec, &eq.lhs, &eq.rhs).map_err(|e| e.to_string())?;
            ensure(ok, || {
                format!(
                    "{:?}: {} disagrees: {} vs {}",
                    spec.mode,
                    eq.name.name(),
                    eq.lhs,
                    eq.rhs
                )
            })?;
        }
    }
    ensure(!pairs.is_empty(), || {
        "no equal pairs from criterion 2".into()
    })?;
    Ok(format!(
        "{checked} axiom instances, {} pairs in two models",
        pairs.len()
    ))
}

fn c9() -> Outcome {
    let graph = Multigraph::test_graph();
    let mut g = Gen::with_graph(9, &graph);
    for fam in MFamily::ALL {
        for k in 0..50 {
            let eq = g.m_instance(fam);
            let l = mg::m_focus(&graph, &eq.lhs, &eq.sequent);
            let r = mg::m_focus(&graph, &eq.rhs, &eq.sequent);
            ensure(l == r, || {
                format!("{} instance {k}: {l} vs {r}", fam.name())
            })?;
            focused::check_foc_in(&l, &eq.sequent, &graph).map_err(|e| e.to_string())?;
        }
    }
    Ok("350 instances identified".into())
}

fn run(name: &str, budget: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let r = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into()))
    });
    let t = start.elapsed();
    let (ok, detail) = match r {
        Ok(d) if t <= budget => (true, d),
        Ok(d) => (false, format!("{d}, but over the {budget:?} budget")),
        Err(e) => (false, e),
    };
    println!(
        "criterion {name}: {} ({:.2?}) {detail}",
        if ok { "PASS" } else { "FAIL" },
        t
    );
    ok
}

fn main() {
    let secs = Duration::from_secs;
    let mut pairs = Vec::new();
    let corpus_start = Instant::now();
    let corpus = corpus();
    let corpus_time = corpus_start.elapsed();
    let results = [
        run("1 coherence count", secs(1), c1),
        run(
            "2 generating equations of the categorical calculus",
            secs(30),
            || c2(&mut pairs),
        ),
        run("3 sequent and natural deduction equations", secs(60), c3),
        run(
            "4 retractions over all sequents of size <= 7",
            secs(300) - corpus_time,
            || c4(&corpus),
        ),
        run("5 nbe agrees with hereditary substitution", secs(120), c5),
        run("6 translation isomorphisms", secs(120), || c6(&corpus)),
        run("7 left-normality", secs(10), || c7(&corpus)),
        run("8 model oracle", secs(120), || c8(&pairs)),
        run("9 multigraph equations", secs(60), c9),
    ];
    let passed = results.iter().filter(|r| **r).count();
    println!("{passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
