use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use skew_closed::bridge;
use skew_closed::cat_calc::{self, CatDerivation, GenSig, SfDerivation};
use skew_closed::coherence::{self, Search, Verdict};
use skew_closed::focused::{self, FocI};
use skew_closed::model::{self, ModelSpec};
use skew_closed::multigraph::{self as mg, ActOutcome, MSeq, Multigraph};
use skew_closed::nat_ded::NdDerivation;
use skew_closed::normal_nd::{self, Nf};
use skew_closed::seq_calc::{self, SeqDerivation};
use skew_closed::term::{parse_term, Term};
use skew_closed::{parse_sequent, Error, Result, Sequent};

#[derive(Parser)]
#[command(
    name = "skewcl",
    version,
    about = "Proof calculi for free skew prounital closed categories"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Calc {
    /// Categorical combinators (id, comp, imp, j, i, L)
    Cat,
    /// Sequent calculus (ax, pass, impR, impL)
    Seq,
    /// Natural deduction (ax, pass, impI, impE)
    Nd,
    /// Focused sequent calculus
    Focused,
    /// Normal natural deduction
    Normal,
    /// Stoup-free combinators (app, j, i', L')
    StoupFree,
    /// Sequent calculus over a multigraph (needs --graph)
    Graph,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Via {
    Focus,
    Hered,
    Nbe,
}

#[derive(Subcommand)]
enum Command {
    /// Typecheck a derivation against a sequent
    Check {
        calc: Calc,
        /// A file holding the term, or the term itself
        term: String,
        #[arg(allow_hyphen_values = true)]
        sequent: String,
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Compute a normal form
    Normalize {
        #[arg(long)]
        via: Via,
        term: String,
        #[arg(allow_hyphen_values = true)]
        sequent: String,
        /// With `--via focus`, read a multigraph derivation over this graph
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Translate a derivation between calculi. `seq` to `seq` applies act.
    Translate {
        #[arg(long)]
        from: Calc,
        #[arg(long)]
        to: Calc,
        term: String,
        /// The sequent of the input, where the translation needs it
        #[arg(long, allow_hyphen_values = true)]
        sequent: Option<String>,
    },
    /// List the focused derivations of a sequent, or count them
    Enumerate {
        #[arg(long)]
        count_only: bool,
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(allow_hyphen_values = true)]
        sequent: String,
    },
    /// Decide equality of two categorical derivations
    Eq {
        t1: String,
        t2: String,
        #[arg(allow_hyphen_values = true)]
        sequent: String,
    },
    /// Evaluate in a finite-set model
    Model {
        #[command(subcommand)]
        action: ModelCmd,
    },
    /// Demonstrations
    Demo {
        #[command(subcommand)]
        which: DemoCmd,
    },
}

#[derive(Subcommand)]
enum ModelCmd {
    /// Print the function table or element denoted by a categorical term
    Eval {
        spec: PathBuf,
        term: String,
        #[arg(allow_hyphen_values = true)]
        sequent: String,
    },
}

#[derive(Subcommand)]
enum DemoCmd {
    /// A loose map with no tight counterpart over a one-clause graph
    Nonleftnormal,
}

/// Outcome of a command that ran to completion.
enum Done {
    Ok,
    Distinct,
}

fn read_term(arg: &str) -> Result<Term> {
    let text = if Path::new(arg).is_file() {
        fs::read_to_string(arg).map_err(|e| Error::Invalid(format!("cannot read {arg}: {e}")))?
    } else {
        arg.to_string()
    };
    Ok(parse_term(text.trim())?)
}

fn read_graph(path: &Option<PathBuf>) -> Result<Multigraph> {
    match path {
        None => Ok(Multigraph::empty()),
        Some(p) => {
            let text = fs::read_to_string(p)
                .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", p.display())))?;
            Multigraph::parse(&text)
        }
    }
}

fn cat_term(t: &Term, goal: Option<&Sequent>) -> Result<CatDerivation> {
    match goal {
        Some(g) => cat_calc::elaborate_cat(t, g, &GenSig::new()),
        None => CatDerivation::from_term(t),
    }
}

fn need(sequent: &Option<Sequent>, what: &str) -> Result<Sequent> {
    sequent
        .clone()
        .ok_or_else(|| Error::Invalid(format!("{what} needs --sequent")))
}

fn check(calc: Calc, t: &Term, goal: &Sequent, graph: &Multigraph) -> Result<()> {
    match calc {
        Calc::Cat => {
            cat_calc::elaborate_cat(t, goal, &GenSig::new())?;
        }
        Calc::Seq => seq_calc::check_seq(&SeqDerivation::from_term(t)?, goal)?,
        Calc::Nd => {
            NdDerivation::elaborate(t, goal)?;
        }
        Calc::Focused => focused::check_foc_in(&FocI::from_term(t)?, goal, graph)?,
        Calc::Normal => normal_nd::check_nf(&Nf::from_term(t)?, goal)?,
        Calc::StoupFree => {
            let c = cat_calc::infer_sf(&SfDerivation::from_term(t)?)?;
            if goal.stoup.is_some() || !goal.context.is_empty() || c != goal.succedent {
                return Err(
                    skew_closed::TypeError::new(format!("derivation has type - | |- {c}")).into(),
                );
            }
        }
        Calc::Graph => mg::m_check(graph, &MSeq::from_term(t)?, goal)?,
    }
    Ok(())
}

fn translate(from: Calc, to: Calc, t: &Term, sequent: &Option<Sequent>) -> Result<String> {
    Ok(match (from, to) {
        (Calc::Seq, Calc::Cat) => {
            let g = need(sequent, "sound")?;
            bridge::sound_checked(&SeqDerivation::from_term(t)?, &g)?.to_string()
        }
        (Calc::Cat, Calc::Seq) => {
            let d = cat_term(t, sequent.as_ref())?;
            let ctx = sequent
                .as_ref()
                .map(|s| s.context.clone())
                .unwrap_or_default();
            let (f, s) = bridge::cmplt(&d, &ctx)?;
            format!("{}\n{s}", f.to_term())
        }
        (Calc::Seq, Calc::Seq) => {
            let f = SeqDerivation::from_term(t)?;
            if let Some(g) = sequent {
                seq_calc::check_seq(&f, g)?;
            }
            seq_calc::act(&f)?.to_term().to_string()
        }
        (Calc::Focused, Calc::Seq) => focused::emb_i(&FocI::from_term(t)?).to_term().to_string(),
        (Calc::Focused, Calc::Nd) => {
            let g = need(sequent, "emb_nd")?;
            let d = FocI::from_term(t)?;
            focused::check_foc(&d, &g)?;
            focused::emb_nd_i(&d, &g).to_term().to_string()
        }
        (Calc::Normal, Calc::Nd) => {
            let g = need(sequent, "emb_nf")?;
            let d = Nf::from_term(t)?;
            normal_nd::check_nf(&d, &g)?;
            normal_nd::emb_nf(&d, &g).to_term().to_string()
        }
        (Calc::Normal, Calc::Focused) => bridge::nf2i(&Nf::from_term(t)?).to_string(),
        (Calc::Focused, Calc::Normal) => bridge::i2nf(&FocI::from_term(t)?).to_string(),
        (Calc::Cat, Calc::StoupFree) => {
            cat_calc::to_stoup_free(&cat_term(t, sequent.as_ref())?)?.to_string()
        }
        (Calc::StoupFree, Calc::Cat) => {
            cat_calc::from_stoup_free(&SfDerivation::from_term(t)?)?.to_string()
        }
        _ => {
            return Err(Error::Invalid(
                "no translation between these calculi".into(),
            ))
        }
    })
}

fn run(cli: Cli) -> Result<Done> {
    match cli.command {
        Command::Check {
            calc,
            term,
            sequent,
            graph,
        } => {
            let graph = read_graph(&graph)?;
            check(calc, &read_term(&term)?, &parse_sequent(&sequent)?, &graph)?;
            println!("ok");
        }
        Command::Normalize {
            via,
            term,
            sequent,
            graph,
        } => {
            let t = read_term(&term)?;
            let goal = parse_sequent(&sequent)?;
            match via {
                Via::Focus if graph.is_some() => {
                    let g = read_graph(&graph)?;
                    println!("{}", mg::m_focus_checked(&g, &MSeq::from_term(&t)?, &goal)?);
                }
                Via::Focus => println!(
                    "{}",
                    focused::focus_checked(&SeqDerivation::from_term(&t)?, &goal)?
                ),
                Via::Hered => println!(
                    "{}",
                    focused::hered_checked(&NdDerivation::elaborate(&t, &goal)?, &goal)?
                ),
                Via::Nbe => println!(
                    "{}",
                    normal_nd::nbe_checked(&NdDerivation::elaborate(&t, &goal)?, &goal)?
                ),
            }
        }
        Command::Translate {
            from,
            to,
            term,
            sequent,
        } => {
            let s = sequent.as_deref().map(parse_sequent).transpose()?;
            println!("{}", translate(from, to, &read_term(&term)?, &s)?);
        }
        Command::Enumerate {
            count_only,
            graph,
            sequent,
        } => {
            let g = read_graph(&graph)?;
            let goal = parse_sequent(&sequent)?;
            let mut search = Search::new(&g);
            if count_only {
                println!("{}", search.count(&goal)?);
            } else {
                for d in search.enumerate(&goal)? {
                    println!("{d}");
                }
            }
        }
        Command::Eq { t1, t2, sequent } => {
            let goal = parse_sequent(&sequent)?;
            let d1 = cat_calc::elaborate_cat(&read_term(&t1)?, &goal, &GenSig::new())?;
            let d2 = cat_calc::elaborate_cat(&read_term(&t2)?, &goal, &GenSig::new())?;
            match coherence::decide_eq(&d1, &d2)? {
                Verdict::Equal => println!("equal"),
                Verdict::Distinct { left, right } => {
                    println!("distinct\n{left}\n{right}");
                    return Ok(Done::Distinct);
                }
            }
        }
        Command::Model {
            action:
                ModelCmd::Eval {
                    spec,
                    term,
                    sequent,
                },
        } => {
            let text = fs::read_to_string(&spec)
                .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", spec.display())))?;
            let spec = ModelSpec::parse(&text)?;
            let goal = parse_sequent(&sequent)?;
            let d = cat_calc::elaborate_cat(&read_term(&term)?, &goal, &GenSig::new())?;
            println!("{}", model::interp_cat(&spec, &d)?);
        }
        Command::Demo {
            which: DemoCmd::Nonleftnormal,
        } => {
            let g = Multigraph::witness_graph();
            let loose = parse_sequent("- | X |- Z")?;
            let tight = parse_sequent("X | |- Z")?;
            let mut search = Search::new(&g);
            let (n_loose, n_tight) = (search.count(&loose)?, search.count(&tight)?);
            print!("{g}");
            println!("count({loose}) = {n_loose}");
            println!("count({tight}) = {n_tight}");
            for d in search.enumerate(&loose)? {
                let e = mg::m_emb_i(&d);
                match mg::m_act_attempt(&e) {
                    ActOutcome::Stuck { clause } => {
                        println!("act({e}) is stuck at clause {clause}")
                    }
                    ActOutcome::Moved(f) => println!("act({e}) = {f}"),
                }
            }
            println!(
                "{n_loose} > {n_tight}: pass is not surjective, so the category is not left-normal"
            );
        }
    }
    Ok(Done::Ok)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Done::Ok) => ExitCode::SUCCESS,
        Ok(Done::Distinct) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Cap(_) => ExitCode::from(3),
                _ => ExitCode::from(1),
            }
        }
    }
}
