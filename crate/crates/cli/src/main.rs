//! `mnlogic`: prove, check and cross-validate sequents of ETL- and NFL-like
//! logics over the `Mn` lattices.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use mnlogic::corpus::{self, CorpusEntry};
use mnlogic::diff::{self, DiffConfig};
use mnlogic::formula::{gen_dn, gen_eq3, Sequent};
use mnlogic::lattice::{Capacity, Lattice, LatticeInfo, Logic, Matrix};
use mnlogic::oracle::Oracle;
use mnlogic::tableau::{self, ClosureMode, Outcome, Strategy, TableauConfig, TableauNode};

#[derive(Parser)]
#[command(name = "mnlogic", version, about = "Decide ETL/NFL entailment over Mn lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum LogicArg {
    Etl,
    Nfl,
}

impl From<LogicArg> for Logic {
    fn from(l: LogicArg) -> Logic {
        match l {
            LogicArg::Etl => Logic::Etl,
            LogicArg::Nfl => Logic::Nfl,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Paper,
    Semantic,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Greedy,
    Exact,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Toggle {
    On,
    Off,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Text,
    Json,
    Dot,
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long, value_enum, default_value = "etl")]
    logic: LogicArg,
    /// m<n>, momega, n5 or ladder5.
    #[arg(long, default_value = "m3")]
    lattice: String,
    #[arg(long, value_enum, default_value = "text")]
    emit: Emit,
    #[arg(long, default_value_t = mnlogic::oracle::DEFAULT_VAR_CAP)]
    var_cap: usize,
}

#[derive(Args, Clone)]
struct TableauArgs {
    #[arg(long, value_enum, default_value = "paper")]
    mode: ModeArg,
    #[arg(long, value_enum, default_value = "greedy")]
    strategy: StrategyArg,
    #[arg(long, value_enum, default_value = "off")]
    tr_rules: Toggle,
    #[arg(long, value_enum, default_value = "on")]
    neg_pair_rules: Toggle,
    #[arg(long, default_value_t = tableau::DEFAULT_NODE_CAP)]
    node_cap: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a sequent with the tableau prover.
    Prove {
        sequent: String,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        tableau: TableauArgs,
        /// Print the expanded trees in text output.
        #[arg(long)]
        tree: bool,
    },
    /// Decide a sequent by exhaustive valuation search.
    Check {
        sequent: Option<String>,
        /// Generated sequent instead of a literal: dn:<n> or eq3.
        #[arg(long)]
        sequent_from: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Compare tableau verdicts in both closure modes with the oracle.
    Diff {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        tableau: TableauArgs,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads (default: all cores); output does not depend on it.
        #[arg(long)]
        threads: Option<usize>,
        /// Skip the built-in corpus.
        #[arg(long)]
        no_corpus: bool,
    },
    /// Print a generated sequent.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Check corpus expectations with the oracle.
    Corpus {
        /// Only expectations on this lattice.
        #[arg(long)]
        lattice: Option<String>,
        /// Read entries from a JSON-lines file instead of the built-in corpus.
        #[arg(long)]
        import: Option<PathBuf>,
        /// Write the built-in corpus as JSON lines and exit.
        #[arg(long)]
        export: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        emit: Emit,
        #[arg(long, default_value_t = mnlogic::oracle::DEFAULT_VAR_CAP)]
        var_cap: usize,
    },
    /// Dump a lattice and its De Morgan negations.
    LatticeInfo {
        id: String,
        #[arg(long, value_enum, default_value = "text")]
        emit: Emit,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// The separation sequent D_n (n >= 2).
    Dn { n: usize },
    /// The M3/M4 separating sequent.
    Eq3,
}

/// Exit status 2 with a diagnostic.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome2 = Result<ExitCode, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Prove {
            sequent,
            common,
            tableau,
            tree,
        } => cmd_prove(&sequent, &common, &tableau, tree),
        Command::Check {
            sequent,
            sequent_from,
            common,
        } => cmd_check(sequent.as_deref(), sequent_from.as_deref(), &common),
        Command::Diff {
            common,
            tableau,
            samples,
            seed,
            threads,
            no_corpus,
        } => cmd_diff(&common, &tableau, samples, seed, threads, no_corpus),
        Command::Gen { kind } => cmd_gen(kind),
        Command::Corpus {
            lattice,
            import,
            export,
            emit,
            var_cap,
        } => cmd_corpus(lattice.as_deref(), import, export, emit, var_cap),
        Command::LatticeInfo { id, emit } => cmd_lattice_info(&id, emit),
    };
    match result {
        Ok(code) => code,
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn capacity_of(id: &str) -> Result<Capacity, Failure> {
    let l = Lattice::by_id(id)?;
    l.capacity()
        .ok_or_else(|| Failure(format!("the tableau prover works over m<n> and momega, not {id}; use `check`")))
}

fn tableau_config(id: &str, t: &TableauArgs) -> Result<TableauConfig, Failure> {
    Ok(TableauConfig::new(capacity_of(id)?)
        .mode(match t.mode {
            ModeArg::Paper => ClosureMode::Paper,
            ModeArg::Semantic => ClosureMode::Semantic,
        })
        .strategy(match t.strategy {
            StrategyArg::Greedy => Strategy::Greedy,
            StrategyArg::Exact => Strategy::Exact,
        })
        .tr_rules(t.tr_rules == Toggle::On)
        .neg_pair_rules(t.neg_pair_rules == Toggle::On)
        .node_cap(t.node_cap))
}

fn finite_matrix(id: &str, logic: Logic) -> Result<Matrix, Failure> {
    let l = Lattice::by_id(id)?;
    if !l.is_finite() {
        return Err(Failure(format!(
            "{id} has a symbolic carrier; the oracle needs a finite lattice (use `prove` for momega)"
        )));
    }
    Ok(Matrix::new(l, logic)?)
}

fn print_tree(node: &TableauNode, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    for item in &node.entry {
        let _ = writeln!(out, "{pad}{item}");
    }
    for step in &node.steps {
        for a in &step.added {
            let _ = writeln!(out, "{pad}{a}    [{}]", step.rule);
        }
    }
    if let Some(c) = &node.closure {
        let _ = writeln!(out, "{pad}x closed by {}", c.condition);
    } else if node.open_branch.is_some() {
        let _ = writeln!(out, "{pad}o open");
    }
    if let Some(split) = &node.split {
        for (i, child) in node.children.iter().enumerate() {
            let _ = writeln!(out, "{pad}[{} {}/{}]", split.rule, i + 1, node.children.len());
            print_tree(child, depth + 1, out);
        }
    }
}

fn cmd_prove(text: &str, common: &Common, t: &TableauArgs, tree: bool) -> Outcome2 {
    let sequent: Sequent = text.parse()?;
    let logic: Logic = common.logic.into();
    let config = tableau_config(&common.lattice, t)?;
    let result = tableau::prove(&sequent, logic, &config)?;
    let lattice = config.lattice();
    match common.emit {
        Emit::Json => println!("{}", serde_json::to_string_pretty(&tableau::proof_json(&result))?),
        Emit::Dot => {
            for tr in &result.trees {
                print!("{}", tableau::to_dot(tr));
            }
        }
        Emit::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "sequent: {}", sequent);
            let _ = writeln!(
                out,
                "matrix: {}_{} (tableau, {} mode, {} extraction)",
                logic,
                lattice.id(),
                config.closure.mode,
                config.strategy
            );
            let _ = writeln!(out, "result: {}", result.result_name());
            for (i, tr) in result.trees.iter().enumerate() {
                let roots: Vec<String> = tr.roots.iter().map(|r| r.to_string()).collect();
                let _ = writeln!(
                    out,
                    "tree {}: {{{}}} {} ({} leaves, {} rule applications)",
                    i + 1,
                    roots.join(", "),
                    if tr.is_closed() { "closed" } else { "open" },
                    tr.root.leaves(),
                    tr.root.rule_applications()
                );
                if tree {
                    print_tree(&tr.root, 1, &mut out);
                }
            }
            match &result.outcome {
                Outcome::Proved => {}
                Outcome::Refuted { branch, countermodel } => {
                    let _ = writeln!(out, "countermodel: {}", countermodel.display_in(&lattice));
                    let items: Vec<String> = branch.iter().map(|i| i.to_string()).collect();
                    let _ = writeln!(out, "open branch: {}", items.join(", "));
                }
                Outcome::Unrealised { branch } => {
                    let items: Vec<String> = branch.iter().map(|i| i.to_string()).collect();
                    let _ = writeln!(out, "open branch: {}", items.join(", "));
                    let _ = writeln!(
                        out,
                        "note: no open branch yields a refuting valuation; try --mode semantic"
                    );
                }
            }
            print!("{out}");
        }
    }
    Ok(ExitCode::from(if result.is_proved() { 0 } else { 1 }))
}

fn generated(spec: &str) -> Result<Sequent, Failure> {
    if spec == "eq3" {
        return Ok(gen_eq3());
    }
    let n = spec
        .strip_prefix("dn:")
        .and_then(|n| n.parse::<usize>().ok())
        .ok_or_else(|| Failure(format!("unknown generator `{spec}` (expected dn:<n> or eq3)")))?;
    Ok(gen_dn(n)?)
}

fn cmd_check(text: Option<&str>, from: Option<&str>, common: &Common) -> Outcome2 {
    let sequent = match (text, from) {
        (Some(t), None) => t.parse::<Sequent>()?,
        (None, Some(g)) => generated(g)?,
        _ => return Err(Failure("give either a sequent or --sequent-from".into())),
    };
    let logic: Logic = common.logic.into();
    let m = finite_matrix(&common.lattice, logic)?;
    let v = Oracle::with_var_cap(common.var_cap).entails(&m, &sequent)?;
    match common.emit {
        Emit::Json => {
            let mut doc = json!({
                "sequent": sequent.render(),
                "logic": logic,
                "lattice": m.lattice.id(),
                "result": if v.valid { "valid" } else { "invalid" },
                "examined": v.examined,
            });
            if let Some(cm) = &v.countermodel {
                doc["countermodel"] = json!(cm.named(&m.lattice));
            }
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
        Emit::Dot => return Err(Failure("dot output is only available for `prove`".into())),
        Emit::Text => {
            println!("sequent: {sequent}");
            println!("matrix: {} (oracle)", m.name());
            println!("result: {}", if v.valid { "valid" } else { "invalid" });
            if let Some(cm) = &v.countermodel {
                println!("countermodel: {}", cm.display_in(&m.lattice));
            }
            println!("valuations examined: {}", v.examined);
        }
    }
    Ok(ExitCode::from(if v.valid { 0 } else { 1 }))
}

fn cmd_diff(common: &Common, t: &TableauArgs, samples: usize, seed: u64, threads: Option<usize>, no_corpus: bool) -> Outcome2 {
    let logic: Logic = common.logic.into();
    let m = finite_matrix(&common.lattice, logic)?;
    let Some(Capacity::Finite(n)) = m.lattice.capacity() else {
        return Err(Failure(format!("diff runs over m<n> lattices, not {}", common.lattice)));
    };
    let mut cfg = DiffConfig::new(logic, n);
    cfg.samples = samples;
    cfg.seed = seed;
    cfg.tableau = tableau_config(&common.lattice, t)?;
    cfg.oracle = Oracle::with_var_cap(common.var_cap);
    cfg.include_corpus = !no_corpus;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(k) = threads {
        pool = pool.num_threads(k);
    }
    let report = pool.build()?.install(|| diff::run(&cfg));
    match common.emit {
        Emit::Json => {
            let witnesses = |mode| {
                report
                    .witnesses(mode)
                    .into_iter()
                    .map(|c| {
                        json!({
                            "source": c.source,
                            "sequent": c.sequent.render(),
                            "oracle_valid": c.oracle_valid,
                            "paper": c.paper,
                            "semantic": c.semantic,
                        })
                    })
                    .collect::<Vec<_>>()
            };
            let doc = json!({
                "matrix": report.matrix,
                "samples": report.samples,
                "seed": report.seed,
                "cases": report.cases.len(),
                "semantic_agreement": report.semantic_agreement(),
                "paper_agreement": report.paper_agreement(),
                "c5": report.c5().map(|c| json!({
                    "oracle_valid": c.oracle_valid,
                    "paper": c.paper,
                    "semantic": c.semantic,
                })),
                "semantic_divergences": witnesses(ClosureMode::Semantic),
                "paper_divergences": witnesses(ClosureMode::Paper),
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
        Emit::Dot => return Err(Failure("dot output is only available for `prove`".into())),
        Emit::Text => print!("{}", report.render()),
    }
    Ok(ExitCode::from(if report.fully_agrees() { 0 } else { 1 }))
}

fn cmd_gen(kind: GenKind) -> Outcome2 {
    let s = match kind {
        GenKind::Dn { n } => gen_dn(n)?,
        GenKind::Eq3 => gen_eq3(),
    };
    println!("{}", s.render_compact());
    Ok(ExitCode::SUCCESS)
}

fn cmd_corpus(lattice: Option<&str>, import: Option<PathBuf>, export: Option<PathBuf>, emit: Emit, var_cap: usize) -> Outcome2 {
    if let Some(path) = export {
        fs::write(&path, corpus::to_jsonl(&corpus::corpus()))?;
        return Ok(ExitCode::SUCCESS);
    }
    let entries: Vec<CorpusEntry> = match import {
        Some(path) => corpus::from_jsonl(&fs::read_to_string(&path)?)?,
        None => corpus::corpus(),
    };
    if let Some(id) = lattice {
        Lattice::by_id(id)?;
    }
    let checks = corpus::check(&entries, lattice, &Oracle::with_var_cap(var_cap));
    let failed = checks.iter().filter(|c| !c.passed()).count();
    match emit {
        Emit::Json => {
            let rows: Vec<_> = checks
                .iter()
                .map(|c| {
                    json!({
                        "name": c.entry,
                        "logic": c.expectation.logic,
                        "lattice": c.expectation.lattice,
                        "expected": c.expectation.valid,
                        "actual": c.actual.as_ref().ok(),
                        "error": c.actual.as_ref().err(),
                        "provenance": c.expectation.provenance,
                        "passed": c.passed(),
                    })
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&json!({ "checks": rows, "failed": failed }))?);
        }
        Emit::Dot => return Err(Failure("dot output is only available for `prove`".into())),
        Emit::Text => {
            let word = |v: bool| if v { "valid" } else { "invalid" };
            for c in &checks {
                let actual = match &c.actual {
                    Ok(v) => word(*v).to_string(),
                    Err(e) => format!("error: {e}"),
                };
                println!(
                    "{} {:<28} {} {:<7} expected {:<7} got {:<7} [{}]",
                    if c.passed() { "PASS" } else { "FAIL" },
                    c.entry,
                    c.expectation.logic,
                    c.expectation.lattice,
                    word(c.expectation.valid),
                    actual,
                    c.expectation.provenance
                );
            }
            println!("{} checks, {} failed", checks.len(), failed);
        }
    }
    Ok(ExitCode::from(if failed == 0 { 0 } else { 1 }))
}

fn cmd_lattice_info(id: &str, emit: Emit) -> Outcome2 {
    let info = LatticeInfo::of(&Lattice::by_id(id)?);
    match emit {
        Emit::Json => println!("{}", serde_json::to_string_pretty(&info)?),
        Emit::Dot => return Err(Failure("dot output is only available for `prove`".into())),
        Emit::Text => print!("{}", info.render()),
    }
    Ok(ExitCode::SUCCESS)
}
