use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context as _, Result};
use clap::{Args, Parser, Subcommand};

use lcc_core::derive::{check, search_subtyping};
use lcc_core::lab::{run_suite, run_typed_soundness, EnumConfig, LabConfig, Suite, SuiteReport};
use lcc_core::reduce::{
    case_normal_form, classify, normalize, reduction_graph, GraphBudget, Outcome, RuleSet, Strategy,
};
use lcc_core::syntax::{node_count, structural_measure};
use lcc_core::text::{parse_script, parse_term, parse_type, print_script};
use lcc_core::Term;

/// Lambda-calculus with constructors.
#[derive(Parser)]
#[command(name = "lcc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RuleArgs {
    /// full, lcminus, lcom, lb, or a comma list of rule tags (AL,CA,...)
    #[arg(long, default_value = "lcminus")]
    rules: RuleSet,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce a term and print the outcome
    Reduce {
        file: PathBuf,
        #[command(flatten)]
        rules: RuleArgs,
        /// lo or random:SEED
        #[arg(long, default_value = "lo")]
        strategy: Strategy,
        #[arg(long, default_value_t = 1000)]
        fuel: usize,
        /// Print every step
        #[arg(long)]
        trace: bool,
    },
    /// Print the normal form of a term
    Nf {
        file: PathBuf,
        #[command(flatten)]
        rules: RuleArgs,
        #[arg(long, default_value_t = 1000)]
        fuel: usize,
    },
    /// Print the case-commutation normal form
    Cnf { file: PathBuf },
    /// Classify a term
    Classify { file: PathBuf },
    /// Build the bounded reduction graph
    Graph {
        file: PathBuf,
        #[command(flatten)]
        rules: RuleArgs,
        #[arg(long, default_value_t = 500)]
        max_nodes: usize,
        #[arg(long, default_value_t = 60)]
        max_depth: usize,
        /// Write Graphviz output here
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Check a derivation script
    Check { script: PathBuf },
    /// Search for a sub-typing derivation
    Subtype {
        lhs: String,
        rhs: String,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Print the structural measure
    Measure { file: PathBuf },
    /// Run property suites
    Lab(LabArgs),
}

#[derive(Args)]
struct LabArgs {
    /// com-normalization, normal-form-shape, commutation-simulation,
    /// confluence[:RULES], principal-reduct, typed-soundness (default: all)
    suites: Vec<String>,
    #[arg(long, default_value_t = 6)]
    size: usize,
    #[arg(long, value_delimiter = ',', default_value = "C")]
    constructors: Vec<String>,
    #[arg(long)]
    no_daimon: bool,
    #[arg(long, default_value_t = 500)]
    max_nodes: usize,
    #[arg(long, default_value_t = 60)]
    max_depth: usize,
    #[arg(long, default_value_t = 30)]
    simulation_depth: usize,
    /// Directory of checked scripts for typed-soundness
    #[arg(long, default_value = "corpus/scripts/positive")]
    corpus: PathBuf,
    /// Write the reports as JSON
    #[arg(long)]
    report: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn read_term(path: &Path) -> Result<Term> {
    let src = read(path)?;
    parse_term(&src).with_context(|| format!("{}", path.display()))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Reduce {
            file,
            rules,
            strategy,
            fuel,
            trace,
        } => {
            let t = read_term(&file)?;
            let out = normalize(&t, rules.rules, strategy, fuel);
            println!("rules {}, strategy {strategy}, fuel {fuel}", rules.rules);
            if trace {
                println!("   0. {:<12} {t}", "");
                for (i, s) in out.trace().iter().enumerate() {
                    println!("{:>4}. {:<12} {}", i + 1, s.redex.to_string(), s.term);
                }
            }
            match &out {
                Outcome::NormalForm { term, trace } => {
                    println!("normal form after {} step(s): {term}", trace.len());
                }
                Outcome::FuelExhausted { last, trace } => {
                    println!(
                        "fuel exhausted after {} step(s); no normal form reached (the term may diverge)",
                        trace.len()
                    );
                    println!("last: {last}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Nf { file, rules, fuel } => {
            let t = read_term(&file)?;
            match normalize(&t, rules.rules, Strategy::LeftmostOutermost, fuel) {
                Outcome::NormalForm { term, .. } => {
                    println!("{term}");
                    Ok(ExitCode::SUCCESS)
                }
                Outcome::FuelExhausted { trace, .. } => {
                    eprintln!("no normal form within {} step(s)", trace.len());
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Cnf { file } => {
            println!("{}", case_normal_form(&read_term(&file)?));
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify { file } => {
            println!("{}", classify(&read_term(&file)?));
            Ok(ExitCode::SUCCESS)
        }
        Command::Graph {
            file,
            rules,
            max_nodes,
            max_depth,
            dot,
        } => {
            let t = read_term(&file)?;
            let g = reduction_graph(&t, rules.rules, GraphBudget::new(max_nodes, max_depth));
            println!(
                "{} node(s), {} edge(s), {} normal form(s): {}",
                g.nodes().len(),
                g.edges().len(),
                g.sinks().len(),
                g.status()
            );
            if let Some(path) = dot {
                fs::write(&path, g.to_dot())
                    .with_context(|| format!("cannot write {}", path.display()))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { script } => {
            let src = read(&script)?;
            let d = parse_script(&src).with_context(|| format!("{}", script.display()))?;
            match check(&d) {
                Ok(ok) => {
                    for w in &ok.warnings {
                        eprintln!("warning: {w}");
                    }
                    println!("{ok}");
                    Ok(ExitCode::SUCCESS)
                }
                Err(rej) => {
                    println!("{rej}");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Subtype { lhs, rhs, depth } => {
            let l = parse_type(&lhs).context("left type")?;
            let r = parse_type(&rhs).context("right type")?;
            match search_subtyping(&l, &r, depth) {
                Some(d) => print!("{}", print_script(&d)),
                None => println!("not found (inconclusive)"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Measure { file } => {
            let t = read_term(&file)?;
            println!("{} (nodes: {})", structural_measure(&t), node_count(&t));
            Ok(ExitCode::SUCCESS)
        }
        Command::Lab(args) => lab(args),
    }
}

fn lab(args: LabArgs) -> Result<ExitCode> {
    let cfg = LabConfig {
        enumeration: EnumConfig {
            max_size: args.size,
            constructors: args.constructors.clone(),
            allow_daimon: !args.no_daimon,
            ..EnumConfig::default()
        },
        max_nodes: args.max_nodes,
        max_depth: args.max_depth,
        simulation_depth: args.simulation_depth,
    };
    let names: Vec<String> = if args.suites.is_empty() {
        Suite::ALL
            .iter()
            .map(Suite::name)
            .chain(["typed-soundness".to_string()])
            .collect()
    } else {
        args.suites.clone()
    };
    let mut reports: Vec<SuiteReport> = Vec::new();
    for name in &names {
        let report = if name == "typed-soundness" {
            run_typed_soundness(&args.corpus, cfg.budget())
                .with_context(|| format!("cannot read corpus {}", args.corpus.display()))?
        } else {
            let suite: Suite = name.parse()?;
            run_suite(suite, &cfg)
        };
        print!("{report}");
        reports.push(report);
    }
    if let Some(path) = &args.report {
        let json = format!(
            "[{}]\n",
            reports
                .iter()
                .map(SuiteReport::to_json)
                .collect::<Vec<_>>()
                .join(",\n")
        );
        fs::write(path, json).with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(if reports.iter().all(SuiteReport::passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
