//! `idag`: compare, normalise, decompose, compose and render idags and
//! generator expressions.
//!
//! Exit status: 0 on success (for `eq`: equal), 1 when `eq` finds the
//! sides unequal or `selftest` fails, 2 on any error.

mod dot;

use std::fs;
use std::io::{self, Read};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use idag_core::check::{run_all, Scale};
use idag_core::decompose::count_sortings;
use idag_core::equiv::normalize;
use idag_core::json::{idag_from_json, idag_to_json, matrix_to_value, peek_mode};
use idag_core::random::{random_idag, IdagParams};
use idag_core::{
    canonical_form, decompose, equal_mod_theory, eval, loops_eval, parse, prune_dangling, topological_sortings,
    transitive_closure, Boolean, FreeModel, Idag, Label, MatrixModel, Quotient, Quotients, TheoryMode, TopSort,
    Weight, WeightKind,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Parser, Debug)]
#[command(name = "idag", version, about = "Interfaced dags and the bialgebra theories they present")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Weight system; defaults to the mode of JSON inputs, else bool.
    #[arg(long, global = true)]
    mode: Option<WeightKind>,
    /// Extra quotient equations (bool mode only).
    #[arg(long = "quotient", global = true, value_parser = parse_quotient)]
    quotients: Vec<Quotient>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// `default`, or the index of a sorting in enumeration order.
    #[arg(long, global = true, default_value = "default")]
    sorting: SortingChoice,
}

fn parse_quotient(s: &str) -> Result<Quotient, String> {
    s.parse()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Clone, Copy, Debug)]
enum SortingChoice {
    Default,
    Index(usize),
}

impl std::str::FromStr for SortingChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "default" {
            return Ok(SortingChoice::Default);
        }
        let index = s.strip_prefix("index:").unwrap_or(s);
        index
            .parse()
            .map(SortingChoice::Index)
            .map_err(|_| format!("expected `default` or a sorting index, found `{s}`"))
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether two expressions are equal in the theory.
    Eq { lhs: String, rhs: String },
    /// Canonical normal form of an expression or idag.
    Normalize { input: String },
    /// Generator expression of an idag along a topological sorting.
    Decompose { input: String },
    /// `a ; b`: the outputs of `a` feed the inputs of `b`.
    Compose { first: String, second: String },
    /// `a * b`: side by side.
    Tensor { top: String, bottom: String },
    /// Transitive closure (bool mode).
    Closure { input: String },
    /// Removes dangling nodes (bool mode).
    Prune { input: String },
    /// Graphviz rendering.
    Dot { input: String },
    /// Evaluates an expression in a matrix model or the loops model.
    Eval {
        input: String,
        #[arg(long, value_enum, default_value_t = ModelChoice::Matrix)]
        model: ModelChoice,
        /// Scalar for a node label in the matrix model, as `label=value`.
        #[arg(long = "lambda", value_parser = parse_lambda)]
        lambda: Vec<(String, i64)>,
    },
    /// A random idag, deterministic for a fixed seed.
    Random {
        #[arg(long, default_value_t = 2)]
        inputs: usize,
        #[arg(long, default_value_t = 2)]
        outputs: usize,
        #[arg(long, default_value_t = 4)]
        nodes: usize,
        #[arg(long, default_value_t = 0.4)]
        edge_prob: f64,
        /// Comma-separated node labels to draw from.
        #[arg(long, value_delimiter = ',')]
        labels: Vec<String>,
    },
    /// Runs the self-check suites.
    Selftest {
        /// Full acceptance scale instead of the reduced one.
        #[arg(long)]
        full: bool,
        /// Swaps the images of nabla and delta, which must be detected.
        #[arg(long)]
        mutant: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModelChoice {
    Matrix,
    Loops,
}

fn parse_lambda(s: &str) -> Result<(String, i64), String> {
    let (label, value) = s.split_once('=').ok_or("expected label=value")?;
    let value = value.parse().map_err(|_| format!("bad scalar `{value}`"))?;
    Ok((label.to_string(), value))
}

type Fallible<T> = Result<T, String>;

/// Reads `@path`, `-` (standard input) or the literal argument.
fn read_input(arg: &str) -> Fallible<String> {
    if arg == "-" {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| format!("reading standard input: {e}"))?;
        Ok(text)
    } else if let Some(path) = arg.strip_prefix('@') {
        fs::read_to_string(path).map_err(|e| format!("reading {path}: {e}"))
    } else {
        Ok(arg.to_string())
    }
}

fn is_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

/// An input is either an idag document or an expression, which is
/// evaluated in the free model.
fn load_idag<W: Weight>(text: &str) -> Fallible<Idag<W>> {
    if is_json(text) {
        idag_from_json(text).map_err(|e| e.to_string())
    } else {
        let e = parse(text).map_err(|e| e.to_string())?;
        eval(&e, &FreeModel::<W>::new()).map_err(|e| e.to_string())
    }
}

fn emit_idag<W: Weight>(d: &Idag<W>, format: Option<Format>) {
    match format.unwrap_or(Format::Json) {
        Format::Json => println!("{}", idag_to_json(d)),
        Format::Text => println!("{d:?}"),
        Format::Dot => print!("{}", dot::render(d)),
    }
}

struct Run {
    global: Global,
    inputs: Vec<String>,
}

impl Run {
    fn quotients(&self) -> Quotients {
        self.global.quotients.iter().copied().collect()
    }

    fn sorting<W: Weight>(&self, d: &Idag<W>) -> Fallible<TopSort> {
        match self.global.sorting {
            SortingChoice::Default => Ok(topological_sortings(d).next().expect("a sorting exists")),
            SortingChoice::Index(k) => topological_sortings(d)
                .nth(k)
                .ok_or_else(|| format!("sorting index {k} out of range ({} sortings)", count_sortings(d))),
        }
    }

    fn execute<W: Weight>(&self, command: &Command) -> Fallible<u8> {
        let format = self.global.format;
        let input = |k: usize| load_idag::<W>(&self.inputs[k]);
        match command {
            Command::Eq { .. } => {
                let lhs = parse(&self.inputs[0]).map_err(|e| format!("left side: {e}"))?;
                let rhs = parse(&self.inputs[1]).map_err(|e| format!("right side: {e}"))?;
                let report = equal_mod_theory::<W>(&lhs, &rhs, &self.quotients()).map_err(|e| e.to_string())?;
                match format.unwrap_or(Format::Text) {
                    Format::Json => println!(
                        "{}",
                        serde_json::to_string_pretty(&report.to_value()).expect("serializable")
                    ),
                    Format::Text => println!("{}", if report.equal { "equal" } else { "not equal" }),
                    Format::Dot => {
                        print!("{}", dot::render(&report.lhs));
                        print!("{}", dot::render(&report.rhs));
                    }
                }
                Ok(if report.equal { 0 } else { 1 })
            }
            Command::Normalize { .. } => {
                let text = &self.inputs[0];
                let d = if is_json(text) {
                    let d = load_idag::<W>(text)?;
                    let d = idag_core::equiv::apply_quotients(&d, &self.quotients()).map_err(|e| e.to_string())?;
                    canonical_form(&d).map_err(|e| e.to_string())?
                } else {
                    let e = parse(text).map_err(|e| e.to_string())?;
                    normalize::<W>(&e, &self.quotients()).map_err(|e| e.to_string())?
                };
                emit_idag(&d, format);
                Ok(0)
            }
            Command::Decompose { .. } => {
                let d = input(0)?;
                let sigma = self.sorting(&d)?;
                let e = decompose(&d, &sigma).map_err(|e| e.to_string())?;
                println!("{e}");
                Ok(0)
            }
            Command::Compose { .. } => {
                let composite = input(0)?.then(&input(1)?).map_err(|e| e.to_string())?;
                emit_idag(&composite, format);
                Ok(0)
            }
            Command::Tensor { .. } => {
                emit_idag(&input(0)?.tensor(&input(1)?), format);
                Ok(0)
            }
            Command::Closure { .. } => {
                emit_idag(&transitive_closure(&input(0)?).map_err(|e| e.to_string())?, format);
                Ok(0)
            }
            Command::Prune { .. } => {
                emit_idag(&prune_dangling(&input(0)?).map_err(|e| e.to_string())?, format);
                Ok(0)
            }
            Command::Dot { .. } => {
                print!("{}", dot::render(&input(0)?));
                Ok(0)
            }
            Command::Eval { model, lambda, .. } => {
                let e = parse(&self.inputs[0]).map_err(|e| e.to_string())?;
                match model {
                    ModelChoice::Matrix => {
                        let mut m = MatrixModel::<W>::new();
                        for (label, value) in lambda {
                            let w = W::from_count(*value)
                                .ok_or_else(|| format!("scalar {value} is not a {} weight", W::KIND))?;
                            m = m.with_lambda(Label::new(label.as_str()), w);
                        }
                        let f = eval(&e, &m).map_err(|e| e.to_string())?;
                        match format.unwrap_or(Format::Json) {
                            Format::Text => println!("{f:?}"),
                            _ => println!("{}", matrix_to_value(&f)),
                        }
                    }
                    ModelChoice::Loops => {
                        let f = loops_eval(&e).map_err(|e| e.to_string())?;
                        println!("{f}");
                    }
                }
                Ok(0)
            }
            Command::Random {
                inputs,
                outputs,
                nodes,
                edge_prob,
                labels,
            } => {
                if !(0.0..=1.0).contains(edge_prob) {
                    return Err(format!("edge probability {edge_prob} is not in [0, 1]"));
                }
                let labels: Vec<&str> = labels.iter().map(String::as_str).collect();
                let p = IdagParams::new(*inputs, *outputs, *nodes, *edge_prob).with_labels(&labels);
                let mut rng = ChaCha8Rng::seed_from_u64(self.global.seed);
                let d: Idag<W> = random_idag(&mut rng, &p);
                emit_idag(&d, format);
                Ok(0)
            }
            Command::Selftest { full, mutant } => {
                let scale = if *full { Scale::full() } else { Scale::reduced() };
                let start = Instant::now();
                let reports = run_all(scale, self.global.seed, *mutant);
                let mut status = 0;
                for r in &reports {
                    println!("{r}");
                }
                if let Some(bad) = reports.iter().find(|r| !r.passed()) {
                    println!("first failure in {}:", bad.name);
                    println!("{}", bad.first_failure.as_deref().unwrap_or(""));
                    status = 1;
                }
                eprintln!("selftest finished in {:.1}s", start.elapsed().as_secs_f64());
                Ok(status)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let inputs: Vec<String> = match &cli.command {
        Command::Eq { lhs, rhs } => vec![lhs.clone(), rhs.clone()],
        Command::Compose { first, second } => vec![first.clone(), second.clone()],
        Command::Tensor { top, bottom } => vec![top.clone(), bottom.clone()],
        Command::Normalize { input }
        | Command::Decompose { input }
        | Command::Closure { input }
        | Command::Prune { input }
        | Command::Dot { input }
        | Command::Eval { input, .. } => vec![input.clone()],
        Command::Random { .. } | Command::Selftest { .. } => Vec::new(),
    };
    let inputs = match inputs.iter().map(|a| read_input(a)).collect::<Fallible<Vec<_>>>() {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };

    let mode = cli
        .global
        .mode
        .or_else(|| inputs.iter().find(|t| is_json(t)).and_then(|t| peek_mode(t).ok()))
        .unwrap_or(WeightKind::Bool);
    let quotients: Quotients = cli.global.quotients.iter().copied().collect();
    if let Err(e) = TheoryMode::new(mode, quotients) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }

    let run = Run {
        global: cli.global,
        inputs,
    };
    let result = match mode {
        WeightKind::Bool => run.execute::<Boolean>(&cli.command),
        WeightKind::Nat => run.execute::<u64>(&cli.command),
        WeightKind::Int => run.execute::<i64>(&cli.command),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
