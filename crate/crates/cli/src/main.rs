use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::builder::TypedValueParser as _;
use clap::{Parser, Subcommand, ValueEnum};

use isets::discovery::{self, Mode, Options, SearchReport};
use isets::regress::{self, Suite};
use isets::semantics::{self, symbolic, HtInterpretation, Limits, Semantics};
use isets::transform::{apply_transform, TransformKind};
use isets::{
    concat_tuple, parse_program, render_program, simplify, ISetName, Program, Shape, SymbolTable,
};

#[derive(Parser)]
#[command(
    name = "isets",
    version,
    about = "Equivalence checks and condition discovery for ground ASP and LP^MLN programs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether two programs are strongly (asp) or semi-strongly (lpmln) equivalent.
    Check {
        p: PathBuf,
        q: PathBuf,
        #[arg(long, default_value = "lpmln")]
        semantics: Semantics,
        #[arg(long, value_enum, default_value_t = Engine::Auto)]
        engine: Engine,
        /// Largest atom count for exhaustive HT enumeration.
        #[arg(long, default_value_t = Limits::default().ht_pairs, value_parser = clap::value_parser!(u16).range(1..=40).map(|v| v as usize))]
        max_atoms: usize,
    },
    /// Search the SE-conditions of the k-m-n problem.
    Discover {
        k: usize,
        m: usize,
        n: usize,
        /// Verify every subset of the name universe instead of the layered search.
        #[arg(long)]
        basic: bool,
        #[arg(long, default_value = "sound")]
        mode: Mode,
        /// Worker threads (default: logical cores).
        #[arg(long, env = "SE_DISCOVERY_JOBS", value_parser = clap::value_parser!(u16).range(1..).map(|v| v as usize))]
        jobs: Option<usize>,
        #[arg(long)]
        max_layer: Option<usize>,
        /// Keep names with a local 5 digit even for more than two rules.
        #[arg(long)]
        keep_i5: bool,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Append progress to this file and resume from it.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Compress the conditions of a discovery report.
    Simplify {
        report: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Apply one single-atom edit to an independent set of a tuple.
    Transform {
        /// One file per program of the tuple.
        #[arg(required = true)]
        programs: Vec<PathBuf>,
        #[arg(long)]
        op: TransformKind,
        /// Independent set, as `36` or `I_36`.
        #[arg(long)]
        iset: String,
        #[arg(long)]
        atom: Option<String>,
        /// Name of the atom to add; generated when omitted.
        #[arg(long)]
        fresh: Option<String>,
    },
    /// Compare discovery counts against the reference table.
    Regress {
        #[arg(long, default_value = "fast")]
        suite: Suite,
        #[arg(long, env = "SE_DISCOVERY_JOBS", value_parser = clap::value_parser!(u16).range(1..).map(|v| v as usize))]
        jobs: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Engine {
    /// Exhaustive when within `--max-atoms`, symbolic otherwise.
    Auto,
    Exhaustive,
    Symbolic,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Check {
            p,
            q,
            semantics,
            engine,
            max_atoms,
        } => check(&p, &q, semantics, engine, max_atoms),
        Command::Discover {
            k,
            m,
            n,
            basic,
            mode,
            jobs,
            max_layer,
            keep_i5,
            out,
            checkpoint,
        } => {
            let shape = Shape::new(k, m, n)?;
            let opts = Options {
                jobs,
                max_layer,
                drop_i5: keep_i5.then_some(false),
                checkpoint,
                basic_over_base: false,
            };
            let report = discovery::discover(shape, basic, mode, &opts)?;
            match out {
                Some(path) => {
                    fs::write(&path, report.to_json())
                        .with_context(|| format!("cannot write {}", path.display()))?;
                    println!("{}", summary(&report));
                }
                None => {
                    print!("{}", report.to_json());
                    eprintln!("{}", summary(&report));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Simplify { report, format } => {
            let text = read(&report)?;
            let report: SearchReport = serde_json::from_str(&text)
                .with_context(|| format!("{} is not a discovery report", report.display()))?;
            let simplified = simplify(&report.mgic)?;
            match format {
                Format::Json => print!("{}", simplified.to_json()),
                Format::Text if simplified.disjuncts.is_empty() => {}
                Format::Text => println!("{}", simplified.formula()),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Transform {
            programs,
            op,
            iset,
            atom,
            fresh,
        } => transform(&programs, op, &iset, atom.as_deref(), fresh.as_deref()),
        Command::Regress { suite, jobs } => {
            let opts = Options {
                jobs,
                ..Options::default()
            };
            let mut ok = true;
            for row in suite.rows() {
                let outcome = regress::run_row(row.0, row.1, &opts)?;
                println!("{}", outcome.line());
                ok &= outcome.passed();
            }
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn summary(report: &SearchReport) -> String {
    let mut line = report.summary();
    if report.partial {
        line.push_str(" (partial)");
    }
    line
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn parse_file(path: &Path, symbols: &mut SymbolTable) -> Result<Program> {
    parse_program(&read(path)?, symbols).with_context(|| format!("in {}", path.display()))
}

fn check(p: &Path, q: &Path, sem: Semantics, engine: Engine, max_atoms: usize) -> Result<ExitCode> {
    let mut symbols = SymbolTable::new();
    let p = parse_file(p, &mut symbols)?;
    let q = parse_file(q, &mut symbols)?;
    let atoms = p.atoms().union(q.atoms()).len();
    let exhaustive = match engine {
        Engine::Exhaustive => true,
        Engine::Symbolic => false,
        Engine::Auto => atoms <= max_atoms,
    };
    let witness: Option<HtInterpretation> = if exhaustive {
        let limits = Limits {
            ht_pairs: max_atoms,
            ..Limits::default()
        };
        semantics::equivalent(&p, &q, sem, &limits)?.witness
    } else {
        symbolic::separating(&p.rules, &q.rules, sem)
    };
    match witness {
        None => {
            println!("equivalent ({sem})");
            Ok(ExitCode::SUCCESS)
        }
        Some(w) => {
            let side = if semantics::ht_satisfies_all(&w, &p.rules, sem) {
                "P"
            } else {
                "Q"
            };
            println!("not equivalent ({sem})");
            println!(
                "witness: ({}, {}) is an HT-model of {side} only",
                symbols.render_set(w.here()),
                symbols.render_set(w.there())
            );
            Ok(ExitCode::from(1))
        }
    }
}

fn transform(
    files: &[PathBuf],
    op: TransformKind,
    iset: &str,
    atom: Option<&str>,
    fresh: Option<&str>,
) -> Result<ExitCode> {
    let mut symbols = SymbolTable::new();
    let programs = files
        .iter()
        .map(|f| parse_file(f, &mut symbols))
        .collect::<Result<Vec<_>>>()?;
    let tuple = concat_tuple(&programs)?;
    let value: u64 = iset
        .trim_start_matches("I_")
        .parse()
        .with_context(|| format!("bad independent-set name `{iset}`"))?;
    let name = ISetName::new(value, tuple.n_rules())?;

    let atom = match atom {
        Some(a) => match symbols.lookup(a) {
            Some(id) => Some(id),
            None => bail!("atom `{a}` does not occur in the programs"),
        },
        None => None,
    };
    let (_, needs_fresh) = op.operands();
    let fresh = if needs_fresh {
        let name = match fresh {
            Some(f) if symbols.lookup(f).is_some() => bail!("fresh atom `{f}` already occurs"),
            Some(f) => f.to_string(),
            None => (0..)
                .map(|i| format!("x{i}"))
                .find(|n| symbols.lookup(n).is_none())
                .expect("some name is free"),
        };
        Some(symbols.intern(&name)?)
    } else {
        None
    };

    let result = apply_transform(&tuple, op, name, atom, fresh)?;
    for (i, program) in result.programs().iter().enumerate() {
        if files.len() > 1 {
            println!("% {}", files[i].display());
        }
        print!("{}", render_program(program, &symbols));
    }
    Ok(ExitCode::SUCCESS)
}
