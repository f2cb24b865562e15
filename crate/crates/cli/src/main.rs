use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gradedk_cli::ast::{Arg, Call, Expr, Pos};
use gradedk_cli::{exit_code, parse, render_json, render_text, CliError, Options, Session};
use gradedk_core::field::Field;
use gradedk_core::ktheory::Report;

#[derive(Parser)]
#[command(name = "gradedk", version, about = "Graded K0 of Z^m x G-graded algebras")]
struct Cli {
    /// Emit JSON reports instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every randomized choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Radius of the verification windows in the integer coordinates.
    #[arg(long, global = true, allow_negative_numbers = false)]
    degree_bound: Option<i64>,
    /// Override every field in the script: `q` or `fp:<p>`.
    #[arg(long, global = true)]
    field: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Target {
    /// Script file; stdin when absent or `-`.
    file: Option<PathBuf>,
    /// Declared object to use; defaults to the last declaration.
    #[arg(long)]
    name: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Run every declaration and command of a script.
    Run {
        file: Option<PathBuf>,
    },
    /// Graded K0 of an algebra.
    K0(Target),
    /// Compare K0 of the identity component with graded K0.
    Dade(Target),
    /// The Z-graded case of the support theorem.
    Quillen(Target),
    /// K0 of the zero part induced up, against graded K0.
    Theorem1(Target),
    /// The support theorem iterated over the integer coordinates.
    Corollary {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        m: Option<usize>,
    },
    /// Trivial extension of the grading by another group.
    Lemma {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        group: String,
    },
    /// Swan correspondence checks on a module.
    Swan(Target),
    /// Filtration of a module by generator degree.
    Filtration(Target),
    /// T(M) = 0 forces M = 0.
    Nakayama(Target),
}

fn read_source(file: &Option<PathBuf>) -> Result<String, CliError> {
    match file {
        Some(p) if p.as_os_str() != "-" => Ok(std::fs::read_to_string(p)?),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn symbol(s: &str) -> Expr {
    Expr::Symbol(s.to_string(), Pos::default())
}

/// Run one command against a declaration of the script.
fn single(session: &mut Session, head: &str, target: &Target, extra: Vec<Arg>) -> Result<Report, CliError> {
    let script = parse(&read_source(&target.file)?)?;
    session.declare_all(&script)?;
    let name = match &target.name {
        Some(n) => n.clone(),
        None => session
            .last_declared()
            .ok_or_else(|| CliError::Usage("the script declares nothing".into()))?
            .to_string(),
    };
    let mut args = vec![Arg {
        key: None,
        value: symbol(&name),
    }];
    args.extend(extra);
    session.command(&Call {
        head: head.to_string(),
        args,
        pos: Pos::default(),
    })
}

fn execute(cli: &Cli) -> Result<Vec<Report>, (Vec<Report>, CliError)> {
    let field = match &cli.field {
        Some(f) => Some(Field::parse(f).map_err(|e| (vec![], CliError::Usage(e.to_string())))?),
        None => None,
    };
    let mut session = Session::new(Options {
        seed: cli.seed,
        degree_bound: cli.degree_bound,
        field,
    });
    let one = |r: Result<Report, CliError>| r.map(|r| vec![r]).map_err(|e| (vec![], e));
    match &cli.command {
        Command::Run { file } => {
            let source = read_source(file).map_err(|e| (vec![], e))?;
            let script = parse(&source).map_err(|e| (vec![], e))?;
            session.run(&script)
        }
        Command::K0(t) => one(single(&mut session, "k0", t, vec![])),
        Command::Dade(t) => one(single(&mut session, "dade", t, vec![])),
        Command::Quillen(t) => one(single(&mut session, "quillen", t, vec![])),
        Command::Theorem1(t) => one(single(&mut session, "theorem1", t, vec![])),
        Command::Swan(t) => one(single(&mut session, "swan", t, vec![])),
        Command::Filtration(t) => one(single(&mut session, "filtration", t, vec![])),
        Command::Nakayama(t) => one(single(&mut session, "nakayama", t, vec![])),
        Command::Corollary { target, m } => {
            let extra = m
                .map(|m| Arg {
                    key: Some("m".into()),
                    value: Expr::Int(m as i64, Pos::default()),
                })
                .into_iter()
                .collect();
            one(single(&mut session, "corollary", target, extra))
        }
        Command::Lemma { target, group } => {
            let extra = vec![Arg {
                key: None,
                value: symbol(group),
            }];
            one(single(&mut session, "lemma", target, extra))
        }
    }
}

fn emit(cli: &Cli, reports: &[Report]) {
    let text = if cli.json {
        format!("{}\n", render_json(reports))
    } else {
        reports.iter().map(render_text).collect()
    };
    // a closed pipe is not an error worth reporting
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(reports) => {
            emit(&cli, &reports);
            ExitCode::from(exit_code(&reports) as u8)
        }
        Err((reports, e)) => {
            emit(&cli, &reports);
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
