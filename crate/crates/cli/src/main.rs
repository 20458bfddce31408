use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use coreseq::engine::{Engine, DEFAULT_MEMO_CAP};
use coreseq::intuitionistic::{countermodel, decide_int};
use coreseq::kernel::{check_derivation, paper_fixtures, Derivation, Mode};
use coreseq::syntax::parse_sequent;

mod atlas;
mod repro;

pub const VERSION: &str = concat!("coreseq ", env!("CARGO_PKG_VERSION"));

const PROVABLE: u8 = 0;
const UNPROVABLE: u8 = 1;
const ERROR: u8 = 2;
const DISAGREEMENT: u8 = 3;

#[derive(Parser)]
#[command(name = "coreseq", version, about = "Decide, check and compare sequents of propositional Core logic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Logic {
    Core,
    Int,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a sequent. Exit 0 provable, 1 unprovable, 2 error.
    Decide {
        sequent: String,
        #[arg(long, default_value = "tennant")]
        mode: Mode,
        #[arg(long, value_enum, default_value = "core")]
        logic: Logic,
        /// Print the result as JSON on stdout.
        #[arg(long)]
        json: bool,
        /// Write the minimal derivation here (Core only, provable only).
        #[arg(long, value_name = "PATH")]
        emit_derivation: Option<PathBuf>,
    },
    /// Check a derivation file. Exit 0 valid, 1 invalid, 2 error.
    Check {
        derivation: PathBuf,
        #[arg(long, default_value = "tennant")]
        mode: Mode,
    },
    /// Re-run every built-in experiment. Exit 3 on an
    /// internal disagreement.
    Repro {
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
    /// Tabulate Core and intuitionistic verdicts over a sequent family.
    Atlas {
        #[arg(long)]
        atoms: usize,
        #[arg(long)]
        weight_cap: usize,
        #[arg(long, default_value = "tennant")]
        mode: Mode,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Write the built-in derivations as JSON files.
    Fixtures {
        #[arg(long, value_name = "DIR", default_value = "fixtures")]
        out: PathBuf,
    },
}

fn memo_cap() -> anyhow::Result<usize> {
    match std::env::var("CORESEQ_MEMO_CAP") {
        Ok(v) => v.trim().parse().with_context(|| format!("CORESEQ_MEMO_CAP={v:?} is not a count")),
        Err(_) => Ok(DEFAULT_MEMO_CAP),
    }
}

pub fn engine(mode: Mode) -> anyhow::Result<Engine> {
    Ok(Engine::with_cap(mode, memo_cap()?))
}

pub fn write_file(path: &Path, text: &str) -> anyhow::Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json values serialize"));
}

fn decide(
    text: &str,
    mode: Mode,
    logic: Logic,
    as_json: bool,
    emit: Option<&Path>,
) -> anyhow::Result<u8> {
    let s = match parse_sequent(text) {
        Ok(s) => s,
        Err(e) => {
            if as_json {
                print_json(&json!({ "status": "error", "error": e.to_string() }));
            }
            eprintln!("error: {e}");
            return Ok(ERROR);
        }
    };
    if logic == Logic::Int {
        let provable = decide_int(&s);
        let model = if provable || s.subformulas().iter().filter(|f| f.is_atom()).count() > 4 {
            None
        } else {
            countermodel(&s, 3)
        };
        if as_json {
            print_json(&json!({
                "version": VERSION,
                "logic": "int",
                "status": if provable { "provable" } else { "unprovable" },
                "countermodel": model,
            }));
        }
        eprintln!("{}: {}", s.print(), if provable { "provable (int)" } else { "unprovable (int)" });
        return Ok(if provable { PROVABLE } else { UNPROVABLE });
    }

    match engine(mode)?.decide(&s) {
        Ok(r) => {
            if let (Some(path), Some(d)) = (emit, r.derivation()) {
                write_file(path, &d.to_json())?;
            }
            if as_json {
                let mut v = r.to_json();
                v["version"] = json!(VERSION);
                print_json(&v);
            }
            match r.derivation() {
                Some(d) => {
                    eprintln!("{}: provable, min height {}", s.print(), d.height());
                    eprint!("{}", d.render());
                    Ok(PROVABLE)
                }
                None => {
                    let st = r.stats();
                    eprintln!(
                        "{}: unprovable ({} distinct goals exhausted, mode {})",
                        s.print(),
                        st.distinct_goals,
                        st.mode.as_str()
                    );
                    Ok(UNPROVABLE)
                }
            }
        }
        Err(e) => {
            if as_json {
                print_json(&e.to_json());
            }
            eprintln!("error: {e}");
            Ok(ERROR)
        }
    }
}

fn check(path: &Path, mode: Mode) -> anyhow::Result<u8> {
    let loaded = fs::read_to_string(path)
        .map_err(anyhow::Error::from)
        .and_then(|text| Ok(Derivation::from_json(&text)?));
    let d = match loaded {
        Ok(d) => d,
        Err(e) => {
            print_json(&json!({ "status": "error", "error": format!("{}: {e}", path.display()) }));
            eprintln!("error: {}: {e}", path.display());
            return Ok(ERROR);
        }
    };
    match check_derivation(&d, mode) {
        Ok(()) => {
            print_json(&json!({
                "status": "valid",
                "conclusion": d.conclusion.print(),
                "height": d.height(),
                "mode": mode,
            }));
            eprintln!("valid: {} (height {})", d.conclusion.print(), d.height());
            Ok(PROVABLE)
        }
        Err(v) => {
            print_json(&json!({
                "status": "invalid",
                "message": v.to_string(),
                "path": v.path,
                "rule": v.violation.rule,
                "clause": v.violation.clause,
                "conclusion": v.conclusion,
                "mode": mode,
            }));
            eprintln!("invalid: {v}");
            Ok(UNPROVABLE)
        }
    }
}

fn fixtures(out: &Path) -> anyhow::Result<u8> {
    for (name, d) in paper_fixtures() {
        let path = out.join(format!("{name}.json"));
        write_file(&path, &(d.to_json() + "\n"))?;
        eprintln!("wrote {}", path.display());
    }
    Ok(PROVABLE)
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Decide {
            sequent,
            mode,
            logic,
            json,
            emit_derivation,
        } => decide(&sequent, mode, logic, json, emit_derivation.as_deref()),
        Command::Check { derivation, mode } => check(&derivation, mode),
        Command::Repro { out } => repro::run(out.as_deref()),
        Command::Atlas {
            atoms,
            weight_cap,
            mode,
            out,
        } => atlas::run(atoms, weight_cap, mode, out.as_deref()),
        Command::Fixtures { out } => fixtures(&out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { ERROR } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(ERROR)
        }
    }
}
