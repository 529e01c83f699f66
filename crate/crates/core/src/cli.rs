//! The `ha0w` command line.
//!
//! Exit codes: `0` success, `1` a check failed, `2` usage, input or parse
//! error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use crate::abstraction::{bracket, verify_corollary};
use crate::dialectica::{certify_axiom_base, translate};
use crate::grid::Grid;
use crate::kernel::check_script;
use crate::logic::parse_formula_file;
use crate::reduction::{Normalizer, DEFAULT_FUEL};
use crate::suite::run_suite;
use crate::syntax::parse_term_file;

#[derive(Parser, Debug)]
#[command(name = "ha0w", version, about = "Typed combinators, observational equality and a proof checker")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the type of a term file.
    Typecheck { file: PathBuf },
    /// Print the normal form and the number of steps.
    Normalize {
        file: PathBuf,
        /// Print each contraction.
        #[arg(long)]
        trace: bool,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: u64,
    },
    /// Bracket-abstract a declared variable out of a term.
    Abstract { var: String, file: PathBuf },
    /// Check a proof script.
    Check {
        file: PathBuf,
        /// Print every step's conclusion.
        #[arg(long)]
        explain: bool,
    },
    /// Print the Dialectica form of a formula file.
    Dialectica { file: PathBuf },
    /// Check that the universal axioms interpret themselves.
    Certify {
        #[arg(long, default_value_t = Grid::Small)]
        grid: Grid,
    },
    /// Check the reduction behavior of the defined b, q and i.
    VerifyCorollary {
        #[arg(long, default_value_t = Grid::Small)]
        grid: Grid,
    },
    /// Run every check.
    Suite {
        #[arg(long, default_value_t = Grid::Small)]
        grid: Grid,
    },
}

/// Something to report and the exit code that goes with it.
struct Fail(i32, String);

fn input(path: &Path) -> Result<String, Fail> {
    std::fs::read_to_string(path).map_err(|e| Fail(2, format!("{}: {}", path.display(), e)))
}

fn usage(path: &Path, e: impl std::fmt::Display) -> Fail {
    Fail(2, format!("{}: {}", path.display(), e))
}

fn status(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", text);
                    0
                }
                _ => {
                    let _ = write!(err, "{}", text);
                    2
                }
            };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(Fail(code, msg)) => {
            let _ = writeln!(err, "error: {}", msg);
            code
        }
    }
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32, Fail> {
    let io = |e: std::io::Error| Fail(2, e.to_string());
    match cmd {
        Command::Typecheck { file } => {
            let (_, t) = parse_term_file(&input(&file)?).map_err(|e| usage(&file, e))?;
            let ty = t.type_of().map_err(|e| usage(&file, e))?;
            writeln!(out, "{} : {}", t, ty).map_err(io)?;
            Ok(0)
        }
        Command::Normalize { file, trace, fuel } => {
            let (_, t) = parse_term_file(&input(&file)?).map_err(|e| usage(&file, e))?;
            let mut n = Normalizer::with_fuel(fuel);
            if trace {
                n = n.traced();
            }
            match n.run(&t) {
                Ok(r) => {
                    for (i, e) in r.trace.iter().flatten().enumerate() {
                        writeln!(out, "{:>4} {:<5} {}", i + 1, e.rule, e.term).map_err(io)?;
                    }
                    writeln!(out, "{}", r.result).map_err(io)?;
                    writeln!(out, "steps: {}", r.steps).map_err(io)?;
                    Ok(0)
                }
                Err(e) => {
                    writeln!(out, "{}", e.partial).map_err(io)?;
                    Err(Fail(1, e.to_string()))
                }
            }
        }
        Command::Abstract { var, file } => {
            let (ctx, t) = parse_term_file(&input(&file)?).map_err(|e| usage(&file, e))?;
            let x = ctx
                .get(&var)
                .ok_or_else(|| usage(&file, format!("variable `{}` is not declared", var)))?;
            let r = bracket(&x, &t).map_err(|e| usage(&file, e))?;
            let ty = r.term.type_of().map_err(|e| usage(&file, e))?;
            writeln!(out, "{} : {}", r.term, ty).map_err(io)?;
            Ok(0)
        }
        Command::Check { file, explain } => match check_script(&input(&file)?) {
            Ok(report) => {
                if explain {
                    let width = report.steps.len().to_string().len();
                    for s in &report.steps {
                        writeln!(out, "{:>width$}  {:<40}  {}", s.number, s.source, s.conclusion)
                            .map_err(io)?;
                    }
                }
                writeln!(out, "ok: {}", report.conclusion()).map_err(io)?;
                Ok(0)
            }
            Err(e) if e.is_syntax() => Err(usage(&file, e)),
            Err(e) => Err(Fail(1, format!("{}: {}", file.display(), e))),
        },
        Command::Dialectica { file } => {
            let (_, f) = parse_formula_file(&input(&file)?).map_err(|e| usage(&file, e))?;
            writeln!(out, "{}", translate(&f)).map_err(io)?;
            Ok(0)
        }
        Command::Certify { grid } => {
            let report = certify_axiom_base(grid);
            for r in &report.rows {
                let expect = if r.expected { "self-interpreted" } else { "not self-interpreted" };
                let inst = if r.instance.is_empty() {
                    String::new()
                } else {
                    format!(" {}", r.instance)
                };
                writeln!(out, "{:<4} {}{}: {}", status(r.passed()), r.schema, inst, expect).map_err(io)?;
            }
            let bad = report.failures().len();
            writeln!(out, "{} rows, {} failed", report.rows.len(), bad).map_err(io)?;
            Ok(if bad == 0 { 0 } else { 1 })
        }
        Command::VerifyCorollary { grid } => {
            let report = verify_corollary(grid);
            for r in &report.rows {
                let params: Vec<String> = r.params.iter().map(|t| t.to_string()).collect();
                writeln!(out, "{:<4} {} [{}] {} steps", status(r.passed), r.law, params.join(", "), r.steps)
                    .map_err(io)?;
                for e in r.trace.iter().flatten() {
                    writeln!(out, "       {:<5} {}", e.rule, e.term).map_err(io)?;
                }
            }
            let bad = report.rows.iter().filter(|r| !r.passed).count();
            writeln!(out, "{} instances, {} failed", report.rows.len(), bad).map_err(io)?;
            Ok(if bad == 0 { 0 } else { 1 })
        }
        Command::Suite { grid } => {
            let report = run_suite(grid);
            writeln!(out, "{}", report).map_err(io)?;
            Ok(if report.all_passed() { 0 } else { 1 })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let args: Vec<String> = std::iter::once("ha0w").chain(args.iter().copied()).map(String::from).collect();
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let code = run(&args, &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_str(&[]).0, 2);
        assert_eq!(run_str(&["frobnicate"]).0, 2);
        assert_eq!(run_str(&["certify", "--grid", "huge"]).0, 2);
        assert_eq!(run_str(&["typecheck", "/nonexistent/file.term"]).0, 2);
    }

    #[test]
    fn help_exits_0() {
        let (code, out, _) = run_str(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("verify-corollary"));
    }

    #[test]
    fn certify_passes() {
        let (code, out, _) = run_str(&["certify"]);
        assert_eq!(code, 0, "{}", out);
        assert!(out.contains("ok   induction x == x: not self-interpreted"));
    }
}
