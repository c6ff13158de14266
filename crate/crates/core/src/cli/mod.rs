//! The `moncat` command line.
//!
//! Exit codes: 0 for success, equal or proved; 1 for not equal or not
//! proved; 2 for usage and input errors.

mod repl;

use std::fs;
use std::io::{self, BufRead, IsTerminal, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

pub use repl::{Reply, ReplState, HELP};

use crate::coherence::{monoidal_eq, normal_form, Decision};
use crate::error::{Error, TacticError};
use crate::parse::{parse_expr, parse_rules, parse_signature};
use crate::render::{emit_svg, emit_tikz, layout, RenderConfig};
use crate::semantics::{check_coherence, Backend, MatrixInstance, RelInstance};
use crate::tactics::{assoc_rw, cat_easy, foliate, weak_foliate, EasyOutcome};
use crate::term::{Mor, Signature};

/// Environment variable naming a default render config file.
pub const CONFIG_ENV: &str = "MONCAT_CONFIG";

#[derive(Parser, Debug)]
#[command(name = "moncat", version, about = "Monoidal category terms: coherence, tactics, semantics, diagrams")]
pub struct Cli {
    /// Signature file declaring objects, morphisms and backend data.
    #[arg(long, global = true, value_name = "FILE")]
    pub sig: Option<PathBuf>,
    /// Tolerance for matrix comparisons.
    #[arg(long, global = true, value_name = "X")]
    pub tol: Option<f64>,
    /// Render config file of `key = value` lines.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Monoidal,
    #[value(name = "cat_easy", alias = "cat-easy")]
    CatEasy,
    Matrix,
    Rel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Svg,
    Tikz,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide or test whether two terms are equal.
    Check {
        #[arg(long, value_enum, default_value = "monoidal")]
        method: Method,
        /// File of `lhs == rhs` lines, checked in parallel.
        #[arg(long, value_name = "FILE", conflicts_with_all = ["lhs", "rhs"])]
        batch: Option<PathBuf>,
        #[arg(required_unless_present = "batch")]
        lhs: Option<String>,
        #[arg(required_unless_present = "batch")]
        rhs: Option<String>,
    },
    /// Print the coherence normal form of a term.
    Normalize { expr: String },
    /// Rewrite a term as a composition of stacks.
    Foliate {
        #[arg(long)]
        weak: bool,
        expr: String,
    },
    /// Apply a rule from a rule file, modulo associativity of composition.
    Rewrite {
        #[arg(long, value_name = "FILE")]
        rules: PathBuf,
        /// Rule to apply; defaults to the first rule that matches.
        #[arg(long)]
        rule: Option<String>,
        expr: String,
    },
    /// Draw a term as a string diagram.
    Render {
        #[arg(short, long, value_name = "PATH")]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "svg")]
        format: Format,
        #[arg(long)]
        color: bool,
        expr: String,
    },
    /// Check the coherence laws in the signature's backends.
    Laws {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Interactive tactic session.
    Repl {
        /// Read commands from a file instead of standard input.
        #[arg(long, value_name = "FILE")]
        script: Option<PathBuf>,
        /// Write the session transcript here on quit.
        #[arg(long, value_name = "FILE")]
        transcript: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), Error> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn report(e: &Error, err: &mut dyn Write) {
    let _ = writeln!(err, "error: {e}");
}

struct Ctx {
    sig: Signature,
    tol: Option<f64>,
    render: RenderConfig,
}

impl Ctx {
    fn load(cli: &Cli) -> Result<Ctx, Error> {
        let sig = match &cli.sig {
            Some(p) => parse_signature(&read(p)?)?,
            None => Signature::default(),
        };
        let config_path = cli
            .config
            .clone()
            .or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
        let render = match config_path {
            Some(p) => read(&p)?
                .parse()
                .map_err(|e| Error::Usage(format!("{}: {e}", p.display())))?,
            None => RenderConfig::default(),
        };
        if let Some(t) = cli.tol {
            if t.is_nan() || t < 0.0 {
                return Err(Error::Usage(format!("tolerance must be nonnegative, got {t}")));
            }
        }
        Ok(Ctx {
            sig,
            tol: cli.tol,
            render,
        })
    }

    fn matrix(&self) -> Result<MatrixInstance, Error> {
        let mut inst = MatrixInstance::from_signature(&self.sig)?;
        if let Some(t) = self.tol {
            inst.tolerance = t;
        }
        Ok(inst)
    }
}

/// Outcome of one `check` goal: printed text and whether it held.
fn check_goal(ctx: &Ctx, method: Method, lhs: &str, rhs: &str) -> Result<(String, bool), Error> {
    let l = parse_expr(lhs, &ctx.sig)?;
    let r = parse_expr(rhs, &ctx.sig)?;
    let mismatch = |e: &TacticError| matches!(e, TacticError::TypeMismatch { .. });
    match method {
        Method::Monoidal => match monoidal_eq(&l, &r, &ctx.sig) {
            Ok(Decision::Equal(nf)) => Ok((format!("equal\n{}", nf.dump()), true)),
            Ok(Decision::NotDecided(a, b)) => Ok((
                format!("not equal (normal forms differ)\n  lhs: {}\n  rhs: {}", a.dump(), b.dump()),
                false,
            )),
            Err(e) if mismatch(&e) => Ok((format!("not equal: {e}"), false)),
            Err(e) => Err(e.into()),
        },
        Method::CatEasy => match cat_easy(&l, &r, &ctx.sig) {
            Ok(outcome) => {
                let mut text: Vec<String> = outcome.trace().iter().map(|s| s.to_string()).collect();
                let proved = matches!(outcome, EasyOutcome::Proved(_));
                text.push(if proved { "proved".into() } else { "not proved".into() });
                Ok((text.join("\n"), proved))
            }
            Err(e) if mismatch(&e) => Ok((format!("not proved: {e}"), false)),
            Err(e) => Err(e.into()),
        },
        Method::Matrix | Method::Rel => {
            let (lt, rt) = (crate::typecheck(&l, &ctx.sig)?, crate::typecheck(&r, &ctx.sig)?);
            if lt != rt {
                return Ok((format!("not equal: boundary types differ: {lt} vs {rt}"), false));
            }
            let (dev, tol) = if method == Method::Matrix {
                let inst = ctx.matrix()?;
                (inst.compare(&l, &r)?, inst.tolerance())
            } else {
                let inst = RelInstance::from_signature(&ctx.sig)?;
                (inst.compare(&l, &r)?, inst.tolerance())
            };
            let equal = dev <= tol;
            let verdict = if equal { "equal" } else { "not equal" };
            Ok((format!("{verdict} (max deviation {dev:.3e}, tolerance {tol:.1e})"), equal))
        }
    }
}

fn batch(ctx: &Ctx, method: Method, path: &Path, out: &mut dyn Write) -> Result<i32, Error> {
    let text = read(path)?;
    let goals: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let results: Vec<Result<(String, bool), Error>> = goals
        .par_iter()
        .map(|(_, line)| {
            let (lhs, rhs) = line
                .split_once("==")
                .ok_or_else(|| Error::Usage("expected `lhs == rhs`".into()))?;
            check_goal(ctx, method, lhs.trim(), rhs.trim())
        })
        .collect();
    let mut code = 0;
    for ((no, line), res) in goals.iter().zip(results) {
        let status = match res {
            Ok((_, true)) => "equal".to_string(),
            Ok((text, false)) => {
                code = code.max(1);
                text.lines().next().unwrap_or("not equal").to_string()
            }
            Err(e) => {
                code = 2;
                format!("error: {e}")
            }
        };
        let _ = writeln!(out, "{}:{no}: {status}    {line}", path.display());
    }
    Ok(code)
}

fn repl(
    ctx: Ctx,
    script: Option<&Path>,
    transcript: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, Error> {
    let mut state = ReplState::new(ctx.sig);
    state.render = ctx.render;
    let input: Box<dyn BufRead> = match script {
        Some(p) => Box::new(io::Cursor::new(read(p)?)),
        None => Box::new(io::BufReader::new(io::stdin())),
    };
    let interactive = script.is_none() && io::stdin().is_terminal();
    let mut code = 0;
    let mut lines = input.lines();
    loop {
        if interactive {
            let _ = write!(out, "moncat> ");
            let _ = out.flush();
        }
        let Some(line) = lines.next() else { break };
        let line = line.map_err(|source| Error::Io {
            path: "<input>".into(),
            source,
        })?;
        let reply = state.step(&line);
        if !reply.text.is_empty() {
            let _ = writeln!(out, "{}", reply.text);
        }
        if reply.is_error && !interactive {
            code = 2;
        }
        if reply.quit {
            break;
        }
    }
    if let Some(p) = transcript {
        write_file(p, &(state.transcript.join("\n") + "\n"))?;
    }
    Ok(code)
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32, Error> {
    let ctx = Ctx::load(&cli)?;
    let sig = &ctx.sig;
    let say = |out: &mut dyn Write, text: &str| {
        let _ = writeln!(out, "{text}");
    };
    match cli.command {
        Command::Check {
            method,
            batch: Some(path),
            ..
        } => batch(&ctx, method, &path, out),
        Command::Check { method, lhs, rhs, .. } => {
            let (lhs, rhs) = (lhs.unwrap_or_default(), rhs.unwrap_or_default());
            let (text, equal) = check_goal(&ctx, method, &lhs, &rhs)?;
            say(out, &text);
            Ok(if equal { 0 } else { 1 })
        }
        Command::Normalize { expr } => {
            let t = parse_expr(&expr, sig)?;
            say(out, &normal_form(&t, sig)?.dump());
            Ok(0)
        }
        Command::Foliate { weak, expr } => {
            let t = parse_expr(&expr, sig)?;
            let f = if weak { weak_foliate(&t, sig)? } else { foliate(&t, sig)? };
            say(out, &f.to_string());
            Ok(0)
        }
        Command::Rewrite { rules, rule, expr } => {
            let t = parse_expr(&expr, sig)?;
            let file = parse_rules(&read(&rules)?, sig)?;
            let result: Mor = match rule {
                Some(name) => {
                    let r = file
                        .get(&name)
                        .ok_or_else(|| Error::Usage(format!("no rule `{name}` in {}", rules.display())))?;
                    assoc_rw(&t, r, sig)?
                }
                None => {
                    let mut last = Err(Error::Usage(format!("{} has no rules", rules.display())));
                    for r in &file.rules {
                        last = assoc_rw(&t, r, sig).map_err(Error::from);
                        if last.is_ok() {
                            break;
                        }
                    }
                    last?
                }
            };
            say(out, &result.to_string());
            Ok(0)
        }
        Command::Render {
            out: path,
            format,
            color,
            expr,
        } => {
            let t = parse_expr(&expr, sig)?;
            let mut cfg = ctx.render.clone();
            cfg.color |= color;
            let node = layout(&t, sig, &cfg)?;
            let text = match format {
                Format::Svg => emit_svg(&node, &cfg),
                Format::Tikz => emit_tikz(&node, &cfg),
            };
            write_file(&path, &text)?;
            say(out, &format!("wrote {}", path.display()));
            Ok(0)
        }
        Command::Laws { seed, samples } => {
            let mut all = true;
            let mut any = false;
            if sig.backend("matrix").is_some() {
                let report = check_coherence(&ctx.matrix()?, sig, seed, samples);
                say(out, &format!("matrix backend\n{report}"));
                all &= report.all_passed();
                any = true;
            }
            if sig.backend("rel").is_some() {
                let report = check_coherence(&RelInstance::from_signature(sig)?, sig, seed, samples);
                say(out, &format!("relation backend\n{report}"));
                all &= report.all_passed();
                any = true;
            }
            if !any {
                return Err(Error::Usage("the signature has no backend blocks".into()));
            }
            Ok(if all { 0 } else { 1 })
        }
        Command::Repl { script, transcript } => repl(ctx, script.as_deref(), transcript.as_deref(), out),
    }
}

/// Runs the command line with explicit output streams and returns the
/// exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            report(&e, err);
            2
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(argv, &mut io::stdout().lock(), &mut io::stderr().lock())
}
