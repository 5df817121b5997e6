//! Command-line front end. [`run_cli`] is the whole program minus process
//! exit, so it can be driven from tests.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::code::{parse_gauss_code, serialize};
use crate::diagram::{canonical_form, diagrams_equal, GaussDiagram};
use crate::error::Error;
use crate::invariants::InvariantValue;
use crate::moves::{Engine, MoveInstance, MoveKind};
use crate::render::{render_ascii, render_dot};
use crate::trace::TraceFile;
use crate::variants::VariantTable;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "gaussdiag", version, about = "Rewrite Gauss diagrams with Reidemeister and forbidden moves")]
pub struct Cli {
    /// Variant table for moves II and III (JSON); defaults to the built-in table.
    #[arg(long, global = true, value_name = "PATH")]
    table: Option<PathBuf>,
    /// Print diagrams as read from the basepoint instead of in canonical form.
    #[arg(long, global = true)]
    raw: bool,
    /// Seed for random generation.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct DiagramArg {
    /// Signed Gauss code, e.g. "O1+U2+O3+U1+O2+U3+".
    #[arg(value_name = "CODE", allow_hyphen_values = true)]
    code: Option<String>,
    /// Read the code from a file instead.
    #[arg(long = "in", value_name = "FILE", conflicts_with = "code")]
    input: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RenderFormat {
    Ascii,
    Dot,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a code and print it.
    Parse(DiagramArg),
    /// Check a code and report chord count and invariants.
    Validate(DiagramArg),
    /// Print the canonical (rotation-minimal) code.
    Canon(DiagramArg),
    /// Whether two codes are equal up to basepoint rotation.
    Equal {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Generate random diagrams.
    Random {
        #[arg(long)]
        chords: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// List every legal move of one kind.
    Moves {
        #[arg(long)]
        kind: String,
        #[command(flatten)]
        diagram: DiagramArg,
    },
    /// Apply one move, written as a trace line (e.g. "FH 2").
    Apply {
        #[arg(allow_hyphen_values = true)]
        code: String,
        step: String,
    },
    /// Emit a trace taking the diagram to the empty diagram.
    Unknot {
        #[command(flatten)]
        diagram: DiagramArg,
        /// Write the trace here and print only the final diagram.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Emit a trace taking SRC to DST.
    Transform {
        #[arg(allow_hyphen_values = true)]
        src: String,
        #[arg(allow_hyphen_values = true)]
        dst: String,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Replay a trace file and print the resulting diagram.
    Replay {
        #[arg(allow_hyphen_values = true)]
        code: String,
        trace: PathBuf,
        /// Also require the file's start/final annotations to match.
        #[arg(long)]
        strict: bool,
    },
    /// Per-kind counts of a trace file replayed from a diagram.
    Stats {
        #[arg(allow_hyphen_values = true)]
        code: String,
        trace: PathBuf,
    },
    /// Draw a diagram.
    Render {
        #[command(flatten)]
        diagram: DiagramArg,
        #[arg(long, value_enum, default_value = "ascii")]
        format: RenderFormat,
    },
}

/// Captured result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CliOutput {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Ctx {
    engine: Engine,
    raw: bool,
    seed: u64,
}

impl Ctx {
    fn show(&self, d: &GaussDiagram) -> String {
        if self.raw {
            serialize(d)
        } else {
            canonical_form(d)
        }
    }
}

fn parse_code(text: &str) -> Result<GaussDiagram, Error> {
    parse_gauss_code(text.trim())
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_diagram(arg: &DiagramArg) -> Result<GaussDiagram, String> {
    let text = match (&arg.code, &arg.input) {
        (_, Some(path)) => read(path)?,
        (Some(code), None) => code.clone(),
        (None, None) => String::new(),
    };
    parse_code(&text).map_err(|e| e.to_string())
}

fn write_out(path: &Path, text: &str) -> Result<(), String> {
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

/// Runs one invocation. `argv[0]` is the program name.
pub fn run_cli<I, S>(argv: I) -> CliOutput
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CliOutput { status: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                CliOutput { status: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    let table = match &cli.table {
        Some(path) => match VariantTable::load(path) {
            Ok(t) => t,
            Err(e) => return domain_error(e.to_string()),
        },
        None => VariantTable::default(),
    };
    let ctx = Ctx { engine: Engine::new(table), raw: cli.raw, seed: cli.seed };
    match run(&ctx, cli.command) {
        Ok(stdout) => CliOutput { status: EXIT_OK, stdout, stderr: String::new() },
        Err(message) => domain_error(message),
    }
}

fn domain_error(message: String) -> CliOutput {
    CliOutput { status: EXIT_DOMAIN, stdout: String::new(), stderr: format!("error: {message}\n") }
}

fn run(ctx: &Ctx, command: Command) -> Result<String, String> {
    let e = &ctx.engine;
    let err = |x: Error| x.to_string();
    Ok(match command {
        Command::Parse(arg) => {
            let d = load_diagram(&arg)?;
            format!("{}\n", ctx.show(&d))
        }
        Command::Validate(arg) => {
            let d = load_diagram(&arg)?;
            let inv = InvariantValue::of(&d);
            format!(
                "valid chords={} writhe={} odd_writhe={}\n",
                d.chord_count(),
                inv.writhe,
                inv.odd_writhe
            )
        }
        Command::Canon(arg) => format!("{}\n", canonical_form(&load_diagram(&arg)?)),
        Command::Equal { a, b } => {
            let (a, b) = (parse_code(&a).map_err(err)?, parse_code(&b).map_err(err)?);
            format!("{}\n", diagrams_equal(&a, &b))
        }
        Command::Random { chords, count } => {
            let mut out = String::new();
            for k in 0..count as u64 {
                let d = GaussDiagram::random(chords, ctx.seed.wrapping_add(k));
                out.push_str(&ctx.show(&d));
                out.push('\n');
            }
            out
        }
        Command::Moves { kind, diagram } => {
            let d = load_diagram(&diagram)?;
            let kind: MoveKind = kind.parse().map_err(|_| format!("unknown move kind {kind:?}"))?;
            e.enumerate_moves(&d, kind).iter().map(|m| format!("{m}\n")).collect()
        }
        Command::Apply { code, step } => {
            let d = parse_code(&code).map_err(err)?;
            let m: MoveInstance = step.parse().map_err(err)?;
            let out = e.apply_move(&d, &m).map_err(err)?;
            format!("{}\n", ctx.show(&out))
        }
        Command::Unknot { diagram, out } => {
            let d = load_diagram(&diagram)?;
            let t = e.unknot(&d);
            let fin = e.replay(&d, &t).map_err(err)?;
            emit_trace(ctx, &t.to_annotated(&d, &ctx.show(&fin)), &fin, out.as_deref())?
        }
        Command::Transform { src, dst, out } => {
            let (src, dst) = (parse_code(&src).map_err(err)?, parse_code(&dst).map_err(err)?);
            let t = e.transform(&src, &dst).map_err(err)?;
            let fin = e.replay(&src, &t).map_err(err)?;
            emit_trace(ctx, &t.to_annotated(&src, &ctx.show(&fin)), &fin, out.as_deref())?
        }
        Command::Replay { code, trace, strict } => {
            let d = parse_code(&code).map_err(err)?;
            let file = TraceFile::parse(&read(&trace)?).map_err(err)?;
            if strict {
                if let Some(start) = &file.start {
                    let annotated = parse_code(start).map_err(err)?;
                    if annotated != d {
                        return Err(format!("trace starts from {start:?}, not from the given diagram"));
                    }
                }
            }
            let fin = e.replay(&d, &file.trace).map_err(err)?;
            if strict {
                if let Some(code) = &file.final_code {
                    let annotated = parse_code(code).map_err(err)?;
                    if !diagrams_equal(&annotated, &fin) {
                        return Err(format!(
                            "replay ends at {:?}, trace file claims {code:?}",
                            canonical_form(&fin)
                        ));
                    }
                }
            }
            format!("{}\n", ctx.show(&fin))
        }
        Command::Stats { code, trace } => {
            let d = parse_code(&code).map_err(err)?;
            let file = TraceFile::parse(&read(&trace)?).map_err(err)?;
            e.trace_stats(&file.trace, Some(&d)).map_err(err)?.to_string()
        }
        Command::Render { diagram, format } => {
            let d = load_diagram(&diagram)?;
            match format {
                RenderFormat::Ascii => render_ascii(&d),
                RenderFormat::Dot => render_dot(&d),
            }
        }
    })
}

fn emit_trace(ctx: &Ctx, text: &str, fin: &GaussDiagram, out: Option<&Path>) -> Result<String, String> {
    match out {
        Some(path) => {
            write_out(path, text)?;
            Ok(format!("{}\n", ctx.show(fin)))
        }
        None => Ok(text.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> CliOutput {
        run_cli(std::iter::once("gaussdiag").chain(args.iter().copied()))
    }

    #[test]
    fn unknot_kink() {
        let out = run(&["unknot", "O1+U1+"]);
        assert_eq!(out.status, EXIT_OK);
        assert_eq!(out.stdout, "# start: O1+U1+\nR1R 1\n# final: \n");
    }

    #[test]
    fn usage_and_domain_errors() {
        assert_eq!(run(&["frobnicate"]).status, EXIT_USAGE);
        assert_eq!(run(&["random"]).status, EXIT_USAGE);
        let out = run(&["parse", "O1+U2+"]);
        assert_eq!(out.status, EXIT_DOMAIN);
        assert!(out.stderr.contains("label 1"), "{}", out.stderr);
        assert_eq!(run(&["moves", "--kind", "XX", "O1+U1+"]).status, EXIT_DOMAIN);
        assert_eq!(run(&["--help"]).status, EXIT_OK);
    }

    #[test]
    fn small_commands() {
        assert_eq!(run(&["canon", "U1+O1+"]).stdout, "O1+U1+\n");
        assert_eq!(run(&["--raw", "parse", "U1+O1+"]).stdout, "U1+O1+\n");
        assert_eq!(run(&["equal", "O1+U1+", "U1+O1+"]).stdout, "true\n");
        assert_eq!(run(&["equal", "O1+U1+", "O1-U1-"]).stdout, "false\n");
        assert_eq!(run(&["--raw", "apply", "O1+O2-U1+U2-", "FH 2"]).stdout, "O1+O2-U2-U1+\n");
        assert_eq!(run(&["moves", "--kind", "FT", "O1+O2-U1+U2-"]).stdout, "FT 0\n");
        assert_eq!(
            run(&["validate", "O1+O2+U1+U2+"]).stdout,
            "valid chords=2 writhe=2 odd_writhe=2\n"
        );
        let a = run(&["random", "--chords", "4", "--seed", "9", "--count", "3"]);
        assert_eq!(a.stdout.lines().count(), 3);
        assert_eq!(a, run(&["--seed", "9", "random", "--chords", "4", "--count", "3"]));
        assert!(run(&["render", "--format", "dot", "O1+O2+U1+U2+"]).stdout.contains("c1 -- c2;"));
        assert_eq!(run(&["parse", ""]).stdout, "\n");
    }
}
