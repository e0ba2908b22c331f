//! The `pgk` command line.
//!
//! Exit codes: 0 success, 1 negative answer or failed check, 2 unparsable
//! input, 3 I/O failure, 4 pipeline diagnostic, 5 oracle cap exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::ccg::{mark_ccg_enhanced, mark_ccg_power};
use crate::graph::{brute_force_color_iso, parse_graph, AnyGraph, ColoredGraph, GraphError, DEFAULT_ISO_CAP};
use crate::group::{parse_group_spec, GroupError};
use crate::nilpotent::{graph_iso_nilpotent, GraphKind, NilpotentError};
use crate::powergraph::{directed_power_graph, enhanced_power_graph, power_graph};
use crate::reconstruction::{epow_from_dpow, pow_from_dpow, reconstruct, SourceKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_PIPELINE: i32 = 4;
pub const EXIT_CAP: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "pgk", version, about = "Power graphs of finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a graph of a group given by a spec such as Z6, Z4xZ3, Q8, D4,
    /// ElemAb(3,3), Heis3 or file:PATH (Cayley table).
    Generate {
        spec: String,
        #[arg(long, value_enum)]
        kind: GenerateKind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the detected CC vertices with their degree plus one.
    Detect {
        input: PathBuf,
        #[arg(long, value_enum)]
        kind: SourceArg,
    },
    /// Rebuild the directed power graph, or an intermediate stage.
    Reconstruct {
        input: PathBuf,
        #[arg(long, value_enum)]
        kind: SourceArg,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "dpow")]
        emit_stage: Stage,
    },
    /// Decide isomorphism for graphs of nilpotent groups.
    Iso {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, value_enum)]
        kind: IsoKind,
    },
    /// Reconstruct, convert back and compare with the input.
    Verify {
        input: PathBuf,
        #[arg(long, value_enum)]
        kind: SourceArg,
        #[arg(long, default_value_t = DEFAULT_ISO_CAP)]
        cap: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GenerateKind {
    Pow,
    Epow,
    Dpow,
    Cdpow,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SourceArg {
    Pow,
    Epow,
}

impl From<SourceArg> for SourceKind {
    fn from(k: SourceArg) -> Self {
        match k {
            SourceArg::Pow => SourceKind::Power,
            SourceArg::Epow => SourceKind::Enhanced,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum IsoKind {
    Pow,
    Epow,
    Dpow,
}

impl From<IsoKind> for GraphKind {
    fn from(k: IsoKind) -> Self {
        match k {
            IsoKind::Pow => GraphKind::Pow,
            IsoKind::Epow => GraphKind::Epow,
            IsoKind::Dpow => GraphKind::Dpow,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Stage {
    R4,
    R3,
    R2,
    R1,
    Cdpow,
    Dpow,
}

/// A failed command: exit code plus message for standard error.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl ToString) -> Self {
        Failure {
            code,
            message: message.to_string(),
        }
    }
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        let code = match e {
            GroupError::Io { .. } => EXIT_IO,
            _ => EXIT_PARSE,
        };
        Failure::new(code, e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::new(EXIT_IO, e)
    }
}

fn read_graph(path: &Path) -> Result<AnyGraph, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_IO, format!("cannot read {}: {e}", path.display())))?;
    parse_graph(&text).map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn read_undirected(path: &Path) -> Result<ColoredGraph, Failure> {
    match read_graph(path)? {
        AnyGraph::Undirected(g) => Ok(g),
        AnyGraph::Directed(_) => Err(Failure::new(
            EXIT_PARSE,
            format!("{}: expected an undirected graph", path.display()),
        )),
    }
}

fn emit(text: &str, out: Option<&Path>, stdout: &mut dyn Write) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::new(EXIT_IO, format!("cannot write {}: {e}", path.display()))),
        None => Ok(stdout.write_all(text.as_bytes())?),
    }
}

fn generate(spec: &str, kind: GenerateKind, out: Option<&Path>, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let g = parse_group_spec(spec)?;
    let graph: AnyGraph = match kind {
        GenerateKind::Pow => power_graph(&g).into(),
        GenerateKind::Epow => enhanced_power_graph(&g).into(),
        GenerateKind::Dpow => directed_power_graph(&g).without_colors().into(),
        GenerateKind::Cdpow => directed_power_graph(&g).into(),
    };
    emit(&graph.to_text(), out, stdout)?;
    Ok(EXIT_OK)
}

fn detect(input: &Path, kind: SourceArg, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let g = read_undirected(input)?;
    let marking = match kind {
        SourceArg::Pow => mark_ccg_power(&g),
        SourceArg::Epow => mark_ccg_enhanced(&g),
    }
    .map_err(|e| Failure::new(EXIT_PIPELINE, e))?;
    for v in marking.cc_vertices() {
        writeln!(stdout, "{v} {}", g.degree(v) + 1)?;
    }
    Ok(EXIT_OK)
}

fn reconstruct_cmd(
    input: &Path,
    kind: SourceArg,
    out: Option<&Path>,
    stage: Stage,
    stdout: &mut dyn Write,
) -> Result<i32, Failure> {
    let g = read_undirected(input)?;
    let r = reconstruct(&g, kind.into()).map_err(|e| Failure::new(EXIT_PIPELINE, e))?;
    let graph: AnyGraph = match stage {
        Stage::R4 => r.r4.graph().clone().into(),
        Stage::R3 => r.r3.into_graph().into(),
        Stage::R2 => r.r2.into_graph().into(),
        Stage::R1 => r.r1.into_graph().into(),
        Stage::Cdpow => r.cdpow.into(),
        Stage::Dpow => r.cdpow.without_colors().into(),
    };
    emit(&graph.to_text(), out, stdout)?;
    Ok(EXIT_OK)
}

fn iso(first: &Path, second: &Path, kind: IsoKind, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let a = read_graph(first)?;
    let b = read_graph(second)?;
    let same = graph_iso_nilpotent(&a, &b, kind.into()).map_err(|e| match e {
        NilpotentError::Graph(GraphError::Parse { .. }) => Failure::new(EXIT_PARSE, e),
        e => Failure::new(EXIT_PIPELINE, e),
    })?;
    if same {
        writeln!(stdout, "isomorphic")?;
        Ok(EXIT_OK)
    } else {
        writeln!(stdout, "non-isomorphic")?;
        Ok(EXIT_NEGATIVE)
    }
}

fn verify(input: &Path, kind: SourceArg, cap: usize, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let g = read_undirected(input)?.without_colors();
    let n = g.vertex_count();
    if n > cap {
        return Err(Failure::new(
            EXIT_CAP,
            format!("{n} vertices exceed the oracle cap of {cap}"),
        ));
    }
    let r = reconstruct(&g, kind.into()).map_err(|e| Failure::new(EXIT_PIPELINE, e))?;
    let back = match kind {
        SourceArg::Pow => pow_from_dpow(&r.cdpow),
        SourceArg::Epow => epow_from_dpow(&r.cdpow),
    };
    writeln!(stdout, "input vertices {n}")?;
    writeln!(stdout, "reconstructed vertices {}", r.cdpow.vertex_count())?;
    writeln!(stdout, "cc vertices {}", r.marking.cc_vertices().len())?;
    let found = brute_force_color_iso(&g, &back, cap).map_err(|e| Failure::new(EXIT_CAP, e))?;
    if found.is_some() {
        writeln!(stdout, "consistent")?;
        Ok(EXIT_OK)
    } else {
        writeln!(stdout, "inconsistent")?;
        Ok(EXIT_NEGATIVE)
    }
}

/// Runs the command line on `args` (program name first) and returns the
/// exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                EXIT_PARSE
            } else {
                let _ = stdout.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    let result = match cli.command {
        Command::Generate { spec, kind, out } => generate(&spec, kind, out.as_deref(), stdout),
        Command::Detect { input, kind } => detect(&input, kind, stdout),
        Command::Reconstruct {
            input,
            kind,
            out,
            emit_stage,
        } => reconstruct_cmd(&input, kind, out.as_deref(), emit_stage, stdout),
        Command::Iso { first, second, kind } => iso(&first, &second, kind, stdout),
        Command::Verify { input, kind, cap } => verify(&input, kind, cap, stdout),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "pgk: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("pgk").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn generate_to_stdout() {
        let (code, out, _) = call(&["generate", "Z1", "--kind", "dpow"]);
        assert_eq!(code, 0);
        assert_eq!(out, "digraph 1\nnocolors\n0 0\n");
        let (code, out, _) = call(&["generate", "Q8", "--kind", "cdpow"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("digraph 8\ncolors 1 2 4 4 4 4 4 4\n"));
        let (_, out, _) = call(&["generate", "Z6", "--kind", "pow"]);
        assert!(out.starts_with("graph 6\nnocolors\n"));
        assert_eq!(out.lines().count(), 2 + 13);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["generate", "Z6y", "--kind", "pow"]).0, EXIT_PARSE);
        assert_eq!(call(&["generate", "Z6", "--kind", "tree"]).0, EXIT_PARSE);
        assert_eq!(call(&["frobnicate"]).0, EXIT_PARSE);
        assert_eq!(call(&["detect", "/nonexistent/graph.txt", "--kind", "pow"]).0, EXIT_IO);
        assert_eq!(call(&["generate", "file:/nonexistent/table", "--kind", "pow"]).0, EXIT_IO);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }
}
