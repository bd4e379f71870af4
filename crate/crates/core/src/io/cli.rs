use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use super::document::{parse_document, print_document, Document};
use super::model::parse_model;
use super::render::{render_dot, render_tikz};
use crate::error::{Error, Result};
use crate::planar::Equality;
use crate::semantics::Value;
use crate::structure::snake_removal;

#[derive(Parser, Debug)]
#[command(name = "strandcat", version, about = "Check, normalise, evaluate and render string diagrams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compare two diagrams; exits 0 when equal and 1 when not.
    Check {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value_t = CheckMode::Syntactic)]
        mode: CheckMode,
    },
    /// Print the normal form of a diagram as a document.
    Normalize {
        a: PathBuf,
        #[arg(long, value_enum, default_value_t = NormalizeMode::Planar)]
        mode: NormalizeMode,
    },
    /// Evaluate a diagram in a model.
    Eval {
        a: PathBuf,
        #[arg(long)]
        model: PathBuf,
        #[arg(long, value_enum, default_value_t = Semantics::Tensor)]
        semantics: Semantics,
        /// Comma-separated JSON values for function semantics.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        inputs: Vec<String>,
    },
    /// Render a diagram as Graphviz or TikZ source.
    Render {
        a: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
    /// Print the hypergraph predicates of a diagram.
    Props { a: PathBuf },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CheckMode {
    Syntactic,
    Planar,
    Hypergraph,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum NormalizeMode {
    /// Interchanger normal form.
    Planar,
    /// Snake removal followed by the interchanger normal form.
    Snake,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Semantics {
    Tensor,
    Function,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Dot,
    Tikz,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Schema {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn load(path: &Path) -> Result<Document> {
    parse_document(&read(path)?)
}

/// Exit status for an error: 3 for structure the operation does not
/// support, 2 for everything else.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Unsupported(_) | Error::RigMismatch(_) => 3,
        _ => 2,
    }
}

fn run(command: Command) -> Result<(i32, String)> {
    match command {
        Command::Check { a, b, mode } => {
            let (a, b) = (load(&a)?, load(&b)?);
            let equal = match mode {
                CheckMode::Syntactic => a.diagram.equal(&b.diagram, Equality::Syntactic)?,
                CheckMode::Planar => a.diagram.equal(&b.diagram, Equality::Planar)?,
                CheckMode::Hypergraph => a.to_hypergraph()?.is_isomorphic(&b.to_hypergraph()?),
            };
            Ok(if equal { (0, "equal\n".into()) } else { (1, "unequal\n".into()) })
        }
        Command::Normalize { a, mode } => {
            let d = load(&a)?.diagram;
            let d = match mode {
                NormalizeMode::Planar => d.normal_form(),
                NormalizeMode::Snake => snake_removal(&d)?.normal_form(),
            };
            Ok((0, print_document(&d)?))
        }
        Command::Eval {
            a,
            model,
            semantics,
            inputs,
        } => {
            let d = load(&a)?.diagram;
            let model = parse_model(&read(&model)?)?;
            let text = match semantics {
                Semantics::Tensor => model.eval_tensor_text(&d)?,
                Semantics::Function => {
                    let inputs = inputs
                        .iter()
                        .map(|s| {
                            serde_json::from_str::<Value>(s.trim()).map_err(|e| Error::Schema {
                                path: format!("--inputs {s}"),
                                message: e.to_string(),
                            })
                        })
                        .collect::<Result<Vec<_>>>()?;
                    model.eval_function_text(&d, &inputs)?
                }
            };
            Ok((0, text + "\n"))
        }
        Command::Render { a, format } => {
            let d = load(&a)?.diagram;
            Ok((
                0,
                match format {
                    Format::Dot => render_dot(&d),
                    Format::Tikz => render_tikz(&d),
                },
            ))
        }
        Command::Props { a } => {
            let h = load(&a)?.to_hypergraph()?;
            let text = format!(
                "bijective: {}\nmonogamous: {}\nleft-monogamous: {}\ncausal: {}\n",
                h.is_bijective(),
                h.is_monogamous(),
                h.is_left_monogamous(),
                h.is_causal()
            );
            Ok((0, text))
        }
    }
}

/// Runs the command line on `args` (including the program name) and returns
/// the exit code with everything that would be printed.
pub fn run_cli<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => return (e.exit_code(), e.render().to_string()),
    };
    match run(cli.command) {
        Ok(result) => result,
        Err(e) => (exit_code(&e), format!("error: {e}\n")),
    }
}
