//! JSON documents for diagrams and models, text renderers and the command
//! line.

mod cli;
mod document;
mod model;
mod render;

pub use cli::{exit_code, run_cli};
pub use document::{parse_diagram, parse_document, print_document, print_hypergraph, BoxDecl, Document, VERSION};
pub use model::{generators, parse_model, Dims, ModelDocument};
pub use render::{render_dot, render_tikz};
