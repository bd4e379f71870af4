//! String diagrams for monoidal categories and their many flavours.
//!
//! Diagrams are built as lists of layers ([`planar`]), compared up to
//! interchangers or up to hypergraph isomorphism ([`hypergraph`]), and
//! interpreted by functors into concrete categories ([`semantics`]).

pub mod error;
pub mod free_category;
pub mod gallery;
pub mod hypergraph;
pub mod io;
pub mod planar;
pub mod random;
pub mod semantics;
pub mod structure;
pub mod wiring;

pub use error::{Error, Result};
pub use free_category::{Arrow, Category, Functor, Generator, Morphism, Ob, Path, Sum};
pub use hypergraph::Hypergraph;
pub use planar::{gen, Diagram, DiagramBox, Equality, Layer, Monoidal, Side, Ty};
pub use structure::{Structural, Structure};
