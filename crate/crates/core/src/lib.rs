//! Discussion graphs: annotated graphs, a first-order language interpreted
//! over them, argumentation semantics, and the formulas characterising them.

pub mod argue;
pub mod chargen;
pub mod check;
pub mod fixtures;
pub mod graph;
pub mod ground;
pub mod syntax;
