//! Exact reflection representations of 2-spherical Coxeter systems.
//!
//! Graphs are parsed into [`graph::DecoratedGraph`], turned into a Cartan
//! matrix over a number field, and analysed: discriminant, fixed space,
//! adapted basis, translation subgroup and invariant symmetric forms.

pub mod cartan;
pub mod catalog;
pub mod families;
pub mod field;
pub mod forms;
pub mod graph;
pub mod matrix;
pub mod reflection;
pub mod report;
pub mod sweep;
pub mod translations;

pub use field::{Field, FieldElement, FieldError, MinimalPolynomial};
pub use cartan::{CartanError, CartanMatrix, SubsystemSplit};
pub use graph::{parse_graph, DecoratedGraph, Family, GraphError};
pub use matrix::Matrix;
pub use reflection::{AdaptedBasis, BlockForm, GroupElement, Representation};
pub use report::{analyze, AnalysisConfig, AnalysisReport};
