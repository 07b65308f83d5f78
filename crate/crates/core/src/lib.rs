//! Combinatorics of log degenerations: decorated dual graphs, the lattice
//! maps attached to them, tropical feasibility, multiplicities of main
//! graphs and the binomial equations of their gluing spaces.
//!
//! All arithmetic is exact.

pub mod degeneration;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod gluing;
pub mod graph;
pub mod linalg;
pub mod maps;
pub mod oracle;
pub mod tropical;

pub use degeneration::{
    enumerate_main_graphs, formula_terms, is_main, multiplicity_report, EnumerationBounds, FormulaTerm,
    MultiplicityReport,
};
pub use error::{Error, Result};
pub use graph::{validate, CanonicalForm, ContactVector, DecoratedGraph, Edge, GraphBuilder, LabelSet, Leg, Mode, Vertex};
pub use linalg::{Index, IntegerMatrix};
pub use maps::{build_maps, compute_invariants, LatticeMapBundle, ModuleInvariants};
pub use tropical::{tropical_feasible, TropicalOutcome};
