//! Bipartite density matrices built from weighted graphs, and tests that
//! decide whether their partial transpose stays positive.
//!
//! A graph on `d1 * d2` vertices defines the state
//! `rho = (D + beta A) / d_G` with `beta = (1 - alpha) / alpha`.

pub mod criteria;
pub mod family;
pub mod fixtures;
pub mod format;
pub mod graph;
pub mod num;
pub mod report;
pub mod spectral;
pub mod state;

pub use criteria::{Criterion, CriterionVerdict, Outcome, SweepOptions, SweepReport};
pub use family::{FamilyKind, GraphFamily};
pub use format::{parse_graph, to_text, ParseError};
pub use report::AnalysisReport;
pub use graph::{Edge, Graph, GraphError};
pub use spectral::{Spectrum, SymMatrix};
pub use state::{AAlphaState, MomentTerms, StateError, ValidityInterval};
