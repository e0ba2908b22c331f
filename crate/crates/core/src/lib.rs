//! Power graphs, directed power graphs and enhanced power graphs of finite
//! groups.
//!
//! The crate builds these graphs from groups, finds the generators of the
//! maximal cyclic subgroups from the undirected graphs alone, reconstructs
//! the directed power graph up to isomorphism, and decides isomorphism for
//! graphs of nilpotent groups.

pub mod ccg;
pub mod cli;
pub mod graph;
pub mod group;
pub mod nilpotent;
pub mod numtheory;
pub mod powergraph;
pub mod reconstruction;
pub mod reductions;

pub use ccg::{mark_ccg_enhanced, mark_ccg_power, CcgMarking, DetectionError, Label};
pub use graph::{
    brute_force_color_iso, parse_graph, strong_product, write_graph, AnyGraph, ColoredDiGraph, ColoredGraph,
    GraphError,
};
pub use group::{parse_group_spec, FiniteGroup, GroupError};
pub use nilpotent::{dpow_iso_nilpotent, graph_iso_nilpotent, GraphKind, NilpotentError};
pub use powergraph::{directed_power_graph, enhanced_power_graph, power_graph};
pub use reconstruction::{dpow_from_enhanced_graph, dpow_from_power_graph, ReconstructionError, SourceKind};
