//! Isomorphism of directed power graphs of nilpotent groups.
//!
//! A nilpotent group is the direct product of its Sylow subgroups, so two
//! such graphs are isomorphic exactly when their per-prime components are.
//! Each component reduces to a colored tree (its R3), and trees are compared
//! through canonical codes.

use std::fmt;

use thiserror::Error;

use crate::graph::{AnyGraph, ColoredDiGraph, GraphError};
use crate::numtheory::{factorize, is_power_of, is_prime};
use crate::reconstruction::{dpow_from_enhanced_graph, dpow_from_power_graph, ReconstructionError};
use crate::reductions::{reduce_r1, reduce_r2, reduce_r3, R3Graph, ReductionError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NilpotentError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("graph is not a tree")]
    NotATree,
    #[error("tree must have exactly one vertex of color 1, found {0}")]
    RootCount(usize),
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("input not recognized as the directed power graph of a nilpotent group: prime components cover {covered} of {vertices} vertices")]
    NotNilpotent { covered: u64, vertices: usize },
    #[error("expected a {expected} graph")]
    WrongGraphType { expected: &'static str },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    Reconstruction(#[from] ReconstructionError),
}

/// The kind of graph handed to [`graph_iso_nilpotent`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphKind {
    Pow,
    Epow,
    Dpow,
}

/// Canonical code of a colored tree rooted at its color-1 vertex. Two trees
/// get equal codes exactly when a color-preserving isomorphism exists.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreeCode(String);

impl TreeCode {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for TreeCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Induced subgraph on the vertices whose color is a power of `p`, the
/// identity included. Uncolored inputs are colored by out-degree first.
pub fn p_component(d: &ColoredDiGraph, p: u64) -> Result<ColoredDiGraph, NilpotentError> {
    if !is_prime(p) {
        return Err(NilpotentError::NotPrime(p));
    }
    let owned;
    let d = if d.is_colored() {
        d
    } else {
        owned = d.colored_by_out_degree()?;
        &owned
    };
    let keep: Vec<usize> = (0..d.vertex_count())
        .filter(|&v| is_power_of(d.color(v), p))
        .collect();
    Ok(d.induced_subgraph(&keep)?.0)
}

/// Code `(color,[child codes in sorted order])`, rooted at the color-1
/// vertex.
pub fn canonical_tree_code(t: &R3Graph) -> Result<TreeCode, NilpotentError> {
    let g = t.graph();
    if !g.is_tree() {
        return Err(NilpotentError::NotATree);
    }
    let roots: Vec<usize> = (0..g.vertex_count()).filter(|&v| g.color(v) == 1).collect();
    let &[root] = roots.as_slice() else {
        return Err(NilpotentError::RootCount(roots.len()));
    };
    let n = g.vertex_count();
    let mut parent = vec![usize::MAX; n];
    let mut order = vec![root];
    parent[root] = root;
    let mut i = 0;
    while i < order.len() {
        let u = order[i];
        for &w in g.neighbors(u) {
            if parent[w] == usize::MAX {
                parent[w] = u;
                order.push(w);
            }
        }
        i += 1;
    }
    let mut children: Vec<Vec<String>> = vec![Vec::new(); n];
    let mut code = String::new();
    for &u in order.iter().rev() {
        let mut kids = std::mem::take(&mut children[u]);
        kids.sort_unstable();
        code = format!("({},[{}])", g.color(u), kids.join(","));
        if u != root {
            children[parent[u]].push(code.clone());
        }
    }
    Ok(TreeCode(code))
}

/// R3 of a directed power graph, checked to be a tree.
fn component_tree(d: &ColoredDiGraph) -> Result<R3Graph, NilpotentError> {
    let r3 = reduce_r3(&reduce_r2(&reduce_r1(d)?));
    if !r3.graph().is_tree() {
        return Err(NilpotentError::NotATree);
    }
    Ok(r3)
}

fn check_components(d: &ColoredDiGraph, primes: &[u64]) -> Result<(), NilpotentError> {
    let mut covered: u64 = 1;
    for &p in primes {
        covered = covered.saturating_mul(p_component(d, p)?.vertex_count() as u64);
    }
    if covered != d.vertex_count() as u64 {
        return Err(NilpotentError::NotNilpotent {
            covered,
            vertices: d.vertex_count(),
        });
    }
    Ok(())
}

/// Decides isomorphism of two directed power graphs of nilpotent groups.
/// Colors on the inputs are ignored and recomputed from out-degrees.
pub fn dpow_iso_nilpotent(d1: &ColoredDiGraph, d2: &ColoredDiGraph) -> Result<bool, NilpotentError> {
    if d1.vertex_count() == 0 || d2.vertex_count() == 0 {
        return Err(NilpotentError::EmptyGraph);
    }
    let d1 = d1.colored_by_out_degree()?;
    let d2 = d2.colored_by_out_degree()?;
    let primes1: Vec<u64> = factorize(d1.vertex_count() as u64).primes().collect();
    let primes2: Vec<u64> = factorize(d2.vertex_count() as u64).primes().collect();
    check_components(&d1, &primes1)?;
    check_components(&d2, &primes2)?;
    if d1.vertex_count() != d2.vertex_count() {
        return Ok(false);
    }
    for p in primes1 {
        let t1 = component_tree(&p_component(&d1, p)?)?;
        let t2 = component_tree(&p_component(&d2, p)?)?;
        if canonical_tree_code(&t1)? != canonical_tree_code(&t2)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn to_dpow(x: &AnyGraph, kind: GraphKind) -> Result<ColoredDiGraph, NilpotentError> {
    match (kind, x) {
        (GraphKind::Dpow, AnyGraph::Directed(d)) => Ok(d.clone()),
        (GraphKind::Pow, AnyGraph::Undirected(g)) => Ok(dpow_from_power_graph(g)?),
        (GraphKind::Epow, AnyGraph::Undirected(g)) => Ok(dpow_from_enhanced_graph(g)?),
        (GraphKind::Dpow, _) => Err(NilpotentError::WrongGraphType { expected: "directed" }),
        _ => Err(NilpotentError::WrongGraphType { expected: "undirected" }),
    }
}

/// Isomorphism of power graphs, enhanced power graphs or directed power
/// graphs of nilpotent groups. Undirected inputs are first turned into
/// directed power graphs.
pub fn graph_iso_nilpotent(x1: &AnyGraph, x2: &AnyGraph, kind: GraphKind) -> Result<bool, NilpotentError> {
    dpow_iso_nilpotent(&to_dpow(x1, kind)?, &to_dpow(x2, kind)?)
}
