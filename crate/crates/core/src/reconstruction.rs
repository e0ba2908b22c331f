//! Rebuilding the colored directed power graph from a power graph or an
//! enhanced power graph.
//!
//! The pipeline is marking, then R4, R3, R2, R1 and finally the φ-expansion
//! back to a CDPow. The result is isomorphic to the directed power graph of
//! the underlying group; it does not reuse the input's vertex labels.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::ccg::{mark_ccg_enhanced, mark_ccg_power, CcgMarking, DetectionError};
use crate::graph::{ColoredDiGraph, ColoredGraph};
use crate::numtheory::{divisor_list, is_prime_ratio, totient};
use crate::reductions::{
    descendants, R1Graph, R2Graph, R3Graph, R4Graph, ReductionError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReconstructionError {
    #[error(transparent)]
    Detection(#[from] DetectionError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error("not a power graph: CC vertices {0} and {1} have disjoint closed neighborhoods")]
    DisjointNeighborhoods(usize, usize),
    #[error("R4 is inconsistent: vertices {old_a} and {old_b} both identify with color {color} while adding CCG vertex {ccg}")]
    IdentificationConflict {
        ccg: usize,
        color: u64,
        old_a: usize,
        old_b: usize,
    },
}

/// Which kind of undirected graph a reconstruction starts from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SourceKind {
    Power,
    Enhanced,
}

/// R4 of the group, read off a marked power or enhanced power graph.
///
/// CCG vertex `i` is the `i`-th CC vertex by `(deg + 1, index)`. Its color is
/// `deg + 1` and `I(i, j)` is colored by `|N[g_i] ∩ N[g_j]|`.
pub fn r4_from_marked_graph(
    gamma: &ColoredGraph,
    marking: &CcgMarking,
) -> Result<R4Graph, ReconstructionError> {
    let mut cc = marking.cc_vertices();
    cc.sort_by_key(|&v| (gamma.degree(v) + 1, v));
    let hoods: Vec<BTreeSet<usize>> = cc
        .iter()
        .map(|&v| gamma.closed_neighborhood(v).into_iter().collect())
        .collect();
    let mut pair_colors = Vec::new();
    for i in 0..cc.len() {
        for j in i + 1..cc.len() {
            let shared = hoods[i].intersection(&hoods[j]).count();
            if shared == 0 {
                return Err(ReconstructionError::DisjointNeighborhoods(cc[i], cc[j]));
            }
            pair_colors.push(shared as u64);
        }
    }
    let colors: Vec<u64> = cc.iter().map(|&v| gamma.degree(v) as u64 + 1).collect();
    let mut next = pair_colors.into_iter();
    Ok(R4Graph::new(&colors, cc, |_, _| {
        next.next().expect("one color per pair")
    }))
}

/// One iteration of the R4 to R3 construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algorithm3Step {
    /// The graph `X_j` after this iteration.
    pub graph: ColoredGraph,
    /// Vertex of `X_j` standing for `g_1, ..., g_j`.
    pub ccg_vertices: Vec<usize>,
    /// Pairs `(old vertex, vertex of HD[col(g_j)])` identified in this step.
    /// Empty for the first step.
    pub identification: Vec<(usize, usize)>,
    /// Edges of the Hasse diagram that joined two already existing vertices
    /// and were not yet present in `X_{j-1}`.
    pub new_edges_between_old: Vec<(usize, usize)>,
}

/// Vertex of `HD[n]` (as built by [`crate::reductions::hasse_divisor_graph`])
/// carrying color `d`.
fn hasse_index(divs: &[u64], d: u64) -> Option<usize> {
    divs.binary_search(&d).ok()
}

fn hasse_edges(divs: &[u64]) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for (i, &a) in divs.iter().enumerate() {
        for (j, &b) in divs.iter().enumerate().skip(i + 1) {
            if is_prime_ratio(b, a) {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// Builds R3 from R4 and records every intermediate `X_j`.
pub fn r3_from_r4_traced(x: &R4Graph) -> Result<(R3Graph, Vec<Algorithm3Step>), ReconstructionError> {
    let m = x.ccg_count();
    let mut trace = Vec::with_capacity(m);
    let mut colors: Vec<u64> = Vec::new();
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut tops: Vec<usize> = Vec::with_capacity(m);

    for j in 0..m {
        let top_color = x.ccg_color(j);
        let divs = divisor_list(top_color);
        let mut image: Vec<Option<usize>> = vec![None; divs.len()];
        let current = ColoredGraph::from_edges(colors.len(), Some(colors.clone()), edges.iter().copied())
            .expect("edges of X are valid");
        let mut identification = Vec::new();
        for (s, &top) in tops.iter().enumerate() {
            let shared = x.intersection_color(s, j);
            for u in descendants(&current, top) {
                let c = colors[u];
                if !shared.is_multiple_of(c) {
                    continue;
                }
                let y = hasse_index(&divs, c).expect("a divisor of the shared color divides the top color");
                match image[y] {
                    Some(prev) if prev != u => {
                        return Err(ReconstructionError::IdentificationConflict {
                            ccg: j,
                            color: c,
                            old_a: prev,
                            old_b: u,
                        });
                    }
                    Some(_) => {}
                    None => {
                        image[y] = Some(u);
                        identification.push((u, y));
                    }
                }
            }
        }
        identification.sort_unstable();

        let ids: Vec<usize> = image
            .iter()
            .zip(&divs)
            .map(|(slot, &d)| {
                slot.unwrap_or_else(|| {
                    colors.push(d);
                    colors.len() - 1
                })
            })
            .collect();
        let mut new_edges_between_old = Vec::new();
        for (a, b) in hasse_edges(&divs) {
            let (u, v) = (ids[a].min(ids[b]), ids[a].max(ids[b]));
            let both_old = image[a].is_some() && image[b].is_some();
            if edges.insert((u, v)) && both_old {
                new_edges_between_old.push((u, v));
            }
        }
        tops.push(*ids.last().expect("HD[n] has vertex n"));
        let graph = ColoredGraph::from_edges(colors.len(), Some(colors.clone()), edges.iter().copied())
            .expect("edges of X are valid");
        trace.push(Algorithm3Step {
            graph,
            ccg_vertices: tops.clone(),
            identification,
            new_edges_between_old,
        });
    }

    let graph = match trace.last() {
        Some(step) => step.graph.clone(),
        None => ColoredGraph::empty(0).with_colors(Vec::new()).expect("no vertices"),
    };
    Ok((R3Graph::new(graph)?, trace))
}

pub fn r3_from_r4(x: &R4Graph) -> Result<R3Graph, ReconstructionError> {
    r3_from_r4_traced(x).map(|(r3, _)| r3)
}

/// Orients every edge from the larger color to the smaller one.
pub fn r2_from_r3(x: &R3Graph) -> Result<R2Graph, ReconstructionError> {
    let g = x.graph();
    let mut arcs = Vec::with_capacity(g.edge_count());
    for (u, v) in g.edges() {
        let (hi, lo) = if g.color(u) > g.color(v) { (u, v) } else { (v, u) };
        if !is_prime_ratio(g.color(hi), g.color(lo)) {
            return Err(ReductionError::NonPrimeRatio(u, v).into());
        }
        arcs.push((hi, lo));
    }
    let graph = ColoredDiGraph::from_arcs(g.vertex_count(), g.colors().map(<[u64]>::to_vec), arcs)
        .expect("arcs are in range");
    Ok(R2Graph::from_graph(graph))
}

/// Reflexive and transitive closure.
pub fn r1_from_r2(x: &R2Graph) -> R1Graph {
    let g = x.graph();
    let n = g.vertex_count();
    let mut arcs = Vec::new();
    for v in 0..n {
        let mut seen = vec![false; n];
        seen[v] = true;
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            for &w in g.out_neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        arcs.extend((0..n).filter(|&w| seen[w]).map(|w| (v, w)));
    }
    let graph = ColoredDiGraph::from_arcs(n, g.colors().map(<[u64]>::to_vec), arcs)
        .expect("arcs are in range");
    R1Graph::from_graph(graph)
}

/// Replaces each vertex `u` of R1 by `phi(col(u))` closed twins.
pub fn cdpow_from_r1(x: &R1Graph) -> ColoredDiGraph {
    let g = x.graph();
    let mut clusters: Vec<Vec<usize>> = Vec::with_capacity(g.vertex_count());
    let mut colors = Vec::new();
    for u in 0..g.vertex_count() {
        let c = g.color(u);
        let start = colors.len();
        colors.extend(std::iter::repeat_n(c, totient(c) as usize));
        clusters.push((start..colors.len()).collect());
    }
    let mut arcs = Vec::new();
    for u in 0..g.vertex_count() {
        for &a in &clusters[u] {
            arcs.extend(clusters[u].iter().map(|&b| (a, b)));
            for &v in g.out_neighbors(u).iter().filter(|&&v| v != u) {
                arcs.extend(clusters[v].iter().map(|&b| (a, b)));
            }
        }
    }
    ColoredDiGraph::from_arcs(colors.len(), Some(colors), arcs).expect("arcs are in range")
}

/// Every stage of a reconstruction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reconstruction {
    pub marking: CcgMarking,
    pub r4: R4Graph,
    pub r3: R3Graph,
    pub r2: R2Graph,
    pub r1: R1Graph,
    pub cdpow: ColoredDiGraph,
}

pub fn reconstruct(gamma: &ColoredGraph, kind: SourceKind) -> Result<Reconstruction, ReconstructionError> {
    let marking = match kind {
        SourceKind::Power => mark_ccg_power(gamma)?,
        SourceKind::Enhanced => mark_ccg_enhanced(gamma)?,
    };
    let r4 = r4_from_marked_graph(gamma, &marking)?;
    let r3 = r3_from_r4(&r4)?;
    let r2 = r2_from_r3(&r3)?;
    let r1 = r1_from_r2(&r2);
    let cdpow = cdpow_from_r1(&r1);
    Ok(Reconstruction {
        marking,
        r4,
        r3,
        r2,
        r1,
        cdpow,
    })
}

/// A colored directed power graph isomorphic to that of the group whose
/// power graph is `gamma`.
pub fn dpow_from_power_graph(gamma: &ColoredGraph) -> Result<ColoredDiGraph, ReconstructionError> {
    reconstruct(gamma, SourceKind::Power).map(|r| r.cdpow)
}

/// As [`dpow_from_power_graph`], starting from an enhanced power graph.
pub fn dpow_from_enhanced_graph(gamma: &ColoredGraph) -> Result<ColoredDiGraph, ReconstructionError> {
    reconstruct(gamma, SourceKind::Enhanced).map(|r| r.cdpow)
}

/// `u ~ v` when both lie in the closed out-neighborhood of one vertex.
pub fn epow_from_dpow(d: &ColoredDiGraph) -> ColoredGraph {
    let mut edges = BTreeSet::new();
    for w in 0..d.vertex_count() {
        let hood = d.closed_out_neighborhood(w);
        for (i, &u) in hood.iter().enumerate() {
            for &v in &hood[i + 1..] {
                edges.insert((u, v));
            }
        }
    }
    ColoredGraph::from_edges(d.vertex_count(), None, edges).expect("edges are in range")
}

/// Undirected power graph: the shadow of `d` without loops or colors.
pub fn pow_from_dpow(d: &ColoredDiGraph) -> ColoredGraph {
    d.undirected_shadow().without_colors()
}
