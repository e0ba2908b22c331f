//! Isomorphism-invariant reductions of a colored directed power graph.
//!
//! * R1 contracts closed-twin classes (one vertex per cyclic subgroup).
//! * R2 drops self-loops and transitive arcs, leaving the covering relation.
//! * R3 forgets arc directions.
//! * R4 keeps only the CCG vertices and, per pair, the color of their
//!   largest common descendant.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{closed_twin_partition_directed, ColoredDiGraph, ColoredGraph, TwinPartition};
use crate::numtheory::{self, divisor_list, is_prime_ratio, totient};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("not a colored directed power graph: {0}")]
    NotCdpow(String),
    #[error("vertices {0} and {1} are both common descendants of maximal color for CCG pair ({2}, {3})")]
    AmbiguousIntersection(usize, usize, usize, usize),
    #[error("CCG pair ({0}, {1}) has no common descendant")]
    NoCommonDescendant(usize, usize),
    #[error("edge {{{0}, {1}}} joins colors whose ratio is not prime")]
    NonPrimeRatio(usize, usize),
}

/// One vertex per closed-twin class of a CDPow. Reflexive and transitively
/// closed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct R1Graph {
    graph: ColoredDiGraph,
    source_classes: Option<TwinPartition>,
}

impl R1Graph {
    pub(crate) fn from_graph(graph: ColoredDiGraph) -> Self {
        R1Graph {
            graph,
            source_classes: None,
        }
    }

    pub fn graph(&self) -> &ColoredDiGraph {
        &self.graph
    }

    pub fn into_graph(self) -> ColoredDiGraph {
        self.graph
    }

    /// The twin classes of the source graph; vertex `i` of R1 is class `i`.
    /// Absent when the R1 graph was rebuilt from R2.
    pub fn source_classes(&self) -> Option<&TwinPartition> {
        self.source_classes.as_ref()
    }
}

/// Covering relation of R1: no loops, no transitive arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct R2Graph {
    graph: ColoredDiGraph,
}

impl R2Graph {
    pub(crate) fn from_graph(graph: ColoredDiGraph) -> Self {
        R2Graph { graph }
    }

    pub fn graph(&self) -> &ColoredDiGraph {
        &self.graph
    }

    pub fn into_graph(self) -> ColoredDiGraph {
        self.graph
    }
}

/// Undirected shadow of an R2 graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct R3Graph {
    graph: ColoredGraph,
}

impl R3Graph {
    /// Wraps a colored graph. Only the color requirement is checked here.
    pub fn new(graph: ColoredGraph) -> Result<Self, ReductionError> {
        if !graph.is_colored() {
            return Err(ReductionError::NotCdpow("R3 graph must be colored".into()));
        }
        Ok(R3Graph { graph })
    }

    pub fn graph(&self) -> &ColoredGraph {
        &self.graph
    }

    pub fn into_graph(self) -> ColoredGraph {
        self.graph
    }

    pub fn color(&self, v: usize) -> u64 {
        self.graph.color(v)
    }

    /// Vertices all of whose neighbors have smaller colors, sorted by
    /// `(color, index)`.
    pub fn ccg_vertices(&self) -> Vec<usize> {
        let g = &self.graph;
        let mut out: Vec<usize> = (0..g.vertex_count())
            .filter(|&v| g.neighbors(v).iter().all(|&w| g.color(w) < g.color(v)))
            .collect();
        out.sort_by_key(|&v| (g.color(v), v));
        out
    }
}

/// Bipartite summary: CCG vertices `0..m`, then one vertex per pair `i < j`
/// in lexicographic order, joined to `g_i` and `g_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct R4Graph {
    graph: ColoredGraph,
    ccg_count: usize,
    ccg_source: Vec<usize>,
}

impl R4Graph {
    /// `ccg_colors[i]` is `col(g_i)`; `pair_color(i, j)` gives `col(I(i, j))`.
    /// `ccg_source` records which vertex of the originating graph each CCG
    /// vertex came from.
    pub fn new(
        ccg_colors: &[u64],
        ccg_source: Vec<usize>,
        mut pair_color: impl FnMut(usize, usize) -> u64,
    ) -> Self {
        let m = ccg_colors.len();
        assert_eq!(ccg_source.len(), m);
        let mut colors = ccg_colors.to_vec();
        let mut edges = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                let b = colors.len();
                colors.push(pair_color(i, j));
                edges.push((i, b));
                edges.push((j, b));
            }
        }
        let graph = ColoredGraph::from_edges(colors.len(), Some(colors), edges)
            .expect("R4 colors are positive and edges in range");
        R4Graph {
            graph,
            ccg_count: m,
            ccg_source,
        }
    }

    pub fn graph(&self) -> &ColoredGraph {
        &self.graph
    }

    pub fn ccg_count(&self) -> usize {
        self.ccg_count
    }

    pub fn ccg_color(&self, i: usize) -> u64 {
        self.graph.color(i)
    }

    pub fn ccg_source(&self) -> &[usize] {
        &self.ccg_source
    }

    /// Vertex index of `I(i, j)`; the order of `i` and `j` does not matter.
    pub fn intersection_vertex(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        assert!(i != j && j < self.ccg_count);
        let m = self.ccg_count;
        // pairs before row i: sum_{r<i} (m - 1 - r)
        let before = i * (2 * m - i - 1) / 2;
        m + before + (j - i - 1)
    }

    pub fn intersection_color(&self, i: usize, j: usize) -> u64 {
        self.graph.color(self.intersection_vertex(i, j))
    }
}

/// Contracts closed-twin classes of a CDPow. Fails when a vertex color is
/// not its out-degree or a class size is not `phi(color)`.
pub fn reduce_r1(x: &ColoredDiGraph) -> Result<R1Graph, ReductionError> {
    if !x.is_colored() {
        return Err(ReductionError::NotCdpow("input is uncolored".into()));
    }
    for v in 0..x.vertex_count() {
        if x.out_degree(v) as u64 != x.color(v) {
            return Err(ReductionError::NotCdpow(format!(
                "vertex {v} has color {} but out-degree {}",
                x.color(v),
                x.out_degree(v)
            )));
        }
    }
    let classes = closed_twin_partition_directed(x);
    for class in classes.classes() {
        let c = x.color(class[0]);
        if class.len() as u64 != totient(c) {
            return Err(ReductionError::NotCdpow(format!(
                "twin class of vertex {} has {} members, expected phi({c}) = {}",
                class[0],
                class.len(),
                totient(c)
            )));
        }
    }
    let reps = classes.representatives();
    let colors = reps.iter().map(|&r| x.color(r)).collect();
    let arcs = reps.iter().enumerate().flat_map(|(a, &ra)| {
        let classes = &classes;
        x.out_neighbors(ra)
            .iter()
            .map(move |&w| (a, classes.class_of(w)))
    });
    let graph = ColoredDiGraph::from_arcs(reps.len(), Some(colors), arcs.collect::<Vec<_>>())
        .expect("class indices are in range");
    Ok(R1Graph {
        graph,
        source_classes: Some(classes),
    })
}

/// Removes self-loops, then every arc `(a, c)` that has a detour
/// `a -> b -> c` through a third vertex.
pub fn reduce_r2(x: &R1Graph) -> R2Graph {
    let g = x.graph();
    let n = g.vertex_count();
    let mut keep = Vec::new();
    for a in 0..n {
        for &c in g.out_neighbors(a) {
            if c == a {
                continue;
            }
            let transitive = g
                .out_neighbors(a)
                .iter()
                .any(|&b| b != a && b != c && g.has_arc(b, c));
            if !transitive {
                keep.push((a, c));
            }
        }
    }
    let graph = ColoredDiGraph::from_arcs(n, g.colors().map(<[u64]>::to_vec), keep)
        .expect("arcs are in range");
    R2Graph { graph }
}

pub fn reduce_r3(x: &R2Graph) -> R3Graph {
    R3Graph {
        graph: x.graph().undirected_shadow(),
    }
}

/// Vertices reachable from `v` along strictly color-decreasing paths,
/// including `v`, in ascending order.
pub fn descendants(x: &ColoredGraph, v: usize) -> Vec<usize> {
    let mut seen = vec![false; x.vertex_count()];
    seen[v] = true;
    let mut stack = vec![v];
    while let Some(u) = stack.pop() {
        for &w in x.neighbors(u) {
            if !seen[w] && x.color(w) < x.color(u) {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    (0..x.vertex_count()).filter(|&w| seen[w]).collect()
}

/// Builds R4 from R3. CCG vertices are the local color maxima, ordered by
/// `(color, index)`.
pub fn reduce_r4(x: &R3Graph) -> Result<R4Graph, ReductionError> {
    let g = x.graph();
    let ccg = x.ccg_vertices();
    let des: Vec<BTreeSet<usize>> = ccg
        .iter()
        .map(|&v| descendants(g, v).into_iter().collect())
        .collect();
    let m = ccg.len();
    let mut pair_colors = Vec::with_capacity(m * m.saturating_sub(1) / 2);
    for i in 0..m {
        for j in i + 1..m {
            let mut best: Option<usize> = None;
            for &w in des[i].intersection(&des[j]) {
                match best {
                    Some(b) if g.color(w) == g.color(b) => {
                        return Err(ReductionError::AmbiguousIntersection(b, w, i, j));
                    }
                    Some(b) if g.color(w) < g.color(b) => {}
                    _ => best = Some(w),
                }
            }
            let b = best.ok_or(ReductionError::NoCommonDescendant(i, j))?;
            pair_colors.push(g.color(b));
        }
    }
    let colors: Vec<u64> = ccg.iter().map(|&v| g.color(v)).collect();
    let mut next = pair_colors.into_iter();
    Ok(R4Graph::new(&colors, ccg, |_, _| {
        next.next().expect("one color per pair")
    }))
}

/// Hasse diagram of the divisors of `n`: one vertex per divisor (ascending),
/// colored by the divisor, with an edge whenever the ratio is prime.
pub fn hasse_divisor_graph(n: u64) -> Result<ColoredGraph, numtheory::NumberError> {
    let divs = numtheory::divisors(n)?;
    let mut edges = Vec::new();
    for (i, &a) in divs.iter().enumerate() {
        for (j, &b) in divs.iter().enumerate().skip(i + 1) {
            if is_prime_ratio(b, a) {
                edges.push((i, j));
            }
        }
    }
    Ok(ColoredGraph::from_edges(divs.len(), Some(divs), edges).expect("divisors are positive"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum R2Violation {
    /// Sources must be exactly the vertices whose neighbors all have smaller
    /// colors.
    SourceNotLocalMaximum(usize),
    LocalMaximumNotSource(usize),
    /// The descendant closure of a source must carry each divisor of its
    /// color exactly once.
    ClosureNotDivisorLattice(usize),
    /// Some vertex is not below any source.
    Uncovered(usize),
    NonPrimeRatio(usize, usize),
    Cycle,
}

/// Outcome of [`verify_r2_structure`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct R2Report {
    pub violations: Vec<R2Violation>,
}

impl R2Report {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the structure an R2 graph must have: in-degree-0 vertices are
/// exactly the local color maxima and their descendant closures are divisor
/// lattices covering the graph; every arc has a prime color ratio; no
/// directed cycles.
pub fn verify_r2_structure(x: &ColoredDiGraph) -> R2Report {
    let mut report = R2Report::default();
    let n = x.vertex_count();
    for (u, v) in x.arcs() {
        if !is_prime_ratio(x.color(u), x.color(v)) {
            report.violations.push(R2Violation::NonPrimeRatio(u, v));
        }
    }
    if x.topological_order().is_none() || x.loop_count() > 0 {
        report.violations.push(R2Violation::Cycle);
    }
    let shadow = x.undirected_shadow();
    let mut covered = vec![false; n];
    for v in 0..n {
        let source = x.in_degree(v) == 0;
        let local_max = shadow
            .neighbors(v)
            .iter()
            .all(|&w| shadow.color(w) < shadow.color(v));
        match (source, local_max) {
            (true, false) => report.violations.push(R2Violation::SourceNotLocalMaximum(v)),
            (false, true) => report.violations.push(R2Violation::LocalMaximumNotSource(v)),
            _ => {}
        }
        if source {
            let below = directed_closure(x, v);
            let mut colors: Vec<u64> = below.iter().map(|&w| x.color(w)).collect();
            colors.sort_unstable();
            if colors != divisor_list(x.color(v)) {
                report.violations.push(R2Violation::ClosureNotDivisorLattice(v));
            }
            for w in below {
                covered[w] = true;
            }
        }
    }
    report.violations.extend(
        (0..n)
            .filter(|&v| !covered[v])
            .map(R2Violation::Uncovered),
    );
    report
}

/// Vertices reachable from `v` along arcs, including `v`.
fn directed_closure(x: &ColoredDiGraph, v: usize) -> Vec<usize> {
    let mut seen = vec![false; x.vertex_count()];
    seen[v] = true;
    let mut stack = vec![v];
    while let Some(u) = stack.pop() {
        for &w in x.out_neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    (0..x.vertex_count()).filter(|&w| seen[w]).collect()
}
