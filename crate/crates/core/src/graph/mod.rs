//! Vertex-colored graphs and digraphs.
//!
//! Both graph types keep sorted adjacency lists, so every iteration order is
//! ascending and deterministic. A graph is either colored (a positive integer
//! per vertex) or uncolored, in which case every vertex reads as color 1.

mod io;
mod iso;
mod twins;

pub use io::{parse_graph, write_graph, AnyGraph};
pub use iso::{brute_force_color_iso, ColoredAdjacency, DEFAULT_ISO_CAP};
pub use twins::{closed_twin_partition_directed, closed_twin_partition_undirected, TwinPartition};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at {0} in an undirected graph")]
    SelfLoop(usize),
    #[error("expected {expected} colors, got {got}")]
    ColorCount { expected: usize, got: usize },
    #[error("vertex {0} has color 0; colors must be positive")]
    ZeroColor(usize),
    #[error("graph file line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("isomorphism oracle limit: {size} twin classes exceed the cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
}

fn validate_colors(n: usize, colors: &Option<Vec<u64>>) -> Result<(), GraphError> {
    if let Some(c) = colors {
        if c.len() != n {
            return Err(GraphError::ColorCount {
                expected: n,
                got: c.len(),
            });
        }
        if let Some(v) = c.iter().position(|&x| x == 0) {
            return Err(GraphError::ZeroColor(v));
        }
    }
    Ok(())
}

fn check_vertex(v: usize, n: usize) -> Result<(), GraphError> {
    if v < n {
        Ok(())
    } else {
        Err(GraphError::VertexOutOfRange { vertex: v, n })
    }
}

/// Sorts `vertices`, drops duplicates and range-checks them.
fn normalize_subset(vertices: &[usize], n: usize) -> Result<Vec<usize>, GraphError> {
    let mut keep = vertices.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if let Some(&v) = keep.last() {
        check_vertex(v, n)?;
    }
    Ok(keep)
}

/// Undirected simple graph with optional vertex colors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoredGraph {
    colors: Option<Vec<u64>>,
    adj: Vec<Vec<usize>>,
}

impl ColoredGraph {
    pub fn empty(n: usize) -> Self {
        ColoredGraph {
            colors: None,
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) collapse; self-loops are rejected.
    pub fn from_edges(
        n: usize,
        colors: Option<Vec<u64>>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        validate_colors(n, &colors)?;
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            check_vertex(u, n)?;
            check_vertex(v, n)?;
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(ColoredGraph { colors, adj })
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n).map(|u| (0..n).filter(|&v| v != u).collect()).collect();
        ColoredGraph { colors: None, adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn is_colored(&self) -> bool {
        self.colors.is_some()
    }

    pub fn colors(&self) -> Option<&[u64]> {
        self.colors.as_deref()
    }

    /// Color of `v`; 1 when the graph is uncolored.
    pub fn color(&self, v: usize) -> u64 {
        self.colors.as_ref().map_or(1, |c| c[v])
    }

    pub fn with_colors(mut self, colors: Vec<u64>) -> Result<Self, GraphError> {
        let colors = Some(colors);
        validate_colors(self.vertex_count(), &colors)?;
        self.colors = colors;
        Ok(self)
    }

    pub fn without_colors(mut self) -> Self {
        self.colors = None;
        self
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// `N[v]` in ascending order.
    pub fn closed_neighborhood(&self, v: usize) -> Vec<usize> {
        let mut out = self.adj[v].clone();
        let at = out.partition_point(|&x| x < v);
        out.insert(at, v);
        out
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count();
        self.adj.iter().all(|l| l.len() + 1 == n)
    }

    /// Vertices adjacent to every other vertex.
    pub fn universal_vertices(&self) -> Vec<usize> {
        let n = self.vertex_count();
        (0..n).filter(|&v| self.degree(v) + 1 == n).collect()
    }

    /// The subgraph induced on `vertices`, relabeled in ascending order of
    /// the original index. The second value maps new labels to old ones.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<(Self, Vec<usize>), GraphError> {
        let keep = normalize_subset(vertices, self.vertex_count())?;
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (new, &old) in keep.iter().enumerate() {
            index[old] = new;
        }
        let adj = keep
            .iter()
            .map(|&old| {
                self.adj[old]
                    .iter()
                    .filter_map(|&w| (index[w] != usize::MAX).then_some(index[w]))
                    .collect()
            })
            .collect();
        let colors = self
            .colors
            .as_ref()
            .map(|c| keep.iter().map(|&v| c[v]).collect());
        Ok((ColoredGraph { colors, adj }, keep))
    }

    /// Applies a vertex relabeling: old vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.vertex_count();
        assert_eq!(perm.len(), n);
        let mut adj = vec![Vec::new(); n];
        for (u, list) in self.adj.iter().enumerate() {
            adj[perm[u]] = list.iter().map(|&v| perm[v]).collect();
            adj[perm[u]].sort_unstable();
        }
        let colors = self.colors.as_ref().map(|c| {
            let mut out = vec![0; n];
            for v in 0..n {
                out[perm[v]] = c[v];
            }
            out
        });
        ColoredGraph { colors, adj }
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    pub fn is_tree(&self) -> bool {
        self.vertex_count() > 0 && self.edge_count() + 1 == self.vertex_count() && self.is_connected()
    }
}

/// Directed graph with optional vertex colors. Self-loops are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoredDiGraph {
    colors: Option<Vec<u64>>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
}

impl ColoredDiGraph {
    pub fn empty(n: usize) -> Self {
        ColoredDiGraph {
            colors: None,
            out: vec![Vec::new(); n],
            inc: vec![Vec::new(); n],
        }
    }

    pub fn from_arcs(
        n: usize,
        colors: Option<Vec<u64>>,
        arcs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        validate_colors(n, &colors)?;
        let mut out = vec![Vec::new(); n];
        for (u, v) in arcs {
            check_vertex(u, n)?;
            check_vertex(v, n)?;
            out[u].push(v);
        }
        Ok(Self::from_out_lists(colors, out))
    }

    fn from_out_lists(colors: Option<Vec<u64>>, mut out: Vec<Vec<usize>>) -> Self {
        let n = out.len();
        let mut inc = vec![Vec::new(); n];
        for (u, list) in out.iter_mut().enumerate() {
            list.sort_unstable();
            list.dedup();
            for &v in list.iter() {
                inc[v].push(u);
            }
        }
        ColoredDiGraph { colors, out, inc }
    }

    pub fn vertex_count(&self) -> usize {
        self.out.len()
    }

    pub fn is_colored(&self) -> bool {
        self.colors.is_some()
    }

    pub fn colors(&self) -> Option<&[u64]> {
        self.colors.as_deref()
    }

    pub fn color(&self, v: usize) -> u64 {
        self.colors.as_ref().map_or(1, |c| c[v])
    }

    pub fn with_colors(mut self, colors: Vec<u64>) -> Result<Self, GraphError> {
        let colors = Some(colors);
        validate_colors(self.vertex_count(), &colors)?;
        self.colors = colors;
        Ok(self)
    }

    pub fn without_colors(mut self) -> Self {
        self.colors = None;
        self
    }

    /// Recolors every vertex by its out-degree. Every vertex of a directed
    /// power graph has a self-loop, so these colors are positive there.
    pub fn colored_by_out_degree(&self) -> Result<Self, GraphError> {
        let colors = (0..self.vertex_count())
            .map(|v| self.out_degree(v) as u64)
            .collect();
        self.clone().with_colors(colors)
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.inc[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inc[v].len()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].binary_search(&v).is_ok()
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.has_arc(v, v)
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().map(move |&v| (u, v)))
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn loop_count(&self) -> usize {
        (0..self.vertex_count()).filter(|&v| self.has_loop(v)).count()
    }

    pub fn closed_out_neighborhood(&self, v: usize) -> Vec<usize> {
        with_vertex(&self.out[v], v)
    }

    pub fn closed_in_neighborhood(&self, v: usize) -> Vec<usize> {
        with_vertex(&self.inc[v], v)
    }

    /// Forgets arc directions and drops self-loops. Colors are kept.
    pub fn undirected_shadow(&self) -> ColoredGraph {
        let edges = self.arcs().filter(|&(u, v)| u != v);
        ColoredGraph::from_edges(self.vertex_count(), self.colors.clone(), edges)
            .expect("arcs are in range")
    }

    pub fn without_loops(&self) -> Self {
        let out = self
            .out
            .iter()
            .enumerate()
            .map(|(u, l)| l.iter().copied().filter(|&v| v != u).collect())
            .collect();
        Self::from_out_lists(self.colors.clone(), out)
    }

    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<(Self, Vec<usize>), GraphError> {
        let keep = normalize_subset(vertices, self.vertex_count())?;
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (new, &old) in keep.iter().enumerate() {
            index[old] = new;
        }
        let out = keep
            .iter()
            .map(|&old| {
                self.out[old]
                    .iter()
                    .filter_map(|&w| (index[w] != usize::MAX).then_some(index[w]))
                    .collect()
            })
            .collect();
        let colors = self
            .colors
            .as_ref()
            .map(|c| keep.iter().map(|&v| c[v]).collect());
        Ok((Self::from_out_lists(colors, out), keep))
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.vertex_count();
        assert_eq!(perm.len(), n);
        let mut out = vec![Vec::new(); n];
        for (u, list) in self.out.iter().enumerate() {
            out[perm[u]] = list.iter().map(|&v| perm[v]).collect();
        }
        let colors = self.colors.as_ref().map(|c| {
            let mut re = vec![0; n];
            for v in 0..n {
                re[perm[v]] = c[v];
            }
            re
        });
        Self::from_out_lists(colors, out)
    }

    /// Topological order, or `None` when a directed cycle (other than a
    /// self-loop) exists.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.vertex_count();
        let mut indeg: Vec<usize> = (0..n)
            .map(|v| self.inc[v].iter().filter(|&&u| u != v).count())
            .collect();
        let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).rev().collect();
        let mut order = Vec::with_capacity(n);
        while let Some(u) = ready.pop() {
            order.push(u);
            for &w in &self.out[u] {
                if w != u {
                    indeg[w] -= 1;
                    if indeg[w] == 0 {
                        ready.push(w);
                    }
                }
            }
        }
        (order.len() == n).then_some(order)
    }
}

fn with_vertex(list: &[usize], v: usize) -> Vec<usize> {
    let mut out = list.to_vec();
    if let Err(at) = out.binary_search(&v) {
        out.insert(at, v);
    }
    out
}

/// Strong product of two digraphs on `V(X) x V(Y)`, with `(x, y)` at index
/// `x * |V(Y)| + y`. A product vertex gets color `col(x) * col(y)`.
///
/// There is an arc from `(u, u')` to a distinct `(v, v')` when `u = v` and
/// `u' -> v'`, or `u' = v'` and `u -> v`, or both `u -> v` and `u' -> v'`.
/// The same three clauses decide self-loops, so `(u, u')` carries a loop
/// when `u` or `u'` does.
pub fn strong_product(x: &ColoredDiGraph, y: &ColoredDiGraph) -> ColoredDiGraph {
    let (nx, ny) = (x.vertex_count(), y.vertex_count());
    let idx = |a: usize, b: usize| a * ny + b;
    let mut out = vec![Vec::new(); nx * ny];
    for u in 0..nx {
        for u2 in 0..ny {
            let list = &mut out[idx(u, u2)];
            for &v2 in y.out_neighbors(u2) {
                list.push(idx(u, v2));
            }
            for &v in x.out_neighbors(u) {
                list.push(idx(v, u2));
                for &v2 in y.out_neighbors(u2) {
                    list.push(idx(v, v2));
                }
            }
        }
    }
    let colors = (x.is_colored() || y.is_colored()).then(|| {
        (0..nx * ny)
            .map(|i| x.color(i / ny) * y.color(i % ny))
            .collect()
    });
    ColoredDiGraph::from_out_lists(colors, out)
}
