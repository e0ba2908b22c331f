//! Backtracking color-preserving isomorphism search for small graphs.
//!
//! This is a test oracle. Closed-twin classes are contracted first (twins
//! are interchangeable under any isomorphism), the contracted graphs are
//! refined by iterated neighbor-label hashing, and only then does the
//! backtracking start.

use std::collections::HashMap;

use super::{ColoredDiGraph, ColoredGraph, GraphError, TwinPartition};

/// Default bound on the number of twin classes the oracle will search over.
pub const DEFAULT_ISO_CAP: usize = 30;

/// Adjacency view shared by graphs and digraphs. For an undirected graph the
/// in- and out-neighborhoods coincide and there are no loops.
pub trait ColoredAdjacency {
    fn vertex_count(&self) -> usize;
    fn vertex_color(&self, v: usize) -> u64;
    fn successors(&self, v: usize) -> &[usize];
    fn predecessors(&self, v: usize) -> &[usize];
    fn is_arc(&self, u: usize, v: usize) -> bool;
}

impl ColoredAdjacency for ColoredGraph {
    fn vertex_count(&self) -> usize {
        ColoredGraph::vertex_count(self)
    }
    fn vertex_color(&self, v: usize) -> u64 {
        self.color(v)
    }
    fn successors(&self, v: usize) -> &[usize] {
        self.neighbors(v)
    }
    fn predecessors(&self, v: usize) -> &[usize] {
        self.neighbors(v)
    }
    fn is_arc(&self, u: usize, v: usize) -> bool {
        self.has_edge(u, v)
    }
}

impl ColoredAdjacency for ColoredDiGraph {
    fn vertex_count(&self) -> usize {
        ColoredDiGraph::vertex_count(self)
    }
    fn vertex_color(&self, v: usize) -> u64 {
        self.color(v)
    }
    fn successors(&self, v: usize) -> &[usize] {
        self.out_neighbors(v)
    }
    fn predecessors(&self, v: usize) -> &[usize] {
        self.in_neighbors(v)
    }
    fn is_arc(&self, u: usize, v: usize) -> bool {
        self.has_arc(u, v)
    }
}

/// Twin classes refined by loop status, with the contracted adjacency.
struct Quotient {
    classes: TwinPartition,
    label: Vec<(u64, usize, bool)>,
    arcs: Vec<Vec<bool>>,
}

impl Quotient {
    fn new<G: ColoredAdjacency>(g: &G) -> Self {
        let closed = |list: &[usize], v: usize| {
            let mut out = list.to_vec();
            if let Err(at) = out.binary_search(&v) {
                out.insert(at, v);
            }
            out
        };
        let classes = TwinPartition::from_keys((0..g.vertex_count()).map(|v| {
            (
                g.vertex_color(v),
                g.is_arc(v, v),
                closed(g.successors(v), v),
                closed(g.predecessors(v), v),
            )
        }));
        let reps = classes.representatives();
        let label = classes
            .classes()
            .iter()
            .map(|c| (g.vertex_color(c[0]), c.len(), g.is_arc(c[0], c[0])))
            .collect();
        let arcs = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| a != b && g.is_arc(a, b)).collect())
            .collect();
        Quotient {
            classes,
            label,
            arcs,
        }
    }

    fn len(&self) -> usize {
        self.label.len()
    }
}

/// Joint color refinement of two quotients. Returns per-vertex cell ids that
/// are comparable across the two graphs.
fn refine(x: &Quotient, y: &Quotient) -> (Vec<usize>, Vec<usize>) {
    let mut ids: HashMap<(u64, usize, bool), usize> = HashMap::new();
    let mut initial = |q: &Quotient| -> Vec<usize> {
        q.label
            .iter()
            .map(|l| {
                let next = ids.len();
                *ids.entry(*l).or_insert(next)
            })
            .collect()
    };
    let mut cx = initial(x);
    let mut cy = initial(y);
    let mut cells = ids.len();
    loop {
        let mut table: HashMap<(usize, Vec<usize>, Vec<usize>), usize> = HashMap::new();
        let mut step = |q: &Quotient, cell: &[usize]| -> Vec<usize> {
            (0..q.len())
                .map(|v| {
                    let mut outs: Vec<usize> =
                        (0..q.len()).filter(|&w| q.arcs[v][w]).map(|w| cell[w]).collect();
                    let mut ins: Vec<usize> =
                        (0..q.len()).filter(|&w| q.arcs[w][v]).map(|w| cell[w]).collect();
                    outs.sort_unstable();
                    ins.sort_unstable();
                    let next = table.len();
                    *table.entry((cell[v], outs, ins)).or_insert(next)
                })
                .collect()
        };
        let nx = step(x, &cx);
        let ny = step(y, &cy);
        let count = table.len();
        cx = nx;
        cy = ny;
        if count == cells {
            return (cx, cy);
        }
        cells = count;
    }
}

fn histogram(cells: &[usize]) -> Vec<(usize, usize)> {
    let mut h: HashMap<usize, usize> = HashMap::new();
    for &c in cells {
        *h.entry(c).or_insert(0) += 1;
    }
    let mut out: Vec<_> = h.into_iter().collect();
    out.sort_unstable();
    out
}

struct Search<'a> {
    x: &'a Quotient,
    y: &'a Quotient,
    cx: &'a [usize],
    cy: &'a [usize],
    order: Vec<usize>,
    map: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn consistent(&self, depth: usize, a: usize, b: usize) -> bool {
        self.order[..depth].iter().all(|&p| {
            let q = self.map[p];
            self.x.arcs[a][p] == self.y.arcs[b][q] && self.x.arcs[p][a] == self.y.arcs[q][b]
        })
    }

    fn run(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let a = self.order[depth];
        for b in 0..self.y.len() {
            if self.used[b] || self.cy[b] != self.cx[a] || !self.consistent(depth, a, b) {
                continue;
            }
            self.map[a] = b;
            self.used[b] = true;
            if self.run(depth + 1) {
                return true;
            }
            self.used[b] = false;
        }
        self.map[a] = usize::MAX;
        false
    }
}

/// Search order: smallest refinement cell first, then keep growing along
/// already-placed neighbors so consistency checks prune early.
fn search_order(q: &Quotient, cells: &[usize]) -> Vec<usize> {
    let sizes = histogram(cells).into_iter().collect::<HashMap<_, _>>();
    let n = q.len();
    let mut placed = vec![false; n];
    let mut order: Vec<usize> = Vec::with_capacity(n);
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .min_by_key(|&v| {
                let links = order
                    .iter()
                    .filter(|&&p| q.arcs[v][p] || q.arcs[p][v])
                    .count();
                (std::cmp::Reverse(links), sizes[&cells[v]], v)
            })
            .expect("unplaced vertex remains");
        placed[next] = true;
        order.push(next);
    }
    order
}

/// Finds a color- and adjacency-preserving bijection from `x` onto `y`, if
/// one exists. The result maps vertex `v` of `x` to `result[v]` in `y`.
///
/// Fails with [`GraphError::CapExceeded`] when either graph has more than
/// `cap` closed-twin classes.
pub fn brute_force_color_iso<G: ColoredAdjacency>(
    x: &G,
    y: &G,
    cap: usize,
) -> Result<Option<Vec<usize>>, GraphError> {
    if x.vertex_count() != y.vertex_count() {
        return Ok(None);
    }
    let qx = Quotient::new(x);
    let qy = Quotient::new(y);
    let size = qx.len().max(qy.len());
    if size > cap {
        return Err(GraphError::CapExceeded { size, cap });
    }
    if qx.len() != qy.len() {
        return Ok(None);
    }
    let (cx, cy) = refine(&qx, &qy);
    if histogram(&cx) != histogram(&cy) {
        return Ok(None);
    }
    let mut search = Search {
        x: &qx,
        y: &qy,
        cx: &cx,
        cy: &cy,
        order: search_order(&qx, &cx),
        map: vec![usize::MAX; qx.len()],
        used: vec![false; qy.len()],
    };
    if !search.run(0) {
        return Ok(None);
    }
    let mut result = vec![usize::MAX; x.vertex_count()];
    for (a, class) in qx.classes.classes().iter().enumerate() {
        let image = &qy.classes.classes()[search.map[a]];
        for (&u, &v) in class.iter().zip(image) {
            result[u] = v;
        }
    }
    Ok(Some(result))
}
