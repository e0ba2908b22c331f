//! Text format for graphs.
//!
//! ```text
//! graph 3
//! colors 1 2 2
//! 0 1
//! 0 2
//! ```
//!
//! The header is `graph N` or `digraph N`, the second line is `colors` with
//! `N` positive integers or `nocolors`, and every further line is one edge
//! `u v`. Edges are written in lexicographic order, with `u < v` for
//! undirected graphs. Self-loops `u u` are only valid in digraphs.

use std::fmt::Write as _;

use super::{ColoredDiGraph, ColoredGraph, GraphError};

/// Either kind of graph, as read from a file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyGraph {
    Undirected(ColoredGraph),
    Directed(ColoredDiGraph),
}

impl AnyGraph {
    pub fn vertex_count(&self) -> usize {
        match self {
            AnyGraph::Undirected(g) => g.vertex_count(),
            AnyGraph::Directed(d) => d.vertex_count(),
        }
    }

    pub fn to_text(&self) -> String {
        write_graph(self)
    }
}

impl From<ColoredGraph> for AnyGraph {
    fn from(g: ColoredGraph) -> Self {
        AnyGraph::Undirected(g)
    }
}

impl From<ColoredDiGraph> for AnyGraph {
    fn from(d: ColoredDiGraph) -> Self {
        AnyGraph::Directed(d)
    }
}

fn colors_line(out: &mut String, colors: Option<&[u64]>) {
    match colors {
        None => out.push_str("nocolors\n"),
        Some(c) => {
            out.push_str("colors");
            for x in c {
                let _ = write!(out, " {x}");
            }
            out.push('\n');
        }
    }
}

pub fn write_graph(g: &AnyGraph) -> String {
    let mut out = String::new();
    match g {
        AnyGraph::Undirected(g) => {
            let _ = writeln!(out, "graph {}", g.vertex_count());
            colors_line(&mut out, g.colors());
            for (u, v) in g.edges() {
                let _ = writeln!(out, "{u} {v}");
            }
        }
        AnyGraph::Directed(d) => {
            let _ = writeln!(out, "digraph {}", d.vertex_count());
            colors_line(&mut out, d.colors());
            for (u, v) in d.arcs() {
                let _ = writeln!(out, "{u} {v}");
            }
        }
    }
    out
}

fn parse_err<T>(line: usize, message: impl Into<String>) -> Result<T, GraphError> {
    Err(GraphError::Parse {
        line,
        message: message.into(),
    })
}

/// Reads a graph file. Whitespace between tokens is free and blank lines are
/// skipped; everything else must follow the format exactly.
pub fn parse_graph(text: &str) -> Result<AnyGraph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let Some((hl, header)) = lines.next() else {
        return parse_err(1, "empty graph file");
    };
    let mut head = header.split_whitespace();
    let directed = match head.next() {
        Some("graph") => false,
        Some("digraph") => true,
        _ => return parse_err(hl, "expected 'graph N' or 'digraph N'"),
    };
    let n: usize = match (head.next().map(str::parse), head.next()) {
        (Some(Ok(n)), None) => n,
        _ => return parse_err(hl, "expected a single vertex count"),
    };

    let Some((cl, cline)) = lines.next() else {
        return parse_err(hl + 1, "missing colors line");
    };
    let mut ctoks = cline.split_whitespace();
    let colors = match ctoks.next() {
        Some("nocolors") if ctoks.next().is_none() => None,
        Some("colors") => {
            let c = ctoks
                .map(str::parse::<u64>)
                .collect::<Result<Vec<_>, _>>()
                .or_else(|_| parse_err(cl, "colors must be positive integers"))?;
            if c.len() != n {
                return parse_err(cl, format!("expected {n} colors, found {}", c.len()));
            }
            Some(c)
        }
        _ => return parse_err(cl, "expected 'colors ...' or 'nocolors'"),
    };

    let mut edges = Vec::new();
    for (ln, line) in lines {
        let mut toks = line.split_whitespace().map(str::parse::<usize>);
        match (toks.next(), toks.next(), toks.next()) {
            (Some(Ok(u)), Some(Ok(v)), None) => {
                if u >= n || v >= n {
                    return parse_err(ln, format!("vertex out of range 0..{n}"));
                }
                if !directed && u == v {
                    return parse_err(ln, "self-loop in an undirected graph");
                }
                edges.push((u, v));
            }
            _ => return parse_err(ln, "expected an edge 'u v'"),
        }
    }
    let wrap = |e: GraphError| match e {
        GraphError::ZeroColor(v) => GraphError::Parse {
            line: cl,
            message: format!("vertex {v} has color 0"),
        },
        other => other,
    };
    Ok(if directed {
        AnyGraph::Directed(ColoredDiGraph::from_arcs(n, colors, edges).map_err(wrap)?)
    } else {
        AnyGraph::Undirected(ColoredGraph::from_edges(n, colors, edges).map_err(wrap)?)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn writes_exact_format() {
        let g = ColoredGraph::from_edges(3, None, [(2, 0), (1, 0)]).unwrap();
        assert_eq!(write_graph(&g.into()), "graph 3\nnocolors\n0 1\n0 2\n");
        let d = ColoredDiGraph::from_arcs(2, Some(vec![2, 1]), [(1, 1), (0, 1), (0, 0)]).unwrap();
        assert_eq!(
            write_graph(&d.into()),
            "digraph 2\ncolors 2 1\n0 0\n0 1\n1 1\n"
        );
        assert_eq!(write_graph(&ColoredGraph::empty(0).into()), "graph 0\nnocolors\n");
    }

    #[test]
    fn rejects_malformed_files() {
        for (text, line) in [
            ("", 1),
            ("tree 3\nnocolors\n", 1),
            ("graph x\nnocolors\n", 1),
            ("graph 2\n", 2),
            ("graph 2\ncolors 1\n", 2),
            ("graph 2\ncolors 1 0\n", 2),
            ("graph 2\nnocolors\n0 2\n", 3),
            ("graph 2\nnocolors\n1 1\n", 3),
            ("graph 2\nnocolors\n0 1 1\n", 3),
        ] {
            match parse_graph(text) {
                Err(GraphError::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} parsed as {other:?}"),
            }
        }
        assert!(parse_graph("digraph 2\nnocolors\n1 1\n").is_ok());
    }

    fn arb_graph() -> impl Strategy<Value = AnyGraph> {
        (1usize..12, any::<bool>(), any::<bool>()).prop_flat_map(|(n, directed, colored)| {
            let edges = proptest::collection::vec((0..n, 0..n), 0..30);
            let colors = proptest::collection::vec(1u64..50, n);
            (edges, colors).prop_map(move |(edges, colors)| {
                let colors = colored.then_some(colors);
                if directed {
                    ColoredDiGraph::from_arcs(n, colors, edges).unwrap().into()
                } else {
                    let edges = edges.into_iter().filter(|(u, v)| u != v);
                    ColoredGraph::from_edges(n, colors, edges).unwrap().into()
                }
            })
        })
    }

    proptest! {
        #[test]
        fn text_round_trip(g in arb_graph()) {
            let text = write_graph(&g);
            let back = parse_graph(&text).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(write_graph(&back), text);
        }
    }
}
