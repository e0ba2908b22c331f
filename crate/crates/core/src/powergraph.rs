//! The directed power graph, power graph and enhanced power graph of a group.
//!
//! Vertex `g` of every graph is element `g` of the group.

use crate::graph::{ColoredDiGraph, ColoredGraph};
use crate::group::FiniteGroup;

/// Arc `x -> y` whenever `y` is a power of `x`, self-loops included. Vertex
/// colors are the out-degrees, which are the element orders.
pub fn directed_power_graph(g: &FiniteGroup) -> ColoredDiGraph {
    let arcs = (0..g.order()).flat_map(|x| g.powers(x).into_iter().map(move |y| (x, y)));
    let d = ColoredDiGraph::from_arcs(g.order(), None, arcs).expect("elements are in range");
    let colors = (0..g.order()).map(|v| d.out_degree(v) as u64).collect();
    d.with_colors(colors).expect("out-degrees of a directed power graph are positive")
}

/// Undirected power graph, uncolored.
pub fn power_graph(g: &FiniteGroup) -> ColoredGraph {
    let edges = (0..g.order()).flat_map(|x| {
        g.powers(x)
            .into_iter()
            .filter(move |&y| y != x)
            .map(move |y| (x, y))
    });
    ColoredGraph::from_edges(g.order(), None, edges).expect("elements are in range")
}

/// Undirected enhanced power graph, uncolored: `x ~ y` when both lie in one
/// cyclic subgroup.
pub fn enhanced_power_graph(g: &FiniteGroup) -> ColoredGraph {
    // every cyclic subgroup sits inside a maximal one
    let mut edges = Vec::new();
    for c in g.maximal_cyclic_subgroups() {
        let members: Vec<usize> = c.members.into_iter().collect();
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                edges.push((a, b));
            }
        }
    }
    ColoredGraph::from_edges(g.order(), None, edges).expect("elements are in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic_group, dihedral_group, elementary_abelian};

    #[test]
    fn directed_examples() {
        let d1 = directed_power_graph(&cyclic_group(1).unwrap());
        assert_eq!(d1.arc_count(), 1);
        assert!(d1.has_loop(0));
        let d4 = directed_power_graph(&cyclic_group(4).unwrap());
        assert_eq!(d4.arc_count(), 11);
        assert_eq!(d4.colors(), Some(&[1, 4, 2, 4][..]));
        let v4 = directed_power_graph(&elementary_abelian(2, 2).unwrap());
        assert_eq!(v4.loop_count(), 4);
        assert_eq!(v4.arc_count(), 7);
        assert!((1..4).all(|v| v4.has_arc(v, 0)));
    }

    #[test]
    fn power_graph_examples() {
        let z6 = power_graph(&cyclic_group(6).unwrap());
        // brute force from the definition
        let g = cyclic_group(6).unwrap();
        let mut expected = 0;
        for x in 0..6 {
            for y in x + 1..6 {
                if g.powers(x).contains(&y) || g.powers(y).contains(&x) {
                    expected += 1;
                }
            }
        }
        assert_eq!(expected, 13);
        assert_eq!(z6.edge_count(), 13);
        assert!(power_graph(&cyclic_group(8).unwrap()).is_complete());
        let v4 = power_graph(&elementary_abelian(2, 2).unwrap());
        assert_eq!(v4.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (0, 3)]);
    }

    #[test]
    fn enhanced_examples() {
        for n in 1..=12 {
            assert!(enhanced_power_graph(&cyclic_group(n).unwrap()).is_complete());
        }
        let s3 = enhanced_power_graph(&dihedral_group(3).unwrap());
        assert_eq!(s3.edge_count(), 6);
        assert_eq!(s3.degree(0), 5);
        // rotations r, r^2 are labels 1, 2
        assert!(s3.has_edge(1, 2));
        let v4 = enhanced_power_graph(&elementary_abelian(2, 2).unwrap());
        assert_eq!(v4.edge_count(), 3);
        assert_eq!(v4.degree(0), 3);
    }

    #[test]
    fn enhanced_matches_definition() {
        let g = dihedral_group(6).unwrap();
        let e = enhanced_power_graph(&g);
        let subgroups: Vec<_> = (0..g.order()).map(|z| g.cyclic_subgroup(z)).collect();
        for x in 0..g.order() {
            for y in 0..g.order() {
                if x == y {
                    continue;
                }
                let joint = subgroups.iter().any(|c| c.contains(x) && c.contains(y));
                assert_eq!(e.has_edge(x, y), joint);
            }
        }
    }
}
