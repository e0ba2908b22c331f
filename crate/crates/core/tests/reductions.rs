mod common;

use std::collections::BTreeSet;

use common::{catalog, extended_catalog, generators, iso, maximal_cyclics, p_groups};
use pgk::graph::{closed_twin_partition_directed, strong_product, ColoredDiGraph};
use pgk::group::{direct_product, FiniteGroup};
use pgk::numtheory::{divisors, gcd};
use pgk::powergraph::directed_power_graph;
use pgk::reductions::{
    descendants, hasse_divisor_graph, reduce_r1, reduce_r2, reduce_r3, reduce_r4, verify_r2_structure, R1Graph,
    R2Graph, R3Graph,
};

fn stages(g: &FiniteGroup) -> (ColoredDiGraph, R1Graph, R2Graph, R3Graph) {
    let d = directed_power_graph(g);
    let r1 = reduce_r1(&d).unwrap();
    let r2 = reduce_r2(&r1);
    let r3 = reduce_r3(&r2);
    (d, r1, r2, r3)
}

#[test]
fn p_group_trees() {
    for (name, g) in p_groups() {
        let (_, _, _, r3) = stages(&g);
        assert!(r3.graph().is_connected(), "{name}");
        assert!(r3.graph().is_tree(), "{name}");
    }
}

#[test]
fn non_p_groups_can_have_cycles() {
    let (_, _, _, r3) = stages(&common::group("Z6"));
    assert!(!r3.graph().is_tree());
}

#[test]
fn r2_structure_holds() {
    for (name, g) in extended_catalog() {
        let (_, _, r2, _) = stages(&g);
        let report = verify_r2_structure(r2.graph());
        assert!(report.is_ok(), "{name}: {:?}", report.violations);
    }
}

#[test]
fn r4_intersections_are_consistent() {
    for (name, g) in extended_catalog() {
        let (_, _, _, r3) = stages(&g);
        let r4 = reduce_r4(&r3).unwrap();
        let m = r4.ccg_count();
        for i in 0..m {
            for j in 0..m {
                for s in 0..m {
                    if i == j || j == s || i == s {
                        continue;
                    }
                    let a = r4.intersection_color(i, j);
                    let b = r4.intersection_color(s, j);
                    assert_eq!(r4.intersection_color(i, s) % gcd(a, b), 0, "{name} ({i},{j},{s})");
                }
            }
        }
    }
}

#[test]
fn r4_matches_subgroup_intersections() {
    for (name, g) in extended_catalog() {
        let (_, _, _, r3) = stages(&g);
        let r4 = reduce_r4(&r3).unwrap();
        let mut colors: Vec<u64> = (0..r4.ccg_count()).map(|i| r4.ccg_color(i)).collect();
        let cyclics = maximal_cyclics(&g);
        let mut expected: Vec<u64> = cyclics.iter().map(|c| c.len() as u64).collect();
        colors.sort_unstable();
        expected.sort_unstable();
        assert_eq!(colors, expected, "{name}");
        let mut pairs: Vec<u64> = Vec::new();
        for i in 0..r4.ccg_count() {
            for j in i + 1..r4.ccg_count() {
                pairs.push(r4.intersection_color(i, j));
            }
        }
        let mut truth: Vec<u64> = Vec::new();
        for (i, a) in cyclics.iter().enumerate() {
            for b in &cyclics[i + 1..] {
                truth.push(a.intersection(b).count() as u64);
            }
        }
        pairs.sort_unstable();
        truth.sort_unstable();
        assert_eq!(pairs, truth, "{name}");
    }
}

#[test]
fn descendants_of_a_ccg_vertex_form_its_divisor_lattice() {
    for (name, g) in extended_catalog() {
        let (_, _, _, r3) = stages(&g);
        for v in r3.ccg_vertices() {
            let below = descendants(r3.graph(), v);
            let (sub, _) = r3.graph().induced_subgraph(&below).unwrap();
            let hd = hasse_divisor_graph(r3.color(v)).unwrap();
            let mut colors = sub.colors().unwrap().to_vec();
            colors.sort_unstable();
            assert_eq!(colors, divisors(r3.color(v)).unwrap(), "{name}");
            // colors are distinct, so the color-matching bijection is the only candidate
            for (a, b) in hd.edges() {
                let x = below[sub.colors().unwrap().iter().position(|&c| c == hd.color(a)).unwrap()];
                let y = below[sub.colors().unwrap().iter().position(|&c| c == hd.color(b)).unwrap()];
                assert!(r3.graph().has_edge(x, y), "{name}");
            }
            assert_eq!(sub.edge_count(), hd.edge_count(), "{name}");
        }
    }
}

#[test]
fn sources_of_r2_are_generator_classes() {
    for (name, g) in catalog() {
        let (d, r1, r2, _) = stages(&g);
        let classes = r1.source_classes().unwrap();
        let sources: BTreeSet<usize> = (0..r2.graph().vertex_count())
            .filter(|&v| r2.graph().in_degree(v) == 0)
            .collect();
        let expected: BTreeSet<usize> = maximal_cyclics(&g)
            .iter()
            .map(|c| classes.class_of(generators(&g, c)[0]))
            .collect();
        assert_eq!(sources, expected, "{name}");
        assert_eq!(classes.len(), r1.graph().vertex_count());
        assert_eq!(closed_twin_partition_directed(&d).len(), classes.len());
    }
}

#[test]
fn reductions_preserve_isomorphism_type() {
    let groups = extended_catalog();
    for (i, (na, a)) in groups.iter().enumerate() {
        for (nb, b) in &groups[i + 1..] {
            if a.order() != b.order() {
                continue;
            }
            let (da, r1a, r2a, r3a) = stages(a);
            let (db, r1b, r2b, r3b) = stages(b);
            let answers = [
                iso(&da, &db),
                iso(r1a.graph(), r1b.graph()),
                iso(r2a.graph(), r2b.graph()),
                iso(r3a.graph(), r3b.graph()),
            ];
            assert!(answers.iter().all(|&x| x == answers[0]), "{na} vs {nb}: {answers:?}");
        }
    }
}

#[test]
fn twin_partition_classes_cannot_merge() {
    for (name, g) in catalog() {
        let d = directed_power_graph(&g);
        let p = closed_twin_partition_directed(&d);
        let total: usize = p.classes().iter().map(Vec::len).sum();
        assert_eq!(total, g.order());
        let reps = p.representatives();
        for (i, &a) in reps.iter().enumerate() {
            for &b in &reps[i + 1..] {
                let same = d.closed_out_neighborhood(a) == d.closed_out_neighborhood(b)
                    && d.closed_in_neighborhood(a) == d.closed_in_neighborhood(b)
                    && d.color(a) == d.color(b);
                assert!(!same, "{name} {a} {b}");
            }
        }
    }
}

#[test]
fn coprime_products_are_strong_products() {
    for (a, b) in [("Z2", "Z3"), ("Z4", "Z3"), ("Z2xZ2", "Z3"), ("Q8", "Z3"), ("Z5", "Z4"), ("D4", "Z3")] {
        let g = common::group(a);
        let h = common::group(b);
        let product = strong_product(&directed_power_graph(&g), &directed_power_graph(&h));
        let direct = directed_power_graph(&direct_product(&g, &h).unwrap());
        assert!(iso(&product, &direct), "{a} x {b}");
    }
}

#[test]
fn strong_product_arc_count() {
    // with loops everywhere, (u,u') -> (v,v') exactly when each coordinate
    // is an arc of its factor
    for (a, b) in [("Z4", "Z3"), ("Z2xZ2", "Z5"), ("D3", "Z2")] {
        let x = directed_power_graph(&common::group(a));
        let y = directed_power_graph(&common::group(b));
        let p = strong_product(&x, &y);
        assert_eq!(p.vertex_count(), x.vertex_count() * y.vertex_count());
        let mut expected = 0;
        for u in 0..x.vertex_count() {
            for v in 0..x.vertex_count() {
                for s in 0..y.vertex_count() {
                    for t in 0..y.vertex_count() {
                        let arc = (u == v || x.has_arc(u, v)) && (s == t || y.has_arc(s, t));
                        if arc && (u, s) != (v, t) {
                            expected += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(p.arc_count() - p.loop_count(), expected, "{a} x {b}");
        assert_eq!(p.loop_count(), p.vertex_count());
    }
}

#[test]
fn oracle_is_symmetric() {
    let groups = catalog();
    for (na, a) in groups.iter().filter(|(_, g)| g.order() == 8 || g.order() == 12) {
        for (nb, b) in groups.iter().filter(|(_, g)| g.order() == a.order()) {
            let da = directed_power_graph(a);
            let db = directed_power_graph(b);
            assert_eq!(iso(&da, &db), iso(&db, &da), "{na} {nb}");
        }
    }
}
