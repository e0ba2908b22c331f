mod common;

use common::{extended_catalog, group, iso, random_permutation, rng};
use pgk::graph::AnyGraph;
use pgk::group::{direct_product, FiniteGroup};
use pgk::nilpotent::{dpow_iso_nilpotent, graph_iso_nilpotent, GraphKind};
use pgk::powergraph::{directed_power_graph, enhanced_power_graph, power_graph};
use proptest::prelude::*;

fn nilpotent_catalog() -> Vec<(String, FiniteGroup)> {
    extended_catalog().into_iter().filter(|(_, g)| g.is_nilpotent()).collect()
}

#[test]
fn catalog_nilpotency() {
    let names: Vec<String> = nilpotent_catalog().into_iter().map(|(n, _)| n).collect();
    assert!(!names.contains(&"S3".to_string()));
    for expected in ["Q8", "D4", "Heis3", "Z4xZ3", "Z24"] {
        assert!(names.contains(&expected.to_string()), "{expected}");
    }
}

#[test]
fn agrees_with_oracle_on_equal_orders() {
    let groups = nilpotent_catalog();
    let mut positive = 0;
    let mut negative = 0;
    for (i, (na, a)) in groups.iter().enumerate() {
        for (nb, b) in &groups[i..] {
            if a.order() != b.order() || a.order() > 27 {
                continue;
            }
            let da = directed_power_graph(a);
            let db = directed_power_graph(b);
            let fast = dpow_iso_nilpotent(&da, &db).unwrap();
            assert_eq!(fast, iso(&da, &db), "{na} vs {nb}");
            if fast {
                positive += 1;
            } else {
                negative += 1;
            }
        }
    }
    assert!(positive > 0 && negative > 0);
}

#[test]
fn componentwise_agreement_on_coprime_products() {
    let twos = ["Z4", "Z2xZ2", "Z8", "Z4xZ2", "Z2xZ2xZ2", "Q8", "D4"];
    let threes = ["Z3", "Z9", "Z3xZ3"];
    for g1 in twos {
        for h1 in twos {
            for g2 in threes {
                for h2 in threes {
                    let (a1, b1, a2, b2) = (group(g1), group(h1), group(g2), group(h2));
                    if a1.order() != b1.order() || a2.order() != b2.order() {
                        continue;
                    }
                    let left = directed_power_graph(&direct_product(&a1, &a2).unwrap());
                    let right = directed_power_graph(&direct_product(&b1, &b2).unwrap());
                    let parts = iso(&directed_power_graph(&a1), &directed_power_graph(&b1))
                        && iso(&directed_power_graph(&a2), &directed_power_graph(&b2));
                    assert_eq!(
                        dpow_iso_nilpotent(&left, &right).unwrap(),
                        parts,
                        "{g1}x{g2} vs {h1}x{h2}"
                    );
                }
            }
        }
    }
}

#[test]
fn nonisomorphic_groups_with_isomorphic_power_graphs() {
    let e = group("ElemAb(3,3)");
    let h = group("Heis3");
    assert_eq!(e.order_census(), h.order_census());
    assert!(e.is_abelian() && !h.is_abelian());
    let pe: AnyGraph = power_graph(&e).into();
    let ph: AnyGraph = power_graph(&h).into();
    assert!(graph_iso_nilpotent(&pe, &ph, GraphKind::Pow).unwrap());
    let ee: AnyGraph = enhanced_power_graph(&e).into();
    let eh: AnyGraph = enhanced_power_graph(&h).into();
    assert!(graph_iso_nilpotent(&ee, &eh, GraphKind::Epow).unwrap());
}

#[test]
fn front_ends_agree_with_directed_version() {
    let groups = nilpotent_catalog();
    for (i, (na, a)) in groups.iter().enumerate() {
        for (nb, b) in &groups[i..] {
            if a.order() != b.order() {
                continue;
            }
            let direct = dpow_iso_nilpotent(&directed_power_graph(a), &directed_power_graph(b)).unwrap();
            let via_pow =
                graph_iso_nilpotent(&power_graph(a).into(), &power_graph(b).into(), GraphKind::Pow).unwrap();
            let via_epow = graph_iso_nilpotent(
                &enhanced_power_graph(a).into(),
                &enhanced_power_graph(b).into(),
                GraphKind::Epow,
            )
            .unwrap();
            assert_eq!(direct, via_pow, "{na} vs {nb}");
            assert_eq!(direct, via_epow, "{na} vs {nb}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]
    #[test]
    fn label_invariance(index in 0usize..64, seed in any::<u64>()) {
        let groups = nilpotent_catalog();
        let (name, g) = &groups[index % groups.len()];
        let partner = groups
            .iter()
            .filter(|(_, h)| h.order() == g.order())
            .nth(seed as usize % 3)
            .unwrap_or(&groups[index % groups.len()]);
        let mut r = rng(seed);
        let d1 = directed_power_graph(g);
        let d2 = directed_power_graph(&partner.1);
        let before = dpow_iso_nilpotent(&d1, &d2).unwrap();
        let p1 = random_permutation(d1.vertex_count(), &mut r);
        let p2 = random_permutation(d2.vertex_count(), &mut r);
        let after = dpow_iso_nilpotent(&d1.permuted(&p1), &d2.permuted(&p2)).unwrap();
        prop_assert_eq!(before, after, "{} vs {}", name, partner.0);
        prop_assert!(dpow_iso_nilpotent(&d1, &d1.permuted(&p1)).unwrap());
    }
}
