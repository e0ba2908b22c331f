//! Marking a covering-cycle generating set in a power graph or an enhanced
//! power graph, without access to the group.
//!
//! The returned CC vertices are only meaningful up to closed twins: each one
//! is either a generator of a maximal cyclic subgroup or a closed twin of
//! one in the input graph.

use std::collections::HashMap;

use thiserror::Error;

use crate::graph::{closed_twin_partition_undirected, ColoredGraph};
use crate::group::cyclic_group;
use crate::numtheory;
use crate::powergraph::power_graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DetectionError {
    #[error("empty graph")]
    EmptyGraph,
    #[error("no universal vertex; the input is not a power graph")]
    NoUniversalVertex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    Unlabeled,
    Cc,
    Nc,
    Identity,
}

/// Per-vertex labels plus the processing list the algorithm walked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CcgMarking {
    labels: Vec<Label>,
    processing_order: Vec<usize>,
}

impl CcgMarking {
    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> Label {
        self.labels[v]
    }

    pub fn processing_order(&self) -> &[usize] {
        &self.processing_order
    }

    /// CC-labeled vertices in ascending order.
    pub fn cc_vertices(&self) -> Vec<usize> {
        self.vertices_with(Label::Cc)
    }

    pub fn identity(&self) -> Option<usize> {
        self.labels.iter().position(|&l| l == Label::Identity)
    }

    fn vertices_with(&self, label: Label) -> Vec<usize> {
        (0..self.labels.len())
            .filter(|&v| self.labels[v] == label)
            .collect()
    }
}

/// Closed-twin class sizes of a graph (descending) and the size of the class
/// of universal vertices (0 when there is none).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwinProfile {
    pub class_sizes: Vec<usize>,
    pub dominating_class_size: usize,
}

pub fn twin_profile(x: &ColoredGraph) -> TwinProfile {
    let partition = closed_twin_partition_undirected(x);
    let n = x.vertex_count();
    let dominating_class_size = partition
        .classes()
        .iter()
        .find(|c| x.degree(c[0]) + 1 == n)
        .map_or(0, Vec::len);
    TwinProfile {
        class_sizes: partition.size_multiset(),
        dominating_class_size,
    }
}

/// Memoized twin profiles of `Pow(Z_d)`.
#[derive(Debug, Default)]
pub struct CyclicProfileCache {
    profiles: HashMap<u64, TwinProfile>,
}

impl CyclicProfileCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn profile(&mut self, d: u64) -> &TwinProfile {
        self.profiles.entry(d).or_insert_with(|| {
            let zd = cyclic_group(d as usize).expect("d is a vertex count, so within range");
            twin_profile(&power_graph(&zd))
        })
    }

    /// True when `gamma_v` has `d` vertices, its universal class has the same
    /// size as that of `Pow(Z_d)`, and the two twin-class size multisets are
    /// equal.
    pub fn matches(&mut self, gamma_v: &ColoredGraph, d: u64) -> bool {
        if gamma_v.vertex_count() as u64 != d {
            return false;
        }
        let target = self.profile(d).clone();
        twin_profile(gamma_v) == target
    }
}

/// Compares the twin profile of `gamma_v` with that of a freshly built
/// `Pow(Z_d)`.
pub fn matches_cyclic_profile(gamma_v: &ColoredGraph, d: u64) -> bool {
    CyclicProfileCache::new().matches(gamma_v, d)
}

/// Marks a CCG-set in a power graph.
///
/// A complete graph yields its lowest-index vertex. Otherwise the lowest
/// universal vertex becomes the identity and the remaining vertices are
/// visited by decreasing degree (ties by index), each phase deciding the
/// first unlabeled vertex `v` with `d = deg(v) + 1`:
///
/// * `d` a prime power and `N[v]` a clique: `v` is CC, its neighbors NC.
/// * `d` a prime power otherwise: `v` is NC.
/// * `v` has an NC closed twin inside `Gamma[N[v]]`: `v` is NC.
/// * `Gamma[N[v]]` has the twin profile of `Pow(Z_d)`: `v` is CC, its
///   neighbors NC; otherwise `v` is NC.
pub fn mark_ccg_power(gamma: &ColoredGraph) -> Result<CcgMarking, DetectionError> {
    let n = gamma.vertex_count();
    if n == 0 {
        return Err(DetectionError::EmptyGraph);
    }
    let mut labels = vec![Label::Unlabeled; n];
    if gamma.is_complete() {
        labels[0] = Label::Cc;
        return Ok(CcgMarking {
            labels,
            processing_order: vec![0],
        });
    }
    let identity = *gamma
        .universal_vertices()
        .first()
        .ok_or(DetectionError::NoUniversalVertex)?;
    labels[identity] = Label::Identity;

    let mut order: Vec<usize> = (0..n).filter(|&v| v != identity).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(gamma.degree(v)), v));

    let mut cache = CyclicProfileCache::new();
    for &v in &order {
        if labels[v] != Label::Unlabeled {
            continue;
        }
        let d = gamma.degree(v) as u64 + 1;
        let closed = gamma.closed_neighborhood(v);
        let (gamma_v, map) = gamma
            .induced_subgraph(&closed)
            .expect("closed neighborhood is in range");
        let cc = if numtheory::prime_power(d).is_some() {
            gamma_v.is_complete()
        } else {
            let twins = closed_twin_partition_undirected(&gamma_v);
            let local_v = map.binary_search(&v).expect("v lies in N[v]");
            let has_nc_twin = twins
                .class_containing(local_v)
                .iter()
                .any(|&w| labels[map[w]] == Label::Nc);
            !has_nc_twin && cache.matches(&gamma_v, d)
        };
        if cc {
            labels[v] = Label::Cc;
            for &w in gamma.neighbors(v) {
                if labels[w] == Label::Unlabeled {
                    labels[w] = Label::Nc;
                }
            }
        } else {
            labels[v] = Label::Nc;
        }
    }
    Ok(CcgMarking {
        labels,
        processing_order: order,
    })
}

/// Marks a CCG-set in an enhanced power graph: visit vertices by increasing
/// degree (ties by index); the first unmarked vertex becomes CC and the rest
/// of its closed neighborhood NC.
pub fn mark_ccg_enhanced(gamma: &ColoredGraph) -> Result<CcgMarking, DetectionError> {
    let n = gamma.vertex_count();
    if n == 0 {
        return Err(DetectionError::EmptyGraph);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (gamma.degree(v), v));
    let mut labels = vec![Label::Unlabeled; n];
    for &v in &order {
        if labels[v] != Label::Unlabeled {
            continue;
        }
        labels[v] = Label::Cc;
        for &w in gamma.neighbors(v) {
            if labels[w] == Label::Unlabeled {
                labels[w] = Label::Nc;
            }
        }
    }
    Ok(CcgMarking {
        labels,
        processing_order: order,
    })
}

/// The closed neighborhood of `v` split by element order relative to `v`:
/// larger, equal and smaller. Needs the true element orders, so it only
/// makes sense next to a known group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborhoodPartition {
    pub upper: Vec<usize>,
    pub equal: Vec<usize>,
    pub lower: Vec<usize>,
}

impl NeighborhoodPartition {
    pub fn new(gamma: &ColoredGraph, v: usize, element_orders: &[u64]) -> Self {
        let ov = element_orders[v];
        let mut part = NeighborhoodPartition {
            upper: Vec::new(),
            equal: Vec::new(),
            lower: Vec::new(),
        };
        for x in gamma.closed_neighborhood(v) {
            let ox = element_orders[x];
            match ox.cmp(&ov) {
                std::cmp::Ordering::Greater => part.upper.push(x),
                std::cmp::Ordering::Equal => part.equal.push(x),
                std::cmp::Ordering::Less => part.lower.push(x),
            }
        }
        part
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic_group, direct_product, elementary_abelian};

    fn pow_of(spec: &str) -> ColoredGraph {
        power_graph(&crate::group::parse_group_spec(spec).unwrap())
    }

    #[test]
    fn profile_examples() {
        let k5 = ColoredGraph::complete(5);
        assert_eq!(
            twin_profile(&k5),
            TwinProfile {
                class_sizes: vec![5],
                dominating_class_size: 5
            }
        );
        assert_eq!(
            twin_profile(&pow_of("Z12")),
            TwinProfile {
                class_sizes: vec![5, 2, 2, 2, 1],
                dominating_class_size: 5
            }
        );
        assert_eq!(
            twin_profile(&pow_of("Z2xZ2")),
            TwinProfile {
                class_sizes: vec![1, 1, 1, 1],
                dominating_class_size: 1
            }
        );
    }

    #[test]
    fn cyclic_profile_examples() {
        let z12 = pow_of("Z12");
        // generator 1: N[1] is everything
        let (gamma_v, _) = z12.induced_subgraph(&z12.closed_neighborhood(1)).unwrap();
        assert!(matches_cyclic_profile(&gamma_v, 12));
        assert!(!matches_cyclic_profile(&ColoredGraph::complete(6), 6));
        assert!(!matches_cyclic_profile(&gamma_v, 11));
    }

    #[test]
    fn non_maximal_elements_in_z4_x_z3() {
        let g = direct_product(&cyclic_group(4).unwrap(), &cyclic_group(3).unwrap()).unwrap();
        let pow = power_graph(&g);
        let gamma = |v: usize| pow.induced_subgraph(&pow.closed_neighborhood(v)).unwrap().0;
        // order 4 element (1, 0): N[v] = <v> plus the order-12 elements is a
        // clique on 8 vertices, exactly like Pow(Z_8)
        let v4 = 3;
        assert_eq!(g.element_order(v4), 4);
        let d = pow.degree(v4) as u64 + 1;
        assert_eq!(d, 8);
        assert!(gamma(v4).is_complete());
        assert!(matches_cyclic_profile(&gamma(v4), d));
        // order 6 element (2, 1): profile {7, 2, 1} against {5, 4, 1}
        let v6 = 2 * 3 + 1;
        assert_eq!(g.element_order(v6), 6);
        let d = pow.degree(v6) as u64 + 1;
        assert_eq!(d, 10);
        assert_eq!(twin_profile(&gamma(v6)).class_sizes, vec![7, 2, 1]);
        assert!(!matches_cyclic_profile(&gamma(v6), d));
    }

    #[test]
    fn power_examples() {
        let m = mark_ccg_power(&pow_of("Z8")).unwrap();
        assert_eq!(m.cc_vertices(), vec![0]);
        assert_eq!(m.identity(), None);

        let v4 = pow_of("Z2xZ2");
        let m = mark_ccg_power(&v4).unwrap();
        assert_eq!(m.cc_vertices(), vec![1, 2, 3]);
        assert_eq!(m.identity(), Some(0));

        let z6 = pow_of("Z6");
        let m = mark_ccg_power(&z6).unwrap();
        let cc = m.cc_vertices();
        assert_eq!(cc.len(), 1);
        assert!(z6.universal_vertices().contains(&cc[0]));
        assert_eq!(m.identity(), Some(0));
        assert!(m.labels().iter().all(|&l| l != Label::Unlabeled));
    }

    #[test]
    fn power_errors() {
        assert_eq!(
            mark_ccg_power(&ColoredGraph::empty(0)),
            Err(DetectionError::EmptyGraph)
        );
        let path = ColoredGraph::from_edges(3, None, [(0, 1)]).unwrap();
        assert_eq!(mark_ccg_power(&path), Err(DetectionError::NoUniversalVertex));
    }

    #[test]
    fn enhanced_examples() {
        let s3 = crate::powergraph::enhanced_power_graph(&crate::group::dihedral_group(3).unwrap());
        let m = mark_ccg_enhanced(&s3).unwrap();
        let cc = m.cc_vertices();
        assert_eq!(cc.len(), 4);
        let mut degrees: Vec<usize> = cc.iter().map(|&v| s3.degree(v)).collect();
        degrees.sort_unstable();
        assert_eq!(degrees, vec![1, 1, 1, 2]);
        for n in 1..=12 {
            let e = crate::powergraph::enhanced_power_graph(&cyclic_group(n).unwrap());
            assert_eq!(mark_ccg_enhanced(&e).unwrap().cc_vertices().len(), 1);
        }
        let v4 = crate::powergraph::enhanced_power_graph(&elementary_abelian(2, 2).unwrap());
        assert_eq!(mark_ccg_enhanced(&v4).unwrap().cc_vertices(), vec![1, 2, 3]);
        assert_eq!(
            mark_ccg_enhanced(&ColoredGraph::empty(0)),
            Err(DetectionError::EmptyGraph)
        );
    }

    #[test]
    fn neighborhood_partition_covers_closed_neighborhood() {
        let g = crate::group::parse_group_spec("Z12").unwrap();
        let pow = power_graph(&g);
        for v in 0..12 {
            let p = NeighborhoodPartition::new(&pow, v, g.element_orders());
            let mut all: Vec<usize> = p.upper.iter().chain(&p.equal).chain(&p.lower).copied().collect();
            all.sort_unstable();
            assert_eq!(all, pow.closed_neighborhood(v));
            assert!(p.equal.contains(&v));
        }
    }
}
