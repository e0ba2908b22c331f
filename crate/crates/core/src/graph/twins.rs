use std::collections::HashMap;

use super::{ColoredDiGraph, ColoredGraph};

/// Partition of the vertex set into closed-twin classes.
///
/// Classes are listed in ascending order of their smallest member, and each
/// class is sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinPartition {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl TwinPartition {
    /// Groups vertices by a key. Vertices with equal keys share a class.
    pub(crate) fn from_keys<K: std::hash::Hash + Eq>(keys: impl IntoIterator<Item = K>) -> Self {
        let mut index: HashMap<K, usize> = HashMap::new();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut class_of = Vec::new();
        for (v, key) in keys.into_iter().enumerate() {
            let next = classes.len();
            let c = *index.entry(key).or_insert(next);
            if c == next {
                classes.push(Vec::new());
            }
            classes[c].push(v);
            class_of.push(c);
        }
        TwinPartition { classes, class_of }
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v]
    }

    pub fn class_containing(&self, v: usize) -> &[usize] {
        &self.classes[self.class_of[v]]
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Smallest member of each class.
    pub fn representatives(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }

    /// Class sizes sorted in descending order.
    pub fn size_multiset(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.classes.iter().map(Vec::len).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }
}

/// Classes of vertices with equal closed neighborhoods and equal colors.
pub fn closed_twin_partition_undirected(x: &ColoredGraph) -> TwinPartition {
    TwinPartition::from_keys(
        (0..x.vertex_count()).map(|v| (x.color(v), x.closed_neighborhood(v))),
    )
}

/// Classes of vertices with equal closed out- and in-neighborhoods and equal
/// colors.
pub fn closed_twin_partition_directed(x: &ColoredDiGraph) -> TwinPartition {
    TwinPartition::from_keys((0..x.vertex_count()).map(|v| {
        (
            x.color(v),
            x.closed_out_neighborhood(v),
            x.closed_in_neighborhood(v),
        )
    }))
}
