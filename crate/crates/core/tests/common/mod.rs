#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use pgk::graph::{ColoredAdjacency, ColoredGraph, DEFAULT_ISO_CAP};
use pgk::group::{parse_group_spec, FiniteGroup};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("data").join(name)
}

pub fn s3_spec() -> String {
    format!("file:{}", data_path("s3.table").display())
}

pub fn group(spec: &str) -> FiniteGroup {
    parse_group_spec(spec).unwrap_or_else(|e| panic!("{spec}: {e}"))
}

/// Cyclic groups up to order 24 plus the small non-cyclic groups.
pub fn catalog() -> Vec<(String, FiniteGroup)> {
    let mut specs: Vec<String> = (1..=24).map(|n| format!("Z{n}")).collect();
    specs.extend(
        ["Z2xZ2", "Z2xZ4", "Z2xZ6", "Z3xZ3", "Z2xZ2xZ2", "Q8", "D4", "Z4xZ3"]
            .iter()
            .map(|s| s.to_string()),
    );
    let mut out: Vec<(String, FiniteGroup)> = specs.iter().map(|s| (s.clone(), group(s))).collect();
    out.push(("S3".to_string(), group(&s3_spec())));
    out
}

pub fn p_groups() -> Vec<(String, FiniteGroup)> {
    [
        "Z8",
        "Z16",
        "Z2xZ2xZ2",
        "Z4xZ2",
        "Q8",
        "D4",
        "Z9",
        "Z27",
        "Z3xZ3",
        "ElemAb(3,3)",
        "Heis3",
    ]
    .iter()
    .map(|s| (s.to_string(), group(s)))
    .collect()
}

/// Every catalog group together with the extra p-groups, deduplicated by
/// spec.
pub fn extended_catalog() -> Vec<(String, FiniteGroup)> {
    let mut out = catalog();
    let names: BTreeSet<String> = out.iter().map(|(n, _)| n.clone()).collect();
    out.extend(p_groups().into_iter().filter(|(n, _)| !names.contains(n)));
    out
}

/// `<g>` by repeated multiplication.
pub fn generated(g: &FiniteGroup, x: usize) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    let mut y = x;
    loop {
        out.insert(y);
        if y == 0 {
            return out;
        }
        y = g.mul(y, x);
    }
}

/// Maximal cyclic subgroups by brute force; `{G}` for cyclic groups.
pub fn maximal_cyclics(g: &FiniteGroup) -> Vec<BTreeSet<usize>> {
    let all: BTreeSet<BTreeSet<usize>> = (0..g.order()).map(|x| generated(g, x)).collect();
    if let Some(whole) = all.iter().find(|c| c.len() == g.order()) {
        return vec![whole.clone()];
    }
    all.iter()
        .filter(|c| !all.iter().any(|d| d.len() > c.len() && c.is_subset(d)))
        .cloned()
        .collect()
}

pub fn generators(g: &FiniteGroup, c: &BTreeSet<usize>) -> Vec<usize> {
    c.iter().copied().filter(|&x| generated(g, x) == *c).collect()
}

/// Closed neighborhood straight from `has_edge`.
pub fn closed_hood(x: &ColoredGraph, v: usize) -> BTreeSet<usize> {
    (0..x.vertex_count()).filter(|&u| u == v || x.has_edge(u, v)).collect()
}

pub fn are_closed_twins(x: &ColoredGraph, u: usize, v: usize) -> bool {
    closed_hood(x, u) == closed_hood(x, v)
}

/// Closed-twin classes of an undirected graph, sizes sorted descending.
pub fn twin_class_sizes(x: &ColoredGraph) -> Vec<usize> {
    let mut classes: BTreeMap<(u64, BTreeSet<usize>), usize> = BTreeMap::new();
    for v in 0..x.vertex_count() {
        *classes.entry((x.color(v), closed_hood(x, v))).or_insert(0) += 1;
    }
    let mut sizes: Vec<usize> = classes.into_values().collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

/// Whether a left-perfect matching exists in a bipartite graph given as
/// adjacency lists of the left side.
pub fn has_perfect_matching(left: &[Vec<usize>], right_count: usize) -> bool {
    fn augment(u: usize, left: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &r in &left[u] {
            if seen[r] {
                continue;
            }
            seen[r] = true;
            if owner[r].is_none_or(|w| augment(w, left, seen, owner)) {
                owner[r] = Some(u);
                return true;
            }
        }
        false
    }
    if left.len() != right_count {
        return false;
    }
    let mut owner = vec![None; right_count];
    (0..left.len()).all(|u| augment(u, left, &mut vec![false; right_count], &mut owner))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_permutation(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

pub fn iso<G: ColoredAdjacency>(a: &G, b: &G) -> bool {
    pgk::graph::brute_force_color_iso(a, b, DEFAULT_ISO_CAP)
        .expect("oracle cap")
        .is_some()
}

pub fn census(colors: &[u64]) -> BTreeMap<u64, usize> {
    let mut m = BTreeMap::new();
    for &c in colors {
        *m.entry(c).or_insert(0) += 1;
    }
    m
}
