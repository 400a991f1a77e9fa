//! Brute-force validators that share no arithmetic with [`crate::counting`].
//!
//! Subgroup counts of free groups come from enumerating permutation tuples,
//! which realizes the torsion-free actions of a free group directly (its
//! vertex groups are trivial). Graphs of groups with nontrivial orders are
//! not covered here; they are checked through closed forms and internal
//! identities instead.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use thiserror::Error;

use crate::gog::{GogBuilder, GraphOfGroups};
use crate::graph::{EdgeId, Graph, Orientation, SpanningTree, VertexId};
use crate::normalize::normalize;

pub const MAX_DEGREE: usize = 6;
pub const MAX_TREE_EDGES: usize = 20;
pub const MAX_SHAPE_ORDER: u64 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("degree {0} exceeds the enumeration limit {MAX_DEGREE}")]
    DegreeTooLarge(usize),
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("{transitive} transitive tuples at degree {degree} not divisible by ({degree}-1)!")]
    NonExactDivision { degree: usize, transitive: u64 },
    #[error("tree has {0} geometric edges; limit is {MAX_TREE_EDGES}")]
    TooLarge(usize),
    #[error("order bound {0} exceeds {MAX_SHAPE_ORDER}")]
    OrderBoundTooLarge(u64),
}

/// `r` permutations of `{0..n}`, each stored as its image list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermTuple {
    pub n: usize,
    pub perms: Vec<Vec<usize>>,
}

impl PermTuple {
    pub fn is_transitive(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut reached = 1;
        while let Some(x) = stack.pop() {
            for p in &self.perms {
                let y = p[x];
                if !seen[y] {
                    seen[y] = true;
                    reached += 1;
                    stack.push(y);
                }
            }
        }
        reached == self.n
    }
}

/// All permutations of `{0..n}` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = (0..n).collect();
    let mut out = vec![current.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(current.clone());
    }
}

/// Number of `r`-tuples of permutations of `n` points generating a
/// transitive group.
pub fn transitive_tuple_count(r: usize, n: usize) -> u64 {
    let perms = all_permutations(n);
    let total = perms.len();
    let mut index = vec![0usize; r];
    let mut count = 0u64;
    let mut tuple = PermTuple {
        n,
        perms: vec![Vec::new(); r],
    };
    loop {
        for (slot, &i) in index.iter().enumerate() {
            tuple.perms[slot].clone_from(&perms[i]);
        }
        if tuple.is_transitive() {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == r {
                return count;
            }
            index[k] += 1;
            if index[k] < total {
                break;
            }
            index[k] = 0;
            k += 1;
        }
    }
}

/// Numbers of subgroups of index `1..=N` in the free group of rank `r`,
/// via `s_n = t_n / (n−1)!`.
pub fn free_group_subgroup_counts(r: usize, max_index: usize) -> Result<Vec<u64>, OracleError> {
    if r == 0 {
        return Err(OracleError::ZeroRank);
    }
    if max_index > MAX_DEGREE {
        return Err(OracleError::DegreeTooLarge(max_index));
    }
    (1..=max_index)
        .map(|n| {
            let transitive = transitive_tuple_count(r, n);
            let stabilizer_orbits: u64 = (1..n as u64).product();
            let (q, rem) = transitive.div_rem(&stabilizer_orbits);
            if rem != 0 {
                return Err(OracleError::NonExactDivision {
                    degree: n,
                    transitive,
                });
            }
            Ok(q)
        })
        .collect()
}

/// Orientations of the tree edges for which `e ↦ t(e)` is a bijection onto
/// `V ∖ {v0}`, found by trying all `2^k` choices.
pub fn rooted_orientations(
    graph: &Graph,
    tree: &SpanningTree,
    v0: &VertexId,
) -> Result<Vec<Orientation>, OracleError> {
    let pairs: Vec<(&EdgeId, &EdgeId)> = tree
        .tree_edges
        .iter()
        .filter(|e| *e < graph.bar(e))
        .map(|e| (e, graph.bar(e)))
        .collect();
    if pairs.len() > MAX_TREE_EDGES {
        return Err(OracleError::TooLarge(pairs.len()));
    }
    let targets: BTreeSet<&VertexId> = graph.vertices().filter(|v| *v != v0).collect();
    let mut found = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let chosen: Vec<&EdgeId> = pairs
            .iter()
            .enumerate()
            .map(|(i, (e, bar))| if mask >> i & 1 == 0 { *e } else { *bar })
            .collect();
        let termini: BTreeSet<&VertexId> = chosen.iter().map(|e| graph.terminus(e)).collect();
        if termini.len() == chosen.len() && termini == targets {
            found.push(Orientation {
                chosen: chosen.into_iter().cloned().collect(),
            });
        }
    }
    Ok(found)
}

/// Exactly one orientation qualifies and it is the one pointing away from
/// `v0`.
pub fn orientation_uniqueness(
    graph: &Graph,
    tree: &SpanningTree,
    v0: &VertexId,
) -> Result<bool, OracleError> {
    let found = rooted_orientations(graph, tree, v0)?;
    let expected = tree.orient_from_root(graph, v0).ok();
    Ok(found.len() == 1 && expected.as_ref() == found.first())
}

fn divisors_of(n: u64) -> impl Iterator<Item = u64> {
    (1..=n).filter(move |d| n.is_multiple_of(*d))
}

/// Vertex orders and `(origin, terminus, order)` edge triples.
pub type ShapeKey = (Vec<u64>, Vec<(usize, usize, u64)>);

/// Relabeling-invariant key: vertex orders and edge triples under the
/// lexicographically smallest vertex numbering.
pub fn canonical_key(gog: &GraphOfGroups) -> ShapeKey {
    let g = gog.graph();
    let vertices: Vec<&VertexId> = g.vertices().collect();
    let edges: Vec<&EdgeId> = g.half_edges().filter(|e| *e < g.bar(e)).collect();
    let mut best: Option<ShapeKey> = None;
    for perm in all_permutations(vertices.len()) {
        let pos: BTreeMap<&VertexId, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (*v, perm[i]))
            .collect();
        let mut orders = vec![0; vertices.len()];
        for v in &vertices {
            orders[pos[v]] = gog.vertex_order(v);
        }
        let mut triples: Vec<(usize, usize, u64)> = edges
            .iter()
            .map(|e| {
                let (a, b) = (pos[g.origin(e)], pos[g.terminus(e)]);
                (a.min(b), a.max(b), gog.edge_order(e))
            })
            .collect();
        triples.sort_unstable();
        let key = (orders, triples);
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    }
    best.expect("at least one vertex")
}

/// Every normalized datum with at most 3 vertices, at most 2 geometric edges
/// and all orders bounded by `order_bound`, one per relabeling class.
pub fn exhaustive_rank2_shapes(order_bound: u64) -> Result<Vec<GraphOfGroups>, OracleError> {
    if order_bound > MAX_SHAPE_ORDER {
        return Err(OracleError::OrderBoundTooLarge(order_bound));
    }
    let mut candidates = Vec::new();
    let orders = || 1..=order_bound;
    for a in orders() {
        candidates.push(GogBuilder::new().vertex("v1", a));
        for s in divisors_of(a) {
            candidates.push(GogBuilder::new().vertex("v1", a).edge("e1", "v1", "v1", s));
            for t in divisors_of(a).filter(|&t| t >= s) {
                candidates.push(
                    GogBuilder::new()
                        .vertex("v1", a)
                        .edge("e1", "v1", "v1", s)
                        .edge("e2", "v1", "v1", t),
                );
            }
        }
        for b in orders() {
            let ab = a.gcd(&b);
            for s in divisors_of(ab) {
                let segment = GogBuilder::new()
                    .vertex("v1", a)
                    .vertex("v2", b)
                    .edge("e1", "v1", "v2", s);
                candidates.push(segment.clone());
                for t in divisors_of(b) {
                    candidates.push(segment.clone().edge("e2", "v2", "v2", t));
                }
                for t in divisors_of(ab) {
                    candidates.push(segment.clone().edge("e2", "v1", "v2", t));
                }
                for c in orders() {
                    for t in divisors_of(b.gcd(&c)) {
                        candidates.push(segment.clone().vertex("v3", c).edge("e2", "v2", "v3", t));
                    }
                }
            }
        }
    }

    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for builder in candidates {
        let gog = builder.build().expect("divisibility holds by construction");
        let (_, steps) = normalize(&gog);
        if steps.is_empty() && seen.insert(canonical_key(&gog)) {
            out.push(gog);
        }
    }
    Ok(out)
}
