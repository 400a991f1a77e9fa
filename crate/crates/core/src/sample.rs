//! Seeded random graphs of groups and trees for property checks.

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::gog::{GogBuilder, GraphOfGroups};
use crate::graph::{build_graph, EdgeRecord, Graph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleSpec {
    pub max_vertices: usize,
    pub max_edges: usize,
    pub max_order: u64,
}

impl Default for SampleSpec {
    fn default() -> Self {
        SampleSpec {
            max_vertices: 6,
            max_edges: 6,
            max_order: 24,
        }
    }
}

fn random_divisor<R: Rng + ?Sized>(rng: &mut R, n: u64) -> u64 {
    let divs: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    *divs.choose(rng).expect("1 divides n")
}

/// Random connected graph of groups within `spec`.
///
/// Vertex orders are divisors of one common bound `M ≤ max_order`, which
/// keeps `m_Γ ≤ max_order`. Half the edges carry the full gcd of their
/// endpoint orders, so trivial tree edges are common.
pub fn random_gog<R: Rng + ?Sized>(rng: &mut R, spec: &SampleSpec) -> GraphOfGroups {
    let nv = rng.gen_range(1..=spec.max_vertices.max(1));
    let min_edges = nv - 1;
    let ne = rng.gen_range(min_edges..=spec.max_edges.max(min_edges));
    let bound = rng.gen_range(1..=spec.max_order.max(1));

    let mut names: Vec<usize> = (0..nv).collect();
    names.shuffle(rng);
    let name = |i: usize| format!("v{}", names[i]);
    let orders: Vec<u64> = (0..nv).map(|_| random_divisor(rng, bound)).collect();

    let mut ends: Vec<(usize, usize)> = (1..nv)
        .map(|i| {
            let parent = rng.gen_range(0..i);
            if rng.gen_bool(0.5) {
                (parent, i)
            } else {
                (i, parent)
            }
        })
        .collect();
    while ends.len() < ne {
        ends.push((rng.gen_range(0..nv), rng.gen_range(0..nv)));
    }
    ends.shuffle(rng);

    let mut builder = GogBuilder::new();
    for (i, &order) in orders.iter().enumerate() {
        builder = builder.vertex(&name(i), order);
    }
    for (k, (o, t)) in ends.into_iter().enumerate() {
        let gcd = orders[o].gcd(&orders[t]);
        let order = if rng.gen_bool(0.5) {
            gcd
        } else {
            random_divisor(rng, gcd)
        };
        builder = builder.edge(&format!("e{k}"), &name(o), &name(t), order);
    }
    builder
        .build()
        .expect("random datum is valid by construction")
}

/// Random tree with at most `max_edges` geometric edges and randomly
/// directed half-edge names.
pub fn random_tree<R: Rng + ?Sized>(rng: &mut R, max_edges: usize) -> Graph {
    let ne = rng.gen_range(0..=max_edges);
    let vertices: Vec<VertexId> = (0..=ne).map(|i| format!("t{i:02}").into()).collect();
    let mut records = Vec::with_capacity(2 * ne);
    for i in 1..=ne {
        let parent = rng.gen_range(0..i);
        let (o, t) = if rng.gen_bool(0.5) {
            (parent, i)
        } else {
            (i, parent)
        };
        let id = format!("a{i:02}");
        let bar = format!("a{i:02}~");
        records.push(EdgeRecord::new(
            &id,
            &bar,
            vertices[o].as_str(),
            vertices[t].as_str(),
        ));
        records.push(EdgeRecord::new(
            &bar,
            &id,
            vertices[t].as_str(),
            vertices[o].as_str(),
        ));
    }
    build_graph(vertices, records).expect("random tree is valid by construction")
}
