//! Normalization by contracting trivial spanning-tree edges.
//!
//! A tree half-edge `e` is trivial when `|Γ(e)| = |Γ(t(e))|`, i.e. the
//! embedding into the terminus group is onto. Contracting it merges `t(e)`
//! into `o(e)` and leaves the fundamental group unchanged. Repeating until no
//! trivial tree edge remains yields a decomposition in which every tree edge
//! group has index at least 2 in both endpoint groups.

use thiserror::Error;

use crate::gog::GraphOfGroups;
use crate::graph::{EdgeId, SpanningTree, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalizeError {
    #[error("half-edge `{0}` is not in the spanning tree")]
    NotTreeEdge(EdgeId),
    #[error("half-edge `{0}` is not trivial")]
    NotTrivial(EdgeId),
    #[error("tree half-edge `{0}` still maps onto its terminus group")]
    NotNormalized(EdgeId),
    #[error("tree is not a spanning tree of the graph")]
    NotSpanning,
}

/// One contraction: `removed_vertex` (the terminus of `contracted_edge`) was
/// merged into `surviving_vertex` (its origin).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionStep {
    pub contracted_edge: EdgeId,
    pub removed_vertex: VertexId,
    pub surviving_vertex: VertexId,
}

/// A graph of groups together with a spanning tree that has no trivial edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedGog {
    gog: GraphOfGroups,
    tree: SpanningTree,
}

impl NormalizedGog {
    /// Accepts `gog` with `tree` if the pair already satisfies the
    /// normalization condition.
    pub fn new(gog: GraphOfGroups, tree: SpanningTree) -> Result<Self, NormalizeError> {
        if !tree.is_spanning_tree_of(gog.graph()) {
            return Err(NormalizeError::NotSpanning);
        }
        if let Some(e) = find_trivial_edge(&gog, &tree) {
            return Err(NormalizeError::NotNormalized(e));
        }
        Ok(NormalizedGog { gog, tree })
    }

    pub fn gog(&self) -> &GraphOfGroups {
        &self.gog
    }

    pub fn tree(&self) -> &SpanningTree {
        &self.tree
    }

    pub fn into_parts(self) -> (GraphOfGroups, SpanningTree) {
        (self.gog, self.tree)
    }
}

fn is_trivial(gog: &GraphOfGroups, e: &EdgeId) -> bool {
    gog.edge_order(e) == gog.vertex_order(gog.graph().terminus(e))
}

/// All trivial tree half-edges, ascending.
pub fn trivial_edges<'a>(
    gog: &'a GraphOfGroups,
    tree: &'a SpanningTree,
) -> impl Iterator<Item = &'a EdgeId> + 'a {
    tree.tree_edges.iter().filter(|e| is_trivial(gog, e))
}

/// The smallest trivial tree half-edge, if any. An onto embedding at the
/// origin side shows up as the inverse half-edge.
pub fn find_trivial_edge(gog: &GraphOfGroups, tree: &SpanningTree) -> Option<EdgeId> {
    trivial_edges(gog, tree).next().cloned()
}

/// Contracts the trivial tree half-edge `e1` into its origin.
pub fn contract_edge(
    gog: &GraphOfGroups,
    tree: &SpanningTree,
    e1: &EdgeId,
) -> Result<(GraphOfGroups, SpanningTree, ContractionStep), NormalizeError> {
    if !tree.contains(e1) {
        return Err(NormalizeError::NotTreeEdge(e1.clone()));
    }
    if !is_trivial(gog, e1) {
        return Err(NormalizeError::NotTrivial(e1.clone()));
    }
    let g = gog.graph();
    let bar = g.bar(e1).clone();
    let step = ContractionStep {
        contracted_edge: e1.clone(),
        removed_vertex: g.terminus(e1).clone(),
        surviving_vertex: g.origin(e1).clone(),
    };

    let graph = g.contract(e1);
    let mut vertex_order = gog.vertex_orders().clone();
    vertex_order.remove(&step.removed_vertex);
    let mut edge_order = gog.edge_orders().clone();
    edge_order.remove(e1);
    edge_order.remove(&bar);

    let mut tree_edges = tree.tree_edges.clone();
    tree_edges.remove(e1);
    tree_edges.remove(&bar);
    let root = if tree.root == step.removed_vertex {
        step.surviving_vertex.clone()
    } else {
        tree.root.clone()
    };

    let gog = GraphOfGroups::from_trusted(graph, vertex_order, edge_order);
    let tree = SpanningTree { tree_edges, root };
    debug_assert!(tree.is_spanning_tree_of(gog.graph()));
    Ok((gog, tree, step))
}

/// Contracts trivial edges of the given tree, smallest id first, until none
/// remain.
pub fn normalize_with_tree(
    gog: &GraphOfGroups,
    tree: SpanningTree,
) -> Result<(NormalizedGog, Vec<ContractionStep>), NormalizeError> {
    if !tree.is_spanning_tree_of(gog.graph()) {
        return Err(NormalizeError::NotSpanning);
    }
    let mut current = (gog.clone(), tree);
    let mut steps = Vec::new();
    while let Some(e) = find_trivial_edge(&current.0, &current.1) {
        let (g, t, step) = contract_edge(&current.0, &current.1, &e)?;
        current = (g, t);
        steps.push(step);
    }
    let (gog, tree) = current;
    Ok((NormalizedGog { gog, tree }, steps))
}

/// Normalizes using the breadth-first spanning tree rooted at the smallest
/// vertex id. Performs at most `|V| - 1` contractions.
pub fn normalize(gog: &GraphOfGroups) -> (NormalizedGog, Vec<ContractionStep>) {
    let root = gog
        .graph()
        .vertices()
        .next()
        .expect("graph of groups has a vertex")
        .clone();
    let tree = gog
        .graph()
        .spanning_tree(&root)
        .expect("graph of groups is connected");
    normalize_with_tree(gog, tree).expect("spanning tree is valid")
}

/// Repeats [`normalize`] with a freshly built tree until a pass performs no
/// contraction. The result is a fixed point of [`normalize`] itself, which a
/// single pass does not guarantee: an edge outside the shrunken tree may be
/// trivial and lie in the breadth-first tree of the contracted graph.
pub fn normalize_fully(gog: &GraphOfGroups) -> (NormalizedGog, Vec<ContractionStep>) {
    let (mut current, mut steps) = normalize(gog);
    loop {
        let (next, more) = normalize(current.gog());
        if more.is_empty() {
            return (current, steps);
        }
        steps.extend(more);
        current = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gog::{serialize_gog, GogBuilder};

    fn segment(a: u64, e: u64, b: u64) -> GraphOfGroups {
        GogBuilder::new()
            .vertex("a", a)
            .vertex("b", b)
            .edge("s", "a", "b", e)
            .build()
            .unwrap()
    }

    fn tree_of(gog: &GraphOfGroups) -> SpanningTree {
        let root = gog.graph().vertices().next().unwrap().clone();
        gog.graph().spanning_tree(&root).unwrap()
    }

    #[test]
    fn trivial_edge_detection() {
        let g = segment(4, 2, 2);
        assert_eq!(find_trivial_edge(&g, &tree_of(&g)), Some("s".into()));

        let d = segment(2, 1, 2);
        assert_eq!(find_trivial_edge(&d, &tree_of(&d)), None);

        let lp = GogBuilder::new()
            .vertex("v", 2)
            .edge("e", "v", "v", 2)
            .build()
            .unwrap();
        assert_eq!(find_trivial_edge(&lp, &tree_of(&lp)), None);
    }

    #[test]
    fn origin_side_triviality_found_through_bar() {
        let g = segment(2, 2, 4);
        assert_eq!(find_trivial_edge(&g, &tree_of(&g)), Some("s~".into()));
    }

    #[test]
    fn contract_segment() {
        let g = segment(4, 2, 2);
        let (c, tree, step) = contract_edge(&g, &tree_of(&g), &"s".into()).unwrap();
        assert_eq!(serialize_gog(&c), "vertex a 4\n");
        assert!(tree.tree_edges.is_empty());
        assert_eq!(
            step,
            ContractionStep {
                contracted_edge: "s".into(),
                removed_vertex: "b".into(),
                surviving_vertex: "a".into(),
            }
        );
    }

    #[test]
    fn contract_rehomes_neighbours() {
        let g = GogBuilder::new()
            .vertex("x", 4)
            .vertex("y", 2)
            .vertex("z", 4)
            .edge("e1", "x", "y", 2)
            .edge("e2", "y", "z", 2)
            .build()
            .unwrap();
        let (c, _, _) = contract_edge(&g, &tree_of(&g), &"e1".into()).unwrap();
        assert_eq!(serialize_gog(&c), "vertex x 4\nvertex z 4\nedge e2 x z 2\n");
    }

    #[test]
    fn loops_ride_along() {
        let g = GogBuilder::new()
            .vertex("a", 2)
            .vertex("b", 2)
            .edge("e1", "a", "b", 2)
            .edge("l", "b", "b", 2)
            .build()
            .unwrap();
        let (c, _, _) = contract_edge(&g, &tree_of(&g), &"e1".into()).unwrap();
        assert_eq!(serialize_gog(&c), "vertex a 2\nedge l a a 2\n");
    }

    #[test]
    fn contract_errors() {
        let g = segment(2, 1, 2);
        let t = tree_of(&g);
        assert_eq!(
            contract_edge(&g, &t, &"s".into()).unwrap_err(),
            NormalizeError::NotTrivial("s".into())
        );
        let lp = GogBuilder::new()
            .vertex("v", 2)
            .edge("e", "v", "v", 2)
            .build()
            .unwrap();
        assert_eq!(
            contract_edge(&lp, &tree_of(&lp), &"e".into()).unwrap_err(),
            NormalizeError::NotTreeEdge("e".into())
        );
    }

    #[test]
    fn normalize_examples() {
        let d = segment(2, 1, 2);
        let (n, steps) = normalize(&d);
        assert!(steps.is_empty());
        assert_eq!(n.gog(), &d);

        let (n, steps) = normalize(&segment(4, 2, 2));
        assert_eq!(steps.len(), 1);
        assert_eq!(serialize_gog(n.gog()), "vertex a 4\n");

        let path = GogBuilder::new()
            .vertex("a", 2)
            .vertex("b", 2)
            .vertex("c", 2)
            .edge("e", "a", "b", 2)
            .edge("f", "b", "c", 2)
            .build()
            .unwrap();
        let (n, steps) = normalize(&path);
        assert_eq!(steps.len(), 2);
        assert_eq!(serialize_gog(n.gog()), "vertex a 2\n");
    }

    #[test]
    fn normalized_tree_edges_have_index_at_least_two() {
        let g = GogBuilder::new()
            .vertex("a", 12)
            .vertex("b", 6)
            .vertex("c", 6)
            .vertex("d", 4)
            .edge("e1", "a", "b", 6)
            .edge("e2", "b", "c", 3)
            .edge("e3", "c", "d", 2)
            .edge("e4", "d", "a", 4)
            .build()
            .unwrap();
        let (n, steps) = normalize(&g);
        assert!(steps.len() < 4);
        for e in &n.tree().tree_edges {
            let t = n.gog().graph().terminus(e);
            assert!(2 * n.gog().edge_order(e) <= n.gog().vertex_order(t));
        }
        assert!(NormalizedGog::new(n.gog().clone(), n.tree().clone()).is_ok());
    }

    #[test]
    fn full_normalization_is_idempotent() {
        let gog = GogBuilder::new()
            .vertex("v0", 4)
            .vertex("v4", 2)
            .vertex("v5", 4)
            .edge("e0", "v4", "v0", 2)
            .edge("e3", "v0", "v5", 1)
            .edge("e4", "v4", "v5", 1)
            .build()
            .unwrap();
        let root = VertexId::from("v5");
        let tree = gog.graph().spanning_tree(&root).unwrap();
        let (once, steps) = normalize_with_tree(&gog, tree).unwrap();
        assert!(steps.is_empty());
        assert_eq!(normalize(once.gog()).1.len(), 1);

        let (full, steps) = normalize_fully(&gog);
        assert_eq!(steps.len(), 1);
        assert!(normalize(full.gog()).1.is_empty());
        assert_eq!(full.gog().graph().vertex_count(), 2);
    }
}
