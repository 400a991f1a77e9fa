//! Graphs in Serre's sense: a vertex set, a set of half-edges, a
//! fixed-point-free involution `e ↦ ē` and origin/terminus maps with
//! `t(ē) = o(e)`. Loops and multiple edges are allowed.
//!
//! Every traversal visits ids in ascending (lexicographic) order, so spanning
//! trees and orientations are reproducible.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

/// Opaque vertex identifier, ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub String);

/// Opaque half-edge identifier, ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub String);

impl VertexId {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl EdgeId {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId(s.to_owned())
    }
}

impl From<String> for VertexId {
    fn from(s: String) -> Self {
        VertexId(s)
    }
}

impl From<&str> for EdgeId {
    fn from(s: &str) -> Self {
        EdgeId(s.to_owned())
    }
}

impl From<String> for EdgeId {
    fn from(s: String) -> Self {
        EdgeId(s)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(VertexId),
    #[error("duplicate half-edge id `{0}`")]
    DuplicateEdge(EdgeId),
    #[error("half-edge `{0}` is its own inverse")]
    FixedPointInvolution(EdgeId),
    #[error("involution is not symmetric at half-edge `{0}`")]
    BrokenInvolution(EdgeId),
    #[error("terminus of the inverse of `{0}` differs from its origin")]
    IncidenceMismatch(EdgeId),
    #[error("half-edge `{edge}` refers to unknown vertex `{vertex}`")]
    DanglingVertexRef { edge: EdgeId, vertex: VertexId },
    #[error("graph is not connected")]
    NotConnected,
    #[error("unknown root vertex `{0}`")]
    UnknownRoot(VertexId),
    #[error("orientation marks both `{0}` and its inverse")]
    PartialConflict(EdgeId),
    #[error("unknown half-edge `{0}`")]
    UnknownEdge(EdgeId),
}

/// Input record for [`build_graph`]: `(edge, bar, origin, terminus)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeRecord {
    pub id: EdgeId,
    pub bar: EdgeId,
    pub origin: VertexId,
    pub terminus: VertexId,
}

impl EdgeRecord {
    pub fn new(id: &str, bar: &str, origin: &str, terminus: &str) -> Self {
        EdgeRecord {
            id: id.into(),
            bar: bar.into(),
            origin: origin.into(),
            terminus: terminus.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct HalfEdge {
    pub(crate) bar: EdgeId,
    pub(crate) origin: VertexId,
    pub(crate) terminus: VertexId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeMap<EdgeId, HalfEdge>,
}

/// Builds a graph from vertex ids and half-edge records, checking every
/// graph axiom.
pub fn build_graph<V, I>(vertex_ids: V, edge_records: I) -> Result<Graph, GraphError>
where
    V: IntoIterator<Item = VertexId>,
    I: IntoIterator<Item = EdgeRecord>,
{
    let mut vertices = BTreeSet::new();
    for v in vertex_ids {
        if !vertices.insert(v.clone()) {
            return Err(GraphError::DuplicateVertex(v));
        }
    }
    let mut edges = BTreeMap::new();
    for rec in edge_records {
        if edges.contains_key(&rec.id) {
            return Err(GraphError::DuplicateEdge(rec.id));
        }
        edges.insert(
            rec.id,
            HalfEdge {
                bar: rec.bar,
                origin: rec.origin,
                terminus: rec.terminus,
            },
        );
    }
    Graph::from_parts(vertices, edges)
}

impl Graph {
    pub(crate) fn from_parts(
        vertices: BTreeSet<VertexId>,
        edges: BTreeMap<EdgeId, HalfEdge>,
    ) -> Result<Graph, GraphError> {
        for (id, he) in &edges {
            for v in [&he.origin, &he.terminus] {
                if !vertices.contains(v) {
                    return Err(GraphError::DanglingVertexRef {
                        edge: id.clone(),
                        vertex: v.clone(),
                    });
                }
            }
        }
        for (id, he) in &edges {
            if he.bar == *id {
                return Err(GraphError::FixedPointInvolution(id.clone()));
            }
            let bar = edges
                .get(&he.bar)
                .ok_or_else(|| GraphError::BrokenInvolution(id.clone()))?;
            if bar.bar != *id {
                return Err(GraphError::BrokenInvolution(id.clone()));
            }
            if bar.terminus != he.origin {
                return Err(GraphError::IncidenceMismatch(id.clone()));
            }
        }
        Ok(Graph { vertices, edges })
    }

    pub fn vertices(&self) -> impl Iterator<Item = &VertexId> + '_ {
        self.vertices.iter()
    }

    pub fn half_edges(&self) -> impl Iterator<Item = &EdgeId> + '_ {
        self.edges.keys()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn half_edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn geometric_edge_count(&self) -> usize {
        self.edges.len() / 2
    }

    pub fn has_vertex(&self, v: &VertexId) -> bool {
        self.vertices.contains(v)
    }

    pub fn has_edge(&self, e: &EdgeId) -> bool {
        self.edges.contains_key(e)
    }

    fn half_edge(&self, e: &EdgeId) -> &HalfEdge {
        self.edges
            .get(e)
            .unwrap_or_else(|| panic!("unknown half-edge `{e}`"))
    }

    /// Panics on an unknown id, as do `origin` and `terminus`.
    pub fn bar(&self, e: &EdgeId) -> &EdgeId {
        &self.half_edge(e).bar
    }

    pub fn origin(&self, e: &EdgeId) -> &VertexId {
        &self.half_edge(e).origin
    }

    pub fn terminus(&self, e: &EdgeId) -> &VertexId {
        &self.half_edge(e).terminus
    }

    pub fn is_loop(&self, e: &EdgeId) -> bool {
        let he = self.half_edge(e);
        he.origin == he.terminus
    }

    /// The half-edge of each geometric edge with the smaller id.
    pub fn canonical_orientation(&self) -> Orientation {
        Orientation {
            chosen: self
                .edges
                .iter()
                .filter(|(id, he)| **id < he.bar)
                .map(|(id, _)| id.clone())
                .collect(),
        }
    }

    /// Half-edges leaving `v`, in ascending id order.
    pub fn outgoing<'a>(&'a self, v: &'a VertexId) -> impl Iterator<Item = &'a EdgeId> + 'a {
        self.edges
            .iter()
            .filter(move |(_, he)| he.origin == *v)
            .map(|(id, _)| id)
    }

    fn adjacency(&self) -> BTreeMap<&VertexId, Vec<&EdgeId>> {
        let mut adj: BTreeMap<&VertexId, Vec<&EdgeId>> =
            self.vertices.iter().map(|v| (v, Vec::new())).collect();
        for (id, he) in &self.edges {
            adj.get_mut(&he.origin)
                .expect("validated incidence")
                .push(id);
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        let Some(first) = self.vertices.iter().next() else {
            return false;
        };
        let adj = self.adjacency();
        let mut seen = BTreeSet::from([first]);
        let mut queue = VecDeque::from([first]);
        while let Some(v) = queue.pop_front() {
            for e in &adj[v] {
                let w = &self.edges[*e].terminus;
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen.len() == self.vertices.len()
    }

    /// Connected with exactly `|V| - 1` geometric edges.
    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.geometric_edge_count() + 1 == self.vertex_count()
    }

    /// Breadth-first spanning tree from `root`, scanning half-edges in
    /// ascending id order.
    pub fn spanning_tree(&self, root: &VertexId) -> Result<SpanningTree, GraphError> {
        if !self.vertices.contains(root) {
            return Err(GraphError::UnknownRoot(root.clone()));
        }
        let adj = self.adjacency();
        let mut seen = BTreeSet::from([root]);
        let mut queue = VecDeque::from([root]);
        let mut tree_edges = BTreeSet::new();
        while let Some(v) = queue.pop_front() {
            for e in &adj[v] {
                let he = &self.edges[*e];
                if seen.insert(&he.terminus) {
                    tree_edges.insert((*e).clone());
                    tree_edges.insert(he.bar.clone());
                    queue.push_back(&he.terminus);
                }
            }
        }
        if seen.len() != self.vertices.len() {
            return Err(GraphError::NotConnected);
        }
        Ok(SpanningTree {
            tree_edges,
            root: root.clone(),
        })
    }

    /// Path-metric distances from `v0` using only the given half-edges.
    fn distances<'a>(
        &'a self,
        v0: &'a VertexId,
        allowed: &BTreeSet<EdgeId>,
    ) -> BTreeMap<&'a VertexId, usize> {
        let adj = self.adjacency();
        let mut dist = BTreeMap::from([(v0, 0usize)]);
        let mut queue = VecDeque::from([v0]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v];
            for e in adj[v].iter().filter(|e| allowed.contains(**e)) {
                let w = &self.edges[*e].terminus;
                if !dist.contains_key(w) {
                    dist.insert(w, d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Completes `partial` to a full orientation; uncovered pairs take the
    /// half-edge with the smaller id.
    pub fn extend_orientation(&self, partial: &Orientation) -> Result<Orientation, GraphError> {
        for e in &partial.chosen {
            if !self.has_edge(e) {
                return Err(GraphError::UnknownEdge(e.clone()));
            }
            if partial.chosen.contains(self.bar(e)) {
                return Err(GraphError::PartialConflict(
                    e.clone().min(self.bar(e).clone()),
                ));
            }
        }
        let mut chosen = partial.chosen.clone();
        for (id, he) in &self.edges {
            if *id < he.bar && !chosen.contains(id) && !chosen.contains(&he.bar) {
                chosen.insert(id.clone());
            }
        }
        Ok(Orientation { chosen })
    }

    /// Graph with the geometric edge of `e` removed and vertex `t(e)` merged
    /// into `o(e)`.
    pub(crate) fn contract(&self, e: &EdgeId) -> Graph {
        let he = self.half_edge(e);
        let (keep, drop) = (he.origin.clone(), he.terminus.clone());
        let mut vertices = self.vertices.clone();
        vertices.remove(&drop);
        let rehome = |v: &VertexId| if *v == drop { keep.clone() } else { v.clone() };
        let edges = self
            .edges
            .iter()
            .filter(|(id, _)| *id != e && **id != he.bar)
            .map(|(id, other)| {
                (
                    id.clone(),
                    HalfEdge {
                        bar: other.bar.clone(),
                        origin: rehome(&other.origin),
                        terminus: rehome(&other.terminus),
                    },
                )
            })
            .collect();
        Graph { vertices, edges }
    }
}

/// A choice of exactly one half-edge from some geometric edges.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Orientation {
    pub chosen: BTreeSet<EdgeId>,
}

impl Orientation {
    pub fn contains(&self, e: &EdgeId) -> bool {
        self.chosen.contains(e)
    }

    pub fn len(&self) -> usize {
        self.chosen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chosen.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &EdgeId> + '_ {
        self.chosen.iter()
    }
}

/// A spanning tree of some graph, stored as a bar-closed half-edge set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    pub tree_edges: BTreeSet<EdgeId>,
    pub root: VertexId,
}

impl SpanningTree {
    pub fn contains(&self, e: &EdgeId) -> bool {
        self.tree_edges.contains(e)
    }

    pub fn geometric_edge_count(&self) -> usize {
        self.tree_edges.len() / 2
    }

    /// Checks that this is a spanning tree of `g`.
    pub fn is_spanning_tree_of(&self, g: &Graph) -> bool {
        if !g.has_vertex(&self.root) {
            return false;
        }
        if self
            .tree_edges
            .iter()
            .any(|e| !g.has_edge(e) || !self.tree_edges.contains(g.bar(e)))
        {
            return false;
        }
        self.tree_edges.len() + 2 == 2 * g.vertex_count()
            && g.distances(&self.root, &self.tree_edges).len() == g.vertex_count()
    }

    /// Orients every tree edge away from `v0`. The map `e ↦ t(e)` on the
    /// result is a bijection onto the vertices other than `v0`, and this is
    /// the only orientation of the tree with that property.
    pub fn orient_from_root(&self, g: &Graph, v0: &VertexId) -> Result<Orientation, GraphError> {
        if !g.has_vertex(v0) {
            return Err(GraphError::UnknownRoot(v0.clone()));
        }
        let dist = g.distances(v0, &self.tree_edges);
        let chosen = self
            .tree_edges
            .iter()
            .filter(|e| {
                let (o, t) = (g.origin(e), g.terminus(e));
                matches!((dist.get(o), dist.get(t)), (Some(a), Some(b)) if *b == *a + 1)
            })
            .cloned()
            .collect();
        Ok(Orientation { chosen })
    }

    /// Tree path-metric distance from `v0` to every vertex.
    pub fn depths<'a>(&self, g: &'a Graph, v0: &'a VertexId) -> BTreeMap<&'a VertexId, usize> {
        g.distances(v0, &self.tree_edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(ids: &[&str]) -> Vec<VertexId> {
        ids.iter().map(|s| VertexId::from(*s)).collect()
    }

    fn pair(id: &str, o: &str, t: &str) -> [EdgeRecord; 2] {
        let bar = format!("{id}~");
        [
            EdgeRecord::new(id, &bar, o, t),
            EdgeRecord::new(&bar, id, t, o),
        ]
    }

    fn graph(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Graph {
        build_graph(
            vs(vertices),
            edges.iter().flat_map(|(e, o, t)| pair(e, o, t)),
        )
        .unwrap()
    }

    fn ids(set: &BTreeSet<EdgeId>) -> Vec<&str> {
        set.iter().map(|e| e.as_str()).collect()
    }

    #[test]
    fn loop_graph_is_valid() {
        let g = graph(&["v"], &[("e", "v", "v")]);
        assert_eq!(g.geometric_edge_count(), 1);
        assert!(g.is_loop(&"e".into()));
    }

    #[test]
    fn segment_is_valid() {
        let g = graph(&["a", "b"], &[("s", "a", "b")]);
        assert_eq!(g.geometric_edge_count(), 1);
        assert!(g.is_tree());
    }

    #[test]
    fn construction_errors() {
        let err = build_graph(
            vs(&["a", "b"]),
            [
                EdgeRecord::new("e", "f", "a", "b"),
                EdgeRecord::new("f", "e", "a", "a"),
            ],
        )
        .unwrap_err();
        assert_eq!(err, GraphError::IncidenceMismatch("f".into()));

        let err = build_graph(vs(&["a"]), [EdgeRecord::new("e", "e", "a", "a")]).unwrap_err();
        assert_eq!(err, GraphError::FixedPointInvolution("e".into()));

        let err = build_graph(
            vs(&["a"]),
            [
                EdgeRecord::new("e", "f", "a", "a"),
                EdgeRecord::new("f", "g", "a", "a"),
                EdgeRecord::new("g", "f", "a", "a"),
            ],
        )
        .unwrap_err();
        assert_eq!(err, GraphError::BrokenInvolution("e".into()));

        let err = build_graph(vs(&[]), pair("s", "a", "b")).unwrap_err();
        assert!(matches!(err, GraphError::DanglingVertexRef { .. }));

        let err = build_graph(vs(&["a", "a"]), []).unwrap_err();
        assert_eq!(err, GraphError::DuplicateVertex("a".into()));
    }

    #[test]
    fn connectivity() {
        assert!(graph(&["a", "b"], &[("s", "a", "b")]).is_connected());
        assert!(!graph(&["a", "b"], &[]).is_connected());
        assert!(graph(&["a"], &[]).is_connected());
        assert!(!graph(&[], &[]).is_connected());
    }

    #[test]
    fn spanning_tree_of_loop_is_empty() {
        let g = graph(&["v"], &[("e", "v", "v")]);
        let t = g.spanning_tree(&"v".into()).unwrap();
        assert!(t.tree_edges.is_empty());
        assert_eq!(t.root, VertexId::from("v"));
        assert!(t.is_spanning_tree_of(&g));
    }

    #[test]
    fn spanning_tree_of_path_is_the_path() {
        let g = graph(&["v1", "v2", "v3"], &[("a", "v1", "v2"), ("b", "v2", "v3")]);
        let t = g.spanning_tree(&"v1".into()).unwrap();
        assert_eq!(ids(&t.tree_edges), ["a", "a~", "b", "b~"]);
    }

    #[test]
    fn spanning_tree_of_triangle() {
        // From v1 the half-edges out of v1 are a (to v2) and c~ (to v3); both
        // discover new vertices, so b is left out.
        let g = graph(
            &["v1", "v2", "v3"],
            &[("a", "v1", "v2"), ("b", "v2", "v3"), ("c", "v3", "v1")],
        );
        let t = g.spanning_tree(&"v1".into()).unwrap();
        assert_eq!(ids(&t.tree_edges), ["a", "a~", "c", "c~"]);
        assert!(t.is_spanning_tree_of(&g));
        assert_eq!(t, g.spanning_tree(&"v1".into()).unwrap());
    }

    #[test]
    fn spanning_tree_errors() {
        let g = graph(&["a", "b"], &[]);
        assert_eq!(
            g.spanning_tree(&"a".into()).unwrap_err(),
            GraphError::NotConnected
        );
        assert_eq!(
            g.spanning_tree(&"z".into()).unwrap_err(),
            GraphError::UnknownRoot("z".into())
        );
    }

    #[test]
    fn orient_path_from_end() {
        let g = graph(&["v0", "v1", "v2"], &[("a", "v0", "v1"), ("b", "v2", "v1")]);
        let t = g.spanning_tree(&"v0".into()).unwrap();
        let o = t.orient_from_root(&g, &"v0".into()).unwrap();
        assert_eq!(ids(&o.chosen), ["a", "b~"]);
        let termini: BTreeSet<_> = o.iter().map(|e| g.terminus(e).as_str()).collect();
        assert_eq!(termini, BTreeSet::from(["v1", "v2"]));
    }

    #[test]
    fn orient_single_vertex() {
        let g = graph(&["v"], &[]);
        let t = g.spanning_tree(&"v".into()).unwrap();
        assert!(t.orient_from_root(&g, &"v".into()).unwrap().is_empty());
    }

    #[test]
    fn orient_star_from_leaf() {
        let g = graph(
            &["c", "l1", "l2", "l3", "l4"],
            &[
                ("e1", "l1", "c"),
                ("e2", "c", "l2"),
                ("e3", "l3", "c"),
                ("e4", "c", "l4"),
            ],
        );
        let t = g.spanning_tree(&"c".into()).unwrap();
        let o = t.orient_from_root(&g, &"l1".into()).unwrap();
        assert_eq!(ids(&o.chosen), ["e1", "e2", "e3~", "e4"]);
        let termini: BTreeSet<_> = o.iter().map(|e| g.terminus(e).as_str()).collect();
        assert_eq!(termini, BTreeSet::from(["c", "l2", "l3", "l4"]));
        assert!(t.orient_from_root(&g, &"zz".into()).is_err());
    }

    #[test]
    fn extend_orientation_rules() {
        let lp = graph(&["v"], &[("e", "v", "v")]);
        let full = lp.extend_orientation(&Orientation::default()).unwrap();
        assert_eq!(ids(&full.chosen), ["e"]);

        let path = graph(&["v0", "v1"], &[("a", "v1", "v0")]);
        let t = path.spanning_tree(&"v0".into()).unwrap();
        let o = t.orient_from_root(&path, &"v0".into()).unwrap();
        assert_eq!(path.extend_orientation(&o).unwrap(), o);

        let with_loop = graph(&["v0", "v1"], &[("a", "v1", "v0"), ("b", "v1", "v1")]);
        let t = with_loop.spanning_tree(&"v0".into()).unwrap();
        let o = t.orient_from_root(&with_loop, &"v0".into()).unwrap();
        let full = with_loop.extend_orientation(&o).unwrap();
        assert_eq!(ids(&full.chosen), ["a~", "b"]);

        let bad = Orientation {
            chosen: BTreeSet::from(["b".into(), "b~".into()]),
        };
        assert_eq!(
            with_loop.extend_orientation(&bad).unwrap_err(),
            GraphError::PartialConflict("b".into())
        );
    }

    #[test]
    fn orientation_increases_depth() {
        let g = graph(
            &["a", "b", "c", "d", "e"],
            &[
                ("1", "a", "b"),
                ("2", "c", "b"),
                ("3", "b", "d"),
                ("4", "e", "d"),
            ],
        );
        let t = g.spanning_tree(&"a".into()).unwrap();
        for v0 in g.vertices() {
            let o = t.orient_from_root(&g, v0).unwrap();
            let depth = t.depths(&g, v0);
            assert_eq!(o.len(), 4);
            for e in o.iter() {
                assert_eq!(depth[g.terminus(e)], depth[g.origin(e)] + 1);
            }
        }
    }
}
