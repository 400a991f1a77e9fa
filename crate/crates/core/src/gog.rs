//! Finite graphs of finite groups, recorded by group orders only.
//!
//! Every quantity computed by this crate depends on `|Γ(v)|` and `|Γ(e)|`
//! alone, so the vertex and edge groups and their embeddings are never
//! materialized. Divisibility `|Γ(e)|  |  |Γ(t(e))|` is the only trace of
//! the embeddings that is checked.
//!
//! # Text format
//!
//! ```text
//! # infinite dihedral group C2 * C2
//! vertex a 2
//! vertex b 2
//! edge s a b 1
//! ```
//!
//! `edge <id> <origin> <terminus> <order>` creates the half-edges `<id>` and
//! `<id>~`. User ids must not contain `~`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::graph::{build_graph, EdgeId, EdgeRecord, Graph, GraphError, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationIssue {
    #[error("graph has no vertices")]
    Empty,
    #[error("graph is not connected")]
    NotConnected,
    #[error("vertex `{0}` has no order")]
    MissingVertexOrder(VertexId),
    #[error("half-edge `{0}` has no order")]
    MissingEdgeOrder(EdgeId),
    #[error("order of `{0}` must be positive")]
    ZeroOrder(String),
    #[error("half-edge `{0}` and its inverse carry different orders")]
    EdgeOrderNotSymmetric(EdgeId),
    #[error("order of half-edge `{edge}` does not divide the order of vertex `{vertex}`")]
    DivisibilityViolation { edge: EdgeId, vertex: VertexId },
}

impl ValidationIssue {
    /// Stable short code for command-line diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            ValidationIssue::Empty => "E_EMPTY",
            ValidationIssue::NotConnected => "E_NOT_CONNECTED",
            ValidationIssue::MissingVertexOrder(_) | ValidationIssue::MissingEdgeOrder(_) => {
                "E_MISSING_ORDER"
            }
            ValidationIssue::ZeroOrder(_) => "E_ZERO_ORDER",
            ValidationIssue::EdgeOrderNotSymmetric(_) => "E_EDGE_ORDER_ASYMMETRIC",
            ValidationIssue::DivisibilityViolation { .. } => "E_DIVISIBILITY",
        }
    }
}

/// Outcome of [`validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationReport {
    Valid,
    Invalid(ValidationIssue),
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        matches!(self, ValidationReport::Valid)
    }

    pub fn into_result(self) -> Result<(), ValidationIssue> {
        match self {
            ValidationReport::Valid => Ok(()),
            ValidationReport::Invalid(issue) => Err(issue),
        }
    }
}

/// Checks order data against a graph and reports the first violation.
pub fn validate_parts(
    graph: &Graph,
    vertex_order: &BTreeMap<VertexId, u64>,
    edge_order: &BTreeMap<EdgeId, u64>,
) -> ValidationReport {
    use ValidationIssue::*;
    let check = || -> Result<(), ValidationIssue> {
        if graph.vertex_count() == 0 {
            return Err(Empty);
        }
        for v in graph.vertices() {
            match vertex_order.get(v) {
                None => return Err(MissingVertexOrder(v.clone())),
                Some(0) => return Err(ZeroOrder(v.to_string())),
                Some(_) => {}
            }
        }
        for e in graph.half_edges() {
            let order = match edge_order.get(e) {
                None => return Err(MissingEdgeOrder(e.clone())),
                Some(0) => return Err(ZeroOrder(e.to_string())),
                Some(n) => *n,
            };
            if edge_order.get(graph.bar(e)) != Some(&order) {
                return Err(EdgeOrderNotSymmetric(e.clone()));
            }
            let t = graph.terminus(e);
            if !vertex_order[t].is_multiple_of(order) {
                return Err(DivisibilityViolation {
                    edge: e.clone(),
                    vertex: t.clone(),
                });
            }
        }
        if !graph.is_connected() {
            return Err(NotConnected);
        }
        Ok(())
    };
    match check() {
        Ok(()) => ValidationReport::Valid,
        Err(issue) => ValidationReport::Invalid(issue),
    }
}

/// Re-checks every invariant of an existing graph of groups.
pub fn validate(gog: &GraphOfGroups) -> ValidationReport {
    validate_parts(&gog.graph, &gog.vertex_order, &gog.edge_order)
}

/// A connected finite graph with a group order on every vertex and on every
/// geometric edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphOfGroups {
    graph: Graph,
    vertex_order: BTreeMap<VertexId, u64>,
    edge_order: BTreeMap<EdgeId, u64>,
}

impl GraphOfGroups {
    pub fn new(
        graph: Graph,
        vertex_order: BTreeMap<VertexId, u64>,
        edge_order: BTreeMap<EdgeId, u64>,
    ) -> Result<Self, ValidationIssue> {
        validate_parts(&graph, &vertex_order, &edge_order).into_result()?;
        // Orders for ids outside the graph are dropped.
        let vertex_order = vertex_order
            .into_iter()
            .filter(|(v, _)| graph.has_vertex(v))
            .collect();
        let edge_order = edge_order
            .into_iter()
            .filter(|(e, _)| graph.has_edge(e))
            .collect();
        Ok(GraphOfGroups {
            graph,
            vertex_order,
            edge_order,
        })
    }

    pub(crate) fn from_trusted(
        graph: Graph,
        vertex_order: BTreeMap<VertexId, u64>,
        edge_order: BTreeMap<EdgeId, u64>,
    ) -> Self {
        debug_assert!(validate_parts(&graph, &vertex_order, &edge_order).is_valid());
        GraphOfGroups {
            graph,
            vertex_order,
            edge_order,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_order(&self, v: &VertexId) -> u64 {
        self.vertex_order[v]
    }

    pub fn edge_order(&self, e: &EdgeId) -> u64 {
        self.edge_order[e]
    }

    pub fn vertex_orders(&self) -> &BTreeMap<VertexId, u64> {
        &self.vertex_order
    }

    pub fn edge_orders(&self) -> &BTreeMap<EdgeId, u64> {
        &self.edge_order
    }

    /// Orders of one half-edge per geometric edge.
    pub fn geometric_edge_orders(&self) -> impl Iterator<Item = u64> + '_ {
        self.graph
            .canonical_orientation()
            .chosen
            .into_iter()
            .map(|e| self.edge_order[&e])
    }
}

/// Incremental construction in the same vocabulary as the text format.
#[derive(Debug, Default, Clone)]
pub struct GogBuilder {
    vertices: Vec<(VertexId, u64)>,
    edges: Vec<(String, VertexId, VertexId, u64)>,
}

impl GogBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(mut self, id: &str, order: u64) -> Self {
        self.vertices.push((id.into(), order));
        self
    }

    /// Adds half-edges `id` (from `origin` to `terminus`) and `id~`.
    pub fn edge(mut self, id: &str, origin: &str, terminus: &str, order: u64) -> Self {
        self.edges
            .push((id.to_owned(), origin.into(), terminus.into(), order));
        self
    }

    pub fn build(self) -> Result<GraphOfGroups, ParseError> {
        let mut records = Vec::with_capacity(2 * self.edges.len());
        let mut edge_order = BTreeMap::new();
        for (id, o, t, order) in &self.edges {
            let bar = format!("{id}~");
            records.push(EdgeRecord {
                id: id.as_str().into(),
                bar: bar.as_str().into(),
                origin: o.clone(),
                terminus: t.clone(),
            });
            records.push(EdgeRecord {
                id: bar.as_str().into(),
                bar: id.as_str().into(),
                origin: t.clone(),
                terminus: o.clone(),
            });
            edge_order.insert(EdgeId::from(id.as_str()), *order);
            edge_order.insert(EdgeId::from(bar), *order);
        }
        let graph = build_graph(self.vertices.iter().map(|(v, _)| v.clone()), records)?;
        let vertex_order = self.vertices.into_iter().collect();
        Ok(GraphOfGroups::new(graph, vertex_order, edge_order)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Invalid(#[from] ValidationIssue),
}

impl ParseError {
    pub fn code(&self) -> &'static str {
        match self {
            ParseError::Syntax { .. } => "E_SYNTAX",
            ParseError::Graph(GraphError::DanglingVertexRef { .. }) => "E_DANGLING_VERTEX",
            ParseError::Graph(_) => "E_GRAPH",
            ParseError::Invalid(issue) => issue.code(),
        }
    }
}

fn parse_id(token: &str, line: usize) -> Result<&str, ParseError> {
    if token.contains('~') {
        return Err(ParseError::Syntax {
            line,
            message: format!("id `{token}` contains the reserved character `~`"),
        });
    }
    Ok(token)
}

fn parse_order(token: &str, line: usize) -> Result<u64, ParseError> {
    match token.parse::<u64>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(ParseError::Syntax {
            line,
            message: format!("expected a positive integer order, found `{token}`"),
        }),
    }
}

/// Parses and validates the line-based text format.
pub fn parse_gog(text: &str) -> Result<GraphOfGroups, ParseError> {
    let mut builder = GogBuilder::new();
    let mut seen_vertices = BTreeSet::new();
    let mut seen_edges = BTreeSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or_default();
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens.as_slice() {
            [] => {}
            ["vertex", id, order] => {
                let id = parse_id(id, line)?;
                if !seen_vertices.insert(id.to_owned()) {
                    return Err(ParseError::Syntax {
                        line,
                        message: format!("duplicate vertex `{id}`"),
                    });
                }
                builder = builder.vertex(id, parse_order(order, line)?);
            }
            ["edge", id, origin, terminus, order] => {
                let id = parse_id(id, line)?;
                if !seen_edges.insert(id.to_owned()) {
                    return Err(ParseError::Syntax {
                        line,
                        message: format!("duplicate edge `{id}`"),
                    });
                }
                let (o, t) = (parse_id(origin, line)?, parse_id(terminus, line)?);
                for v in [o, t] {
                    if !seen_vertices.contains(v) {
                        return Err(ParseError::Graph(GraphError::DanglingVertexRef {
                            edge: id.into(),
                            vertex: v.into(),
                        }));
                    }
                }
                builder = builder.edge(id, o, t, parse_order(order, line)?);
            }
            [kw, ..] if *kw == "vertex" || *kw == "edge" => {
                return Err(ParseError::Syntax {
                    line,
                    message: format!("wrong number of fields for `{kw}`"),
                });
            }
            [kw, ..] => {
                return Err(ParseError::Syntax {
                    line,
                    message: format!("unknown directive `{kw}`"),
                });
            }
        }
    }
    builder.build()
}

/// Canonical text: vertices by id, then one line per geometric edge named by
/// its smaller half-edge id.
pub fn serialize_gog(gog: &GraphOfGroups) -> String {
    let g = gog.graph();
    let mut out = String::new();
    for (v, order) in gog.vertex_orders() {
        writeln!(out, "vertex {v} {order}").unwrap();
    }
    for e in g.canonical_orientation().iter() {
        writeln!(
            out,
            "edge {e} {} {} {}",
            g.origin(e),
            g.terminus(e),
            gog.edge_order(e)
        )
        .unwrap();
    }
    out
}

impl fmt::Display for GraphOfGroups {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_gog(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const DIHEDRAL: &str = "vertex a 2\nvertex b 2\nedge s a b 1\n";
    const F2: &str = "vertex v 1\nedge p v v 1\nedge q v v 1\n";

    fn issue(b: GogBuilder) -> ValidationIssue {
        match b.build().unwrap_err() {
            ParseError::Invalid(i) => i,
            other => panic!("expected validation issue, got {other:?}"),
        }
    }

    #[test]
    fn validate_examples() {
        let ok = GogBuilder::new()
            .vertex("a", 2)
            .vertex("b", 3)
            .edge("s", "a", "b", 1)
            .build()
            .unwrap();
        assert!(validate(&ok).is_valid());

        let bad = GogBuilder::new()
            .vertex("a", 2)
            .vertex("b", 3)
            .edge("s", "a", "b", 2);
        assert_eq!(
            issue(bad),
            ValidationIssue::DivisibilityViolation {
                edge: "s".into(),
                vertex: "b".into()
            }
        );

        let hnn = GogBuilder::new()
            .vertex("v", 4)
            .edge("e", "v", "v", 4)
            .build()
            .unwrap();
        assert!(validate(&hnn).is_valid());
    }

    #[test]
    fn validate_structural_issues() {
        assert_eq!(issue(GogBuilder::new()), ValidationIssue::Empty);
        assert_eq!(
            issue(GogBuilder::new().vertex("a", 1).vertex("b", 1)),
            ValidationIssue::NotConnected
        );

        let g = build_graph(
            ["v".into()],
            [
                EdgeRecord::new("e", "f", "v", "v"),
                EdgeRecord::new("f", "e", "v", "v"),
            ],
        )
        .unwrap();
        let vo = BTreeMap::from([("v".into(), 4)]);
        let eo = BTreeMap::from([("e".into(), 2), ("f".into(), 4)]);
        assert_eq!(
            validate_parts(&g, &vo, &eo),
            ValidationReport::Invalid(ValidationIssue::EdgeOrderNotSymmetric("e".into()))
        );
    }

    #[test]
    fn parse_examples() {
        let d = parse_gog("vertex a 2\nvertex b 2\nedge s a b 1").unwrap();
        assert_eq!(d.graph().vertex_count(), 2);
        assert_eq!(d.edge_order(&"s~".into()), 1);
        assert_eq!(d.graph().origin(&"s~".into()), &VertexId::from("b"));

        let f2 = parse_gog(F2).unwrap();
        assert_eq!(f2.graph().vertex_count(), 1);
        assert_eq!(f2.graph().geometric_edge_count(), 2);

        let err = parse_gog("edge s a b 1").unwrap_err();
        assert!(matches!(
            err,
            ParseError::Graph(GraphError::DanglingVertexRef { .. })
        ));
    }

    #[test]
    fn parse_syntax_errors() {
        let cases = [
            ("vertex a\n", 1),
            ("# c\nvertex a 0\n", 2),
            ("vertex a 2\nvertex a~ 2\n", 2),
            ("vertex a 2\nnode b 2\n", 2),
            ("vertex a 2\nvertex a 3\n", 2),
            ("vertex a x\n", 1),
        ];
        for (text, expected_line) in cases {
            match parse_gog(text) {
                Err(ParseError::Syntax { line, .. }) => assert_eq!(line, expected_line, "{text}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# header\n\nvertex a 2   # two\n  vertex b 2\nedge s a b 1 # amalgam\n";
        assert_eq!(parse_gog(text).unwrap(), parse_gog(DIHEDRAL).unwrap());
    }

    #[test]
    fn serialize_round_trips() {
        for text in [DIHEDRAL, F2] {
            let gog = parse_gog(text).unwrap();
            assert_eq!(serialize_gog(&gog), text);
            assert_eq!(parse_gog(&serialize_gog(&gog)).unwrap(), gog);
        }
    }

    #[test]
    fn serialize_sorts_ids() {
        let gog = GogBuilder::new()
            .vertex("z", 2)
            .vertex("b", 4)
            .edge("y", "z", "b", 2)
            .edge("c", "b", "b", 1)
            .build()
            .unwrap();
        assert_eq!(
            serialize_gog(&gog),
            "vertex b 4\nvertex z 2\nedge c b b 1\nedge y z b 2\n"
        );
    }
}
