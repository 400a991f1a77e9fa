// Builds a Serre graph from half-edge records, takes its breadth-first
// spanning tree and orients the tree away from every possible root.

use gog_core::graph::{build_graph, EdgeRecord, VertexId};

fn main() {
    let vertices: Vec<VertexId> = ["a", "b", "c"].into_iter().map(VertexId::from).collect();
    let records = [
        EdgeRecord::new("ab", "ab~", "a", "b"),
        EdgeRecord::new("ab~", "ab", "b", "a"),
        EdgeRecord::new("bc", "bc~", "b", "c"),
        EdgeRecord::new("bc~", "bc", "c", "b"),
        EdgeRecord::new("ca", "ca~", "c", "a"),
        EdgeRecord::new("ca~", "ca", "a", "c"),
        EdgeRecord::new("loop", "loop~", "b", "b"),
        EdgeRecord::new("loop~", "loop", "b", "b"),
    ];
    let graph = build_graph(vertices, records).expect("records describe a graph");
    println!(
        "{} vertices, {} geometric edges, connected: {}",
        graph.vertex_count(),
        graph.geometric_edge_count(),
        graph.is_connected()
    );

    let root = VertexId::from("a");
    let tree = graph.spanning_tree(&root).expect("graph is connected");
    let tree_edges: Vec<&str> = tree.tree_edges.iter().map(|e| e.as_str()).collect();
    println!("spanning tree from a: {}", tree_edges.join(" "));
    assert!(tree.is_spanning_tree_of(&graph));

    for v0 in graph.vertices() {
        let orientation = tree.orient_from_root(&graph, v0).expect("v0 is a vertex");
        let chosen: Vec<&str> = orientation.iter().map(|e| e.as_str()).collect();
        println!("oriented away from {v0}: {}", chosen.join(" "));
    }

    let full = graph
        .extend_orientation(&tree.orient_from_root(&graph, &root).unwrap())
        .expect("tree orientation is consistent");
    println!("full orientation has {} half-edges", full.len());
}
