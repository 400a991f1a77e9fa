// Parses a graph of groups with redundant tree edges, contracts them and
// prints the contraction log and the normalized datum.

use gog_core::{normalize, parse_gog, serialize_gog};

const INPUT: &str = "\
# a chain whose middle vertex only repeats its neighbours' subgroups
vertex a 6
vertex b 3
vertex c 3
vertex d 2
edge ab a b 3
edge bc b c 3
edge cd c d 1
edge loop a a 2
";

fn main() {
    let gog = parse_gog(INPUT).expect("input is a valid graph of groups");
    let (normalized, steps) = normalize(&gog);
    for step in &steps {
        println!(
            "contract {}: {} merges into {}",
            step.contracted_edge, step.removed_vertex, step.surviving_vertex
        );
    }
    print!("{}", serialize_gog(normalized.gog()));

    let (again, more) = normalize(normalized.gog());
    assert!(more.is_empty());
    assert_eq!(again.gog(), normalized.gog());
    println!("normalized datum is a fixed point");
}
