// Cross-checks the counting formulas against brute force: transitive
// permutation tuples for free groups and exhaustive small shapes.

use gog_core::oracle::{exhaustive_rank2_shapes, free_group_subgroup_counts};
use gog_core::{classify, f_series, free_rank, normalize, parse_gog};

fn main() {
    let f2 = parse_gog("vertex v 1\nedge x v v 1\nedge y v v 1").unwrap();
    let brute = free_group_subgroup_counts(2, 5).expect("degree is small");
    let formula = f_series(&f2, 5).unwrap();
    println!("F2 by enumeration: {brute:?}");
    println!("F2 by formula:     {formula:?}");
    assert!(brute.iter().zip(&formula).all(|(a, b)| *b == (*a).into()));

    let shapes = exhaustive_rank2_shapes(6).expect("bound is small");
    let mut rank2 = 0;
    for gog in &shapes {
        let (normalized, _) = normalize(gog);
        classify(&normalized).expect("every shape of rank at most 2 is classified");
        if free_rank(gog) == Ok(2) {
            rank2 += 1;
        }
    }
    println!(
        "{} normalized shapes with orders ≤ 6, {rank2} of rank 2",
        shapes.len()
    );
}
