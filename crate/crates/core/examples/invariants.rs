// Computes m, the Euler characteristic, the type vector and the free rank
// for a few classical virtually free groups.

use gog_core::invariants::{euler_from_type, RationalDisplay};
use gog_core::{euler_char, free_rank, parse_gog, type_vector};

fn main() {
    let examples = [
        ("C2 * C2", "vertex a 2\nvertex b 2\nedge s a b 1"),
        ("PSL(2,Z)", "vertex a 2\nvertex b 3\nedge s a b 1"),
        ("SL(2,Z)", "vertex a 4\nvertex b 6\nedge s a b 2"),
        ("F3", "vertex v 1\nedge x v v 1\nedge y v v 1\nedge z v v 1"),
    ];
    for (name, text) in examples {
        let gog = parse_gog(text).expect("literal datum");
        let chi = euler_char(&gog);
        let tv = type_vector(&gog);
        assert_eq!(euler_from_type(&tv), chi);
        let zeta: Vec<String> = tv.zeta.iter().map(|(k, z)| format!("ζ_{k}={z}")).collect();
        println!(
            "{name:10} m={:<3} χ={:<6} μ={} {}",
            tv.m,
            RationalDisplay(&chi).to_string(),
            free_rank(&gog).expect("integral rank"),
            zeta.join(" ")
        );
    }
}
