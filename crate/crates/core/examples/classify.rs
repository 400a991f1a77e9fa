// Classifies normalized data of free rank at most 2 and compares the
// class-specific recurrence with the general convolution.

use gog_core::counting::{f_series_rank2, parity_profile};
use gog_core::{classify, f_series, normalize, parse_gog};

fn main() {
    let examples = [
        "vertex v 5\nedge l v v 5",
        "vertex a 2\nvertex b 2\nedge s a b 1",
        "vertex a 2\nvertex b 3\nedge s a b 1",
        "vertex a 6\nvertex b 4\nedge s a b 2",
        "vertex v 4\nedge l v v 2",
        "vertex v 3\nedge x v v 3\nedge y v v 3",
        "vertex a 4\nvertex b 4\nedge s a b 2\nedge l b b 4",
        "vertex a 2\nvertex b 2\nvertex c 2\nedge s a b 1\nedge t b c 1",
    ];
    for text in examples {
        let gog = parse_gog(text).expect("literal datum");
        let (normalized, _) = normalize(&gog);
        let report = classify(&normalized).expect("rank at most 2");
        println!("{report}");
        if report.label.is_rank2() {
            let generic = f_series(&gog, 10).unwrap();
            let special = f_series_rank2(report.label, &report.params, 10).unwrap();
            assert_eq!(generic, special);
            let odd: Vec<usize> = parity_profile(&generic)
                .iter()
                .enumerate()
                .filter(|(_, odd)| **odd)
                .map(|(i, _)| i + 1)
                .collect();
            println!("    f_1..f_10 agree, odd at λ ∈ {odd:?}");
        }
    }
}
