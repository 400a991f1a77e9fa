// Counts free subgroups of index λ·m through torsion-free actions and
// checks the counts against the differential equation for Σ g_λ z^λ.

use gog_core::counting::{count_series, ode_check};
use gog_core::invariants::RationalDisplay;
use gog_core::{m_gamma, parse_gog, theta_coeffs};

fn main() {
    let gog = parse_gog("vertex a 2\nvertex b 3\nedge s a b 1").expect("literal datum");
    let series = count_series(&gog, 8).expect("counts are integral");
    println!("PSL(2,Z), m = {}", series.m);
    for lambda in 1..=8 {
        println!(
            "λ={lambda}  f={:<12} g={}",
            series.f(lambda),
            RationalDisplay(&series.g[lambda])
        );
    }

    let theta = theta_coeffs(&gog).expect("integral coefficients");
    let theta_text: Vec<String> = theta.theta.iter().map(|t| t.to_string()).collect();
    println!("θ = ({})", theta_text.join(", "));
    let longer = gog_core::g_series(&gog, 30);
    assert!(ode_check(&longer, &theta, m_gamma(&gog)));
    println!("recurrence holds for λ ≤ 29");
}
