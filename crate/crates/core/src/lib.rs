//! Finite graphs of finite groups and the virtually free groups they
//! present.
//!
//! A datum is a connected graph with a group order on each vertex and each
//! geometric edge ([`gog::GraphOfGroups`]). From the orders alone the crate
//! computes, in exact arithmetic:
//!
//! * a normalized decomposition without trivial tree edges ([`normalize`]),
//! * `m_Γ`, the Euler characteristic, the type and the free rank
//!   ([`invariants`]),
//! * the torsion-free action series `g_λ`, the free-subgroup counts `f_λ`
//!   and the ODE coefficients of `Σ g_λ z^λ` ([`counting`]),
//! * the shape class of groups of free rank 1 and 2 ([`classify`]).
//!
//! [`oracle`] holds brute-force cross-checks that are independent of the
//! counting code.

pub mod classify;
pub mod cli;
pub mod counting;
pub mod gog;
pub mod graph;
pub mod invariants;
pub mod normalize;
pub mod oracle;
pub mod sample;
pub mod verify;

pub use classify::{classify, largeness_report, ClassLabel, ClassParams, ClassificationReport};
pub use counting::{f_series, g_series, theta_coeffs, CountSeries};
pub use gog::{parse_gog, serialize_gog, GogBuilder, GraphOfGroups};
pub use graph::{EdgeId, Graph, SpanningTree, VertexId};
pub use invariants::{euler_char, free_rank, m_gamma, type_vector, Rational, TypeVector};
pub use normalize::{normalize, normalize_fully, NormalizedGog};
