//! Shape classification of normalized decompositions of free rank at most 2,
//! and the computable largeness criteria.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use thiserror::Error;

use crate::counting::{f_series, CountError};
use crate::gog::{GogBuilder, GraphOfGroups};
use crate::graph::{EdgeId, SpanningTree, VertexId};
use crate::invariants::{euler_char, free_rank, type_vector, InvariantError, TypeVector};
use crate::normalize::{normalize_with_tree, NormalizedGog};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassLabel {
    Finite,
    R1I,
    R1II,
    R2I,
    R2II,
    R2III1,
    R2III2,
    R2III3,
    R2IV,
    R2V,
    Higher,
}

impl ClassLabel {
    pub const ALL: [ClassLabel; 11] = [
        ClassLabel::Finite,
        ClassLabel::R1I,
        ClassLabel::R1II,
        ClassLabel::R2I,
        ClassLabel::R2II,
        ClassLabel::R2III1,
        ClassLabel::R2III2,
        ClassLabel::R2III3,
        ClassLabel::R2IV,
        ClassLabel::R2V,
        ClassLabel::Higher,
    ];

    /// Label without the rank prefix, e.g. `III_1`.
    pub fn short_name(self) -> &'static str {
        use ClassLabel::*;
        match self {
            Finite => "FINITE",
            R1I | R2I => "I",
            R1II | R2II => "II",
            R2III1 => "III_1",
            R2III2 => "III_2",
            R2III3 => "III_3",
            R2IV => "IV",
            R2V => "V",
            Higher => "HIGHER",
        }
    }

    pub fn rank(self) -> Option<u64> {
        use ClassLabel::*;
        match self {
            Finite => Some(0),
            R1I | R1II => Some(1),
            R2I | R2II | R2III1 | R2III2 | R2III3 | R2IV | R2V => Some(2),
            Higher => None,
        }
    }

    pub fn is_rank2(self) -> bool {
        self.rank() == Some(2)
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ClassLabel::Finite => "FINITE",
            ClassLabel::R1I => "R1_I",
            ClassLabel::R1II => "R1_II",
            ClassLabel::R2I => "R2_I",
            ClassLabel::R2II => "R2_II",
            ClassLabel::R2III1 => "R2_III_1",
            ClassLabel::R2III2 => "R2_III_2",
            ClassLabel::R2III3 => "R2_III_3",
            ClassLabel::R2IV => "R2_IV",
            ClassLabel::R2V => "R2_V",
            ClassLabel::Higher => "HIGHER",
        };
        f.write_str(s)
    }
}

/// Named integer parameters of a class (orders and indices).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ClassParams(BTreeMap<&'static str, u64>);

impl ClassParams {
    pub const M: &'static str = "m";
    /// Order of the vertex group of a one-vertex graph.
    pub const G: &'static str = "|G|";
    /// Order of an associated or amalgamated subgroup `A`.
    pub const A: &'static str = "|A|";
    pub const INDEX_GA: &'static str = "(G:A)";
    pub const S: &'static str = "|S|";
    pub const S1: &'static str = "|S1|";
    pub const S2: &'static str = "|S2|";
    pub const A1: &'static str = "a1";
    pub const A2: &'static str = "a2";
    pub const A2_LOOP: &'static str = "a2'";

    pub fn from_pairs(pairs: impl IntoIterator<Item = (&'static str, u64)>) -> Self {
        ClassParams(pairs.into_iter().collect())
    }

    pub fn get(&self, key: &str) -> Option<u64> {
        self.0.get(key).copied()
    }

    pub fn insert(&mut self, key: &'static str, value: u64) {
        self.0.insert(key, value);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, u64)> + '_ {
        self.0.iter().map(|(k, v)| (*k, *v))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("normalized datum of rank {0} matches no known shape")]
    UnclassifiableShape(u64),
    #[error("expected rank 1, found rank {0}")]
    WrongRank(u64),
    #[error("type vector of class {0} lacks its distinguishing entry")]
    TypeWitnessMismatch(ClassLabel),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub rank: u64,
    pub label: ClassLabel,
    pub params: ClassParams,
    /// Vertex ids, then one half-edge id per geometric edge.
    pub witness: Vec<String>,
    pub type_vector: TypeVector,
}

impl fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ClassLabel::*;
        write!(f, "rank={} class={}", self.rank, self.label.short_name())?;
        let p = |key| self.params.get(key).unwrap_or_default();
        match self.label {
            Finite | R1I | R2II => write!(f, " |G|={}", p(ClassParams::G)),
            R1II => write!(f, " |A|={}", p(ClassParams::A)),
            R2I => write!(
                f,
                " (G:A)={} |A|={}",
                p(ClassParams::INDEX_GA),
                p(ClassParams::A)
            ),
            R2III1 | R2III2 | R2III3 => write!(
                f,
                " a=({},{}) |S|={}",
                p(ClassParams::A1),
                p(ClassParams::A2),
                p(ClassParams::S)
            ),
            R2IV | R2V => write!(
                f,
                " |S1|={} |S2|={}",
                p(ClassParams::S1),
                p(ClassParams::S2)
            ),
            Higher => Ok(()),
        }
    }
}

struct Shape<'a> {
    gog: &'a GraphOfGroups,
    vertices: Vec<&'a VertexId>,
    edges: Vec<EdgeId>,
}

impl<'a> Shape<'a> {
    fn new(gog: &'a GraphOfGroups) -> Self {
        Shape {
            gog,
            vertices: gog.graph().vertices().collect(),
            edges: gog
                .graph()
                .canonical_orientation()
                .chosen
                .into_iter()
                .collect(),
        }
    }

    fn order(&self, v: &VertexId) -> u64 {
        self.gog.vertex_order(v)
    }

    fn edge(&self, e: &EdgeId) -> u64 {
        self.gog.edge_order(e)
    }

    fn is_loop(&self, e: &EdgeId) -> bool {
        self.gog.graph().is_loop(e)
    }

    fn witness(&self) -> Vec<String> {
        self.vertices
            .iter()
            .map(|v| v.to_string())
            .chain(self.edges.iter().map(|e| e.to_string()))
            .collect()
    }
}

pub fn classify(ngog: &NormalizedGog) -> Result<ClassificationReport, ClassifyError> {
    use ClassLabel::*;
    let gog = ngog.gog();
    let rank = free_rank(gog)?;
    let tv = type_vector(gog);
    let shape = Shape::new(gog);
    let mut params = ClassParams::from_pairs([(ClassParams::M, tv.m)]);
    let unclassifiable = ClassifyError::UnclassifiableShape(rank);
    let (nv, ne) = (shape.vertices.len(), shape.edges.len());

    let label = match rank {
        0 => {
            if nv != 1 || ne != 0 {
                return Err(unclassifiable);
            }
            params.insert(ClassParams::G, shape.order(shape.vertices[0]));
            Finite
        }
        1 => match (nv, ne) {
            (1, 1) => {
                let (g, a) = (shape.order(shape.vertices[0]), shape.edge(&shape.edges[0]));
                if g != a {
                    return Err(unclassifiable);
                }
                params.insert(ClassParams::G, g);
                R1I
            }
            (2, 1) => {
                let a = shape.edge(&shape.edges[0]);
                if shape.vertices.iter().any(|v| shape.order(v) != 2 * a) {
                    return Err(unclassifiable);
                }
                params.insert(ClassParams::A, a);
                R1II
            }
            _ => return Err(unclassifiable),
        },
        2 => match (nv, ne) {
            (1, 1) => {
                let (g, a) = (shape.order(shape.vertices[0]), shape.edge(&shape.edges[0]));
                if g != 2 * a {
                    return Err(unclassifiable);
                }
                params.insert(ClassParams::G, g);
                params.insert(ClassParams::A, a);
                params.insert(ClassParams::INDEX_GA, 2);
                R2I
            }
            (1, 2) => {
                let g = shape.order(shape.vertices[0]);
                if shape.edges.iter().any(|e| shape.edge(e) != g) {
                    return Err(unclassifiable);
                }
                params.insert(ClassParams::G, g);
                R2II
            }
            (2, 1) => {
                let s = shape.edge(&shape.edges[0]);
                let mut idx = [
                    shape.order(shape.vertices[0]) / s,
                    shape.order(shape.vertices[1]) / s,
                ];
                idx.sort_unstable();
                let label = match idx {
                    [2, 3] => R2III1,
                    [3, 3] => R2III2,
                    [2, 4] => R2III3,
                    _ => return Err(unclassifiable),
                };
                params.insert(ClassParams::S, s);
                params.insert(ClassParams::A1, idx[0]);
                params.insert(ClassParams::A2, idx[1]);
                label
            }
            (2, 2) => {
                let loops: Vec<&EdgeId> = shape.edges.iter().filter(|e| shape.is_loop(e)).collect();
                match loops.as_slice() {
                    [] => return reclassify_digon(ngog, rank),
                    [lp] => {
                        let seg = shape.edges.iter().find(|e| !shape.is_loop(e)).unwrap();
                        let g = gog.graph();
                        let v2 = g.origin(lp);
                        let v1 = if g.origin(seg) == v2 {
                            g.terminus(seg)
                        } else {
                            g.origin(seg)
                        };
                        let (s1, s2) = (shape.edge(seg), shape.edge(lp));
                        let a1 = shape.order(v1) / s1;
                        let a2 = shape.order(v2) / s1;
                        let a2_loop = shape.order(v2) / s2;
                        if (a1, a2, a2_loop) != (2, 2, 1) {
                            return Err(unclassifiable);
                        }
                        params.insert(ClassParams::S1, s1);
                        params.insert(ClassParams::S2, s2);
                        params.insert(ClassParams::A1, a1);
                        params.insert(ClassParams::A2, a2);
                        params.insert(ClassParams::A2_LOOP, a2_loop);
                        R2IV
                    }
                    _ => return Err(unclassifiable),
                }
            }
            (3, 2) => {
                let (s1, s2) = (shape.edge(&shape.edges[0]), shape.edge(&shape.edges[1]));
                let m = tv.m;
                let balanced = shape.vertices.iter().all(|v| shape.order(v) == m)
                    && 2 * s1 == m
                    && 2 * s2 == m;
                if !balanced {
                    return Err(unclassifiable);
                }
                params.insert(ClassParams::S1, s1);
                params.insert(ClassParams::S2, s2);
                R2V
            }
            _ => return Err(unclassifiable),
        },
        _ => Higher,
    };

    Ok(ClassificationReport {
        rank,
        label,
        params,
        witness: shape.witness(),
        type_vector: tv,
    })
}

/// Two vertices joined by two edges. With the other edge as spanning tree it
/// is trivial (rank 2 forces `|Γ(e)| = |Γ(v)|` there), and contracting it
/// leaves a single loop of index 2.
fn reclassify_digon(
    ngog: &NormalizedGog,
    rank: u64,
) -> Result<ClassificationReport, ClassifyError> {
    let g = ngog.gog().graph();
    let other = g
        .canonical_orientation()
        .chosen
        .into_iter()
        .find(|e| !ngog.tree().contains(e))
        .ok_or(ClassifyError::UnclassifiableShape(rank))?;
    let tree = SpanningTree {
        tree_edges: [g.bar(&other).clone(), other].into_iter().collect(),
        root: ngog.tree().root.clone(),
    };
    let (renormalized, steps) = normalize_with_tree(ngog.gog(), tree)
        .map_err(|_| ClassifyError::UnclassifiableShape(rank))?;
    if steps.is_empty() {
        return Err(ClassifyError::UnclassifiableShape(rank));
    }
    classify(&renormalized)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LargenessReport {
    pub chi_negative: bool,
    pub rank_ge_2: bool,
    pub structural_vii: bool,
    /// `f_1 < f_2 < … < f_N` on the computed prefix.
    pub f_strictly_increasing_prefix: bool,
}

impl LargenessReport {
    pub fn criteria_agree(&self) -> bool {
        self.chi_negative == self.rank_ge_2 && self.rank_ge_2 == self.structural_vii
    }
}

/// Structural criterion read off the normalized graph alone.
pub fn structural_largeness(ngog: &NormalizedGog) -> bool {
    let gog = ngog.gog();
    let g = gog.graph();
    let edges: Vec<EdgeId> = g.canonical_orientation().chosen.into_iter().collect();
    if g.vertex_count() == 1 {
        return match edges.as_slice() {
            [] => false,
            [e] => {
                let v = g.origin(e);
                gog.vertex_order(v) / gog.edge_order(e) >= 2
            }
            _ => true,
        };
    }
    if !g.is_tree() || edges.len() > 1 {
        return true;
    }
    let e = &edges[0];
    let (o, t) = (g.origin(e), g.terminus(e));
    let amalgam = GogBuilder::new()
        .vertex("o", gog.vertex_order(o))
        .vertex("t", gog.vertex_order(t))
        .edge("e", "o", "t", gog.edge_order(e))
        .build()
        .expect("sub-datum of a valid graph of groups");
    euler_char(&amalgam).is_negative()
}

pub fn largeness_report(ngog: &NormalizedGog, n: usize) -> Result<LargenessReport, CountError> {
    let gog = ngog.gog();
    let rank = free_rank(gog)?;
    let f: Vec<BigInt> = f_series(gog, n)?;
    Ok(LargenessReport {
        chi_negative: euler_char(gog).is_negative(),
        rank_ge_2: rank >= 2,
        structural_vii: structural_largeness(ngog),
        f_strictly_increasing_prefix: f.windows(2).all(|w| w[0] < w[1]),
    })
}

/// Whether two rank-1 groups fall in different classes. Class I has every
/// `ζ_κ = 0` and class II has `ζ_m = −1`, so the type vector separates them;
/// this is checked against the reports.
pub fn distinguish_rank1(
    a: &ClassificationReport,
    b: &ClassificationReport,
) -> Result<bool, ClassifyError> {
    for r in [a, b] {
        if r.rank != 1 {
            return Err(ClassifyError::WrongRank(r.rank));
        }
        let tv = &r.type_vector;
        let witnessed = match r.label {
            ClassLabel::R1I => tv.zeta.values().all(|&z| z == 0),
            ClassLabel::R1II => tv.zeta(tv.m) == -1,
            _ => false,
        };
        if !witnessed {
            return Err(ClassifyError::TypeWitnessMismatch(r.label));
        }
    }
    Ok(a.label != b.label)
}
