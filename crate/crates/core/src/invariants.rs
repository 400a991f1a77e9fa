//! Exact group invariants read off the order data: `m_Γ`, the Euler
//! characteristic, the type `τ(Γ)` and the free rank `μ(Γ)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use thiserror::Error;

use crate::gog::GraphOfGroups;
use crate::normalize::NormalizedGog;

/// Exact rational number, always reduced with a positive denominator.
pub type Rational = BigRational;

/// Renders as `p/q`; integers keep the `/1`.
pub struct RationalDisplay<'a>(pub &'a Rational);

impl fmt::Display for RationalDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("1 - m·χ = {0} is not a non-negative integer")]
    NonIntegralRank(String),
}

/// `m_Γ` together with `ζ_κ(Γ)` for every divisor `κ` of `m_Γ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeVector {
    pub m: u64,
    pub zeta: BTreeMap<u64, i64>,
}

impl TypeVector {
    pub fn zeta(&self, kappa: u64) -> i64 {
        self.zeta.get(&kappa).copied().unwrap_or(0)
    }
}

/// Positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Euler's totient via trial-division factorization.
pub fn totient(n: u64) -> u64 {
    assert!(n >= 1, "totient of zero");
    let mut result = n;
    let mut rest = n;
    let mut p = 2;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            while rest.is_multiple_of(p) {
                rest /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if rest > 1 {
        result -= result / rest;
    }
    result
}

/// Least common multiple of the vertex orders.
pub fn m_gamma(gog: &GraphOfGroups) -> u64 {
    gog.vertex_orders().values().fold(1, |acc, &n| acc.lcm(&n))
}

fn recip(n: u64) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(n))
}

/// `Σ_v 1/|Γ(v)| − Σ_e 1/|Γ(e)|`, one term per geometric edge.
pub fn euler_char(gog: &GraphOfGroups) -> Rational {
    let vertices: Rational = gog.vertex_orders().values().map(|&n| recip(n)).sum();
    let edges: Rational = gog.geometric_edge_orders().map(recip).sum();
    vertices - edges
}

pub fn type_vector(gog: &GraphOfGroups) -> TypeVector {
    let m = m_gamma(gog);
    let edge_orders: Vec<u64> = gog.geometric_edge_orders().collect();
    let zeta = divisors(m)
        .into_iter()
        .map(|kappa| {
            let edges = edge_orders.iter().filter(|&&s| kappa % s == 0).count() as i64;
            let vertices = gog
                .vertex_orders()
                .values()
                .filter(|&&n| kappa % n == 0)
                .count() as i64;
            (kappa, edges - vertices)
        })
        .collect();
    TypeVector { m, zeta }
}

/// `χ = −m⁻¹ Σ_{κ|m} φ(m/κ) ζ_κ`.
pub fn euler_from_type(tv: &TypeVector) -> Rational {
    let sum: BigInt = tv
        .zeta
        .iter()
        .map(|(&kappa, &z)| BigInt::from(totient(tv.m / kappa)) * z)
        .sum();
    -Rational::new(sum, BigInt::from(tv.m))
}

/// `μ(Γ) = 1 − m_Γ χ(Γ)`.
pub fn free_rank(gog: &GraphOfGroups) -> Result<u64, InvariantError> {
    let m = Rational::from_integer(BigInt::from(m_gamma(gog)));
    let mu = Rational::one() - m * euler_char(gog);
    if !mu.is_integer() || mu.is_negative() {
        return Err(InvariantError::NonIntegralRank(
            RationalDisplay(&mu).to_string(),
        ));
    }
    mu.to_integer()
        .to_u64()
        .ok_or_else(|| InvariantError::NonIntegralRank(mu.to_string()))
}

/// `|E(X)| ≤ 2μ(Γ)`, counting half-edges.
pub fn check_edge_bound(ngog: &NormalizedGog) -> bool {
    match free_rank(ngog.gog()) {
        Ok(mu) => ngog.gog().graph().half_edge_count() as u64 <= 2 * mu,
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gog::{parse_gog, GogBuilder};
    use crate::normalize::normalize;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn dihedral() -> GraphOfGroups {
        parse_gog("vertex a 2\nvertex b 2\nedge s a b 1").unwrap()
    }

    fn c2c3() -> GraphOfGroups {
        parse_gog("vertex a 2\nvertex b 3\nedge s a b 1").unwrap()
    }

    fn f2() -> GraphOfGroups {
        parse_gog("vertex v 1\nedge p v v 1\nedge q v v 1").unwrap()
    }

    fn point(n: u64) -> GraphOfGroups {
        GogBuilder::new().vertex("v", n).build().unwrap()
    }

    #[test]
    fn totient_values() {
        assert_eq!(totient(1), 1);
        assert_eq!(totient(2), 1);
        assert_eq!(totient(12), 4);
        for n in 1..=60u64 {
            let units = (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64;
            assert_eq!(totient(n), units, "n = {n}");
        }
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(1), [1]);
        assert_eq!(divisors(12), [1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(49), [1, 7, 49]);
    }

    #[test]
    fn m_gamma_examples() {
        assert_eq!(m_gamma(&dihedral()), 2);
        assert_eq!(m_gamma(&c2c3()), 6);
        assert_eq!(m_gamma(&f2()), 1);
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler_char(&dihedral()), q(0, 1));
        assert_eq!(euler_char(&c2c3()), q(-1, 6));
        assert_eq!(euler_char(&f2()), q(-1, 1));
        assert_eq!(RationalDisplay(&euler_char(&dihedral())).to_string(), "0/1");
    }

    #[test]
    fn type_vector_examples() {
        let tv = type_vector(&dihedral());
        assert_eq!(tv.m, 2);
        assert_eq!(tv.zeta, BTreeMap::from([(1, 1), (2, -1)]));

        let tv = type_vector(&f2());
        assert_eq!(tv.zeta, BTreeMap::from([(1, 1)]));

        let tv = type_vector(&point(6));
        assert_eq!(tv.zeta, BTreeMap::from([(1, 0), (2, 0), (3, 0), (6, -1)]));
    }

    #[test]
    fn euler_from_type_examples() {
        assert_eq!(euler_from_type(&type_vector(&dihedral())), q(0, 1));
        assert_eq!(euler_from_type(&type_vector(&f2())), q(-1, 1));
        for n in 1..=12 {
            assert_eq!(euler_from_type(&type_vector(&point(n))), q(1, n as i64));
        }
    }

    #[test]
    fn free_rank_examples() {
        assert_eq!(free_rank(&dihedral()).unwrap(), 1);
        assert_eq!(free_rank(&c2c3()).unwrap(), 2);
        assert_eq!(free_rank(&f2()).unwrap(), 2);
        assert_eq!(free_rank(&point(5)).unwrap(), 0);
    }

    #[test]
    fn edge_bound_examples() {
        let (n, _) = normalize(&dihedral());
        assert!(check_edge_bound(&n));
        assert_eq!(n.gog().graph().half_edge_count(), 2);
        let (n, _) = normalize(&f2());
        assert!(check_edge_bound(&n));
        assert_eq!(n.gog().graph().half_edge_count(), 4);
    }
}
