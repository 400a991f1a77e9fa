//! Counting sequences attached to a graph of finite groups.
//!
//! * `g_λ`: the number of torsion-free actions on `λ·m_Γ` points divided by
//!   `(λ·m_Γ)!`, given in closed form by the orders.
//! * `f_λ`: the number of free subgroups of index `λ·m_Γ`, obtained from
//!   `g` through `Σ_{μ<λ} g_μ f_{λ−μ} = m_Γ λ g_λ`.
//! * `θ_0, …, θ_μ(Γ)`: integer coefficients of the linear ODE satisfied by
//!   `G(z) = Σ g_λ z^λ`.
//!
//! Rank-2 groups additionally get their dedicated `f` recurrences, parity
//! predictions and the growth inequality `f_{λ+1} − f_λ ≥ m_Γ (λ+1)!`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::classify::{ClassLabel, ClassParams};
use crate::gog::GraphOfGroups;
use crate::invariants::{free_rank, m_gamma, type_vector, InvariantError, Rational};
use crate::normalize::normalize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("f_{0} is not an integer")]
    NonIntegralCount(usize),
    #[error("f_{0} is negative")]
    NegativeCount(usize),
    #[error("theta_{0} is not an integer")]
    NonIntegralTheta(usize),
    #[error("class {0} has no rank-2 recurrence")]
    UnknownClass(ClassLabel),
    #[error("missing class parameter `{0}`")]
    MissingParam(&'static str),
    #[error("free rank is {0}, expected 2")]
    WrongRank(u64),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

/// Truncated `g_0..g_N` and `f_1..f_N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountSeries {
    pub m: u64,
    pub g: Vec<Rational>,
    /// `f[i]` holds `f_{i+1}`.
    pub f: Vec<BigInt>,
}

impl CountSeries {
    /// `f_λ` for `1 ≤ λ ≤ N`.
    pub fn f(&self, lambda: usize) -> &BigInt {
        &self.f[lambda - 1]
    }
}

pub fn count_series(gog: &GraphOfGroups, n: usize) -> Result<CountSeries, CountError> {
    let g = g_series(gog, n);
    let f = f_from_g(&g, m_gamma(gog))?;
    Ok(CountSeries {
        m: m_gamma(gog),
        g,
        f,
    })
}

fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Ratio `W(λ+1)/W(λ)` of the weight `W(λ) = x!·d^x` with `x = λm/d`, as
/// the integer `Π_{k=x+1}^{x+m/d} k · d^{m/d}`.
fn weight_step(lambda: u64, m: u64, d: u64) -> BigInt {
    let step = m / d;
    let x = lambda * step;
    let rising = (x + 1..=x + step).fold(BigInt::one(), |acc, k| acc * k);
    rising * num_traits::pow(BigInt::from(d), step as usize)
}

/// `g_0..g_N`, where
///
/// ```text
/// g_λ = Π_e (λm/s)! s^{λm/s} / Π_v (λm/n)! n^{λm/n}
/// ```
///
/// over geometric edges of order `s` and vertices of order `n`. Each term is
/// obtained from the previous one by a ratio of small products.
pub fn g_series(gog: &GraphOfGroups, n: usize) -> Vec<Rational> {
    let m = m_gamma(gog);
    let edge_orders: Vec<u64> = gog.geometric_edge_orders().collect();
    let mut g = Vec::with_capacity(n + 1);
    g.push(Rational::one());
    for lambda in 0..n as u64 {
        let num: BigInt = edge_orders
            .iter()
            .map(|&s| weight_step(lambda, m, s))
            .product();
        let den: BigInt = gog
            .vertex_orders()
            .values()
            .map(|&d| weight_step(lambda, m, d))
            .product();
        let next = &g[lambda as usize] * Rational::new(num, den);
        g.push(next);
    }
    g
}

/// Solves the convolution for `f_1..f_N` given `g_0..g_N` with `g_0 = 1`.
pub fn f_from_g(g: &[Rational], m: u64) -> Result<Vec<BigInt>, CountError> {
    debug_assert!(g.first().is_some_and(|g0| g0.is_one()));
    let mut f: Vec<BigInt> = Vec::with_capacity(g.len().saturating_sub(1));
    for lambda in 1..g.len() {
        let mut value = Rational::from_integer(BigInt::from(m * lambda as u64)) * &g[lambda];
        for mu in 1..lambda {
            value -= &g[mu] * &f[lambda - mu - 1];
        }
        if !value.is_integer() {
            return Err(CountError::NonIntegralCount(lambda));
        }
        let value = value.to_integer();
        if value.is_negative() {
            return Err(CountError::NegativeCount(lambda));
        }
        f.push(value);
    }
    Ok(f)
}

/// `f_1..f_N` by the generic convolution route.
pub fn f_series(gog: &GraphOfGroups, n: usize) -> Result<Vec<BigInt>, CountError> {
    f_from_g(&g_series(gog, n), m_gamma(gog))
}

/// ODE coefficients `θ_0..θ_μ(Γ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaCoeffs {
    pub theta: Vec<BigInt>,
}

/// `P(j) = m (j+1) Π_{k=1}^{m} (jm + k)^{ζ_gcd(m,k)}`; its forward
/// differences at 0 give `μ!·θ_μ`.
fn theta_kernel(j: u64, m: u64, zeta: impl Fn(u64) -> i64) -> Rational {
    let mut num = BigInt::from(m * (j + 1));
    let mut den = BigInt::one();
    for k in 1..=m {
        let z = zeta(m.gcd(&k));
        let base = BigInt::from(j * m + k);
        if z > 0 {
            num *= num_traits::pow(base, z as usize);
        } else if z < 0 {
            den *= num_traits::pow(base, (-z) as usize);
        }
    }
    Rational::new(num, den)
}

/// `θ_μ = Δ^μ P(0) / μ!`. The values `P(j) = Σ_μ θ_μ j^(μ)` are integers
/// whenever the coefficients are, so the difference table stays integral.
pub fn theta_coeffs(gog: &GraphOfGroups) -> Result<ThetaCoeffs, CountError> {
    let mu = free_rank(gog)? as usize;
    let tv = type_vector(gog);
    let mut table = Vec::with_capacity(mu + 1);
    for j in 0..=mu {
        let value = theta_kernel(j as u64, tv.m, |kappa| tv.zeta(kappa));
        if !value.is_integer() {
            return Err(CountError::NonIntegralTheta(j));
        }
        table.push(value.to_integer());
    }
    let mut theta = Vec::with_capacity(mu + 1);
    let mut order_factorial = BigInt::one();
    for order in 0..=mu {
        if order > 0 {
            order_factorial *= order;
            for i in 0..table.len() - 1 {
                table[i] = &table[i + 1] - &table[i];
            }
            table.pop();
        }
        let (q, r) = table[0].div_rem(&order_factorial);
        if !r.is_zero() {
            return Err(CountError::NonIntegralTheta(order));
        }
        theta.push(q);
    }
    Ok(ThetaCoeffs { theta })
}

/// Checks the recurrence obtained by reading off the coefficient of `z^λ`
/// in
///
/// ```text
/// θ_0 G + (θ_1 z − m) G' + Σ_{μ≥2} θ_μ z^μ G^(μ) = 0.
/// ```
///
/// Since `z^μ G^(μ)` has `z^λ`-coefficient `λ(λ−1)…(λ−μ+1) g_λ` and `G'`
/// contributes `(λ+1) g_{λ+1}`, the identity is
///
/// ```text
/// (Σ_μ θ_μ λ^(μ)) g_λ = m (λ+1) g_{λ+1}
/// ```
///
/// with `λ^(μ)` the falling factorial. Every `λ` with `g_{λ+1}` available is
/// checked; fewer than two terms is reported as failure.
pub fn ode_check(g: &[Rational], theta: &ThetaCoeffs, m: u64) -> bool {
    if g.len() < 2 {
        return false;
    }
    (0..g.len() - 1).all(|lambda| {
        let lambda_big = BigInt::from(lambda);
        let mut falling = BigInt::one();
        let mut poly = BigInt::zero();
        for (mu, th) in theta.theta.iter().enumerate() {
            if mu > 0 {
                falling *= &lambda_big - BigInt::from(mu - 1);
            }
            poly += th * &falling;
        }
        let (a, b) = (&g[lambda], &g[lambda + 1]);
        poly * a.numer() * b.denom() == BigInt::from(m) * (lambda + 1) * b.numer() * a.denom()
    })
}

fn param(params: &ClassParams, key: &'static str) -> Result<u64, CountError> {
    params.get(key).ok_or(CountError::MissingParam(key))
}

/// `f_1` for a rank-2 class.
fn rank2_initial(label: ClassLabel, params: &ClassParams) -> Result<Rational, CountError> {
    use ClassLabel::*;
    let m = param(params, ClassParams::M)?;
    let big = |n: u64| Rational::from_integer(BigInt::from(n));
    Ok(match label {
        R2I | R2IV => big(m * m) / big(2),
        R2II => big(m * m),
        R2III1 | R2III2 | R2III3 => {
            let s = param(params, ClassParams::S)?;
            big((m - s) * s)
        }
        R2V => big(m) * big(m) / big(4),
        other => return Err(CountError::UnknownClass(other)),
    })
}

/// `f_{λ+1} = c_λ m f_λ + Σ_{μ=1}^{λ−1} f_μ f_{λ−μ}` with `c_λ` equal to
/// `(2λ+3)/2`, `λ+2` or `λ+1` depending on the class.
pub fn f_series_rank2(
    label: ClassLabel,
    params: &ClassParams,
    n: usize,
) -> Result<Vec<BigInt>, CountError> {
    use ClassLabel::*;
    let coefficient = |lambda: u64| -> Rational {
        match label {
            R2I | R2IV => Rational::new(BigInt::from(2 * lambda + 3), BigInt::from(2)),
            R2II => Rational::from_integer(BigInt::from(lambda + 2)),
            _ => Rational::from_integer(BigInt::from(lambda + 1)),
        }
    };
    let first = rank2_initial(label, params)?;
    let m = Rational::from_integer(BigInt::from(param(params, ClassParams::M)?));
    if n == 0 {
        return Ok(Vec::new());
    }
    if !first.is_integer() {
        return Err(CountError::NonIntegralCount(1));
    }
    let mut f = vec![first.to_integer()];
    for lambda in 1..n {
        let mut next =
            coefficient(lambda as u64) * &m * Rational::from_integer(f[lambda - 1].clone());
        for mu in 1..lambda {
            next += Rational::from_integer(&f[mu - 1] * &f[lambda - mu - 1]);
        }
        if !next.is_integer() {
            return Err(CountError::NonIntegralCount(lambda + 1));
        }
        f.push(next.to_integer());
    }
    Ok(f)
}

/// `f_λ mod 2` for each entry; `true` means odd.
pub fn parity_profile(f: &[BigInt]) -> Vec<bool> {
    f.iter().map(|x| x.is_odd()).collect()
}

/// Predicted parities of `f_1..f_N` for a rank-2 class. Classes III_1 and
/// III_3 with odd `|S|`, and V with odd `|S1|`, are odd exactly at
/// `λ = 2^k − 1`; every other case keeps the parity of `f_1`.
pub fn predicted_parity(
    label: ClassLabel,
    params: &ClassParams,
    n: usize,
) -> Result<Vec<bool>, CountError> {
    use ClassLabel::*;
    let dyadic = match label {
        R2III1 | R2III3 => param(params, ClassParams::S)? % 2 == 1,
        R2V => param(params, ClassParams::S1)? % 2 == 1,
        R2I | R2II | R2III2 | R2IV => false,
        other => return Err(CountError::UnknownClass(other)),
    };
    if dyadic {
        return Ok((1..=n).map(|l| (l + 1).is_power_of_two()).collect());
    }
    let first = rank2_initial(label, params)?;
    let odd = first.is_integer() && first.to_integer().is_odd();
    Ok(vec![odd; n])
}

/// Path of three order-2 vertices joined by trivial edge groups.
pub fn is_c2_c2_c2(gog: &GraphOfGroups) -> bool {
    let g = gog.graph();
    g.vertex_count() == 3
        && g.is_tree()
        && gog.vertex_orders().values().all(|&n| n == 2)
        && gog.edge_orders().values().all(|&n| n == 1)
}

/// First `λ` from which the growth inequality is expected.
pub fn growth_start(gog: &GraphOfGroups) -> usize {
    let (normalized, _) = normalize(gog);
    if is_c2_c2_c2(normalized.gog()) {
        2
    } else {
        1
    }
}

/// The `λ` in `from..=to` at which `f_{λ+1} − f_λ ≥ m (λ+1)!` fails.
pub fn growth_failures(
    gog: &GraphOfGroups,
    from: usize,
    to: usize,
) -> Result<Vec<usize>, CountError> {
    let mu = free_rank(gog)?;
    if mu != 2 {
        return Err(CountError::WrongRank(mu));
    }
    let m = BigInt::from(m_gamma(gog));
    let f = f_series(gog, to + 1)?;
    Ok((from.max(1)..=to)
        .filter(|&lambda| {
            let lhs = &f[lambda] - &f[lambda - 1];
            lhs < &m * factorial(lambda as u64 + 1)
        })
        .collect())
}

/// The growth inequality on its stated range up to `N` (from `λ = 2` for
/// `C2 * C2 * C2`, otherwise from `λ = 1`).
pub fn growth_check(gog: &GraphOfGroups, n: usize) -> Result<bool, CountError> {
    let start = growth_start(gog);
    Ok(growth_failures(gog, start, n)?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gog::{parse_gog, GogBuilder};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn dihedral() -> GraphOfGroups {
        parse_gog("vertex a 2\nvertex b 2\nedge s a b 1").unwrap()
    }

    fn f2() -> GraphOfGroups {
        parse_gog("vertex v 1\nedge p v v 1\nedge q v v 1").unwrap()
    }

    fn hnn(n: u64) -> GraphOfGroups {
        GogBuilder::new()
            .vertex("v", n)
            .edge("e", "v", "v", n)
            .build()
            .unwrap()
    }

    fn c2c2c2() -> GraphOfGroups {
        parse_gog("vertex a 2\nvertex b 2\nvertex c 2\nedge s a b 1\nedge t b c 1").unwrap()
    }

    fn c2c3() -> GraphOfGroups {
        parse_gog("vertex a 2\nvertex b 3\nedge s a b 1").unwrap()
    }

    #[test]
    fn g_series_examples() {
        assert_eq!(
            g_series(&dihedral(), 3),
            [q(1, 1), q(1, 2), q(3, 8), q(5, 16)]
        );
        assert_eq!(
            g_series(&f2(), 4),
            [q(1, 1), q(1, 1), q(2, 1), q(6, 1), q(24, 1)]
        );
        assert!(g_series(&hnn(5), 6).iter().all(|g| g.is_one()));
    }

    #[test]
    fn f_series_examples() {
        assert_eq!(f_series(&dihedral(), 6).unwrap(), ints(&[1; 6]));
        assert_eq!(f_series(&hnn(7), 6).unwrap(), ints(&[7; 6]));
        assert_eq!(f_series(&f2(), 5).unwrap(), ints(&[1, 3, 13, 71, 461]));
    }

    #[test]
    fn finite_group_has_a_single_free_subgroup() {
        let point = GogBuilder::new().vertex("v", 6).build().unwrap();
        assert_eq!(f_series(&point, 4).unwrap(), ints(&[1, 0, 0, 0]));
        assert_eq!(theta_coeffs(&point).unwrap().theta, ints(&[1]));
    }

    #[test]
    fn f_from_g_rejects_bad_input() {
        let g = [q(1, 1), q(1, 3)];
        assert_eq!(f_from_g(&g, 1), Err(CountError::NonIntegralCount(1)));
        let g = [q(1, 1), q(-1, 1)];
        assert_eq!(f_from_g(&g, 1), Err(CountError::NegativeCount(1)));
    }

    #[test]
    fn theta_examples() {
        assert_eq!(theta_coeffs(&dihedral()).unwrap().theta, ints(&[1, 2]));
        assert_eq!(theta_coeffs(&f2()).unwrap().theta, ints(&[1, 3, 1]));
    }

    #[test]
    fn ode_check_examples() {
        let g = g_series(&dihedral(), 10);
        let theta = ThetaCoeffs {
            theta: ints(&[1, 2]),
        };
        assert!(ode_check(&g, &theta, 2));
        let corrupted = ThetaCoeffs {
            theta: ints(&[1, 3]),
        };
        assert!(!ode_check(&g, &corrupted, 2));

        let g = g_series(&f2(), 10);
        assert!(ode_check(&g, &theta_coeffs(&f2()).unwrap(), 1));
        assert!(!ode_check(&g[..1], &theta_coeffs(&f2()).unwrap(), 1));
    }

    #[test]
    fn rank2_recurrence_examples() {
        let p = ClassParams::from_pairs([(ClassParams::M, 6), (ClassParams::S, 1)]);
        assert_eq!(
            f_series_rank2(ClassLabel::R2III1, &p, 1).unwrap(),
            ints(&[5])
        );

        let p = ClassParams::from_pairs([(ClassParams::M, 1)]);
        assert_eq!(
            f_series_rank2(ClassLabel::R2II, &p, 3).unwrap(),
            ints(&[1, 3, 13])
        );

        let p = ClassParams::from_pairs([(ClassParams::M, 2)]);
        assert_eq!(
            f_series_rank2(ClassLabel::R2I, &p, 3).unwrap(),
            ints(&[2, 10, 74])
        );
    }

    #[test]
    fn rank2_recurrence_errors() {
        let p = ClassParams::from_pairs([(ClassParams::M, 6)]);
        assert_eq!(
            f_series_rank2(ClassLabel::R2III1, &p, 3),
            Err(CountError::MissingParam(ClassParams::S))
        );
        assert_eq!(
            f_series_rank2(ClassLabel::R1I, &p, 3),
            Err(CountError::UnknownClass(ClassLabel::R1I))
        );
    }

    #[test]
    fn parity_of_c2_c3() {
        let f = f_series(&c2c3(), 31).unwrap();
        let odd: Vec<usize> = parity_profile(&f)
            .iter()
            .enumerate()
            .filter(|(_, &o)| o)
            .map(|(i, _)| i + 1)
            .collect();
        assert_eq!(odd, [1, 3, 7, 15, 31]);
        let p = ClassParams::from_pairs([(ClassParams::M, 6), (ClassParams::S, 1)]);
        assert_eq!(
            predicted_parity(ClassLabel::R2III1, &p, 31).unwrap(),
            parity_profile(&f)
        );
    }

    #[test]
    fn parity_constant_cases() {
        let p = ClassParams::from_pairs([(ClassParams::M, 4)]);
        let f = f_series_rank2(ClassLabel::R2II, &p, 20).unwrap();
        assert!(parity_profile(&f).iter().all(|odd| !odd));
        assert_eq!(
            predicted_parity(ClassLabel::R2II, &p, 20).unwrap(),
            vec![false; 20]
        );

        for m in [2, 4, 6, 10] {
            let p = ClassParams::from_pairs([(ClassParams::M, m)]);
            let f = f_series_rank2(ClassLabel::R2I, &p, 20).unwrap();
            let first = f[0].is_odd();
            assert!(parity_profile(&f).iter().all(|&odd| odd == first));
        }
    }

    #[test]
    fn growth_examples() {
        assert!(growth_check(&c2c3(), 20).unwrap());
        assert_eq!(growth_start(&c2c2c2()), 2);
        assert!(growth_check(&c2c2c2(), 20).unwrap());
        assert_eq!(growth_failures(&c2c2c2(), 1, 20).unwrap(), [1]);
        assert_eq!(growth_check(&dihedral(), 5), Err(CountError::WrongRank(1)));
    }
}
