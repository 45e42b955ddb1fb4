//! Exact integer and rational arithmetic plus the combinatorial sequences
//! (binomials, Bernoulli numbers, Euler-polynomial values, divisor sums)
//! that every closed formula in the crate consumes.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Exact rational scalar; always reduced, denominator positive.
pub type Rational = num_rational::BigRational;

pub fn rat_i64(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Renders `p/q`, or just `p` for integers.
pub fn rat_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses the output of [`rat_string`].
pub fn rat_parse(s: &str) -> Result<Rational> {
    let parse_int = |t: &str| {
        t.parse::<BigInt>()
            .map_err(|_| Error::Domain(format!("bad rational literal {s:?}")))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(Error::Domain(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(parse_int(p)?, den))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// The exponent list `(a1, .., al)` identifying a modular graph function,
/// together with its weight `w = a1 + .. + al`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GraphIndex {
    exponents: Vec<u32>,
}

impl GraphIndex {
    /// Requires every exponent >= 1 and at least two edges.
    pub fn new(exponents: &[u32]) -> Result<Self> {
        if exponents.len() < 2 {
            return Err(Error::Domain("graph index needs at least two exponents".into()));
        }
        if exponents.iter().any(|&a| a == 0) {
            return Err(Error::Domain("graph exponents must be positive".into()));
        }
        Ok(Self { exponents: exponents.to_vec() })
    }

    pub fn triple(a1: u32, a2: u32, a3: u32) -> Result<Self> {
        Self::new(&[a1, a2, a3])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn loops(&self) -> usize {
        self.exponents.len() - 1
    }

    pub fn weight(&self) -> u32 {
        self.exponents.iter().sum()
    }
}

impl std::fmt::Display for GraphIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "C_{{")?;
        for (i, a) in self.exponents.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}}")
    }
}

/// Binomial coefficient with the zero convention: `binom(n,k) = 0` whenever
/// `k < 0`, `k > n` or `n < 0`. The generalized negative-argument extension is
/// deliberately not used; every binomial in the closed formulas originates
/// from a bounded partial-fraction or series coefficient.
pub fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k) as u64;
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from((n as u64) - i) / BigUint::from(i + 1);
    }
    BigInt::from_biguint(Sign::Plus, acc)
}

pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc *= BigUint::from(i);
    }
    BigInt::from_biguint(Sign::Plus, acc)
}

/// `(-1)^n` as a rational sign.
pub fn sign_pow(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Size of the shared Bernoulli / Euler tables.
pub const SEQUENCE_TABLE_LEN: usize = 257;

/// Tangent numbers `T_1..T_m` (`tan x = sum T_n x^{2n-1}/(2n-1)!`) by the
/// in-place integer recurrence; avoids any rational arithmetic.
fn tangent_numbers(m: usize) -> Vec<BigInt> {
    let mut t = vec![BigInt::zero(); m + 1];
    if m >= 1 {
        t[1] = BigInt::one();
    }
    for k in 2..=m {
        t[k] = BigInt::from(k as u64 - 1) * &t[k - 1];
    }
    for k in 2..=m {
        for j in k..=m {
            t[j] = BigInt::from((j - k) as u64) * &t[j - 1]
                + BigInt::from((j - k + 2) as u64) * &t[j];
        }
    }
    t.remove(0);
    t
}

fn bernoulli_table() -> &'static Vec<Rational> {
    static TABLE: OnceLock<Vec<Rational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // B_{2n} = (-1)^{n-1} 2n T_n / (2^{2n} (2^{2n} - 1)); odd ones
        // vanish except B_1 = -1/2.
        let m = SEQUENCE_TABLE_LEN / 2;
        let tangents = tangent_numbers(m);
        let mut table = vec![Rational::zero(); SEQUENCE_TABLE_LEN];
        table[0] = Rational::one();
        table[1] = rat(-1, 2);
        for n in 1..=m {
            if 2 * n >= SEQUENCE_TABLE_LEN {
                break;
            }
            let sign = if n % 2 == 1 { 1 } else { -1 };
            let two_pow = BigInt::one() << (2 * n);
            let den = &two_pow * (&two_pow - BigInt::one());
            table[2 * n] = Rational::new(
                BigInt::from(sign) * BigInt::from(2 * n as u64) * &tangents[n - 1],
                den,
            );
        }
        table
    })
}

/// Bernoulli number `B_n` in the `B_1 = -1/2` convention.
pub fn bernoulli(n: usize) -> Rational {
    let table = bernoulli_table();
    if n < table.len() {
        return table[n].clone();
    }
    // Out-of-table indices are never hit by the closed formulas; recompute
    // without caching rather than panic.
    let mut table = table.clone();
    for m in table.len()..=n {
        if m % 2 == 1 {
            table.push(Rational::zero());
            continue;
        }
        let mut acc = Rational::zero();
        for (k, b) in table.iter().enumerate() {
            if !b.is_zero() {
                acc += Rational::from_integer(binom(m as i64 + 1, k as i64)) * b;
            }
        }
        table.push(-acc / Rational::from_integer(BigInt::from(m as i64 + 1)));
    }
    table[n].clone()
}

fn euler_at_zero_table() -> &'static Vec<Rational> {
    static TABLE: OnceLock<Vec<Rational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // E_0(0) = 1, E_n(0) = 2 (1 - 2^{n+1}) B_{n+1} / (n+1) for n >= 1
        // (so the even ones vanish); cross-checked in tests against the
        // generating-function recurrence.
        let mut table: Vec<Rational> = Vec::with_capacity(SEQUENCE_TABLE_LEN - 1);
        table.push(Rational::one());
        for n in 1..SEQUENCE_TABLE_LEN - 1 {
            let two_pow = BigInt::one() << (n + 1);
            table.push(
                Rational::from_integer(BigInt::from(2) * (BigInt::one() - two_pow))
                    * bernoulli(n + 1)
                    / Rational::from_integer(BigInt::from(n as i64 + 1)),
            );
        }
        table
    })
}

/// Euler polynomial value `E_n(0)`: `E_0(0) = 1`, `E_{2l}(0) = 0` for
/// `l >= 1`, and `E_{2l+1}(0)` rational.
pub fn euler_at_zero(n: usize) -> Rational {
    let table = euler_at_zero_table();
    if n < table.len() {
        table[n].clone()
    } else {
        // Closed form E_n(0) = 2 (1 - 2^{n+1}) B_{n+1} / (n+1).
        let two_pow = BigInt::one() << (n + 1);
        Rational::from_integer(BigInt::from(2) * (BigInt::one() - two_pow))
            * bernoulli(n + 1)
            / Rational::from_integer(BigInt::from(n as i64 + 1))
    }
}

/// The rational `r` with `zeta(2k) = r * pi^{2k}`, i.e.
/// `r = (-1)^{k+1} B_{2k} 2^{2k-1} / (2k)!`.
pub fn zeta_even_pi_power(k: usize) -> Rational {
    assert!(k >= 1, "zeta_even_pi_power needs k >= 1");
    let sign = if k % 2 == 1 { 1 } else { -1 };
    Rational::from_integer(BigInt::from(sign) * (BigInt::one() << (2 * k - 1)))
        * bernoulli(2 * k)
        / Rational::from_integer(factorial(2 * k as u64))
}

/// Divisor sum `sigma_s(n) = sum_{d | n} d^s` as an exact rational
/// (`s` may be negative).
pub fn divisor_sigma(s: i64, n: u64) -> Rational {
    assert!(n >= 1, "divisor_sigma needs n >= 1");
    let mut acc = Rational::zero();
    for d in 1..=n {
        if n % d == 0 {
            let pow = BigInt::from(d).pow(s.unsigned_abs() as u32);
            acc += if s >= 0 {
                Rational::from_integer(pow)
            } else {
                Rational::new(BigInt::one(), pow)
            };
        }
    }
    acc
}

/// Exact integer part of `sigma_s(n) * n^{|s|}` style rescalings is not
/// needed; this helper returns `sigma_s(n)` as `f64` for tail heuristics.
pub fn divisor_sigma_f64(s: i64, n: u64) -> f64 {
    let mut acc = 0.0;
    for d in 1..=n {
        if n % d == 0 {
            acc += (d as f64).powi(s as i32);
        }
    }
    acc
}

/// gcd helper on u64 used by the lattice code.
pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn rat_abs(r: &Rational) -> Rational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binom_values_and_conventions() {
        assert_eq!(binom(4, 2), BigInt::from(6));
        assert_eq!(binom(0, 0), BigInt::from(1));
        assert_eq!(binom(2, 3), BigInt::zero());
        assert_eq!(binom(-1, 0), BigInt::zero());
        assert_eq!(binom(5, -1), BigInt::zero());
        for n in 0..=12i64 {
            for k in 0..=n {
                assert_eq!(binom(n, k), binom(n, n - k));
            }
        }
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), rat_i64(1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(3), Rational::zero());
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(6), rat(1, 42));
        assert_eq!(bernoulli(8), rat(-1, 30));
        assert_eq!(bernoulli(12), rat(-691, 2730));
    }

    #[test]
    fn bernoulli_recurrence_holds() {
        for n in 1..=60usize {
            let mut acc = Rational::zero();
            for k in 0..=n {
                acc += Rational::from_integer(binom(n as i64 + 1, k as i64)) * bernoulli(k);
            }
            assert!(acc.is_zero(), "recurrence failed at n={n}");
        }
    }

    #[test]
    fn euler_at_zero_values() {
        assert_eq!(euler_at_zero(0), rat_i64(1));
        assert_eq!(euler_at_zero(1), rat(-1, 2));
        assert_eq!(euler_at_zero(2), Rational::zero());
        assert_eq!(euler_at_zero(3), rat(1, 4));
        assert_eq!(euler_at_zero(5), rat(-1, 2));
        assert_eq!(euler_at_zero(7), rat(17, 8));
    }

    #[test]
    fn euler_at_zero_recurrence_oracle() {
        // independent route: E_n(0) = -1/2 sum_{k<n} binom(n,k) E_k(0)
        // from the generating function 2/(e^x + 1)
        let mut recur: Vec<Rational> = vec![Rational::one()];
        for n in 1..=40usize {
            let mut acc = Rational::zero();
            for (k, e) in recur.iter().enumerate() {
                if !e.is_zero() {
                    acc += Rational::from_integer(binom(n as i64, k as i64)) * e;
                }
            }
            recur.push(rat(-1, 2) * acc);
            assert_eq!(euler_at_zero(n), recur[n], "recurrence mismatch at n={n}");
        }
    }

    #[test]
    fn tangent_numbers_known_values() {
        let t = tangent_numbers(6);
        let expect: Vec<BigInt> = [1u64, 2, 16, 272, 7936, 353792]
            .iter()
            .map(|&v| BigInt::from(v))
            .collect();
        assert_eq!(t, expect);
    }

    #[test]
    fn zeta_even_values() {
        assert_eq!(zeta_even_pi_power(1), rat(1, 6));
        assert_eq!(zeta_even_pi_power(2), rat(1, 90));
        assert_eq!(zeta_even_pi_power(3), rat(1, 945));
        assert_eq!(zeta_even_pi_power(4), rat(1, 9450));
    }

    #[test]
    fn divisor_sigma_values() {
        assert_eq!(divisor_sigma(3, 1), rat_i64(1));
        assert_eq!(divisor_sigma(-3, 2), rat(9, 8));
        assert_eq!(divisor_sigma(1, 6), rat_i64(12));
    }

    #[test]
    fn divisor_sigma_scaling() {
        // sigma_s(n) = n^s sigma_{-s}(n)
        for n in 1..=30u64 {
            for s in 1..=4i64 {
                let lhs = divisor_sigma(s, n);
                let rhs = Rational::from_integer(BigInt::from(n).pow(s as u32))
                    * divisor_sigma(-s, n);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn graph_index_contract() {
        assert!(GraphIndex::new(&[1]).is_err());
        assert!(GraphIndex::new(&[1, 0]).is_err());
        let g = GraphIndex::triple(2, 1, 1).unwrap();
        assert_eq!(g.weight(), 4);
        assert_eq!(g.loops(), 2);
        assert_eq!(g.to_string(), "C_{2,1,1}");
    }
}
