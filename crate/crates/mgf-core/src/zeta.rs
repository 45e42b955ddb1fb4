//! The symbolic coefficient ring: rational-linear combinations of zeta
//! monomials. A monomial is a product of odd zeta values `zeta(2k+1)`, an
//! integer power of `pi` (even zeta values are eagerly rewritten into
//! `pi`-powers so cancellation checks reduce to a single coefficient), and
//! depth-two symbols `zeta(a,b)` kept opaque until a reduction is applied
//! explicitly.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::exact::{self, Rational};
use crate::{Error, Result};

/// A formal product of odd zeta values, a power of `pi`, and depth-two zeta
/// symbols. Canonical order is lexicographic on
/// `(pi_power, odd_factors, double_factors)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZetaMonomial {
    /// Power of `pi`; even and nonnegative for everything produced by the
    /// closed formulas, but conversion of a Laurent polynomial to the `tau2`
    /// variable may introduce arbitrary signed powers.
    pi_power: i64,
    /// Sorted multiset of odd integers `n >= 3`, each standing for `zeta(n)`.
    odd_factors: Vec<u32>,
    /// Sorted multiset of pairs `(a, b)` with `a >= 2`, `b >= 1`, each
    /// standing for `zeta(a, b)` in the `(m+n)^{-a} n^{-b}` convention.
    double_factors: Vec<(u32, u32)>,
}

impl ZetaMonomial {
    pub fn unit() -> Self {
        Self { pi_power: 0, odd_factors: Vec::new(), double_factors: Vec::new() }
    }

    pub fn try_new(odd: &[u32], pi_power: i64, double: &[(u32, u32)]) -> Result<Self> {
        for &n in odd {
            if n < 3 || n % 2 == 0 {
                return Err(Error::ZetaOneGuard(format!(
                    "zeta({n}) is not an odd zeta symbol"
                )));
            }
        }
        for &(a, b) in double {
            if a < 2 || b < 1 {
                return Err(Error::Domain(format!(
                    "zeta({a},{b}) outside the convergent depth-two range"
                )));
            }
        }
        let mut odd_factors = odd.to_vec();
        odd_factors.sort_unstable();
        let mut double_factors = double.to_vec();
        double_factors.sort_unstable();
        Ok(Self { pi_power, odd_factors, double_factors })
    }

    pub fn pi_power(&self) -> i64 {
        self.pi_power
    }

    pub fn odd_factors(&self) -> &[u32] {
        &self.odd_factors
    }

    pub fn double_factors(&self) -> &[(u32, u32)] {
        &self.double_factors
    }

    pub fn is_unit(&self) -> bool {
        self.pi_power == 0 && self.odd_factors.is_empty() && self.double_factors.is_empty()
    }

    /// Total transcendental weight, counting `pi^k` with weight `k`,
    /// `zeta(n)` with weight `n` and `zeta(a,b)` with weight `a + b`.
    pub fn weight(&self) -> i64 {
        self.pi_power
            + self.odd_factors.iter().map(|&n| n as i64).sum::<i64>()
            + self.double_factors.iter().map(|&(a, b)| (a + b) as i64).sum::<i64>()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut odd_factors = self.odd_factors.clone();
        odd_factors.extend_from_slice(&other.odd_factors);
        odd_factors.sort_unstable();
        let mut double_factors = self.double_factors.clone();
        double_factors.extend_from_slice(&other.double_factors);
        double_factors.sort_unstable();
        Self { pi_power: self.pi_power + other.pi_power, odd_factors, double_factors }
    }

    fn mul_pi_power(&self, k: i64) -> Self {
        let mut m = self.clone();
        m.pi_power += k;
        m
    }
}

/// A finite rational-linear combination of [`ZetaMonomial`]s. Zero
/// coefficients are never stored, so structural equality is semantic
/// equality of the formal expressions.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymbolicConstant {
    terms: BTreeMap<ZetaMonomial, Rational>,
}

impl SymbolicConstant {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_rational(r: Rational) -> Self {
        let mut c = Self::zero();
        c.add_term(ZetaMonomial::unit(), r);
        c
    }

    pub fn from_monomial(m: ZetaMonomial, coeff: Rational) -> Self {
        let mut c = Self::zero();
        c.add_term(m, coeff);
        c
    }

    /// `zeta(n)` for integer `n >= 2`: even values are stored eagerly as
    /// `rational * pi^n`; odd values stay symbolic. `n <= 1` trips the
    /// `zeta(1)` guard.
    pub fn zeta(n: u32) -> Result<Self> {
        if n <= 1 {
            return Err(Error::ZetaOneGuard(format!("zeta({n}) requested")));
        }
        if n % 2 == 0 {
            let k = (n / 2) as usize;
            Ok(Self::from_monomial(
                ZetaMonomial::try_new(&[], n as i64, &[])?,
                exact::zeta_even_pi_power(k),
            ))
        } else {
            Ok(Self::from_monomial(ZetaMonomial::try_new(&[n], 0, &[])?, Rational::one()))
        }
    }

    /// Depth-two symbol `zeta(a, b)`, kept opaque.
    pub fn zeta_double(a: u32, b: u32) -> Result<Self> {
        Ok(Self::from_monomial(ZetaMonomial::try_new(&[], 0, &[(a, b)])?, Rational::one()))
    }

    pub fn pi_power(k: i64) -> Self {
        Self::from_monomial(
            ZetaMonomial { pi_power: k, odd_factors: Vec::new(), double_factors: Vec::new() },
            Rational::one(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ZetaMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &ZetaMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The coefficient of the empty monomial (the pure-rational part).
    pub fn rational_part(&self) -> Rational {
        self.coefficient(&ZetaMonomial::unit())
    }

    pub fn add_term(&mut self, m: ZetaMonomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * r);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    /// Multiplies by `pi^k` (used by variable conversions).
    pub fn mul_pi_power(&self, k: i64) -> Self {
        if k == 0 {
            return self.clone();
        }
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.mul_pi_power(k), c.clone());
        }
        out
    }

    /// Common weight of all monomials, if the combination is homogeneous.
    pub fn homogeneous_weight(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(|m| m.weight());
        let w = it.next()?;
        it.all(|v| v == w).then_some(w)
    }

    /// True if no monomial carries a depth-two symbol.
    pub fn is_double_free(&self) -> bool {
        self.terms.keys().all(|m| m.double_factors.is_empty())
    }

    /// The sub-combination of terms whose monomial is a pure `pi` power
    /// (no odd or depth-two factors).
    pub fn pi_part(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if m.odd_factors.is_empty() && m.double_factors.is_empty() {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Replaces every occurrence of the factor `zeta(a, b)` in every
    /// monomial by the given combination. Used by the explicit depth-two
    /// reductions; repeated factors are substituted fully.
    pub fn substitute_double(&self, a: u32, b: u32, replacement: &Self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let count = m.double_factors.iter().filter(|&&p| p == (a, b)).count();
            if count == 0 {
                out.add_term(m.clone(), c.clone());
                continue;
            }
            let mut stripped = m.clone();
            stripped.double_factors.retain(|&p| p != (a, b));
            let mut piece = Self::from_monomial(stripped, c.clone());
            for _ in 0..count {
                piece = piece.mul(replacement);
            }
            out = out.add(&piece);
        }
        out
    }
}

/// The stuffle/reflection rewrite `zeta(s,t) + zeta(t,s) = zeta(s) zeta(t) -
/// zeta(s+t)`, packaged as the combination it allows to eliminate.
#[derive(Debug, Clone)]
pub struct StuffleRule {
    pub s: u32,
    pub t: u32,
    /// `zeta(s) zeta(t) - zeta(s+t)` with even zetas already as `pi`-powers.
    pub product_side: SymbolicConstant,
}

/// Builds the reflection rule for `s, t >= 2`. For `s = t` the rule solves
/// for `zeta(s,s)` outright: `zeta(s,s) = (zeta(s)^2 - zeta(2s)) / 2`.
pub fn stuffle_reflect(s: u32, t: u32) -> Result<StuffleRule> {
    if s < 2 || t < 2 {
        return Err(Error::ZetaOneGuard(format!(
            "stuffle rule zeta({s},{t}) touches zeta(1)"
        )));
    }
    let product_side = SymbolicConstant::zeta(s)?
        .mul(&SymbolicConstant::zeta(t)?)
        .sub(&SymbolicConstant::zeta(s + t)?);
    Ok(StuffleRule { s, t, product_side })
}

impl StuffleRule {
    /// Value of `zeta(s, s)` when the rule is diagonal.
    pub fn diagonal_value(&self) -> Option<SymbolicConstant> {
        (self.s == self.t).then(|| self.product_side.scale(&crate::exact::rat(1, 2)))
    }

    /// Rewrites every `zeta(t, s)` factor as
    /// `zeta(s) zeta(t) - zeta(s+t) - zeta(s,t)` (or applies the diagonal
    /// solution when `s = t`), eliminating the reversed orientation.
    pub fn eliminate_reversed(&self, c: &SymbolicConstant) -> Result<SymbolicConstant> {
        if let Some(v) = self.diagonal_value() {
            return Ok(c.substitute_double(self.s, self.s, &v));
        }
        let replacement = self.product_side.sub(&SymbolicConstant::zeta_double(self.s, self.t)?);
        Ok(c.substitute_double(self.t, self.s, &replacement))
    }
}

/// Euler's reduction of `zeta(s, 1)` for `s >= 2`:
/// `zeta(s,1) = (s/2) zeta(s+1) - 1/2 sum_{j=1}^{s-2} zeta(j+1) zeta(s-j)`,
/// with even zeta values already converted to `pi`-powers.
pub fn euler_s1_reduce(s: u32) -> Result<SymbolicConstant> {
    if s < 2 {
        return Err(Error::Domain(format!("euler_s1_reduce needs s >= 2, got {s}")));
    }
    let mut acc = SymbolicConstant::zeta(s + 1)?
        .scale(&Rational::new(s.into(), 2.into()));
    let half = crate::exact::rat(1, 2);
    for j in 1..=s.saturating_sub(2) {
        let prod = SymbolicConstant::zeta(j + 1)?.mul(&SymbolicConstant::zeta(s - j)?);
        acc = acc.sub(&prod.scale(&half));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_i64};

    fn pi4(c: Rational) -> SymbolicConstant {
        SymbolicConstant::pi_power(4).scale(&c)
    }

    #[test]
    fn zeta_one_guard() {
        assert!(SymbolicConstant::zeta(1).is_err());
        assert!(SymbolicConstant::zeta(0).is_err());
        assert!(ZetaMonomial::try_new(&[1], 0, &[]).is_err());
        assert!(ZetaMonomial::try_new(&[4], 0, &[]).is_err());
        assert!(ZetaMonomial::try_new(&[], 0, &[(1, 1)]).is_err());
        assert!(ZetaMonomial::try_new(&[], 0, &[(2, 0)]).is_err());
    }

    #[test]
    fn even_zetas_become_pi_powers() {
        let z2 = SymbolicConstant::zeta(2).unwrap();
        assert_eq!(z2, SymbolicConstant::pi_power(2).scale(&rat(1, 6)));
        let z6 = SymbolicConstant::zeta(6).unwrap();
        assert_eq!(z6, SymbolicConstant::pi_power(6).scale(&rat(1, 945)));
    }

    #[test]
    fn stuffle_diagonal_solves_zeta22() {
        // 2 zeta(2,2) = zeta(2)^2 - zeta(4) = pi^4/36 - pi^4/90 = pi^4/60
        let rule = stuffle_reflect(2, 2).unwrap();
        let val = rule.diagonal_value().unwrap();
        assert_eq!(val, pi4(rat(1, 120)));
    }

    #[test]
    fn stuffle_rule_product_side() {
        // zeta(3,2) + zeta(2,3) = zeta(2) zeta(3) - zeta(5)
        let rule = stuffle_reflect(3, 2).unwrap();
        let expected = SymbolicConstant::zeta(2)
            .unwrap()
            .mul(&SymbolicConstant::zeta(3).unwrap())
            .sub(&SymbolicConstant::zeta(5).unwrap());
        assert_eq!(rule.product_side, expected);
        assert!(stuffle_reflect(1, 2).is_err());
    }

    #[test]
    fn stuffle_eliminates_reversed_orientation() {
        let rule = stuffle_reflect(3, 2).unwrap();
        let c = SymbolicConstant::zeta_double(2, 3).unwrap();
        let rewritten = rule.eliminate_reversed(&c).unwrap();
        let expected = rule
            .product_side
            .sub(&SymbolicConstant::zeta_double(3, 2).unwrap());
        assert_eq!(rewritten, expected);
    }

    #[test]
    fn euler_reduction_values() {
        // zeta(2,1) = zeta(3)
        assert_eq!(euler_s1_reduce(2).unwrap(), SymbolicConstant::zeta(3).unwrap());
        // zeta(3,1) = pi^4/360
        assert_eq!(euler_s1_reduce(3).unwrap(), pi4(rat(1, 360)));
        // zeta(5,1) = pi^6/1260 - zeta(3)^2/2
        let z3sq = SymbolicConstant::zeta(3)
            .unwrap()
            .mul(&SymbolicConstant::zeta(3).unwrap());
        let expected = SymbolicConstant::pi_power(6)
            .scale(&rat(1, 1260))
            .sub(&z3sq.scale(&rat(1, 2)));
        assert_eq!(euler_s1_reduce(5).unwrap(), expected);
    }

    #[test]
    fn weight_grading_multiplicative() {
        let m1 = ZetaMonomial::try_new(&[3, 5], 2, &[(4, 2)]).unwrap();
        let m2 = ZetaMonomial::try_new(&[7], 4, &[]).unwrap();
        assert_eq!(m1.weight(), 3 + 5 + 2 + 6);
        assert_eq!(m1.mul(&m2).weight(), m1.weight() + m2.weight());
    }

    #[test]
    fn rational_part_and_pi_part() {
        let mut c = SymbolicConstant::from_rational(rat_i64(7));
        c = c.add(&SymbolicConstant::pi_power(4).scale(&rat(1, 3)));
        c = c.add(&SymbolicConstant::zeta(3).unwrap());
        assert_eq!(c.rational_part(), rat_i64(7));
        let pi_part = c.pi_part();
        assert_eq!(pi_part.num_terms(), 2); // rational + pi^4
        assert_eq!(pi_part.coefficient(&ZetaMonomial::try_new(&[], 4, &[]).unwrap()), rat(1, 3));
    }
}
