//! Reduction of the bottom Laurent coefficient to products of two odd zeta
//! values: the depth-two combinations `S(M,N)` and `T(M,N)` and their closed
//! reductions, the combinatorial coefficients `Z_alpha`, the vanishing sums
//! `X_n` swept by the conjecture checker, and the resulting decomposition
//! coefficients `gamma_k`.
//!
//! The `gamma_k` closed form implemented here is assembled from the bottom
//! coefficient written as `c0 (-1)^w zeta(2w-2) + 2 sum_orderings sum_n
//! Z_n S(w-1-n, n)` with the `S` reductions applied; the formula as printed
//! in the source derivation fails its own desk checks (see
//! `gamma_coeffs_printed`), so the assembled form is the default.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::{binom, euler_at_zero, factorial, rat_i64, GraphIndex, Rational};
use crate::theorem1::coeff_c0_bottom;
use crate::zeta::SymbolicConstant;
use crate::{Error, Result};

/// `phi_l = -(2l+2) E_{2l+1}(0)`; always an integer.
pub fn phi_coeff(l: u32) -> BigInt {
    let r = euler_at_zero(2 * l as usize + 1) * rat_i64(-(2 * l as i64 + 2));
    debug_assert!(r.denom().is_one(), "phi_{l} is not an integer");
    r.numer().clone()
}

/// Shared coefficient `phi_l Gamma(2M+2l) / ((2l+2)! Gamma(2M-1))` in the
/// definitions of `S(M,N)` and `T(M,N)`.
fn correction_weight(m: i64, l: i64) -> Rational {
    Rational::new(
        phi_coeff(l as u32) * factorial((2 * m + 2 * l - 1) as u64),
        factorial((2 * l + 2) as u64) * factorial((2 * m - 2) as u64),
    )
}

/// The unreduced combination
/// `S(M,N) = zeta(2M-1, 2N+1) + sum_{l=0}^{N-1} phi_l Gamma(2M+2l) /
/// ((2l+2)! Gamma(2M-1)) zeta(2M+2l, 2N-2l)`.
pub fn s_value(m: i64, n: i64) -> Result<SymbolicConstant> {
    if m < 2 || n < 0 {
        return Err(Error::Domain(format!("S({m},{n}) outside M >= 2, N >= 0")));
    }
    let mut acc = SymbolicConstant::zeta_double((2 * m - 1) as u32, (2 * n + 1) as u32)?;
    for l in 0..n {
        let sym = SymbolicConstant::zeta_double((2 * m + 2 * l) as u32, (2 * n - 2 * l) as u32)?;
        acc = acc.add(&sym.scale(&correction_weight(m, l)));
    }
    Ok(acc)
}

/// The reflected combination
/// `T(M,N) = zeta(2N+1, 2M-1) + sum_{l=0}^{N-1} (same weights)
/// zeta(2N-2l, 2M+2l)`; needs `N >= 1`.
pub fn t_value(m: i64, n: i64) -> Result<SymbolicConstant> {
    if m < 2 || n < 1 {
        return Err(Error::Domain(format!("T({m},{n}) outside M >= 2, N >= 1")));
    }
    let mut acc = SymbolicConstant::zeta_double((2 * n + 1) as u32, (2 * m - 1) as u32)?;
    for l in 0..n {
        let sym = SymbolicConstant::zeta_double((2 * n - 2 * l) as u32, (2 * m + 2 * l) as u32)?;
        acc = acc.add(&sym.scale(&correction_weight(m, l)));
    }
    Ok(acc)
}

/// Euler-style reduction of `S(M,0)`:
/// `1/2 (2M-1) zeta(2M) - 1/2 sum_{j=1}^{2M-3} zeta(j+1) zeta(2M-1-j)`.
pub fn s_reduce_n0(m: i64) -> Result<SymbolicConstant> {
    if m < 2 {
        return Err(Error::Domain(format!("S({m},0) needs M >= 2")));
    }
    let mut acc = SymbolicConstant::zeta(2 * m as u32)?
        .scale(&Rational::new(BigInt::from(2 * m - 1), BigInt::from(2)));
    let half = crate::exact::rat(1, 2);
    for j in 1..=(2 * m - 3) {
        let prod = SymbolicConstant::zeta((j + 1) as u32)?
            .mul(&SymbolicConstant::zeta((2 * m - 1 - j) as u32)?);
        acc = acc.sub(&prod.scale(&half));
    }
    Ok(acc)
}

/// Inner Euler-polynomial sum of the `T` reduction:
/// `f_alpha(M,N) = sum_{j=0}^{2N-1} E_j(0) binom(alpha-1, 2N-j)
/// binom(2M+j-2, j)` (without the overall sign and the 1/2).
fn f_alpha_sum(alpha: i64, m: i64, n: i64) -> Rational {
    let mut acc = Rational::zero();
    for j in 0..=(2 * n - 1) {
        let e = euler_at_zero(j as usize);
        if e.is_zero() {
            continue;
        }
        let c = binom(alpha - 1, 2 * n - j) * binom(2 * m + j - 2, j);
        if !c.is_zero() {
            acc += e * Rational::from_integer(c);
        }
    }
    acc
}

/// Closed reduction of `T(M,N)` for `N >= 1`:
/// `sum_{alpha=2}^{2M+2N-2} (-1)^{alpha+1} zeta(alpha) zeta(2M+2N-alpha) *
/// (1/2) f_alpha(M,N)`, with even zetas as `pi`-powers and odd-odd products
/// kept symbolic.
pub fn t_reduce(m: i64, n: i64) -> Result<SymbolicConstant> {
    if m < 2 || n < 1 {
        return Err(Error::Domain(format!("T({m},{n}) outside M >= 2, N >= 1")));
    }
    let mut acc = SymbolicConstant::zero();
    let half = crate::exact::rat(1, 2);
    for alpha in 2..=(2 * m + 2 * n - 2) {
        let inner = f_alpha_sum(alpha, m, n);
        if inner.is_zero() {
            continue;
        }
        let sign = crate::exact::sign_pow(alpha + 1);
        let prod = SymbolicConstant::zeta(alpha as u32)?
            .mul(&SymbolicConstant::zeta((2 * m + 2 * n - alpha) as u32)?);
        acc = acc.add(&prod.scale(&(inner * &half * rat_i64(sign))));
    }
    Ok(acc)
}

/// Reduction of `S(M,N)` through the reflection relation:
/// `S = -T + zeta(2M-1) zeta(2N+1) - zeta(2M+2N) + sum_l (weights)
/// (zeta(2M+2l) zeta(2N-2l) - zeta(2M+2N))`.
pub fn s_reduce(m: i64, n: i64) -> Result<SymbolicConstant> {
    if n == 0 {
        return s_reduce_n0(m);
    }
    let z_total = SymbolicConstant::zeta((2 * m + 2 * n) as u32)?;
    let mut acc = t_reduce(m, n)?.neg();
    acc = acc.add(
        &SymbolicConstant::zeta((2 * m - 1) as u32)?
            .mul(&SymbolicConstant::zeta((2 * n + 1) as u32)?),
    );
    acc = acc.sub(&z_total);
    for l in 0..n {
        let prod = SymbolicConstant::zeta((2 * m + 2 * l) as u32)?
            .mul(&SymbolicConstant::zeta((2 * n - 2 * l) as u32)?);
        acc = acc.add(&prod.sub(&z_total).scale(&correction_weight(m, l)));
    }
    Ok(acc)
}

/// The bounded double-binomial sum `Z_alpha(a1,a2,a3)`; zero on an empty
/// range `k_- > k_+` with `k_+ = min(a1, 2 alpha + 1)`,
/// `k_- = max(1, 2 alpha + 2 - a1)`.
pub fn z_alpha(alpha: i64, a1: i64, a2: i64, a3: i64) -> BigInt {
    let w = a1 + a2 + a3;
    let k_hi = a1.min(2 * alpha + 1);
    let k_lo = 1.max(2 * alpha + 2 - a1);
    let mut acc = BigInt::zero();
    let mut k = k_lo;
    while k <= k_hi {
        acc += binom(a1 + a3 - k - 1, a3 - 1)
            * binom(a1 + a3 - 2 * alpha + k - 3, a3 - 1)
            * binom(2 * alpha, k - 1)
            * binom(2 * w - 2 * alpha - 4, w - k - 1);
        k += 1;
    }
    acc
}

fn orderings(a1: i64, a2: i64, a3: i64) -> [(i64, i64, i64); 6] {
    [
        (a1, a2, a3),
        (a1, a3, a2),
        (a2, a1, a3),
        (a2, a3, a1),
        (a3, a1, a2),
        (a3, a2, a1),
    ]
}

/// The vanishing sum `X_n(a1,a2,a3)` for `1 <= n <= a1-1`, in the form that
/// pairs `Z_l` against Euler-polynomial values, symmetrized in `a2, a3`.
pub fn x_value(n: i64, a1: i64, a2: i64, a3: i64) -> Result<Rational> {
    if n < 1 || n > a1 - 1 {
        return Err(Error::Domain(format!("X_{n} needs 1 <= n <= a1-1 = {}", a1 - 1)));
    }
    let w = a1 + a2 + a3;
    let mut total = Rational::zero();
    for (b2, b3) in [(a2, a3), (a3, a2)] {
        for l in n..a1 {
            let e = euler_at_zero((2 * l - 2 * n + 1) as usize);
            if e.is_zero() {
                continue;
            }
            let z = z_alpha(l, a1, b2, b3);
            let c = binom(2 * w - 2 * n - 3, 2 * w - 2 * l - 4);
            total += e * Rational::from_integer(z * c);
        }
        let k_hi = a1.min(2 * n);
        let k_lo = 1.max(2 * n - a1 + 1);
        let mut k = k_lo;
        while k <= k_hi {
            total += Rational::from_integer(
                binom(a1 + b2 - k - 1, b2 - 1)
                    * binom(a1 + b2 - 2 * n + k - 2, b2 - 1)
                    * binom(2 * n - 1, k - 1)
                    * binom(2 * w - 2 * n - 3, w - k - 1),
            );
            k += 1;
        }
    }
    Ok(total)
}

/// The same sum after the change of variables `n -> a1 - n`,
/// `l -> a1 - l`; used as the internal agreement check for the sweep.
pub fn x_value_alt(n: i64, a1: i64, a2: i64, a3: i64) -> Result<Rational> {
    if n < 1 || n > a1 - 1 {
        return Err(Error::Domain(format!("X_{n} needs 1 <= n <= a1-1 = {}", a1 - 1)));
    }
    let nn = a1 - n; // evaluate X_{a1-nn} with the printed double sum
    let mut total = Rational::zero();
    for (b2, b3) in [(a2, a3), (a3, a2)] {
        for k in 0..a1 {
            for l in 0..a1 {
                let idx = 2 * nn - k - l - 1;
                if idx < 0 {
                    continue;
                }
                let e = euler_at_zero(idx as usize);
                if e.is_zero() {
                    continue;
                }
                let c = binom(b2 - 1 + k, k)
                    * binom(b2 - 1 + l, l)
                    * binom(2 * a1 - k - l - 2, a1 - k - 1)
                    * binom(2 * b2 + 2 * b3 + k + l - 2, b2 + b3 + k - 1)
                    * binom(2 * b2 + 2 * b3 + 2 * nn - 3, 2 * nn - k - l - 1);
                if !c.is_zero() {
                    total += e * Rational::from_integer(c);
                }
            }
        }
    }
    Ok(total)
}

/// Decomposition of `c_{2-w}` over products of two odd zeta values.
///
/// `raw[k-1]` is `gamma_k` for `1 <= k <= w-2` in
/// `c_{2-w} = sum_k 1/2 gamma_k zeta(2k+1) zeta(2w-2k-3)`; the `k = w-2`
/// slot formally pairs with `zeta(1)` and must carry coefficient zero.
/// `folded` maps the unordered pair `(2a+1, 2b+1)` with `a <= b` to the full
/// coefficient of `zeta(2a+1) zeta(2b+1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OddPairDecomposition {
    w: i64,
    raw: Vec<Rational>,
    folded: BTreeMap<(u32, u32), Rational>,
}

impl OddPairDecomposition {
    fn from_raw(w: i64, raw: Vec<Rational>) -> Result<Self> {
        assert_eq!(raw.len(), (w - 2).max(0) as usize);
        let mut folded = BTreeMap::new();
        for (i, g) in raw.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            let k = i as i64 + 1;
            let (a, b) = (2 * k + 1, 2 * w - 2 * k - 3);
            if a.min(b) <= 1 {
                return Err(Error::ZetaOneGuard(format!(
                    "gamma_{k} = {g} pairs zeta({}) with zeta(1)",
                    a.max(b)
                )));
            }
            let key = (a.min(b) as u32, a.max(b) as u32);
            let entry = folded.entry(key).or_insert_with(Rational::zero);
            *entry += g * crate::exact::rat(1, 2);
        }
        folded.retain(|_, v: &mut Rational| !v.is_zero());
        Ok(Self { w, raw, folded })
    }

    fn from_folded(w: i64, folded: BTreeMap<(u32, u32), Rational>) -> Result<Self> {
        let mut raw = vec![Rational::zero(); (w - 2).max(0) as usize];
        for (&(a, _b), c) in &folded {
            let k = (a as i64 - 1) / 2;
            if k < 1 || k > w - 2 {
                return Err(Error::Domain(format!(
                    "pair ({a},..) incompatible with weight {w}"
                )));
            }
            raw[(k - 1) as usize] = c * rat_i64(2);
        }
        Ok(Self { w, raw, folded })
    }

    pub fn weight(&self) -> i64 {
        2 * self.w - 2
    }

    /// `gamma_k` for `1 <= k <= w-2`.
    pub fn raw(&self) -> &[Rational] {
        &self.raw
    }

    pub fn folded(&self) -> &BTreeMap<(u32, u32), Rational> {
        &self.folded
    }

    /// True when every `gamma_k` is an integer.
    pub fn all_integral(&self) -> bool {
        self.raw.iter().all(|g| g.denom().is_one())
    }

    /// The reconstruction `sum 1/2 gamma_k zeta(2k+1) zeta(2w-2k-3)` as an
    /// element of the coefficient ring.
    pub fn odd_pair_form(&self) -> Result<SymbolicConstant> {
        let mut acc = SymbolicConstant::zero();
        for (&(a, b), c) in &self.folded {
            let prod = SymbolicConstant::zeta(a)?.mul(&SymbolicConstant::zeta(b)?);
            acc = acc.add(&prod.scale(c));
        }
        Ok(acc)
    }
}

fn triple_parts(index: &GraphIndex) -> Result<(i64, i64, i64, i64)> {
    let e = index.exponents();
    if e.len() != 3 {
        return Err(Error::Domain("decomposition needs a triple".into()));
    }
    let (a1, a2, a3) = (e[0] as i64, e[1] as i64, e[2] as i64);
    Ok((a1, a2, a3, a1 + a2 + a3))
}

/// The decomposition coefficients `gamma_k` assembled from the `S`-route.
/// Only slots `1 <= k <= w-3` are populated; the `zeta(1)`-pairing slot
/// `k = w-2` is structurally zero.
pub fn gamma_coeffs(index: &GraphIndex) -> Result<OddPairDecomposition> {
    let (a1, a2, a3, w) = triple_parts(index)?;
    let mut raw = vec![Rational::zero(); (w - 2).max(0) as usize];
    for k in 1..=(w - 3) {
        let mut t = Rational::zero();
        for (b1, b2, b3) in orderings(a1, a2, a3) {
            if k <= b1 - 1 {
                t += Rational::from_integer(BigInt::from(2) * z_alpha(k, b1, b2, b3));
            }
            t -= Rational::from_integer(z_alpha(0, b1, b2, b3));
            for n in 1..b1 {
                let f = f_alpha_sum(2 * k + 1, w - 1 - n, n);
                if !f.is_zero() {
                    t -= Rational::from_integer(z_alpha(n, b1, b2, b3)) * f;
                }
            }
        }
        raw[(k - 1) as usize] = t * rat_i64(2);
    }
    OddPairDecomposition::from_raw(w, raw)
}

/// The `gamma_k` formula exactly as printed in the source derivation,
/// evaluated for one `k`. Fails the desk checks (e.g. `(2,1,1)` gives `-36`
/// where the decomposition requires `-8`); kept for documentation.
pub fn gamma_coeff_printed(index: &GraphIndex, k: i64) -> Result<Rational> {
    let (a1, a2, a3, w) = triple_parts(index)?;
    if k < 1 || k > w - 2 {
        return Err(Error::Domain(format!("gamma index k={k} outside 1..={}", w - 2)));
    }
    let mut total = Rational::zero();
    for (b1, b2, b3) in orderings(a1, a2, a3) {
        if k <= b1 - 1 {
            total += Rational::from_integer(BigInt::from(2) * z_alpha(k, b1, b2, b3));
        }
        total -= Rational::from_integer(z_alpha(0, b1, b2, b3));
        for alpha in 1..b1 {
            let mut inner = Rational::zero();
            for n in 0..=(2 * alpha - 1) {
                let e = euler_at_zero(n as usize);
                if e.is_zero() {
                    continue;
                }
                inner += e * Rational::from_integer(
                    binom(2 * k, 2 * alpha - n) * binom(2 * w - 2 * alpha + n - 4, n),
                );
            }
            total += Rational::from_integer(z_alpha(alpha, b1, b2, b3)) * inner;
        }
    }
    Ok(total)
}

/// Reduces the bottom coefficient through the `S`/`T` machinery into
/// odd-pair form. The `pi^{2w-2}` part must cancel exactly; a nonzero
/// residual is a hard error.
pub fn c_bottom_reduced(index: &GraphIndex) -> Result<OddPairDecomposition> {
    let (a1, a2, a3, w) = triple_parts(index)?;
    let c0 = coeff_c0_bottom(index)?;
    let mut acc = SymbolicConstant::zeta(2 * w as u32 - 2)?.scale(&Rational::from_integer(
        BigInt::from(crate::exact::sign_pow(w)) * c0,
    ));
    let two = rat_i64(2);
    for (b1, b2, b3) in orderings(a1, a2, a3) {
        for n in 0..b1 {
            let z = z_alpha(n, b1, b2, b3);
            if z.is_zero() {
                continue;
            }
            let s = s_reduce(w - 1 - n, n)?;
            acc = acc.add(&s.scale(&(Rational::from_integer(z) * &two)));
        }
    }
    // classify: everything must be a product of exactly two odd zetas
    let mut folded: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
    for (m, c) in acc.terms() {
        if !m.double_factors().is_empty() {
            return Err(Error::Domain(format!(
                "unreduced depth-two symbol survived: {m:?}"
            )));
        }
        if m.pi_power() != 0 || m.odd_factors().is_empty() {
            return Err(Error::ConjectureViolation(format!(
                "pi^{{2w-2}} part failed to cancel for {index}: {c} * pi^{}",
                m.pi_power()
            )));
        }
        let odd = m.odd_factors();
        if odd.len() != 2 {
            return Err(Error::Domain(format!(
                "expected a product of two odd zetas, got {m:?}"
            )));
        }
        *folded.entry((odd[0], odd[1])).or_insert_with(Rational::zero) += c.clone();
    }
    folded.retain(|_, v: &mut Rational| !v.is_zero());
    OddPairDecomposition::from_folded(w, folded)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn idx(a1: u32, a2: u32, a3: u32) -> GraphIndex {
        GraphIndex::triple(a1, a2, a3).unwrap()
    }

    #[test]
    fn phi_values() {
        assert_eq!(phi_coeff(0), BigInt::from(1));
        assert_eq!(phi_coeff(1), BigInt::from(-1));
        assert_eq!(phi_coeff(2), BigInt::from(3));
        assert_eq!(phi_coeff(3), BigInt::from(-17));
    }

    #[test]
    fn phi_solves_defining_system() {
        // sum_{l<=p} (phi_l/(2l+2)) binom(2p+2, 2l+1) = 1 for all p
        for p in 0..=20i64 {
            let mut acc = Rational::zero();
            for l in 0..=p {
                acc += Rational::new(phi_coeff(l as u32), BigInt::from(2 * l + 2))
                    * Rational::from_integer(binom(2 * p + 2, 2 * l + 1));
            }
            assert_eq!(acc, Rational::one(), "even condition failed at p={p}");
            // odd-alpha variant: delta_{l,p} + binom(2p+1, 2l+1)
            let mut acc = Rational::zero();
            for l in 0..=p {
                let delta = if l == p { BigInt::one() } else { BigInt::zero() };
                acc += Rational::new(phi_coeff(l as u32), BigInt::from(2 * l + 2))
                    * Rational::from_integer(delta + binom(2 * p + 1, 2 * l + 1));
            }
            assert_eq!(acc, Rational::one(), "odd condition failed at p={p}");
        }
    }

    #[test]
    fn s_t_value_shapes() {
        assert_eq!(
            s_value(2, 0).unwrap(),
            SymbolicConstant::zeta_double(3, 1).unwrap()
        );
        // T(2,1) = zeta(3,3) + 3/2 zeta(2,4)
        let expected = SymbolicConstant::zeta_double(3, 3)
            .unwrap()
            .add(&SymbolicConstant::zeta_double(2, 4).unwrap().scale(&rat(3, 2)));
        assert_eq!(t_value(2, 1).unwrap(), expected);
        assert!(t_value(2, 0).is_err());
    }

    #[test]
    fn s_reduce_n0_values() {
        // S(2,0) = zeta(3,1) = pi^4/360
        let expected = SymbolicConstant::pi_power(4).scale(&rat(1, 360));
        assert_eq!(s_reduce_n0(2).unwrap(), expected);
        // S(3,0) = (5/2) zeta(6) - zeta(2) zeta(4) - 1/2 zeta(3)^2
        let z3sq = SymbolicConstant::zeta(3)
            .unwrap()
            .mul(&SymbolicConstant::zeta(3).unwrap());
        let expected = SymbolicConstant::pi_power(6)
            .scale(&(rat(5, 2) * rat(1, 945) - rat(1, 6) * rat(1, 90)))
            .add(&z3sq.scale(&rat(-1, 2)));
        assert_eq!(s_reduce_n0(3).unwrap(), expected);
    }

    #[test]
    fn t_reduce_21() {
        // T(2,1) = 21/8 zeta(6) - zeta(3)^2
        let z3sq = SymbolicConstant::zeta(3)
            .unwrap()
            .mul(&SymbolicConstant::zeta(3).unwrap());
        let expected = SymbolicConstant::pi_power(6)
            .scale(&(rat(21, 8) * rat(1, 945)))
            .add(&z3sq.scale(&rat(-1, 1)));
        assert_eq!(t_reduce(2, 1).unwrap(), expected);
        // zeta(3)^2 coefficient is exactly -1
        let m = crate::zeta::ZetaMonomial::try_new(&[3, 3], 0, &[]).unwrap();
        assert_eq!(t_reduce(2, 1).unwrap().coefficient(&m), rat(-1, 1));
    }

    #[test]
    fn z_alpha_values() {
        assert_eq!(z_alpha(0, 1, 1, 1), BigInt::from(2));
        assert_eq!(z_alpha(0, 2, 1, 1), BigInt::from(6));
        // empty range
        assert_eq!(z_alpha(1, 1, 1, 1), BigInt::zero());
    }

    #[test]
    fn x_vanishes_small() {
        assert_eq!(x_value(1, 2, 1, 1).unwrap(), Rational::zero());
        assert_eq!(x_value(1, 2, 3, 2).unwrap(), Rational::zero());
        assert_eq!(x_value(2, 3, 2, 1).unwrap(), Rational::zero());
        assert!(x_value(2, 2, 1, 1).is_err());
    }

    #[test]
    fn x_forms_agree() {
        for a1 in 2..=6i64 {
            for a2 in 1..=4 {
                for a3 in 1..=4 {
                    for n in 1..a1 {
                        let v1 = x_value(n, a1, a2, a3).unwrap();
                        let v2 = x_value_alt(n, a1, a2, a3).unwrap();
                        assert_eq!(v1, v2, "X forms disagree at n={n} ({a1},{a2},{a3})");
                    }
                }
            }
        }
    }

    #[test]
    fn gamma_c211() {
        let g = gamma_coeffs(&idx(2, 1, 1)).unwrap();
        assert_eq!(g.raw(), &[rat(-8, 1), Rational::zero()]);
        assert_eq!(g.folded().get(&(3, 3)), Some(&rat(-4, 1)));
        assert!(g.all_integral());
    }

    #[test]
    fn gamma_c111_zero() {
        let g = gamma_coeffs(&idx(1, 1, 1)).unwrap();
        assert!(g.raw().iter().all(|x| x.is_zero()));
        assert!(g.folded().is_empty());
    }

    #[test]
    fn printed_gamma_fails_desk_check() {
        // documents the defect that motivated the assembled form
        let v = gamma_coeff_printed(&idx(2, 1, 1), 1).unwrap();
        assert_eq!(v, rat(-36, 1));
        assert_ne!(v, rat(-8, 1));
    }

    #[test]
    fn c_bottom_reduced_values() {
        let d = c_bottom_reduced(&idx(1, 1, 1)).unwrap();
        assert!(d.folded().is_empty(), "c_{{2-w}}(1,1,1) must vanish");

        let d = c_bottom_reduced(&idx(2, 1, 1)).unwrap();
        assert_eq!(d.folded().len(), 1);
        assert_eq!(d.folded().get(&(3, 3)), Some(&rat(-4, 1)));

        let d = c_bottom_reduced(&idx(3, 1, 1)).unwrap();
        assert_eq!(d.folded().get(&(3, 5)), Some(&rat(-32, 1)));

        let d = c_bottom_reduced(&idx(4, 1, 1)).unwrap();
        assert_eq!(d.folded().get(&(5, 5)), Some(&rat(-4, 1)));
        assert_eq!(d.folded().get(&(3, 7)), Some(&rat(-120, 1)));

        let d = c_bottom_reduced(&idx(3, 2, 1)).unwrap();
        assert_eq!(d.folded().get(&(5, 5)), Some(&rat(-68, 1)));
        assert_eq!(d.folded().len(), 1);

        let d = c_bottom_reduced(&idx(2, 2, 2)).unwrap();
        assert_eq!(d.folded().get(&(5, 5)), Some(&rat(240, 1)));
        assert_eq!(d.folded().get(&(3, 7)), None);
    }

    #[test]
    fn gamma_matches_reduction_folded() {
        for w in 3..=9u32 {
            for a1 in 1..w {
                for a2 in 1..w {
                    for a3 in 1..w {
                        if a1 + a2 + a3 != w {
                            continue;
                        }
                        let i = idx(a1, a2, a3);
                        let g = gamma_coeffs(&i).unwrap();
                        let r = c_bottom_reduced(&i).unwrap();
                        assert_eq!(
                            g.folded(),
                            r.folded(),
                            "folded mismatch at ({a1},{a2},{a3})"
                        );
                        assert!(g.all_integral(), "non-integer gamma at ({a1},{a2},{a3})");
                    }
                }
            }
        }
    }
}
