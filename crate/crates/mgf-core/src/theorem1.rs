//! Closed-form Laurent coefficients of the constant Fourier mode of
//! `C_{a1,a2,a3}`: the top coefficient, the odd-zeta tower, and the bottom
//! coefficient built from depth-two zeta values.
//!
//! Two independent routes are implemented for the tower: the step-gated
//! binomial formula and the partial-fraction route through the one-loop
//! subsums (`kl_laurent_part`). The latter is the default; their agreement
//! is enforced by tests. The bottom coefficient's integer prefactor of
//! `zeta(2w-2)` is computed from the partial-fraction route summed over all
//! six orderings (see `coeff_c0_bottom`); the single-ordering variant that
//! fails the desk checks is kept behind `coeff_c0_bottom_printed` for
//! comparison only.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::{bernoulli, binom, factorial, sign_pow, GraphIndex, Rational};
use crate::laurent::{LaurentPolynomial, Variable};
use crate::zeta::SymbolicConstant;
use crate::{Error, Result};

/// Partial fraction coefficient `A_k(a,b) = (-1)^{a+k} binom(a+b-k-1, a-k)`.
/// Vanishes outside `1 <= k <= a` by the binomial zero convention.
pub fn pf_a(k: i64, a: i64, b: i64) -> BigInt {
    BigInt::from(sign_pow(a + k)) * binom(a + b - k - 1, a - k)
}

/// Partial fraction coefficient `B_k(a,b) = (-1)^a binom(a+b-k-1, b-k)`.
pub fn pf_b(k: i64, a: i64, b: i64) -> BigInt {
    BigInt::from(sign_pow(a)) * binom(a + b - k - 1, b - k)
}

/// The integer triple-binomial
/// `g_{a1,a2}(alpha,beta) = (-1)^{a1} binom(2a1-2-alpha-beta, a1-1)
///  binom(a2+alpha-1, a2-1) binom(a2+beta-1, a2-1)`.
pub fn g_coeff(a1: i64, a2: i64, alpha: i64, beta: i64) -> BigInt {
    BigInt::from(sign_pow(a1))
        * binom(2 * a1 - 2 - alpha - beta, a1 - 1)
        * binom(a2 + alpha - 1, a2 - 1)
        * binom(a2 + beta - 1, a2 - 1)
}

fn check_triple(index: &GraphIndex) -> Result<(i64, i64, i64, i64)> {
    let e = index.exponents();
    if e.len() != 3 {
        return Err(Error::Domain(format!(
            "two-loop routines need three exponents, got {}",
            e.len()
        )));
    }
    let (a1, a2, a3) = (e[0] as i64, e[1] as i64, e[2] as i64);
    let w = a1 + a2 + a3;
    if w < 3 {
        return Err(Error::Domain(format!("weight {w} below 3")));
    }
    Ok((a1, a2, a3, w))
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

fn rat_int(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// The rational `c_w` multiplying `(-4 pi tau2)^w`. Multiplied by `(-4)^w`
/// it is the `y^w` coefficient of the constant mode.
pub fn coeff_top(index: &GraphIndex) -> Result<Rational> {
    let (_a1, a2, a3, w) = check_triple(index)?;
    let mut total = Rational::zero();
    for (p, q) in [(a2, a3), (a3, a2)] {
        for k in 0..=p {
            // Gamma(2p+2q-2k) / (Gamma(2q) Gamma(2p-2k+1))
            let gamma_ratio = Rational::new(
                factorial((2 * p + 2 * q - 2 * k - 1) as u64),
                factorial((2 * q - 1) as u64) * factorial((2 * p - 2 * k) as u64),
            );
            let b_factor = bernoulli(2 * k as usize) * bernoulli((2 * w - 2 * k) as usize)
                / rat_int(factorial(2 * k as u64) * factorial((2 * w - 2 * k) as u64));
            total += b_factor * gamma_ratio;
        }
    }
    Ok(total)
}

/// Tower coefficient `c_{w-2k-1}` for `1 <= k <= w-1` via the step-gated
/// binomial formula: it multiplies `zeta(2k+1) u^{w-2k-1}` with `u = 4y`.
pub fn coeff_zeta_gated(index: &GraphIndex, k: i64) -> Result<Rational> {
    let (a1, a2, a3, w) = check_triple(index)?;
    if k < 1 || k > w - 1 {
        return Err(Error::Domain(format!("tower index k={k} outside 1..={}", w - 1)));
    }
    let mut inner = BigInt::zero();
    for (b1, b2, b3) in orderings(a1, a2, a3) {
        for alpha in 0..b1 {
            for beta in 0..(b1 - alpha) {
                // step gate: contributes only when
                // a3 + floor((a2+beta)/2) - w + k + 1 >= 0
                if b3 + (b2 + beta).div_euclid(2) - w + k + 1 < 0 {
                    continue;
                }
                let sign = sign_pow(b1 + b3 + beta + 1);
                inner += BigInt::from(sign)
                    * g_coeff(b1, b2, alpha, beta)
                    * binom(2 * k - 2 * b1 + alpha + beta + 1, b2 + alpha - 1);
            }
        }
    }
    let prefactor = bernoulli((2 * w - 2 * k - 2) as usize)
        * Rational::new(BigInt::from(2), factorial((2 * w - 2 * k - 2) as u64));
    Ok(prefactor * rat_int(inner))
}

/// Tower coefficient computed from the partial-fraction route; the default
/// used when assembling the Laurent polynomial.
pub fn coeff_zeta(index: &GraphIndex, k: i64) -> Result<Rational> {
    let (_, _, _, w) = check_triple(index)?;
    if k < 1 || k > w - 1 {
        return Err(Error::Domain(format!("tower index k={k} outside 1..={}", w - 1)));
    }
    Ok(kl_parts(index)?.tower[(k - 1) as usize].clone())
}

/// The decomposition of the one-loop-subsum route into named pieces:
/// the `zeta(2w-2)` integer, and the tower coefficients indexed by `k`.
pub struct KlParts {
    /// Integer multiplying `(-1)^w zeta(2w-2) u^{2-w}`.
    pub c0: BigInt,
    /// `tower[k-1]` multiplies `zeta(2k+1) u^{w-2k-1}` for `1 <= k <= w-1`.
    pub tower: Vec<Rational>,
}

/// Sums the Laurent part of the one-loop subsums over all six orderings and
/// collects exact coefficients. Any term that would attach a nonzero
/// coefficient to `zeta(1)` aborts.
pub fn kl_parts(index: &GraphIndex) -> Result<KlParts> {
    let (a1, a2, a3, w) = check_triple(index)?;
    let mut c0 = BigInt::zero();
    let mut tower = vec![Rational::zero(); (w - 1) as usize];
    for (b1, b2, b3) in orderings(a1, a2, a3) {
        for alpha in 0..b1 {
            for beta in 0..(b1 - alpha) {
                let g = g_coeff(b1, b2, alpha, beta);
                if g.is_zero() {
                    continue;
                }
                let a = b2 + 2 * b3 + beta;
                let b = b2 + alpha;
                // zeta(2w-2) piece
                c0 += &g * pf_b(1, a, b);
                // zeta(2w-1) piece, tower slot k' = w-1
                let gamma_ratio = Rational::new(
                    BigInt::from(2 * sign_pow(b2 + beta + w - 1))
                        * factorial((2 * b2 + 2 * b3 + alpha + beta - 1) as u64),
                    factorial((b2 + 2 * b3 + beta) as u64) * factorial((b2 + alpha - 1) as u64),
                );
                tower[(w - 2) as usize] += rat_int(g.clone()) * gamma_ratio;
                // even-zeta sum: k runs to b3 + floor((b2+beta)/2); each term
                // pairs zeta(2k) zeta(2w-1-2k) and lands in slot k' = w-1-k.
                for k in 1..=(b3 + (b2 + beta).div_euclid(2)) {
                    let zeta_arg = 2 * w - 1 - 2 * k;
                    let coeff = rat_int(&g * pf_a(2 * k, a, b))
                        * bernoulli(2 * k as usize)
                        * Rational::new(
                            BigInt::from(2 * sign_pow(w - 1)),
                            factorial(2 * k as u64),
                        );
                    if zeta_arg <= 1 {
                        if !coeff.is_zero() {
                            return Err(Error::ZetaOneGuard(format!(
                                "kl route produced zeta({zeta_arg}) with coefficient {coeff} \
                                 at ordering ({b1},{b2},{b3})"
                            )));
                        }
                        continue;
                    }
                    tower[(w - 1 - k - 1) as usize] += coeff;
                }
            }
        }
    }
    Ok(KlParts { c0, tower })
}

/// The tower and `zeta(2w-2)` pieces as a Laurent polynomial in `u`, i.e.
/// the full contribution of the one-loop subsums to the constant mode.
pub fn kl_laurent_part(index: &GraphIndex) -> Result<LaurentPolynomial> {
    let (_, _, _, w) = check_triple(index)?;
    let parts = kl_parts(index)?;
    let mut poly = LaurentPolynomial::new(Variable::U, w as u32);
    for (i, c) in parts.tower.iter().enumerate() {
        let k = i as i64 + 1;
        let coeff = SymbolicConstant::zeta(2 * k as u32 + 1)?.scale(c);
        poly.add_term(w - 2 * k - 1, coeff);
    }
    let c0_coeff = SymbolicConstant::zeta(2 * w as u32 - 2)?
        .scale(&rat_int(BigInt::from(sign_pow(w)) * parts.c0));
    poly.add_term(2 - w, c0_coeff);
    Ok(poly)
}

/// The integer multiplying `(-1)^w zeta(2w-2)` inside `c_{2-w}`, summed over
/// all six orderings of the exponents.
pub fn coeff_c0_bottom(index: &GraphIndex) -> Result<BigInt> {
    Ok(kl_parts(index)?.c0)
}

/// The single-ordering variant with binomial top `2a2+2a3+alpha+beta`, as
/// printed in the source derivation. It fails the desk checks
/// (`c_{2-w}(1,1,1)` does not vanish with it) and exists for documentation.
pub fn coeff_c0_bottom_printed(index: &GraphIndex) -> Result<BigInt> {
    let (a1, a2, a3, _) = check_triple(index)?;
    let mut total = BigInt::zero();
    for alpha in 0..a1 {
        for beta in 0..(a1 - alpha) {
            total += BigInt::from(sign_pow(a2 + beta))
                * g_coeff(a1, a2, alpha, beta)
                * binom(2 * a2 + 2 * a3 + alpha + beta, a2 + alpha - 1);
        }
    }
    Ok(total)
}

/// The integer combination of depth-two zeta values
/// `Z(a1,a2,a3) = sum_{k,l=1}^{a1} binom(a1+a2-k-1, a2-1)
///  binom(a1+a2-l-1, a2-1) binom(k+l-2, k-1) binom(2w-k-l-2, w-k-1)
///  zeta(2w-k-l-1, k+l-1)`.
pub fn double_zeta_z(index: &GraphIndex) -> Result<SymbolicConstant> {
    let (a1, a2, _a3, w) = check_triple(index)?;
    let mut acc = SymbolicConstant::zero();
    for k in 1..=a1 {
        for l in 1..=a1 {
            let c = binom(a1 + a2 - k - 1, a2 - 1)
                * binom(a1 + a2 - l - 1, a2 - 1)
                * binom(k + l - 2, k - 1)
                * binom(2 * w - k - l - 2, w - k - 1);
            if c.is_zero() {
                continue;
            }
            let sym = SymbolicConstant::zeta_double((2 * w - k - l - 1) as u32, (k + l - 1) as u32)?;
            acc = acc.add(&sym.scale(&rat_int(c)));
        }
    }
    Ok(acc)
}

/// The bottom coefficient `c_{2-w}` in unreduced form:
/// `c0 (-1)^w zeta(2w-2) + 2 sum_{orderings} Z`.
pub fn coeff_bottom(index: &GraphIndex) -> Result<SymbolicConstant> {
    let (a1, a2, a3, w) = check_triple(index)?;
    let c0 = coeff_c0_bottom(index)?;
    let mut acc = SymbolicConstant::zeta(2 * w as u32 - 2)?
        .scale(&rat_int(BigInt::from(sign_pow(w)) * c0));
    for (b1, b2, b3) in orderings(a1, a2, a3) {
        let z = double_zeta_z(&GraphIndex::triple(b1 as u32, b2 as u32, b3 as u32)?)?;
        acc = acc.add(&z.scale(&Rational::from_integer(BigInt::from(2))));
    }
    Ok(acc)
}

/// Assembles the full Laurent polynomial of the constant mode in `u = 4y`:
/// top term, odd-zeta tower, and the bottom coefficient reduced to products
/// of two odd zeta values (the `pi^{2w-2}` part cancels exactly).
pub fn laurent(index: &GraphIndex) -> Result<LaurentPolynomial> {
    let (_, _, _, w) = check_triple(index)?;
    let parts = kl_parts(index)?;
    let mut poly = LaurentPolynomial::new(Variable::U, w as u32);
    // (-4 pi tau2)^w c_w = (-1)^w c_w u^w
    let top = coeff_top(index)? * rat_int(BigInt::from(sign_pow(w)));
    poly.add_term(w, SymbolicConstant::from_rational(top));
    for (i, c) in parts.tower.iter().enumerate() {
        let k = i as i64 + 1;
        poly.add_term(w - 2 * k - 1, SymbolicConstant::zeta(2 * k as u32 + 1)?.scale(c));
    }
    let bottom = crate::decomp::c_bottom_reduced(index)?;
    poly.add_term(2 - w, bottom.odd_pair_form()?);
    poly.check_degree_span()?;
    Ok(poly)
}

/// Like [`laurent`] but keeps `c_{2-w}` in its unreduced depth-two form.
pub fn laurent_unreduced(index: &GraphIndex) -> Result<LaurentPolynomial> {
    let (_, _, _, w) = check_triple(index)?;
    let parts = kl_parts(index)?;
    let mut poly = LaurentPolynomial::new(Variable::U, w as u32);
    let top = coeff_top(index)? * rat_int(BigInt::from(sign_pow(w)));
    poly.add_term(w, SymbolicConstant::from_rational(top));
    for (i, c) in parts.tower.iter().enumerate() {
        let k = i as i64 + 1;
        poly.add_term(w - 2 * k - 1, SymbolicConstant::zeta(2 * k as u32 + 1)?.scale(c));
    }
    poly.add_term(2 - w, coeff_bottom(index)?);
    poly.check_degree_span()?;
    Ok(poly)
}

/// Gaussian rational `re + i im`; just enough complex arithmetic for the
/// residue form of the one-loop kernel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussRat {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRat {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    pub fn inv(&self) -> Result<Self> {
        let norm = &self.re * &self.re + &self.im * &self.im;
        if norm.is_zero() {
            return Err(Error::Domain("division by zero Gaussian rational".into()));
        }
        Ok(Self { re: &self.re / &norm, im: -&self.im / &norm })
    }

    pub fn powi(&self, n: i64) -> Result<Self> {
        let mut base = if n < 0 { self.inv()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::new(Rational::one(), Rational::zero());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }
}

/// Residue closed form of the one-loop kernel
/// `G_{a1,a2}(mu) = integral over R of (u^2+mu^2)^{-a1} ((u+1)^2+mu^2)^{-a2}`,
/// evaluated exactly for rational `mu != 0`. The result is `r * pi` with `r`
/// rational; `r` is returned. The residue expression closes the contour in
/// the upper half plane and therefore reads `mu > 0`; the function itself
/// is even, so the absolute value is taken first.
pub fn g_closed_pi_coefficient(a1: i64, a2: i64, mu: &Rational) -> Result<Rational> {
    if a1 < 1 || a2 < 1 {
        return Err(Error::Domain("G needs a1, a2 >= 1".into()));
    }
    if mu.is_zero() {
        return Err(Error::Domain("G has a pole at mu = 0".into()));
    }
    let mu = &crate::exact::rat_abs(mu);
    let mut total = Rational::zero();
    for (p, q) in [(a1, a2), (a2, a1)] {
        for alpha in 0..p {
            for beta in 0..(p - alpha) {
                let g = g_coeff(p, q, alpha, beta);
                if g.is_zero() {
                    continue;
                }
                // -i g / ((2 i mu)^c (1 + 2 i mu)^b) + c.c. = 2 Re(..)
                let c = 2 * p - 1 - alpha - beta;
                let b = q + alpha;
                let two_mu = Rational::from_integer(BigInt::from(2)) * mu;
                let z1 = GaussRat::new(Rational::zero(), two_mu.clone()).powi(-c)?;
                let z2 = GaussRat::new(Rational::one(), two_mu).powi(-(b))?;
                let prod = z1.mul(&z2);
                // multiply by -i g: (-i)(re + i im) = im - i re
                let re_part = prod.im * rat_int(g);
                total += Rational::from_integer(BigInt::from(2)) * re_part;
            }
        }
    }
    Ok(total)
}
