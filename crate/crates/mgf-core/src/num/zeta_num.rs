//! Euler-Maclaurin evaluation of the Riemann zeta function, the Hurwitz
//! zeta function at integer arguments, and depth-two zeta values
//! `zeta(a,b) = sum_{m,n>=1} (m+n)^{-a} n^{-b}`, all with certified
//! truncation bounds.
//!
//! Remainder discipline: for completely monotone summands the
//! Euler-Maclaurin remainder after the `B_{2K}` term is bounded by twice the
//! first omitted term; the logarithmic summand in the `b = 1` tail uses a
//! safety factor of four.

use std::cell::RefCell;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::{bernoulli, factorial, Rational};
use crate::num::real::{Certified, PrecisionReal};
use crate::{Error, Result};

/// Euler-Maclaurin order (number of Bernoulli correction terms).
const EM_ORDER: usize = 36;

fn em_points(prec: usize) -> u64 {
    (prec as u64 / 2).max(24)
}

/// `B_{2k}/(2k)!` as a rational.
fn b2k_over_fact(k: usize) -> Rational {
    bernoulli(2 * k) / Rational::from_integer(factorial(2 * k as u64))
}

/// Rising factorial `s (s+1) ... (s+j-1)` for integer `s`.
fn rising_int(s: i64, j: i64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..j {
        acc *= BigInt::from(s + i);
    }
    acc
}

thread_local! {
    static ZETA_CACHE: RefCell<HashMap<(u64, usize), Certified>> = RefCell::new(HashMap::new());
    static DZETA_CACHE: RefCell<HashMap<(u32, u32, usize), Certified>> =
        RefCell::new(HashMap::new());
    static GAMMA_CACHE: RefCell<HashMap<usize, Certified>> = RefCell::new(HashMap::new());
}

/// Hurwitz zeta `zeta(s, x) = sum_{j>=0} (x+j)^{-s}` for integer `s >= 2`,
/// integer `x >= 1`, with a certified remainder.
pub fn hurwitz_zeta_num(s: u32, x: u64, prec: usize) -> Result<Certified> {
    if s < 2 {
        return Err(Error::Domain(format!("hurwitz zeta needs s >= 2, got {s}")));
    }
    if x < 1 {
        return Err(Error::Domain("hurwitz zeta needs x >= 1".into()));
    }
    let wp = prec + 32;
    // direct terms up to x + N - 1, Euler-Maclaurin corrections at X = x + N
    let n = em_points(prec).saturating_sub(x);
    let mut direct = PrecisionReal::zero(wp);
    for j in 0..n {
        direct = direct.add(&PrecisionReal::from_u64(x + j, wp).powi(-(s as i64)));
    }
    let big_x = PrecisionReal::from_u64(x + n, wp);
    // integral term X^{1-s}/(s-1)
    let mut acc = big_x
        .powi(1 - s as i64)
        .div(&PrecisionReal::from_u64(s as u64 - 1, wp));
    // half term X^{-s}/2
    acc = acc.add(&big_x.powi(-(s as i64)).div(&PrecisionReal::from_u64(2, wp)));
    for k in 1..=EM_ORDER {
        let coeff = b2k_over_fact(k) * Rational::from_integer(rising_int(s as i64, 2 * k as i64 - 1));
        acc = acc.add(
            &PrecisionReal::from_rational(&coeff, wp)
                .mul(&big_x.powi(1 - s as i64 - 2 * k as i64)),
        );
    }
    let rem_coeff = b2k_over_fact(EM_ORDER + 1)
        * Rational::from_integer(rising_int(s as i64, 2 * (EM_ORDER as i64) + 1));
    let rem = PrecisionReal::from_rational(&rem_coeff, wp)
        .abs()
        .mul(&big_x.powi(-(s as i64) - 2 * (EM_ORDER as i64) - 1))
        .mul(&PrecisionReal::from_u64(2, wp));
    let value = direct.add(&acc).with_precision(prec);
    let error = rem.add(&value.ulp().mul(&PrecisionReal::from_u64(4 * (n + 8), prec)));
    Ok(Certified::new(value, error.with_precision(prec)))
}

/// Riemann zeta for real `s > 1` with certified remainder
/// (`< 2^{-prec+8}` for the spec'd argument ranges).
pub fn zeta_num(s: &PrecisionReal, prec: usize) -> Result<Certified> {
    let one = PrecisionReal::one(prec);
    if !one.less_than(s) {
        return Err(Error::Domain("zeta needs s > 1".into()));
    }
    // integer fast path, cached
    let sf = s.to_f64();
    if sf.fract() == 0.0 && sf >= 2.0 && sf < 1e6 {
        let si = sf as u64;
        let check = s.sub(&PrecisionReal::from_u64(si, prec));
        if check.is_zero() {
            if let Some(hit) =
                ZETA_CACHE.with(|c| c.borrow().get(&(si, prec)).cloned())
            {
                return Ok(hit);
            }
            let out = hurwitz_zeta_num(si as u32, 1, prec)?;
            ZETA_CACHE.with(|c| c.borrow_mut().insert((si, prec), out.clone()));
            return Ok(out);
        }
    }
    // real s: Euler-Maclaurin with pow()
    let wp = prec + 32;
    let s = s.with_precision(wp);
    let n = em_points(prec);
    let mut direct = PrecisionReal::zero(wp);
    for j in 1..n {
        direct = direct.add(&PrecisionReal::from_u64(j, wp).pow(&s).powi(-1));
    }
    let big_x = PrecisionReal::from_u64(n, wp);
    let x_pow_s = big_x.pow(&s); // X^s
    let s_minus_1 = s.sub(&PrecisionReal::one(wp));
    let mut acc = big_x.div(&x_pow_s).div(&s_minus_1); // X^{1-s}/(s-1)
    acc = acc.add(&x_pow_s.powi(-1).div(&PrecisionReal::from_u64(2, wp)));
    // rising factorial in floats
    let mut rising = s.clone(); // (s)_1
    let x2 = big_x.mul(&big_x);
    let mut x_pow = big_x.mul(&x_pow_s); // X^{s+1}
    for k in 1..=EM_ORDER {
        // term: B_{2k}/(2k)! * (s)_{2k-1} / X^{s+2k-1}
        let b = PrecisionReal::from_rational(&b2k_over_fact(k), wp);
        acc = acc.add(&b.mul(&rising).div(&x_pow));
        // advance (s)_{2k-1} -> (s)_{2k+1}, X^{s+2k-1} -> X^{s+2k+1}
        let j = 2 * k as i64;
        rising = rising
            .mul(&s.add(&PrecisionReal::from_i64(j - 1, wp)))
            .mul(&s.add(&PrecisionReal::from_i64(j, wp)));
        x_pow = x_pow.mul(&x2);
    }
    let rem = PrecisionReal::from_rational(&b2k_over_fact(EM_ORDER + 1), wp)
        .abs()
        .mul(&rising)
        .div(&x_pow)
        .mul(&PrecisionReal::from_u64(2, wp))
        .abs();
    let value = direct.add(&acc).with_precision(prec);
    let error = rem.add(&value.ulp().mul(&PrecisionReal::from_u64(4 * (n + 8), prec)));
    Ok(Certified::new(value, error.with_precision(prec)))
}

/// Euler-Mascheroni constant by the Bessel-function (Brent-McMillan)
/// scheme; error below `e^{-4n}` level for the chosen `n`.
pub fn euler_gamma(prec: usize) -> Certified {
    if let Some(hit) = GAMMA_CACHE.with(|c| c.borrow().get(&prec).cloned()) {
        return hit;
    }
    let wp = prec + 48;
    let n = ((prec as f64 + 16.0) * std::f64::consts::LN_2 / 4.0).ceil() as u64 + 2;
    let nf = PrecisionReal::from_u64(n, wp);
    let mut a_sum = PrecisionReal::zero(wp); // sum (n^k/k!)^2 H_k
    let mut b_sum = PrecisionReal::zero(wp); // sum (n^k/k!)^2
    let mut term = PrecisionReal::one(wp); // n^k/k!
    let mut h = PrecisionReal::zero(wp); // H_k
    let cutoff = PrecisionReal::exp2(-(wp as i64) - 8, wp);
    let mut k = 0u64;
    loop {
        let t2 = term.mul(&term);
        b_sum = b_sum.add(&t2);
        a_sum = a_sum.add(&t2.mul(&h));
        k += 1;
        term = term.mul(&nf).div(&PrecisionReal::from_u64(k, wp));
        h = h.add(&PrecisionReal::from_u64(k, wp).powi(-1));
        if k > 4 * n && t2.div(&b_sum).less_than(&cutoff) {
            break;
        }
    }
    let value = a_sum.div(&b_sum).sub(&nf.ln()).with_precision(prec);
    // e^{-4n} bound (pi e^{-4n} is the classical estimate; double it)
    let bound = PrecisionReal::from_u64(4 * n, prec).neg().exp()
        .mul(&PrecisionReal::from_u64(8, prec));
    let out = Certified::new(value, bound);
    GAMMA_CACHE.with(|c| c.borrow_mut().insert(prec, out.clone()));
    out
}

/// Tail `sum_{s >= S} s^{-a} ln s` by Euler-Maclaurin with symbolic
/// `(p + q ln x) x^{-a-j}` derivatives.
fn log_power_tail(a: u32, start: u64, prec: usize) -> Certified {
    let wp = prec + 32;
    let sf = PrecisionReal::from_u64(start, wp);
    let ln_s = sf.ln();
    let am1 = PrecisionReal::from_u64(a as u64 - 1, wp);
    // integral: S^{1-a} (ln S/(a-1) + 1/(a-1)^2)
    let mut acc = sf
        .powi(1 - a as i64)
        .mul(&ln_s.div(&am1).add(&am1.mul(&am1).powi(-1)));
    // f(S)/2
    acc = acc.add(&sf.powi(-(a as i64)).mul(&ln_s).div(&PrecisionReal::from_u64(2, wp)));
    // derivative coefficients: f^{(j)}(x) = x^{-a-j} (p_j + q_j ln x)
    let mut p = Rational::zero();
    let mut q = Rational::one();
    let mut j = 0i64;
    let mut last_mag = PrecisionReal::zero(wp);
    for k in 1..=EM_ORDER {
        // advance derivatives to order 2k-1
        while j < 2 * k as i64 - 1 {
            let new_q = -Rational::from_integer(BigInt::from(a as i64 + j)) * &q;
            let new_p = &q - Rational::from_integer(BigInt::from(a as i64 + j)) * &p;
            q = new_q;
            p = new_p;
            j += 1;
        }
        let deriv = sf
            .powi(-(a as i64) - j)
            .mul(
                &PrecisionReal::from_rational(&p, wp)
                    .add(&PrecisionReal::from_rational(&q, wp).mul(&ln_s)),
            );
        let term = PrecisionReal::from_rational(&b2k_over_fact(k), wp).mul(&deriv);
        acc = acc.sub(&term);
        last_mag = sf.powi(-(a as i64) - j - 2).mul(
            &PrecisionReal::from_rational(&p, wp)
                .abs()
                .add(&PrecisionReal::from_rational(&q, wp).abs().mul(&ln_s)),
        );
    }
    let rem = PrecisionReal::from_rational(&b2k_over_fact(EM_ORDER + 1), prec)
        .abs()
        .mul(&last_mag)
        .mul(&PrecisionReal::from_u64(4, prec));
    Certified::new(acc.with_precision(prec), rem.with_precision(prec))
}

/// Depth-two zeta `zeta(a, b) = sum_{n>=1} n^{-b} zeta(a, n+1)` for
/// `a >= 2`, `b >= 1`, via direct summation to a split point plus
/// Euler-Maclaurin tails with certified remainders.
pub fn double_zeta_num(a: u32, b: u32, prec: usize) -> Result<Certified> {
    if a < 2 || b < 1 {
        return Err(Error::Domain(format!(
            "zeta({a},{b}) outside the convergent range a >= 2, b >= 1"
        )));
    }
    if let Some(hit) = DZETA_CACHE.with(|c| c.borrow().get(&(a, b, prec)).cloned()) {
        return Ok(hit);
    }
    let wp = prec + 32;
    let split = em_points(prec).max(32);
    // direct part: sum_{s=2}^{split-1} s^{-a} H_{s-1}^{(b)} over m+n = s
    let mut direct = Certified::exact(PrecisionReal::zero(wp));
    let mut h = PrecisionReal::zero(wp);
    for s in 2..split {
        h = h.add(&PrecisionReal::from_u64(s - 1, wp).powi(-(b as i64)));
        let term = PrecisionReal::from_u64(s, wp).powi(-(a as i64)).mul(&h);
        direct = direct.add(&Certified::exact(term));
    }
    // h is now H_{split-1}^{(b)}
    let tail = if b >= 2 {
        // sum_{s>=S} s^{-a} (zeta(b) - zeta(b, s))
        //   = zeta(b) zeta(a, S)
        //   - [zeta(a+b-1,S)/(b-1) + zeta(a+b,S)/2
        //      + sum_k B_{2k}/(2k)! (b)_{2k-1} zeta(a+b+2k-1, S) + R]
        let zeta_b = hurwitz_zeta_num(b, 1, wp)?;
        let mut tail = zeta_b.mul(&hurwitz_zeta_num(a, split, wp)?);
        let t1 = hurwitz_zeta_num(a + b - 1, split, wp)?
            .scale(&PrecisionReal::from_u64(b as u64 - 1, wp).powi(-1));
        let t2 = hurwitz_zeta_num(a + b, split, wp)?
            .scale(&PrecisionReal::from_rational(&crate::exact::rat(1, 2), wp));
        tail = tail.sub(&t1).sub(&t2);
        for k in 1..=EM_ORDER {
            let coeff =
                b2k_over_fact(k) * Rational::from_integer(rising_int(b as i64, 2 * k as i64 - 1));
            let z = hurwitz_zeta_num(a + b + 2 * k as u32 - 1, split, wp)?;
            tail = tail.sub(&z.scale(&PrecisionReal::from_rational(&coeff, wp)));
        }
        let rem_coeff = b2k_over_fact(EM_ORDER + 1)
            * Rational::from_integer(rising_int(b as i64, 2 * EM_ORDER as i64 + 1));
        let rem = PrecisionReal::from_rational(&rem_coeff, wp)
            .abs()
            .mul(&hurwitz_zeta_num(a + b + 2 * EM_ORDER as u32 + 1, split, wp)?.value)
            .mul(&PrecisionReal::from_u64(2, wp));
        Certified::new(tail.value, tail.error.add(&rem))
    } else {
        // b = 1: H_{s-1} = ln s + gamma - 1/(2s) - sum_k B_{2k}/(2k) s^{-2k} + R
        let mut tail = log_power_tail(a, split, wp);
        tail = tail.add(&euler_gamma(wp).mul(&hurwitz_zeta_num(a, split, wp)?));
        let half = PrecisionReal::from_rational(&crate::exact::rat(1, 2), wp);
        tail = tail.sub(&hurwitz_zeta_num(a + 1, split, wp)?.scale(&half));
        for k in 1..=EM_ORDER {
            let coeff = bernoulli(2 * k) / Rational::from_integer(BigInt::from(2 * k));
            let z = hurwitz_zeta_num(a + 2 * k as u32, split, wp)?;
            tail = tail.sub(&z.scale(&PrecisionReal::from_rational(&coeff, wp)));
        }
        let rem_coeff = bernoulli(2 * EM_ORDER + 2)
            / Rational::from_integer(BigInt::from(2 * EM_ORDER + 2));
        let rem = PrecisionReal::from_rational(&rem_coeff, wp)
            .abs()
            .mul(&hurwitz_zeta_num(a + 2 * EM_ORDER as u32 + 2, split, wp)?.value)
            .mul(&PrecisionReal::from_u64(2, wp));
        Certified::new(tail.value, tail.error.add(&rem))
    };
    let total = direct.add(&tail);
    let out = Certified::new(total.value.with_precision(prec), total.error.with_precision(prec));
    DZETA_CACHE.with(|c| c.borrow_mut().insert((a, b, prec), out.clone()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn close(a: &PrecisionReal, b: &PrecisionReal, tol_exp: i64) -> bool {
        a.sub(b).abs().less_than(&PrecisionReal::exp2(tol_exp, a.precision()))
    }

    #[test]
    fn zeta_two_matches_pi_squared_over_six() {
        let prec = 192;
        let z2 = zeta_num(&PrecisionReal::from_u64(2, prec), prec).unwrap();
        let pi2_6 = PrecisionReal::pi(prec).powi(2).div(&PrecisionReal::from_u64(6, prec));
        assert!(close(&z2.value, &pi2_6, -150), "zeta(2) = {}", z2.value);
    }

    #[test]
    fn zeta_three_digits() {
        let prec = 128;
        let z3 = zeta_num(&PrecisionReal::from_u64(3, prec), prec).unwrap();
        let reference =
            PrecisionReal::from_decimal_str("1.20205690315959428539973816151", prec).unwrap();
        assert!(close(&z3.value, &reference, -90), "zeta(3) = {}", z3.value);
    }

    #[test]
    fn zeta_large_argument() {
        let prec = 128;
        let z = zeta_num(&PrecisionReal::from_u64(50, prec), prec).unwrap();
        let diff = z.value.sub(&PrecisionReal::one(prec)).abs();
        assert!(diff.less_than(&PrecisionReal::from_f64(1e-14, prec)));
        assert!(zeta_num(&PrecisionReal::one(prec), prec).is_err());
    }

    #[test]
    fn zeta_real_argument_consistent_with_integer_path() {
        let prec = 160;
        // force the real-s path with a value that is integral but arrives
        // as a general float through from_f64
        let z_int = zeta_num(&PrecisionReal::from_u64(3, prec), prec).unwrap();
        let z_real = {
            // 3 + 2^-70, should be close to zeta(3) to ~|zeta'(3)| 2^-70
            let s = PrecisionReal::from_u64(3, prec).add(&PrecisionReal::exp2(-70, prec));
            zeta_num(&s, prec).unwrap()
        };
        assert!(z_int.value.sub(&z_real.value).abs().less_than(&PrecisionReal::exp2(-68, prec)));
    }

    #[test]
    fn euler_gamma_digits() {
        let prec = 192;
        let g = euler_gamma(prec);
        let reference = PrecisionReal::from_decimal_str(
            "0.5772156649015328606065120900824024310421593359399235988057672348849",
            prec,
        )
        .unwrap();
        assert!(close(&g.value, &reference, -180), "gamma = {}", g.value);
    }

    #[test]
    fn double_zeta_31_is_pi4_over_360() {
        let prec = 128;
        let d = double_zeta_num(3, 1, prec).unwrap();
        let expect = PrecisionReal::pi(prec).powi(4).div(&PrecisionReal::from_u64(360, prec));
        // spec tolerance: 1e-25 at 128 bits
        let tol = PrecisionReal::from_f64(1e-25, prec);
        assert!(d.value.sub(&expect).abs().less_than(&tol), "zeta(3,1) = {}", d.value);
    }

    #[test]
    fn double_zeta_21_is_zeta3() {
        let prec = 128;
        let d = double_zeta_num(2, 1, prec).unwrap();
        let z3 = zeta_num(&PrecisionReal::from_u64(3, prec), prec).unwrap();
        assert!(d.agrees_with(&z3), "zeta(2,1) = {} vs {}", d.value, z3.value);
    }

    #[test]
    fn stuffle_reflection_numeric() {
        // zeta(3,2) + zeta(2,3) + zeta(5) = zeta(2) zeta(3)
        let prec = 160;
        let lhs = double_zeta_num(3, 2, prec)
            .unwrap()
            .add(&double_zeta_num(2, 3, prec).unwrap())
            .add(&zeta_num(&PrecisionReal::from_u64(5, prec), prec).unwrap());
        let rhs = zeta_num(&PrecisionReal::from_u64(2, prec), prec)
            .unwrap()
            .mul(&zeta_num(&PrecisionReal::from_u64(3, prec), prec).unwrap());
        assert!(lhs.agrees_with(&rhs));
    }

    #[test]
    fn reflection_sweep() {
        let prec = 96;
        for s in 2..=8u32 {
            for t in 2..=8u32 {
                let lhs = double_zeta_num(s, t, prec)
                    .unwrap()
                    .add(&double_zeta_num(t, s, prec).unwrap());
                let st = PrecisionReal::from_u64((s + t) as u64, prec);
                let rhs = zeta_num(&PrecisionReal::from_u64(s as u64, prec), prec)
                    .unwrap()
                    .mul(&zeta_num(&PrecisionReal::from_u64(t as u64, prec), prec).unwrap())
                    .sub(&zeta_num(&st, prec).unwrap());
                assert!(lhs.agrees_with(&rhs), "reflection failed at ({s},{t})");
            }
        }
    }

    #[test]
    fn hurwitz_shift_consistency() {
        // zeta(s, x) = zeta(s, x+1) + x^{-s}
        let prec = 128;
        for s in 2..=6u32 {
            for x in 1..=5u64 {
                let lhs = hurwitz_zeta_num(s, x, prec).unwrap();
                let rhs = hurwitz_zeta_num(s, x + 1, prec)
                    .unwrap()
                    .add(&Certified::exact(PrecisionReal::from_u64(x, prec).powi(-(s as i64))));
                assert!(lhs.agrees_with(&rhs));
            }
        }
    }

    #[test]
    fn symbolic_evaluation_bridges() {
        // numeric(euler_s1_reduce(3)) == numeric(zeta(3,1))
        let prec = 160;
        let sym = crate::zeta::euler_s1_reduce(3).unwrap();
        let lhs = crate::num::eval_symbolic(&sym, prec).unwrap();
        let rhs = double_zeta_num(3, 1, prec).unwrap();
        assert!(lhs.agrees_with(&rhs));
        let _ = rat(0, 1);
    }
}
