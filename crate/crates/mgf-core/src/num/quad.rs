//! Adaptive Simpson quadrature over arbitrary-precision reals with a
//! conservative per-panel error estimate. Used as the seed evaluator for
//! the incomplete gamma function and as the independent oracle for the
//! one-loop kernel integral.

use crate::num::real::{Certified, PrecisionReal};
use crate::{Error, Result};

/// Simpson estimate on `[a, b]` given endpoint/midpoint values.
fn simpson(
    fa: &PrecisionReal,
    fm: &PrecisionReal,
    fb: &PrecisionReal,
    h: &PrecisionReal,
) -> PrecisionReal {
    // h = b - a; (h/6)(fa + 4 fm + fb)
    let p = fa.precision();
    fa.add(&fm.mul(&PrecisionReal::from_u64(4, p)))
        .add(fb)
        .mul(h)
        .div(&PrecisionReal::from_u64(6, p))
}

struct Panel {
    a: PrecisionReal,
    b: PrecisionReal,
    fa: PrecisionReal,
    fm: PrecisionReal,
    fb: PrecisionReal,
    whole: PrecisionReal,
    depth: u32,
}

/// Adaptive Simpson integration of `f` over `[a, b]`. The returned error
/// adds the accumulated panel estimates; panels are bisected until the
/// classical `|S2 - S1|/15` indicator falls below the local share of `tol`.
pub fn integrate(
    f: &dyn Fn(&PrecisionReal) -> PrecisionReal,
    a: &PrecisionReal,
    b: &PrecisionReal,
    tol: &PrecisionReal,
    prec: usize,
    max_depth: u32,
) -> Result<Certified> {
    let two = PrecisionReal::from_u64(2, prec);
    let mid = a.add(b).div(&two);
    let fa = f(a);
    let fm = f(&mid);
    let fb = f(b);
    let whole = simpson(&fa, &fm, &fb, &b.sub(a));
    let mut stack = vec![Panel {
        a: a.clone(),
        b: b.clone(),
        fa,
        fm,
        fb,
        whole,
        depth: 0,
    }];
    let mut total = PrecisionReal::zero(prec);
    let mut err = PrecisionReal::zero(prec);
    let fifteen = PrecisionReal::from_u64(15, prec);
    let mut panels: u64 = 0;
    while let Some(p) = stack.pop() {
        panels += 1;
        if panels > 4_000_000 {
            return Err(Error::Unconverged(
                "Simpson bisection exceeded its panel budget".into(),
            ));
        }
        let m = p.a.add(&p.b).div(&two);
        let lm = p.a.add(&m).div(&two);
        let rm = m.add(&p.b).div(&two);
        let flm = f(&lm);
        let frm = f(&rm);
        let h = m.sub(&p.a);
        let left = simpson(&p.fa, &flm, &p.fm, &h);
        let right = simpson(&p.fm, &frm, &p.fb, &h);
        let s2 = left.add(&right);
        let delta = s2.sub(&p.whole).abs().div(&fifteen);
        // local tolerance share proportional to panel width
        let share = tol.mul(&p.b.sub(&p.a)).div(&b.sub(a));
        if p.depth >= max_depth || delta.less_than(&share) {
            if p.depth >= max_depth && !delta.less_than(&share) {
                return Err(Error::Unconverged(format!(
                    "quadrature panel at depth {} still at error {}",
                    p.depth,
                    delta.to_f64()
                )));
            }
            total = total.add(&s2);
            err = err.add(&delta);
            continue;
        }
        stack.push(Panel {
            a: p.a,
            b: m.clone(),
            fa: p.fa,
            fm: flm,
            fb: p.fm.clone(),
            whole: left,
            depth: p.depth + 1,
        });
        stack.push(Panel {
            a: m,
            b: p.b,
            fa: p.fm,
            fm: frm,
            fb: p.fb,
            whole: right,
            depth: p.depth + 1,
        });
    }
    Ok(Certified::new(total, err.add(tol)))
}

/// Double-exponential (tanh-sinh) integration of a smooth integrand over
/// `[a, b]`, for tolerances far beyond what Simpson bisection can reach.
/// Levels are doubled until the level-to-level change falls under
/// `2^{target_exp}`; four times that change is reported as the error.
pub fn tanh_sinh(
    f: &dyn Fn(&PrecisionReal) -> PrecisionReal,
    a: &PrecisionReal,
    b: &PrecisionReal,
    target_exp: i64,
    prec: usize,
) -> Result<Certified> {
    let wp = prec + 32;
    let two = PrecisionReal::from_u64(2, wp);
    let center = a.add(b).div(&two);
    let radius = b.sub(a).div(&two);
    let half_pi = PrecisionReal::pi(wp).div(&two);
    // node at parameter u: x = c + r tanh((pi/2) sinh u),
    // weight = r (pi/2) cosh u / cosh((pi/2) sinh u)^2
    let node = |u: &PrecisionReal| -> (PrecisionReal, PrecisionReal) {
        let eu = u.exp();
        let inv = eu.powi(-1);
        let sinh_u = eu.sub(&inv).div(&two);
        let cosh_u = eu.add(&inv).div(&two);
        let t = half_pi.mul(&sinh_u);
        let et = t.exp();
        let inv_t = et.powi(-1);
        let cosh_t = et.add(&inv_t).div(&two);
        let tanh_t = et.sub(&inv_t).div(&et.add(&inv_t));
        let x = center.add(&radius.mul(&tanh_t));
        let w = radius.mul(&half_pi).mul(&cosh_u).div(&cosh_t.mul(&cosh_t));
        (x, w)
    };
    // cutoff in u: weights decay like exp(-(pi/2) sinh u); taken as an
    // exact dyadic so every node position k*h is exact (inexact f64 node
    // positions put a noise floor around 2^-60 on the level differences)
    let u_max = (2.0 * (wp as f64) * std::f64::consts::LN_2 / std::f64::consts::PI).asinh() + 0.5;
    let u_max_scaled = (u_max * 1024.0).ceil() as u64;
    let mut level: u32 = 3;
    let mut prev: Option<PrecisionReal> = None;
    loop {
        let steps = 1u64 << level;
        let h = PrecisionReal::from_u64(u_max_scaled, wp)
            .mul(&PrecisionReal::exp2(-10 - level as i64, wp));
        let mut acc = PrecisionReal::zero(wp);
        // at refinement levels only the new (odd) nodes would be needed;
        // the node count is small enough to recompute
        for k in 0..=steps {
            let u_val = PrecisionReal::from_u64(k * u_max_scaled, wp)
                .mul(&PrecisionReal::exp2(-10 - level as i64, wp));
            let (xp, wp_pos) = node(&u_val);
            let mut contrib = f(&xp).mul(&wp_pos);
            if k > 0 {
                let (xm, wm) = node(&u_val.neg());
                contrib = contrib.add(&f(&xm).mul(&wm));
            }
            acc = acc.add(&contrib);
        }
        let estimate = acc.mul(&h);
        if let Some(p) = prev {
            let change = estimate.sub(&p).abs();
            if change.less_than(&PrecisionReal::exp2(target_exp, wp)) || level >= 13 {
                if level >= 13 && !change.less_than(&PrecisionReal::exp2(target_exp + 8, wp)) {
                    return Err(Error::Unconverged(format!(
                        "tanh-sinh stalled at level {level} with change {}",
                        change.to_f64()
                    )));
                }
                let error = change.mul(&PrecisionReal::from_u64(4, wp));
                return Ok(Certified::new(
                    estimate.with_precision(prec),
                    error.with_precision(prec),
                ));
            }
        }
        prev = Some(estimate);
        level += 1;
    }
}

/// Numeric one-loop kernel
/// `G_{a1,a2}(mu) = integral over R of (u^2+mu^2)^{-a1} ((u+1)^2+mu^2)^{-a2}`
/// by adaptive quadrature on a truncated window plus a certified tail bound.
pub fn g_quad(a1: u32, a2: u32, mu: &PrecisionReal, tol_exp: i64, prec: usize) -> Result<Certified> {
    if a1 < 1 || a2 < 1 {
        return Err(Error::Domain("G needs a1, a2 >= 1".into()));
    }
    if mu.is_zero() {
        return Err(Error::Domain("G has a pole at mu = 0".into()));
    }
    let mu2 = mu.mul(mu);
    let f = move |u: &PrecisionReal| -> PrecisionReal {
        let p = u.precision();
        let one = PrecisionReal::one(p);
        let d1 = u.mul(u).add(&mu2).powi(a1 as i64);
        let shifted = u.add(&one);
        let d2 = shifted.mul(&shifted).add(&mu2).powi(a2 as i64);
        d1.mul(&d2).powi(-1)
    };
    // compactify the real line with u = tan(theta): the transformed
    // integrand vanishes like cos(theta)^{2(a1+a2)-2} at the endpoints,
    // which the double-exponential rule handles with no truncation tail
    let wp = prec + 32;
    let g = move |theta: &PrecisionReal| -> PrecisionReal {
        let c = theta.cos();
        if c.is_zero() {
            return PrecisionReal::zero(theta.precision());
        }
        let u = theta.sin().div(&c);
        f(&u).div(&c.mul(&c))
    };
    let half_pi = PrecisionReal::pi(wp).div(&PrecisionReal::from_u64(2, wp));
    let inner = tanh_sinh(&g, &half_pi.neg(), &half_pi, tol_exp, wp)?;
    Ok(Certified::new(
        inner.value.with_precision(prec),
        inner.error.with_precision(prec),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomial_exactly() {
        let prec = 128;
        let f = |x: &PrecisionReal| x.mul(x);
        let got = integrate(
            &f,
            &PrecisionReal::zero(prec),
            &PrecisionReal::from_u64(3, prec),
            &PrecisionReal::exp2(-90, prec),
            prec,
            40,
        )
        .unwrap();
        let expect = PrecisionReal::from_u64(9, prec);
        assert!(got.value.sub(&expect).abs().less_than(&PrecisionReal::exp2(-80, prec)));
    }

    #[test]
    fn g_quad_matches_closed_form_at_half() {
        // G_{1,1}(1/2) = 2 pi
        let prec = 192;
        let mu = PrecisionReal::from_rational(&crate::exact::rat(1, 2), prec);
        let got = g_quad(1, 1, &mu, -64, prec).unwrap();
        let expect = PrecisionReal::pi(prec).mul(&PrecisionReal::from_u64(2, prec));
        let diff = got.value.sub(&expect).abs();
        assert!(
            diff.less_than(&PrecisionReal::from_f64(1e-12, prec)),
            "G = {} diff {}",
            got.value,
            diff.to_f64()
        );
    }

    #[test]
    fn g_quad_shift_symmetry() {
        let prec = 160;
        let mu = PrecisionReal::from_f64(0.7, prec);
        let a = g_quad(2, 1, &mu, -60, prec).unwrap();
        let b = g_quad(1, 2, &mu, -60, prec).unwrap();
        assert!(a.agrees_with(&b));
    }
}
