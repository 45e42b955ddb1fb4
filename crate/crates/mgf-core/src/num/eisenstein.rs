//! Fourier-series evaluation of the non-holomorphic Eisenstein series
//! `E_w`: the two-term Laurent part plus the exponentially decaying tower
//! weighted by `k^{w-1} sigma_{1-2w}(k)` and the polynomial `P_w(4ky)`.

use num_traits::Zero;

use crate::exact::{bernoulli, divisor_sigma, factorial, Rational};
use crate::num::lattice::ModulusPoint;
use crate::num::real::{Certified, PrecisionReal};
use crate::num::zeta_num::zeta_num;
use crate::{Error, Result};

/// `P_w(x) = sum_{m=0}^{w-1} (w+m-1)! / (m! (w-m-1)! x^m)` for rational `x`.
pub fn p_polynomial_rational(w: u32, x: &Rational) -> Result<Rational> {
    if w < 1 {
        return Err(Error::Domain("P_w needs w >= 1".into()));
    }
    if x.is_zero() {
        return Err(Error::Domain("P_w has a pole at x = 0".into()));
    }
    let mut acc = Rational::zero();
    let mut x_pow = Rational::from_integer(1.into());
    for m in 0..w {
        let c = Rational::new(
            factorial((w + m - 1) as u64),
            factorial(m as u64) * factorial((w - m - 1) as u64),
        );
        acc += c / &x_pow;
        x_pow *= x;
    }
    Ok(acc)
}

/// `P_w(x)` for a numeric argument.
pub fn p_polynomial(w: u32, x: &PrecisionReal) -> Result<PrecisionReal> {
    if w < 1 {
        return Err(Error::Domain("P_w needs w >= 1".into()));
    }
    if x.is_zero() {
        return Err(Error::Domain("P_w has a pole at x = 0".into()));
    }
    let prec = x.precision();
    let mut acc = PrecisionReal::zero(prec);
    let mut x_pow = PrecisionReal::one(prec);
    for m in 0..w {
        let c = Rational::new(
            factorial((w + m - 1) as u64),
            factorial(m as u64) * factorial((w - m - 1) as u64),
        );
        acc = acc.add(&PrecisionReal::from_rational(&c, prec).div(&x_pow));
        x_pow = x_pow.mul(x);
    }
    Ok(acc)
}

/// The Laurent part of `E_w` at `y = pi tau2`:
/// `-B_{2w}/(2w)! (-4y)^w + 4 (2w-3)!/((w-2)!(w-1)!) zeta(2w-1) (4y)^{1-w}`.
pub fn eisenstein_laurent(w: u32, y: &PrecisionReal, prec: usize) -> Result<Certified> {
    if w < 2 {
        return Err(Error::Domain("E_w needs w >= 2".into()));
    }
    let wp = prec + 32;
    let y = y.with_precision(wp);
    let four_y = y.mul(&PrecisionReal::from_u64(4, wp));
    let top_coeff = -bernoulli(2 * w as usize)
        / Rational::from_integer(factorial(2 * w as u64))
        * Rational::from_integer(
            num_bigint::BigInt::from(crate::exact::sign_pow(w as i64)),
        );
    let top = PrecisionReal::from_rational(&top_coeff, wp).mul(&four_y.powi(w as i64));
    let sub_coeff = Rational::new(
        num_bigint::BigInt::from(4) * factorial(2 * w as u64 - 3),
        factorial(w as u64 - 2) * factorial(w as u64 - 1),
    );
    let zeta = zeta_num(&PrecisionReal::from_u64(2 * w as u64 - 1, wp), wp)?;
    let sub = zeta
        .scale(&PrecisionReal::from_rational(&sub_coeff, wp))
        .scale(&four_y.powi(1 - w as i64));
    let out = Certified::exact(top).add(&sub);
    Ok(Certified::new(
        out.value.with_precision(prec),
        out.error.with_precision(prec),
    ))
}

/// Fourier-series evaluation of `E_w(tau)` with `terms` exponential modes
/// and a certified bound on the omitted tail.
pub fn eisenstein_num(
    w: u32,
    tau: &ModulusPoint,
    terms: u64,
    prec: usize,
) -> Result<Certified> {
    if w < 2 {
        return Err(Error::Domain("E_w needs w >= 2".into()));
    }
    if terms < 1 {
        return Err(Error::Domain("E_w needs at least one q-term".into()));
    }
    let wp = prec + 32;
    let y = tau.y(wp);
    let mut acc = eisenstein_laurent(w, &y, wp)?;
    let two_pi_tau2 = PrecisionReal::pi(wp)
        .mul(&PrecisionReal::from_u64(2, wp))
        .mul(tau.tau2());
    let two_pi_tau1 = PrecisionReal::pi(wp)
        .mul(&PrecisionReal::from_u64(2, wp))
        .mul(tau.tau1());
    let prefactor = Rational::new(2.into(), factorial(w as u64 - 1));
    let four_y = y.mul(&PrecisionReal::from_u64(4, wp));
    let mode = |k: u64| -> Result<PrecisionReal> {
        let kf = PrecisionReal::from_u64(k, wp);
        let weight = PrecisionReal::from_rational(
            &(divisor_sigma(1 - 2 * w as i64, k) * &prefactor),
            wp,
        )
        .mul(&kf.powi(w as i64 - 1));
        // q^k + conj(q)^k = 2 e^{-2 pi k tau2} cos(2 pi k tau1)
        let damp = two_pi_tau2.mul(&kf).neg().exp();
        let osc = two_pi_tau1.mul(&kf).cos();
        let qq = damp.mul(&osc).mul(&PrecisionReal::from_u64(2, wp));
        Ok(weight.mul(&qq).mul(&p_polynomial(w, &four_y.mul(&kf))?))
    };
    for k in 1..=terms {
        acc = acc.add(&Certified::exact(mode(k)?));
    }
    // tail bound: the first omitted term with cos -> 1 and sigma bounded by
    // zeta(3), times a geometric safety factor
    let k1 = terms + 1;
    let lead = PrecisionReal::from_rational(&(&prefactor * crate::exact::rat(13, 10)), wp)
        .mul(&PrecisionReal::from_u64(k1, wp).powi(w as i64 - 1))
        .mul(&two_pi_tau2.mul(&PrecisionReal::from_u64(k1, wp)).neg().exp())
        .mul(&PrecisionReal::from_u64(2, wp))
        .mul(&p_polynomial(w, &four_y.mul(&PrecisionReal::from_u64(k1, wp)))?);
    // ratio of consecutive terms: e^{-2 pi tau2} (1 + 1/k)^{w-1}; require < 1/2
    let ratio = two_pi_tau2.neg().exp().to_f64() * (1.0 + 1.0 / k1 as f64).powi(w as i32 - 1);
    if ratio > 0.5 {
        return Err(Error::Unconverged(format!(
            "q-series ratio {ratio:.3} too large; raise terms or tau2"
        )));
    }
    let tail = lead.mul(&PrecisionReal::from_u64(2, wp));
    Ok(Certified::new(
        acc.value.with_precision(prec),
        acc.error.add(&tail).with_precision(prec),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn p_polynomial_values() {
        let x = rat(7, 2);
        assert_eq!(p_polynomial_rational(1, &x).unwrap(), rat(1, 1));
        assert_eq!(p_polynomial_rational(2, &x).unwrap(), rat(1, 1) + rat(2, 1) / &x);
        assert_eq!(
            p_polynomial_rational(3, &x).unwrap(),
            rat(1, 1) + rat(6, 1) / &x + rat(12, 1) / (&x * &x)
        );
    }

    #[test]
    fn e3_laurent_part_coefficients() {
        // (2/945) y^3 + (3/4) zeta(5) y^{-2} at y = pi
        let prec = 160;
        let y = PrecisionReal::pi(prec);
        let lau = eisenstein_laurent(3, &y, prec).unwrap();
        let z5 = zeta_num(&PrecisionReal::from_u64(5, prec), prec).unwrap();
        let expect = PrecisionReal::from_rational(&rat(2, 945), prec)
            .mul(&y.powi(3))
            .add(&z5.value.mul(&PrecisionReal::from_rational(&rat(3, 4), prec)).div(&y.powi(2)));
        assert!(lau.value.sub(&expect).abs().less_than(&PrecisionReal::exp2(-120, prec)));
    }

    #[test]
    fn matches_lattice_at_i() {
        let prec = 160;
        let tau = ModulusPoint::from_f64(0.0, 1.0, prec).unwrap();
        let series = eisenstein_num(3, &tau, 20, prec).unwrap();
        let lattice = crate::num::lattice::lattice_c(
            &crate::exact::GraphIndex::new(&[2, 1]).unwrap(),
            &tau,
            128,
            prec,
        )
        .unwrap();
        let diff = series.value.sub(&lattice.value.value).abs().to_f64();
        assert!(diff < 1e-6, "series vs lattice differ by {diff}");
    }

    #[test]
    fn matches_lattice_off_axis() {
        let prec = 160;
        let tau = ModulusPoint::from_f64(1.0 / 3.0, 1.1, prec).unwrap();
        for w in [2u32, 3, 4] {
            let series = eisenstein_num(w, &tau, 24, prec).unwrap();
            let lattice = crate::num::lattice::lattice_c(
                &crate::exact::GraphIndex::new(&[w - 1, 1]).unwrap(),
                &tau,
                128,
                prec,
            )
            .unwrap();
            let diff = series.value.sub(&lattice.value.value).abs().to_f64();
            assert!(diff < 2e-6, "E_{w}: series vs lattice differ by {diff}");
        }
    }
}
