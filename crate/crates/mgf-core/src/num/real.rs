//! Arbitrary-precision binary floating arithmetic with explicit working
//! precision, backed by `astro-float`, plus a small certified-value wrapper
//! that carries an explicit error bound through compositions.

use std::cell::RefCell;
use std::cmp::Ordering;

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};

use crate::exact::Rational;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

const RM: RoundingMode = RoundingMode::ToEven;

/// A binary floating value at an explicit precision (in bits). Operations
/// between two values compute at the larger of the two precisions.
#[derive(Debug, Clone)]
pub struct PrecisionReal {
    v: BigFloat,
    prec: usize,
}

impl PrecisionReal {
    pub fn zero(prec: usize) -> Self {
        Self { v: BigFloat::new(prec), prec }
    }

    pub fn one(prec: usize) -> Self {
        Self::from_u64(1, prec)
    }

    pub fn from_u64(n: u64, prec: usize) -> Self {
        Self { v: BigFloat::from_u64(n, prec), prec }
    }

    pub fn from_i64(n: i64, prec: usize) -> Self {
        Self { v: BigFloat::from_i64(n, prec), prec }
    }

    pub fn from_f64(x: f64, prec: usize) -> Self {
        Self { v: BigFloat::from_f64(x, prec), prec }
    }

    pub fn from_bigint(n: &BigInt, prec: usize) -> Self {
        let mag = n.magnitude();
        if mag.is_zero() {
            return Self::zero(prec);
        }
        let words = mag.to_u64_digits();
        let e = (words.len() * 64) as i32;
        let sign = if n.is_negative() { Sign::Neg } else { Sign::Pos };
        let mut v = BigFloat::from_words(&words, sign, e);
        v.set_precision(prec.max(words.len() * 64), RM).expect("precision");
        let mut out = Self { v, prec: prec.max(words.len() * 64) };
        out = out.with_precision(prec);
        out
    }

    pub fn from_rational(r: &Rational, prec: usize) -> Self {
        let num = Self::from_bigint(r.numer(), prec + 64);
        let den = Self::from_bigint(r.denom(), prec + 64);
        num.div(&den).with_precision(prec)
    }

    /// Parses a plain decimal literal like `-1.25` or `0.3333`.
    pub fn from_decimal_str(s: &str, prec: usize) -> crate::Result<Self> {
        let v = CONSTS.with(|cc| BigFloat::parse(s, Radix::Dec, prec, RM, &mut cc.borrow_mut()));
        if v.is_nan() {
            return Err(crate::Error::Domain(format!("cannot parse number {s:?}")));
        }
        Ok(Self { v, prec })
    }

    pub fn pi(prec: usize) -> Self {
        let v = CONSTS.with(|cc| cc.borrow_mut().pi(prec, RM));
        Self { v, prec }
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    pub fn with_precision(&self, prec: usize) -> Self {
        let mut v = self.v.clone();
        v.set_precision(prec, RM).expect("precision");
        Self { v, prec }
    }

    pub fn inner(&self) -> &BigFloat {
        &self.v
    }

    pub fn from_bigfloat(v: BigFloat, prec: usize) -> Self {
        Self { v, prec }
    }

    fn join(&self, other: &Self) -> usize {
        self.prec.max(other.prec)
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.join(other);
        Self { v: self.v.add(&other.v, p, RM), prec: p }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let p = self.join(other);
        Self { v: self.v.sub(&other.v, p, RM), prec: p }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let p = self.join(other);
        Self { v: self.v.mul(&other.v, p, RM), prec: p }
    }

    pub fn div(&self, other: &Self) -> Self {
        let p = self.join(other);
        Self { v: self.v.div(&other.v, p, RM), prec: p }
    }

    pub fn neg(&self) -> Self {
        Self { v: self.v.neg(), prec: self.prec }
    }

    pub fn abs(&self) -> Self {
        let mut v = self.v.clone();
        v.set_sign(Sign::Pos);
        Self { v, prec: self.prec }
    }

    pub fn powi(&self, n: i64) -> Self {
        if n == 0 {
            return Self::one(self.prec);
        }
        let base = self.v.powi(n.unsigned_abs() as usize, self.prec, RM);
        if n < 0 {
            Self { v: base.reciprocal(self.prec, RM), prec: self.prec }
        } else {
            Self { v: base, prec: self.prec }
        }
    }

    pub fn sqrt(&self) -> Self {
        Self { v: self.v.sqrt(self.prec, RM), prec: self.prec }
    }

    pub fn exp(&self) -> Self {
        let v = CONSTS.with(|cc| self.v.exp(self.prec, RM, &mut cc.borrow_mut()));
        Self { v, prec: self.prec }
    }

    pub fn ln(&self) -> Self {
        let v = CONSTS.with(|cc| self.v.ln(self.prec, RM, &mut cc.borrow_mut()));
        Self { v, prec: self.prec }
    }

    pub fn sin(&self) -> Self {
        let v = CONSTS.with(|cc| self.v.sin(self.prec, RM, &mut cc.borrow_mut()));
        Self { v, prec: self.prec }
    }

    pub fn cos(&self) -> Self {
        let v = CONSTS.with(|cc| self.v.cos(self.prec, RM, &mut cc.borrow_mut()));
        Self { v, prec: self.prec }
    }

    /// Real power through `exp(y ln x)`; requires a positive base.
    pub fn pow(&self, y: &Self) -> Self {
        let p = self.join(y);
        let v = CONSTS.with(|cc| self.v.pow(&y.v, p, RM, &mut cc.borrow_mut()));
        Self { v, prec: p }
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.v.is_negative()
    }

    pub fn is_finite(&self) -> bool {
        !self.v.is_nan() && !self.v.is_inf()
    }

    /// One unit in the last place: `2^(exponent - precision)`; a tiny
    /// positive stand-in for exact zero.
    pub fn ulp(&self) -> Self {
        let e = match self.v.exponent() {
            Some(e) if !self.v.is_zero() => e as i64 - self.prec as i64,
            _ => -(2 * self.prec as i64),
        };
        Self::exp2(e, self.prec)
    }

    /// `2^e` exactly.
    pub fn exp2(e: i64, prec: usize) -> Self {
        let mut v = BigFloat::from_u64(1, prec);
        v.set_exponent((e + 1).try_into().expect("exponent range"));
        Self { v, prec }
    }

    pub fn to_f64(&self) -> f64 {
        if self.v.is_zero() {
            return 0.0;
        }
        match self.v.as_raw_parts() {
            Some((words, _n, sign, e, _)) => {
                let top = *words.last().unwrap_or(&0);
                let mant = (top as f64) / 18446744073709551616.0; // 2^64
                let val = mant * (e as f64 - 0.0).exp2();
                if sign == Sign::Neg {
                    -val
                } else {
                    val
                }
            }
            None => f64::NAN,
        }
    }

    /// Truncated fixed-point fraction `floor(v * 2^128)`; requires
    /// `0 <= v < 1`.
    pub fn to_q128(&self) -> crate::Result<u128> {
        if self.v.is_zero() {
            return Ok(0);
        }
        let (words, n, sign, e, _) = self
            .v
            .as_raw_parts()
            .ok_or_else(|| crate::Error::Domain("non-finite value in to_q128".into()))?;
        if sign == Sign::Neg {
            return Err(crate::Error::Domain("negative value in to_q128".into()));
        }
        if e > 0 {
            return Err(crate::Error::Domain(format!(
                "value >= 1 in to_q128 (exponent {e})"
            )));
        }
        let mant = BigUint::from_slice(
            &words
                .iter()
                .flat_map(|w| [*w as u32, (*w >> 32) as u32])
                .collect::<Vec<_>>(),
        );
        // v = mant / 2^n * 2^e, so floor(v * 2^128) = mant >> (n - e - 128)
        let shift = n as i64 - e as i64 - 128;
        let q = if shift >= 0 { mant >> shift as usize } else { mant << (-shift) as usize };
        q.to_u128()
            .ok_or_else(|| crate::Error::Domain("to_q128 overflow".into()))
    }

    pub fn compare(&self, other: &Self) -> Ordering {
        match self.v.cmp(&other.v) {
            Some(c) if c < 0 => Ordering::Less,
            Some(c) if c > 0 => Ordering::Greater,
            _ => Ordering::Equal,
        }
    }

    pub fn less_than(&self, other: &Self) -> bool {
        self.compare(other) == Ordering::Less
    }

    pub fn to_decimal_string(&self) -> String {
        CONSTS.with(|cc| {
            self.v
                .format(Radix::Dec, RM, &mut cc.borrow_mut())
                .unwrap_or_else(|_| "nan".to_string())
        })
    }
}

impl std::fmt::Display for PrecisionReal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_decimal_string())
    }
}

/// A numeric value paired with an explicit nonnegative error bound.
/// Comparisons between certified values always go through the bounds.
#[derive(Debug, Clone)]
pub struct Certified {
    pub value: PrecisionReal,
    pub error: PrecisionReal,
}

impl Certified {
    pub fn new(value: PrecisionReal, error: PrecisionReal) -> Self {
        Self { error: error.abs(), value }
    }

    /// Exact up to one ulp of the representation.
    pub fn exact(value: PrecisionReal) -> Self {
        let error = value.ulp();
        Self { value, error }
    }

    pub fn add(&self, other: &Self) -> Self {
        let value = self.value.add(&other.value);
        let error = self.error.add(&other.error).add(&value.ulp());
        Self { value, error }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let value = self.value.sub(&other.value);
        let error = self.error.add(&other.error).add(&value.ulp());
        Self { value, error }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let value = self.value.mul(&other.value);
        let error = self
            .value
            .abs()
            .mul(&other.error)
            .add(&other.value.abs().mul(&self.error))
            .add(&self.error.mul(&other.error))
            .add(&value.ulp());
        Self { value, error }
    }

    pub fn scale(&self, c: &PrecisionReal) -> Self {
        let value = self.value.mul(c);
        let error = self.error.mul(&c.abs()).add(&value.ulp());
        Self { value, error }
    }

    /// `|self - other|` bounded by the two error budgets plus slack
    /// `2^{-prec+16}`.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let diff = self.value.sub(&other.value).abs();
        let prec = self.value.precision().min(other.value.precision());
        let budget = self
            .error
            .add(&other.error)
            .add(&PrecisionReal::exp2(-(prec as i64) + 16, prec));
        !budget.less_than(&diff)
    }
}
