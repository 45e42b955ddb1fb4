//! Finite-difference checks of the inhomogeneous Laplace equations obeyed
//! by the low-weight two-loop functions, the degenerate three-edge
//! identity, and the numeric verification of the known algebraic
//! identities between lattice sums and Eisenstein series.

use crate::exact::GraphIndex;
use crate::num::eisenstein::eisenstein_num;
use crate::num::lattice::{lattice_c, lattice_sum_exps, ModulusPoint};
use crate::num::real::{Certified, PrecisionReal};
use crate::num::zeta_num::zeta_num;
use crate::{Error, Result};

/// Named residual checks of the differential system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaplaceCheck {
    /// `Delta C_{1,1,1} - 6 E_3`
    C111,
    /// `(Delta - 2) C_{2,1,1} - 9 E_4 + E_2^2`
    C211,
    /// `Delta C_{2,2,1} - 8 E_5`
    C221,
    /// `C_{2,2,0} - (E_2^2 - E_4)` (no differentiation)
    DegenerateC220,
    /// `Delta E_w - w(w-1) E_w`
    EisensteinEigen(u32),
}

impl LaplaceCheck {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "c111" => Ok(Self::C111),
            "c211" => Ok(Self::C211),
            "c221" => Ok(Self::C221),
            "c220" => Ok(Self::DegenerateC220),
            other => {
                if let Some(w) = other.strip_prefix("eisen") {
                    let w: u32 = w
                        .parse()
                        .map_err(|_| Error::Domain(format!("bad check name {other:?}")))?;
                    return Ok(Self::EisensteinEigen(w));
                }
                Err(Error::Domain(format!("unknown laplace check {other:?}")))
            }
        }
    }
}

const E_TERMS: u64 = 40;

/// Five-point finite-difference hyperbolic Laplacian
/// `Delta f = tau2^2 (d^2/d tau1^2 + d^2/d tau2^2) f` of a lattice or
/// series evaluation `f`, with step `h` in both directions.
fn fd_laplacian(
    f: &mut dyn FnMut(f64, f64) -> Result<Certified>,
    tau1: f64,
    tau2: f64,
    h: f64,
    prec: usize,
) -> Result<Certified> {
    let center = f(tau1, tau2)?;
    let e = f(tau1 + h, tau2)?;
    let w = f(tau1 - h, tau2)?;
    let n = f(tau1, tau2 + h)?;
    let s = f(tau1, tau2 - h)?;
    let two = PrecisionReal::from_u64(2, prec);
    let h2 = PrecisionReal::from_f64(h, prec).powi(2);
    let sum = e
        .add(&w)
        .add(&n)
        .add(&s)
        .sub(&center.scale(&two.mul(&two)));
    let t2 = PrecisionReal::from_f64(tau2, prec);
    Ok(sum.scale(&t2.mul(&t2).div(&h2)))
}

/// Residual of the named identity under central differences with step `h`.
/// The error field carries the node-error amplification `sum err / h^2`;
/// the finite-difference truncation itself is `O(h^2)` and is what the
/// h-refinement study measures.
pub fn laplace_residual(
    check: LaplaceCheck,
    tau: &ModulusPoint,
    h: f64,
    cutoff: u64,
    prec: usize,
) -> Result<Certified> {
    let t1 = tau.tau1().to_f64();
    let t2 = tau.tau2().to_f64();
    let c_of = |exps: &'static [u32]| {
        move |a: f64, b: f64| -> Result<Certified> {
            let pt = ModulusPoint::from_f64(a, b, prec)?;
            Ok(lattice_c(&GraphIndex::new(exps)?, &pt, cutoff, prec)?.value)
        }
    };
    let e_of = |w: u32| {
        move |a: f64, b: f64| -> Result<Certified> {
            let pt = ModulusPoint::from_f64(a, b, prec)?;
            eisenstein_num(w, &pt, E_TERMS, prec)
        }
    };
    match check {
        LaplaceCheck::C111 => {
            let mut f = c_of(&[1, 1, 1]);
            let lap = fd_laplacian(&mut f, t1, t2, h, prec)?;
            let e3 = e_of(3)(t1, t2)?;
            Ok(lap.sub(&e3.scale(&PrecisionReal::from_u64(6, prec))))
        }
        LaplaceCheck::C211 => {
            let mut f = c_of(&[2, 1, 1]);
            let lap = fd_laplacian(&mut f, t1, t2, h, prec)?;
            let center = f(t1, t2)?;
            let e4 = e_of(4)(t1, t2)?;
            let e2 = e_of(2)(t1, t2)?;
            Ok(lap
                .sub(&center.scale(&PrecisionReal::from_u64(2, prec)))
                .sub(&e4.scale(&PrecisionReal::from_u64(9, prec)))
                .add(&e2.mul(&e2)))
        }
        LaplaceCheck::C221 => {
            let mut f = c_of(&[2, 2, 1]);
            let lap = fd_laplacian(&mut f, t1, t2, h, prec)?;
            let e5 = e_of(5)(t1, t2)?;
            Ok(lap.sub(&e5.scale(&PrecisionReal::from_u64(8, prec))))
        }
        LaplaceCheck::DegenerateC220 => {
            // the degenerate identity holds box by box, so it is checked at
            // matched truncation: the residual then probes exactly the
            // momentum-conservation bookkeeping of the constrained sum
            let c220 = lattice_sum_exps(&[2, 2, 0], tau, cutoff, prec)?;
            let e2 = lattice_sum_exps(&[1, 1], tau, cutoff, prec)?;
            let e4 = lattice_sum_exps(&[2, 2], tau, cutoff, prec)?;
            let raw = Certified::new(
                c220.raw
                    .sub(&e2.raw.mul(&e2.raw))
                    .add(&e4.raw),
                c220.value.error.ulp(),
            );
            Ok(raw)
        }
        LaplaceCheck::EisensteinEigen(w) => {
            if w < 2 {
                return Err(Error::Domain("eigenvalue check needs w >= 2".into()));
            }
            let mut f = e_of(w);
            let lap = fd_laplacian(&mut f, t1, t2, h, prec)?;
            let center = f(t1, t2)?;
            Ok(lap.sub(&center.scale(&PrecisionReal::from_u64((w * (w - 1)) as u64, prec))))
        }
    }
}

/// The algebraic identities certified numerically.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityCheck {
    /// `C_{1,1,1} = E_3 + zeta(3)`
    Id1,
    /// `30 C_{2,2,1} = 12 E_5 + zeta(5)`
    Id2a,
    /// `252 C_{3,3,1} + 252 C_{3,2,2} = 108 E_7 + zeta(7)`
    Id2b,
    /// `2160 C_{4,4,1} + 4320 C_{4,3,2} + 960 C_{3,3,3} = 960 E_9 + zeta(9)`
    Id2c,
    /// `C_{1,1,1,1} = 24 C_{2,1,1} - 18 E_4 + 3 E_2^2`
    Id3,
}

impl IdentityCheck {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "id1" => Ok(Self::Id1),
            "id2a" => Ok(Self::Id2a),
            "id2b" => Ok(Self::Id2b),
            "id2c" => Ok(Self::Id2c),
            "id3" => Ok(Self::Id3),
            _ => Err(Error::Domain(format!("unknown identity {s:?}"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Id1 => "id1",
            Self::Id2a => "id2a",
            Self::Id2b => "id2b",
            Self::Id2c => "id2c",
            Self::Id3 => "id3",
        }
    }
}

/// Outcome of a numeric identity check with its full error budget.
#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub lhs: Certified,
    pub rhs: Certified,
    pub difference: f64,
    pub budget: f64,
}

impl IdentityReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.difference <= tol
    }
}

/// Evaluates both sides of the named identity at `tau` with the given box
/// cutoff and returns `|LHS - RHS|` with the combined error budget.
pub fn verify_identity(
    name: IdentityCheck,
    tau: &ModulusPoint,
    cutoff: u64,
    prec: usize,
) -> Result<IdentityReport> {
    let c = |exps: &[u32]| -> Result<Certified> {
        Ok(lattice_c(&GraphIndex::new(exps)?, tau, cutoff, prec)?.value)
    };
    let e = |w: u32| eisenstein_num(w, tau, E_TERMS, prec);
    let z = |n: u64| zeta_num(&PrecisionReal::from_u64(n, prec), prec);
    let sc = |k: u64| PrecisionReal::from_u64(k, prec);
    let (lhs, rhs) = match name {
        IdentityCheck::Id1 => (c(&[1, 1, 1])?, e(3)?.add(&z(3)?)),
        IdentityCheck::Id2a => (
            c(&[2, 2, 1])?.scale(&sc(30)),
            e(5)?.scale(&sc(12)).add(&z(5)?),
        ),
        IdentityCheck::Id2b => (
            c(&[3, 3, 1])?.add(&c(&[3, 2, 2])?).scale(&sc(252)),
            e(7)?.scale(&sc(108)).add(&z(7)?),
        ),
        IdentityCheck::Id2c => (
            c(&[4, 4, 1])?
                .scale(&sc(2160))
                .add(&c(&[4, 3, 2])?.scale(&sc(4320)))
                .add(&c(&[3, 3, 3])?.scale(&sc(960))),
            e(9)?.scale(&sc(960)).add(&z(9)?),
        ),
        IdentityCheck::Id3 => (
            c(&[1, 1, 1, 1])?,
            c(&[2, 1, 1])?
                .scale(&sc(24))
                .sub(&e(4)?.scale(&sc(18)))
                .add(&e(2)?.mul(&e(2)?).scale(&sc(3))),
        ),
    };
    let difference = lhs.value.sub(&rhs.value).abs().to_f64();
    let budget = lhs.error.add(&rhs.error).to_f64();
    Ok(IdentityReport { lhs, rhs, difference, budget })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_identity_is_sharp() {
        // C_{2,2,0} = E_2^2 - E_4 at tau = 0.2 + 0.9i
        let prec = 160;
        let tau = ModulusPoint::from_f64(0.2, 0.9, prec).unwrap();
        let res = laplace_residual(LaplaceCheck::DegenerateC220, &tau, 0.0, 96, prec).unwrap();
        assert!(
            res.value.abs().to_f64() < 1e-8,
            "degenerate residual {}",
            res.value.abs().to_f64()
        );
    }

    #[test]
    fn eisenstein_eigenvalue_residual() {
        // Delta E_3 = 6 E_3 under finite differences
        let prec = 192;
        let tau = ModulusPoint::from_f64(0.0, 1.0, prec).unwrap();
        let res =
            laplace_residual(LaplaceCheck::EisensteinEigen(3), &tau, 1.0 / 64.0, 0, prec).unwrap();
        assert!(res.value.abs().to_f64() < 1e-3, "residual {}", res.value.abs().to_f64());
    }

    #[test]
    fn identity_id1_small_cutoff() {
        // with the tail-corrected sums even a modest box certifies 1e-4
        let prec = 160;
        let tau = ModulusPoint::from_f64(1.0 / 3.0, 1.0, prec).unwrap();
        let rep = verify_identity(IdentityCheck::Id1, &tau, 64, prec).unwrap();
        assert!(rep.passes(1e-4), "id1 diff {} budget {}", rep.difference, rep.budget);
    }
}
