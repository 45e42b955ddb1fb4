//! High-precision numeric oracles: arbitrary-precision reals, Riemann /
//! Hurwitz / depth-two zeta evaluation, incomplete gamma and the decaying
//! particular solutions built from it, direct lattice sums, the Eisenstein
//! Fourier series, and the finite-difference identity checks.

pub mod eisenstein;
pub mod gamma_inc;
pub mod laplace;
pub mod lattice;
pub mod quad;
pub mod real;
pub mod zeta_num;

pub use eisenstein::{eisenstein_num, p_polynomial, p_polynomial_rational};
pub use gamma_inc::{exp_part_c211, incomplete_gamma, phi_sm};
pub use laplace::{laplace_residual, verify_identity, IdentityCheck, LaplaceCheck};
pub use lattice::{constant_mode_num, lattice_c, LatticeSumResult, ModulusPoint};
pub use real::{Certified, PrecisionReal};
pub use zeta_num::{double_zeta_num, hurwitz_zeta_num, zeta_num};

use crate::zeta::SymbolicConstant;
use crate::Result;

/// Numeric value of an element of the coefficient ring at a given binary
/// precision, with a certified error bound accumulated from the zeta
/// evaluations.
pub fn eval_symbolic(c: &SymbolicConstant, prec: usize) -> Result<Certified> {
    let mut acc = Certified::exact(PrecisionReal::zero(prec));
    for (m, r) in c.terms() {
        let mut term = Certified::exact(PrecisionReal::from_rational(r, prec));
        if m.pi_power() != 0 {
            term = term.mul(&Certified::exact(PrecisionReal::pi(prec).powi(m.pi_power())));
        }
        for &n in m.odd_factors() {
            term = term.mul(&zeta_num(&PrecisionReal::from_u64(n as u64, prec), prec)?);
        }
        for &(a, b) in m.double_factors() {
            term = term.mul(&double_zeta_num(a, b, prec)?);
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}
