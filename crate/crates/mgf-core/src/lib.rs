//! Exact-arithmetic and high-precision toolkit for two-loop modular graph
//! functions `C_{a1,a2,a3}`.
//!
//! The crate computes the constant Fourier mode of these functions at the
//! cusp: a Laurent polynomial in `y = pi*tau2` with coefficients built from
//! odd zeta values, powers of `pi` and depth-two zeta values, plus an
//! exponentially suppressed remainder. Everything on the symbolic side is
//! exact (arbitrary-precision rationals); the `num` module provides
//! independent high-precision oracles (direct lattice sums, Eisenstein
//! series, numeric single and double zeta values, incomplete gamma) used to
//! certify the symbolic results.
//!
//! Module map:
//! - [`exact`]: rationals, binomials, Bernoulli/Euler tables, divisor sums.
//! - [`zeta`]: the coefficient ring of zeta monomials and its rewrite rules.
//! - [`laurent`]: Laurent polynomials over that ring, variable changes,
//!   rendering (text / LaTeX / JSON).
//! - [`theorem1`]: the closed-form Laurent coefficients of the constant mode
//!   and the partial-fraction route used as an internal cross-check.
//! - [`decomp`]: reduction of the bottom coefficient to products of two odd
//!   zeta values, and the combinatorial vanishing sums behind it.
//! - [`num`]: arbitrary-precision numerics and lattice-sum oracles.

pub mod decomp;
pub mod exact;
pub mod laurent;
pub mod num;
pub mod theorem1;
pub mod zeta;

pub use exact::{GraphIndex, Rational};
pub use laurent::{LaurentPolynomial, RenderFormat, Variable};
pub use zeta::{SymbolicConstant, ZetaMonomial};

/// Errors surfaced by the symbolic layer.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A formula assembled a term whose symbol would be the divergent zeta(1).
    #[error("zeta(1) guard tripped: {0}")]
    ZetaOneGuard(String),
    /// Arguments outside an operation's documented domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A numeric routine could not certify the requested tolerance.
    #[error("unconverged: {0}")]
    Unconverged(String),
    /// A conjectured identity failed to hold exactly.
    #[error("conjecture violation: {0}")]
    ConjectureViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
