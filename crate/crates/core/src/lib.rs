//! Exact-arithmetic engine for modular differential equations of
//! intertwining-operator trace functions on Virasoro minimal models.
//!
//! The crate is organised bottom-up:
//!
//! - [`qseries`]: truncated q-series with a rational leading exponent,
//!   Eisenstein series, eta powers and the Serre-type derivative.
//! - [`elliptic`]: the two-variable series `P_k(z, q)`, Weierstrass
//!   expansions and the residue identities behind the trace recursion.
//! - [`virasoro`]: Verma modules, Gram matrices, singular vectors, vertex
//!   modes of vacuum descendants and cofiniteness quotients.
//! - [`bracket`]: the square-bracket change of variable.
//! - [`mde`]: reduction modulo `O_q(U)`, the modular ODE and its
//!   Frobenius solutions, plus numeric modular checks.
//! - [`zhu`]: Zhu's algebra `A(L(c, 0))` as a polynomial quotient.

pub mod bracket;
pub mod elliptic;
mod error;
pub mod linalg;
pub mod mde;
mod powser;
pub mod qseries;
pub mod rational;
pub mod virasoro;
pub mod zhu;

pub use error::{Error, Result};
pub use num_rational::BigRational;
pub use qseries::PuiseuxSeries;
