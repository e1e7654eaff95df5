//! Modular differential equations for trace functions of `U = L(c, h)`.
//!
//! Pipeline: [`Reducer`] spans `O_q(U)` inside `M(Γ(1)) ⊗ U`,
//! [`derive_recursion`] finds the first relation among `L[-2]^i u`,
//! [`to_ode`] rewrites it with the Serre derivative, and
//! [`frobenius_solve`] expands the solution at `q = 0`.

mod numeric;
mod ode;
mod quasimodular;
mod reducer;

pub use numeric::{
    e2_quasimodularity_check, modular_transform_numeric, sl2_branch_check, t_eigenvalue_exact,
    ModularReport, Transform,
};
pub use ode::{
    frobenius_solve, indicial_roots, iterated_traces, to_ode, FrobeniusSolution, ModularODE,
    ThetaOperator,
};
pub use quasimodular::{eisenstein_in_e4_e6, modular_monomials, Monomial, QuasiModularPoly};
pub use reducer::{derive_recursion, GradedVector, Recursion, Reducer};

use num_rational::BigRational;

use crate::rational::int;
use crate::Result;

/// Default weight bound `h + 8`.
pub fn default_weight_bound(h: &BigRational) -> BigRational {
    h + int(8)
}

pub const DEFAULT_MAX_ORDER: usize = 4;

/// Reducer, recursion, ODE and the Frobenius solution at the smallest
/// indicial root.
#[derive(Debug)]
pub struct Derivation {
    pub recursion: Recursion,
    pub ode: ModularODE,
    pub roots: Vec<BigRational>,
}

pub fn derive_ode(c: &BigRational, h: &BigRational, weight_bound: &BigRational, max_order: usize) -> Result<Derivation> {
    let reducer = Reducer::build(c, h, weight_bound)?;
    let recursion = derive_recursion(&reducer, max_order)?;
    let ode = to_ode(&recursion)?;
    let roots = indicial_roots(&ode);
    Ok(Derivation { recursion, ode, roots })
}
