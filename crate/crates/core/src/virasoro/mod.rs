//! Virasoro highest-weight modules over the rationals.

mod cofinite;
mod irreducible;
mod minimal;
mod partition;
mod singular;
mod verma;
mod vertex;

pub use cofinite::{c20_quotient_dim, c2_quotient_dim, quotient_dims, quotient_report, QuotientKind, QuotientReport};
pub use irreducible::{graded_dims, IrreducibleModule, LevelData};
pub use minimal::{central_charge, kac_weight, minimal_model, MinimalModelData};
pub use partition::{partitions, Partition};
pub use singular::{singular_vectors, singular_vectors_in};
pub use verma::{GramMatrix, VermaModule, VermaVector};

/// Gram matrix of `M(c, h)` at `level`.
pub fn gram_matrix(c: &num_rational::BigRational, h: &num_rational::BigRational, level: usize) -> GramMatrix {
    (*VermaModule::new(c.clone(), h.clone()).gram(level)).clone()
}
