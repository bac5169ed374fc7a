//! Exact truncated polynomial arithmetic over the rationals.

mod intpoly;
pub mod jet;
pub mod linalg;
pub mod monomial;
pub mod poly;
pub mod scalar;
pub mod series;
pub mod sturm;

pub use jet::{jet_compose, jet_invert, substitute, DiffeoJet, JetMap};
pub use linalg::{Inertia, Matrix, SparseEchelon};
pub use monomial::Monomial;
pub use poly::{poly_mul, TruncPoly, Vanishing};
pub use scalar::Scalar;
pub use series::implicit_series_solve;
pub use sturm::{sturm_root_count, UniPoly};

/// Default jet order.
pub const DEFAULT_ORDER: u32 = 4;
/// Largest order supported by the tangent-space computations.
pub const MAX_ORDER: u32 = 8;

/// Formal partial derivative; see [`TruncPoly::partial_derivative`].
pub fn partial_derivative(p: &TruncPoly, var: usize) -> crate::error::Result<TruncPoly> {
    p.partial_derivative(var)
}

/// Lowest degree of a nonzero term; see [`TruncPoly::order_of_vanishing`].
pub fn order_of_vanishing(p: &TruncPoly) -> Vanishing {
    p.order_of_vanishing()
}
