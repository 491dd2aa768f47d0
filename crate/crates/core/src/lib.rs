//! Numerical semigroup rings with determinantal defining ideals: canonical
//! trace ideals, nearly Gorenstein and almost Gorenstein classification, and
//! symbolic checks for their higher-dimensional deformations.

pub mod corpus;
pub mod determinantal;
pub mod higher_dim;
pub mod poly;
pub mod relative_ideal;
pub mod semigroup;
pub mod trace_lambda;

pub use determinantal::{DeterminantalError, DeterminantalInstance, DeterminantalSpec};
pub use higher_dim::{HigherDimError, HigherDimInstance, HigherDimSpec};
pub use poly::{Field, GroebnerBasis, PolyError, PolyRing, Polynomial};
pub use relative_ideal::{RelativeIdeal, RelativeIdealSpec};
pub use semigroup::{NumericalSemigroup, SemigroupError, SemigroupSpec};

/// Default exact coefficient field.
pub type Rational = num_rational::BigRational;
/// Polynomial over [`Rational`].
pub type Poly = Polynomial<Rational>;
/// Gröbner basis over [`Rational`].
pub type Basis = GroebnerBasis<Rational>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Ideal(#[from] relative_ideal::IdealError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Determinantal(#[from] determinantal::DeterminantalError),
    #[error(transparent)]
    HigherDim(#[from] higher_dim::HigherDimError),
}
