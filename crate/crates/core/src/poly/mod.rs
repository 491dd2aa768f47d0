//! Exact multivariate polynomials, Gröbner bases and toric ideals.

pub mod field;
pub mod groebner;
pub mod lattice;
pub mod monomial;
pub mod parse;
pub mod polynomial;
pub mod ring;
pub mod syzygy;
pub mod toric;

pub use field::Field;
pub use groebner::{buchberger, ideal_membership, two_minors, GbLimits, GroebnerBasis};
pub use monomial::Monomial;
pub use parse::parse_polynomial;
pub use polynomial::Polynomial;
pub use ring::{MonomialOrder, OrderBlock, PolyRing};
pub use syzygy::kernel_over_quotient;
pub use toric::{toric_ideal, toric_ideal_via, Saturation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("polynomials belong to different rings")]
    RingMismatch,
}
