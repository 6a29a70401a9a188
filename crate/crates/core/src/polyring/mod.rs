//! Exact multivariate polynomial arithmetic over prime fields.

mod field;
mod monomial;
mod order;
mod poly;

pub use field::PrimeField;
pub use monomial::Monomial;
pub use order::MonomialOrder;
pub use poly::{default_names, PolyRing, Polynomial, Term};

pub(crate) use field::is_prime;
