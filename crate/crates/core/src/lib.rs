//! Prime-characteristic commutative algebra: Gröbner bases over `F_p`,
//! Frobenius powers, roots and closures, Čech classes in the top local
//! cohomology of a graded quotient ring with their Frobenius action, and
//! empirical test exponents for tight closure of parameter ideals.

pub mod error;
pub mod frobenius;
pub mod groebner;
pub mod localcoh;
pub mod poly;
pub mod quotient;
pub mod sample;
pub mod stability;
pub mod tightclosure;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
pub use groebner::IdealHandle;
pub use poly::{parse_poly, parse_poly_list, Monomial, MonomialOrder, Poly, PolyRing, PrimeChar};
