//! Exact arithmetic in `F_p[x_1..x_n]`.

mod field;
mod monomial;
mod parse;
mod polynomial;
mod ring;

pub use field::{PrimeChar, MAX_CHAR};
pub use monomial::{Monomial, MonomialOrder};
pub use parse::{parse_poly, parse_poly_list};
pub use polynomial::{Poly, Term};
pub use ring::PolyRing;

pub(crate) use polynomial::same_ring;
