//! Gröbner bases and the ideal-theoretic toolbox built on them.

mod engine;
mod ideal;
mod toolbox;

pub use engine::reduced_groebner_basis;
pub use ideal::IdealHandle;

pub(crate) use toolbox::eliminate;

#[cfg(test)]
mod tests;
