//! The top local cohomology module `H^d_m(R)` through Čech classes on a
//! full system of parameters, its Frobenius action, x-torsion and the
//! empirical HSL number.

mod class;
mod hsl;

pub use class::{CechClass, ZeroTest};
pub use hsl::{gamma_x_level, hsl_estimate, GammaLevel, HslEstimate, LevelHsl};
