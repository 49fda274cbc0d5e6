//! Evidence for tight-closure membership with an asserted test element,
//! the empirical test exponent `e0 = m0 + v0`, and bounded checks of the
//! test-exponent theorems built on it.

mod search;
mod verify;

pub use search::{tc_membership_search, TcOutcome, TcSearch, TestElementSpec};
pub use verify::{
    boundary_ideal, test_exponent_estimate, verify_tc4, verify_tc8_ii, TestExponentReport, Trial,
    TrialVerdict,
};
