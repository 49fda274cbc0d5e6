//! The descending chain `N_i = {g : c x^i g = 0}` on `G = H/Γ_x(H)`, its
//! empirical stability index, and bounded checks of the statements that
//! relate annihilators in `H` and `G`.

mod chain;
mod harness;

pub use chain::{n_chain_level, stability_index, ChainOutcome, LevelChain, StabilityChain};
pub use harness::{
    compare_hs3, verify_cor_hs7, verify_hs5_properties, verify_tc3, Hs3Report, Hs5Report,
    ImplicationReport, Verdict,
};
