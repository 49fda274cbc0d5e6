use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "charp",
    version,
    about = "Frobenius, local cohomology and tight-closure experiments over F_p"
)]
pub struct Cli {
    /// Ring / experiment file.
    #[arg(long, global = true, value_name = "FILE")]
    pub ring: Option<PathBuf>,
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest level t (default 4).
    #[arg(long, global = true, value_name = "N")]
    pub t_max: Option<u32>,
    /// Largest Frobenius exponent e (default 5).
    #[arg(long, global = true, value_name = "N")]
    pub e_max: Option<u32>,
    /// Largest chain index i (default 8).
    #[arg(long, global = true, value_name = "N")]
    pub i_max: Option<u32>,
    /// Largest k in the Čech zero test (default 10).
    #[arg(long, global = true, value_name = "N")]
    pub k_max: Option<u32>,
    /// Seed for randomized harnesses.
    #[arg(long, global = true, value_name = "N")]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct ElementArgs {
    /// Test element (defaults to the file's `c`, then 1).
    #[arg(long)]
    pub c: Option<String>,
    /// Weak-test exponent (defaults to the file's `w0`, then 0).
    #[arg(long)]
    pub w0: Option<u32>,
    /// System of parameters, overriding the file's `frame`.
    #[arg(long)]
    pub frame: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Theorem {
    Tc4,
    Tc8ii,
    Hs7,
    Hs5,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Reduced Gröbner basis of I + J.
    Gb { ideal: String },
    /// Membership of a polynomial in I + J.
    Member { poly: String, ideal: String },
    /// Frobenius power I^[p^e].
    Fpow {
        ideal: String,
        #[arg(long, default_value_t = 1)]
        e: u32,
    },
    /// Root ideal I_e(I), or with --preimage the set {r : r^(p^e) ∈ I + J}.
    Froot {
        ideal: String,
        #[arg(long, default_value_t = 1)]
        e: u32,
        #[arg(long)]
        preimage: bool,
    },
    /// Frobenius closure of I in R = S/J.
    Fclosure { ideal: String },
    /// Zero test for the Čech class [r / (a_1⋯a_d)^level].
    CechZero {
        numerator: String,
        #[arg(long, default_value_t = 1)]
        level: u32,
        #[arg(long)]
        frame: Option<String>,
    },
    /// Empirical HSL number.
    Hsl {
        #[arg(long)]
        frame: Option<String>,
    },
    /// N_i chains and the empirical stability index of c.
    Stability {
        #[command(flatten)]
        element: ElementArgs,
    },
    /// Tight-closure evidence: c r^(p^e) ∈ I^[p^e] + J for e = w0..e_max.
    TcMember {
        r: String,
        ideal: String,
        #[command(flatten)]
        element: ElementArgs,
    },
    /// Empirical test exponent e0 = m0 + v0.
    TestExponent {
        #[command(flatten)]
        element: ElementArgs,
    },
    /// Bounded verification harnesses.
    VerifyTheorem {
        theorem: Theorem,
        #[command(flatten)]
        element: ElementArgs,
        /// Element r (tc4, tc8ii) or class numerator (hs7).
        #[arg(long)]
        r: Option<String>,
        /// Parameter ideal (defaults to the frame).
        #[arg(long)]
        ideal: Option<String>,
        /// Level of the class for hs7.
        #[arg(long, default_value_t = 1)]
        level: u32,
        /// Exponent of the single check for hs7 (defaults to m0 + v0).
        #[arg(long)]
        n1: Option<u32>,
        /// Number of random samples instead of --r.
        #[arg(long)]
        random: Option<usize>,
    },
    /// Run the `task` lines of the ring file.
    Run,
    /// Re-run the invocation recorded in a JSON report.
    Replay { report: PathBuf },
}
