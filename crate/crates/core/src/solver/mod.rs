//! The QCDCL loop and deterministic replay of scripted runs.

mod replay;
mod script;
mod solve;

pub use replay::{replay, ReplayError};
pub use script::{BackChoice, LearnChoice, ReplayScript, ScriptParseError, ScriptRound};
pub use solve::{solve, Heuristic, SolveError, SolveOutcome, SolveStats, SolverConfig};
