//! Q-resolution derivations, their checker and trace format, and QCDCL proofs.

mod derivation;
mod qcdcl;
mod trace;

pub use derivation::{check_derivation, check_refutation, Derivation, ProofStep, Rule, StepId, Verdict};
pub use qcdcl::{glue_qcdcl_proof, QcdclProof, Round, RoundError};
pub use trace::{parse_proof, serialize_proof, TraceError};
