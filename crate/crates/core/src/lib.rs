//! QCDCL proof-system laboratory.
//!
//! Quantified CNF formulas, trails under the four decision policies and two
//! propagation policies, clause learning, (long-distance) Q-resolution proof
//! extraction and checking, the Q-resolution simulation by
//! `QCDCL[ASS-ORD, NO-RED]`, formula family generators, and an experiment
//! harness.

pub mod families;
pub mod harness;
pub mod learn;
pub mod proof;
pub mod qbf;
pub mod sim;
pub mod solver;
pub mod trail;

pub use qbf::{Clause, Lit, Prefix, Qcnf, Quant, Var};
