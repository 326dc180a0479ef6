//! The `qrp-lite` text format.
//!
//! ```text
//! p qrp-lite qres
//! a 1 1 2 0
//! a 2 -1 2 0
//! r 3 1 1 2 0
//! u 4 3 0
//! conclusion 4
//! ```

use std::collections::HashSet;
use std::fmt::Write as _;

use super::derivation::{Derivation, ProofStep, Rule, StepId};
use crate::qbf::{Clause, Lit, ResolutionMode};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TraceError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: step {id} refers to unknown step {missing}")]
    Dangling { line: usize, id: StepId, missing: StepId },
}

pub fn serialize_proof(d: &Derivation) -> String {
    let mut s = format!("p qrp-lite {}\n", d.mode.name());
    for step in &d.steps {
        let _ = match &step.rule {
            Rule::Axiom(c) => writeln!(s, "a {} {}", step.id, c.to_dimacs()),
            Rule::Resolve { pivot, left, right } => writeln!(s, "r {} {} {} {} 0", step.id, pivot, left, right),
            Rule::Reduce { source } => writeln!(s, "u {} {} 0", step.id, source),
        };
    }
    let _ = writeln!(s, "conclusion {}", d.conclusion);
    s
}

pub fn parse_proof(text: &str) -> Result<Derivation, TraceError> {
    let mut mode = None;
    let mut steps: Vec<ProofStep> = Vec::new();
    let mut seen: HashSet<StepId> = HashSet::new();
    let mut conclusion = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let bad = |msg: &str| TraceError::Malformed { line, msg: msg.to_string() };
        let toks: Vec<&str> = raw.split_whitespace().collect();
        if toks.is_empty() || toks[0] == "c" {
            continue;
        }
        if conclusion.is_some() {
            return Err(bad("content after conclusion"));
        }
        if mode.is_none() {
            if toks.len() != 3 || toks[0] != "p" || toks[1] != "qrp-lite" {
                return Err(bad("expected `p qrp-lite <mode>` header"));
            }
            mode = Some(ResolutionMode::from_name(toks[2]).ok_or_else(|| bad("unknown mode"))?);
            continue;
        }
        if toks[0] == "conclusion" {
            let id: StepId = match toks.as_slice() {
                [_, id] => id.parse().map_err(|_| bad("bad step id"))?,
                _ => return Err(bad("expected `conclusion <id>`")),
            };
            // `conclusion 0` marks an empty derivation
            if !seen.contains(&id) && !(id == 0 && steps.is_empty()) {
                return Err(TraceError::Dangling { line, id, missing: id });
            }
            conclusion = Some(id);
            continue;
        }
        let nums: Vec<i64> = toks[1..].iter().map(|t| t.parse::<i64>()).collect::<Result<_, _>>().map_err(|_| bad("non-numeric token"))?;
        if nums.last() != Some(&0) || nums.len() < 2 {
            return Err(bad("line must end with 0"));
        }
        let id = StepId::try_from(nums[0]).map_err(|_| bad("bad step id"))?;
        if id == 0 || !seen.insert(id) {
            return Err(bad("step ids must be positive and unique"));
        }
        let body = &nums[1..nums.len() - 1];
        let premise = |x: i64| -> Result<StepId, TraceError> {
            let p = StepId::try_from(x).map_err(|_| bad("bad premise id"))?;
            if p == id || !seen.contains(&p) {
                return Err(TraceError::Dangling { line, id, missing: p });
            }
            Ok(p)
        };
        let rule = match (toks[0], body) {
            ("a", lits) => {
                let lits: Option<Vec<Lit>> = lits.iter().map(|&d| Lit::from_dimacs(d)).collect();
                Rule::Axiom(Clause::from_lits(lits.ok_or_else(|| bad("bad literal"))?))
            }
            ("r", [pivot, l, r]) => Rule::Resolve {
                pivot: u32::try_from(*pivot).ok().filter(|&v| v > 0).ok_or_else(|| bad("bad pivot"))?,
                left: premise(*l)?,
                right: premise(*r)?,
            },
            ("u", [src]) => Rule::Reduce { source: premise(*src)? },
            _ => return Err(bad("unknown or malformed step")),
        };
        steps.push(ProofStep { id, rule });
    }
    let mode = mode.ok_or(TraceError::Malformed { line: 1, msg: "empty trace".into() })?;
    let conclusion = conclusion.ok_or(TraceError::Malformed { line: text.lines().count(), msg: "missing conclusion".into() })?;
    Ok(Derivation { mode, steps, conclusion })
}
