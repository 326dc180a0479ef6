//! Learnable clauses of a conflicting trail, asserting clauses and learning schemes.

use std::fmt;
use std::str::FromStr;

use crate::proof::{Derivation, Rule, StepId};
use crate::qbf::{reduce, resolve, Assignment, Clause, ClauseId, Qcnf, ResolutionMode};
use crate::trail::{clause_status, ClauseStatus, PropagationPolicy, Reason, Time, Trail};

/// Resolution mode induced by a propagation policy.
pub fn mode_for(r: PropagationPolicy) -> ResolutionMode {
    match r {
        PropagationPolicy::Red => ResolutionMode::LdQres,
        PropagationPolicy::NoRed => ResolutionMode::Qres,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Learnable {
    pub clause: Clause,
    /// Step of the sequence's derivation that concludes this clause.
    pub step: StepId,
    /// Time of the trail element this clause belongs to.
    pub time: Time,
}

/// The sequence `C_(r,g_r), …` from the conflict backwards, together with one
/// derivation holding the steps of all its elements.
#[derive(Clone, Debug)]
pub struct LearnableSequence {
    pub elements: Vec<Learnable>,
    pub derivation: Derivation,
    /// Formula clause behind each axiom step.
    pub axiom_sources: Vec<(StepId, ClauseId)>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LearnError {
    #[error("trail does not end in a conflict")]
    NoConflict,
    #[error("resolution on {pivot} failed while learning: {why}")]
    InternalTautology { pivot: String, why: String },
    #[error("learnable index {index} out of range (sequence has {len} clauses)")]
    IndexOutOfRange { index: usize, len: usize },
}

struct Builder<'a> {
    f: &'a Qcnf,
    d: Derivation,
    sources: Vec<(StepId, ClauseId)>,
}

impl Builder<'_> {
    /// Axiom step for clause `id` followed by a reduction if it changes anything.
    fn reduced_axiom(&mut self, id: ClauseId) -> (Clause, StepId) {
        let c = self.f.clause(id).clone();
        let step = self.d.push(Rule::Axiom(c.clone()));
        self.sources.push((step, id));
        self.reduced(c, step)
    }

    fn reduced(&mut self, c: Clause, step: StepId) -> (Clause, StepId) {
        let r = reduce(&c, &self.f.prefix);
        if r == c {
            (c, step)
        } else {
            (r, self.d.push(Rule::Reduce { source: step }))
        }
    }
}

pub fn learnable_sequence(trail: &Trail, f: &Qcnf) -> Result<LearnableSequence, LearnError> {
    let conflict = trail.conflict().ok_or(LearnError::NoConflict)?;
    let mode = mode_for(trail.propagation);
    let mut b = Builder { f, d: Derivation::new(mode), sources: Vec::new() };
    let (mut cur, mut cur_step) = b.reduced_axiom(conflict);
    let mut elements = vec![Learnable { clause: cur.clone(), step: cur_step, time: trail.end_time() }];
    for (idx, e) in trail.entries().iter().enumerate().rev() {
        let Reason::Propagated(ante) = e.reason else { continue };
        let p = e.lit;
        if cur.contains(!p) {
            let (a, a_step) = b.reduced_axiom(ante);
            let res = resolve(&cur, &a, !p, mode, &f.prefix)
                .map_err(|err| LearnError::InternalTautology { pivot: p.to_string(), why: err.to_string() })?;
            let step = b.d.push(Rule::Resolve { pivot: p.var(), left: cur_step, right: a_step });
            (cur, cur_step) = b.reduced(res, step);
        }
        elements.push(Learnable { clause: cur.clone(), step: cur_step, time: trail.time_of_len(idx + 1) });
    }
    Ok(LearnableSequence { elements, derivation: b.d, axiom_sources: b.sources })
}

impl LearnableSequence {
    /// The derivation of element `k` alone.
    pub fn derivation_of(&self, k: usize) -> (Derivation, Vec<(StepId, ClauseId)>) {
        let last = self.elements[k].step;
        let mut d = self.derivation.clone();
        d.steps.retain(|s| s.id <= last);
        d.conclusion = last;
        let sources = self.axiom_sources.iter().copied().filter(|&(s, _)| s <= last).collect();
        (d, sources)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Earliest time `(s,t)` with `s` below the trail's last level at which `c`
/// restricted by `T[s,t]` is unit. Offset 0 times are included.
pub fn asserting_time(c: &Clause, trail: &Trail, f: &Qcnf) -> Option<Time> {
    let r = trail.num_levels();
    if c.is_empty() || r == 0 {
        return None;
    }
    let limit = trail.prefix_len(Time::new(r, 0)).expect("level r exists");
    let mut a = Assignment::new();
    for k in 0..limit {
        if k > 0 {
            a.set(trail.entries()[k - 1].lit);
        }
        if let ClauseStatus::Unit(_) = clause_status(c, &a, &f.prefix, trail.propagation) {
            return Some(trail.time_of_len(k));
        }
    }
    None
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Rightmost clause of the sequence.
    Dec,
    /// `(⊥)` if present, else the first asserting clause from the conflict
    /// side, else the rightmost clause.
    Asserting,
    /// The element with this 0-based index.
    Index(usize),
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scheme::Dec => write!(f, "dec"),
            Scheme::Asserting => write!(f, "asserting"),
            Scheme::Index(k) => write!(f, "index:{k}"),
        }
    }
}

impl FromStr for Scheme {
    type Err = String;

    fn from_str(s: &str) -> Result<Scheme, String> {
        match s {
            "dec" => Ok(Scheme::Dec),
            "asserting" => Ok(Scheme::Asserting),
            _ => s
                .strip_prefix("index:")
                .and_then(|k| k.parse().ok())
                .map(Scheme::Index)
                .ok_or_else(|| format!("unknown learning scheme `{s}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pick {
    pub index: usize,
    pub clause: Clause,
    pub asserting: Option<Time>,
    /// Asserting time when there is one, otherwise a restart.
    pub backtrack: Time,
}

fn pick_at(seq: &LearnableSequence, index: usize, trail: &Trail, f: &Qcnf, asserting: Option<Option<Time>>) -> Pick {
    let clause = seq.elements[index].clause.clone();
    let asserting = asserting.unwrap_or_else(|| asserting_time(&clause, trail, f));
    Pick { index, clause, asserting, backtrack: asserting.unwrap_or(Time::ZERO) }
}

pub fn pick_learned(scheme: Scheme, seq: &LearnableSequence, trail: &Trail, f: &Qcnf) -> Result<Pick, LearnError> {
    let len = seq.len();
    match scheme {
        Scheme::Dec => Ok(pick_at(seq, len - 1, trail, f, None)),
        Scheme::Index(k) if k >= len => Err(LearnError::IndexOutOfRange { index: k, len }),
        Scheme::Index(k) => Ok(pick_at(seq, k, trail, f, None)),
        Scheme::Asserting => {
            if let Some(k) = seq.elements.iter().position(|e| e.clause.is_empty()) {
                return Ok(pick_at(seq, k, trail, f, Some(None)));
            }
            for (k, e) in seq.elements.iter().enumerate() {
                if let Some(t) = asserting_time(&e.clause, trail, f) {
                    return Ok(pick_at(seq, k, trail, f, Some(Some(t))));
                }
            }
            Ok(pick_at(seq, len - 1, trail, f, Some(None)))
        }
    }
}
