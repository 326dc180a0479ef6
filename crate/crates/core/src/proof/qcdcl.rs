use std::collections::HashMap;

use super::derivation::{check_derivation, Derivation, Rule, StepId, Verdict};
use crate::learn::{learnable_sequence, mode_for};
use crate::qbf::{Clause, ClauseId, Qcnf};
use crate::trail::{check_trail, DecisionPolicy, PropagationPolicy, Time, Trail};

/// One round: a conflicting trail, the clause learned from it with its
/// derivation, and the time the next trail resumes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Round {
    pub trail: Trail,
    pub learned: Clause,
    /// Position of `learned` in the trail's learnable sequence.
    pub learned_index: usize,
    /// Derivation of `learned` from the matrix plus earlier learned clauses.
    pub derivation: Derivation,
    /// Formula clause behind each axiom step of `derivation`.
    pub axiom_sources: Vec<(StepId, ClauseId)>,
    pub backtrack: Time,
    /// The learned clause was already present in the formula.
    pub duplicate: bool,
}

/// A run of QCDCL: rounds over a base formula whose learned clauses are
/// appended in round order (round `i` learns clause id `base.len() + i`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QcdclProof {
    pub base: Qcnf,
    pub decision: DecisionPolicy,
    pub propagation: PropagationPolicy,
    pub rounds: Vec<Round>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("round {round}: {why}")]
pub struct RoundError {
    pub round: usize,
    pub why: String,
}

impl QcdclProof {
    pub fn new(base: Qcnf, decision: DecisionPolicy, propagation: PropagationPolicy) -> QcdclProof {
        QcdclProof { base, decision, propagation, rounds: Vec::new() }
    }

    /// `|ι|`: total number of trail elements, `⊥` included.
    pub fn size(&self) -> usize {
        self.rounds.iter().map(|r| r.trail.len()).sum()
    }

    pub fn is_refutation(&self) -> bool {
        self.rounds.last().map(|r| r.learned.is_empty()).unwrap_or(false)
    }

    /// One line per round: trail, learned clause, backtrack time.
    pub fn rounds_text(&self) -> String {
        let mut out = format!("c {} {} rounds={} size={}\n", self.decision, self.propagation, self.rounds.len(), self.size());
        for (i, r) in self.rounds.iter().enumerate() {
            out += &format!("{i} {:?} learn {} back {}\n", r.trail, r.learned, r.backtrack);
        }
        out
    }

    /// The base formula plus the clauses learned before round `i`.
    pub fn formula_before(&self, i: usize) -> Qcnf {
        let mut f = self.base.clone();
        for r in &self.rounds[..i] {
            f.push(r.learned.clone());
        }
        f
    }

    /// Checks every round: trail conditions and naturality, agreement with
    /// the previous trail up to its backtrack time, the learned clause being
    /// the recorded member of the learnable sequence, and its derivation.
    pub fn validate(&self) -> Result<(), RoundError> {
        let mut f = self.base.clone();
        let mode = mode_for(self.propagation);
        for (i, round) in self.rounds.iter().enumerate() {
            let bad = |why: String| RoundError { round: i, why };
            let t = &round.trail;
            if (t.decision, t.propagation) != (self.decision, self.propagation) {
                return Err(bad("trail built under a different policy pair".into()));
            }
            if !t.is_conflicting() {
                return Err(bad("trail does not end in a conflict".into()));
            }
            let natural_from = if i == 0 {
                0
            } else {
                let prev = &self.rounds[i - 1];
                let len = prev.trail.prefix_len(prev.backtrack).ok_or_else(|| bad(format!("invalid backtrack time {}", prev.backtrack)))?;
                let kept = prev.trail.subtrail(prev.backtrack).unwrap();
                if t.len() < len || t.subtrail(t.time_of_len(len)).unwrap() != kept {
                    return Err(bad(format!("trail does not extend the previous trail cut at {}", prev.backtrack)));
                }
                len
            };
            check_trail(&f, t, natural_from).map_err(|e| bad(e.to_string()))?;
            let seq = learnable_sequence(t, &f).map_err(|e| bad(e.to_string()))?;
            let elem = seq
                .elements
                .get(round.learned_index)
                .ok_or_else(|| bad(format!("learnable index {} out of range", round.learned_index)))?;
            if elem.clause != round.learned {
                return Err(bad(format!("learned {} but the sequence has {}", round.learned, elem.clause)));
            }
            let (d, sources) = seq.derivation_of(round.learned_index);
            if d != round.derivation || sources != round.axiom_sources {
                return Err(bad("derivation differs from the learnable sequence".into()));
            }
            if let Verdict::Invalid { step, reason } = check_derivation(&f, &round.derivation, mode) {
                return Err(bad(format!("derivation step {step}: {reason}")));
            }
            f.push(round.learned.clone());
        }
        Ok(())
    }
}

/// Concatenates the round derivations into one derivation from the base
/// matrix. Axioms naming learned clauses are redirected to the conclusion of
/// the round that learned them; matrix axioms are shared.
pub fn glue_qcdcl_proof(proof: &QcdclProof) -> Derivation {
    let base_len = proof.base.len();
    let mut out = Derivation::new(mode_for(proof.propagation));
    let mut matrix: HashMap<ClauseId, StepId> = HashMap::new();
    let mut learned: Vec<StepId> = Vec::with_capacity(proof.rounds.len());
    for round in &proof.rounds {
        let sources: HashMap<StepId, ClauseId> = round.axiom_sources.iter().copied().collect();
        let mut map: HashMap<StepId, StepId> = HashMap::new();
        for step in &round.derivation.steps {
            let id = match &step.rule {
                Rule::Axiom(c) => {
                    let src = sources[&step.id];
                    if src < base_len {
                        *matrix.entry(src).or_insert_with(|| out.push(Rule::Axiom(c.clone())))
                    } else {
                        learned[src - base_len]
                    }
                }
                Rule::Resolve { pivot, left, right } => out.push(Rule::Resolve { pivot: *pivot, left: map[left], right: map[right] }),
                Rule::Reduce { source } => out.push(Rule::Reduce { source: map[source] }),
            };
            map.insert(step.id, id);
        }
        learned.push(map[&round.derivation.conclusion]);
    }
    out.conclusion = learned.last().copied().unwrap_or(0);
    out
}
