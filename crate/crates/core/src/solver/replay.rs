use super::script::{BackChoice, LearnChoice, ReplayScript};
use crate::learn::{asserting_time, learnable_sequence, pick_learned, LearnError, Pick};
use crate::proof::{QcdclProof, Round};
use crate::qbf::{ClauseId, Lit, Qcnf};
use crate::trail::{check_decision, propagate, DecisionPolicy, PropagationPolicy, Reason, Time, Trail, TrailError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReplayError {
    #[error("round {round}, decision {position}: {source}")]
    IllegalDecision { round: usize, position: usize, source: TrailError },
    #[error("round {round}: {why}")]
    ScriptDivergence { round: usize, why: String },
    #[error("round {round}: {source}")]
    Learn { round: usize, source: LearnError },
}

fn uses(trail: &Trail, lit: Option<Lit>, id: ClauseId) -> bool {
    match lit {
        None => trail.conflict() == Some(id),
        Some(l) => trail.entries().iter().any(|e| e.lit == l && e.reason == Reason::Propagated(id)),
    }
}

/// Replays `script` naturally from the empty trail and returns the induced
/// proof. Whether it is a refutation is left to the caller.
pub fn replay(qcnf: &Qcnf, script: &ReplayScript, p: DecisionPolicy, r: PropagationPolicy) -> Result<QcdclProof, ReplayError> {
    let mut f = qcnf.clone();
    let mut proof = QcdclProof::new(qcnf.clone(), p, r);
    let mut trail = Trail::new(p, r);
    for (round, sr) in script.rounds.iter().enumerate() {
        let diverge = |why: String| ReplayError::ScriptDivergence { round, why };
        let prefer: Vec<(ClauseId, Option<Lit>)> = sr.antecedents.iter().map(|&(l, c)| (c, l)).collect();
        propagate(&f, &mut trail, &prefer);
        for (position, &d) in sr.decisions.iter().enumerate() {
            if trail.is_conflicting() {
                return Err(diverge(format!("conflict before decision {position} ({d}); trail {trail:?}")));
            }
            check_decision(&f.prefix, &trail, d).map_err(|source| ReplayError::IllegalDecision { round, position, source })?;
            trail.push_decision(d);
            propagate(&f, &mut trail, &prefer);
        }
        if !trail.is_conflicting() {
            return Err(diverge(format!("no conflict after the scripted decisions; trail {trail:?}")));
        }
        if let Some((l, c)) = sr.antecedents.iter().find(|&&(l, c)| !uses(&trail, l, c)) {
            return Err(diverge(format!("clause {c} is not the antecedent of {l:?}; trail {trail:?}")));
        }
        let learn_err = |source| ReplayError::Learn { round, source };
        let seq = learnable_sequence(&trail, &f).map_err(learn_err)?;
        let pick = match &sr.learn {
            LearnChoice::Scheme(s) => pick_learned(*s, &seq, &trail, &f).map_err(learn_err)?,
            LearnChoice::Clause(c) => {
                let index = seq
                    .elements
                    .iter()
                    .position(|e| &e.clause == c)
                    .ok_or_else(|| diverge(format!("{c} is not learnable from {trail:?}")))?;
                let asserting = asserting_time(c, &trail, &f);
                Pick { index, clause: c.clone(), asserting, backtrack: asserting.unwrap_or(Time::ZERO) }
            }
        };
        let backtrack = match sr.back {
            BackChoice::Time(t) => {
                if trail.prefix_len(t).is_none() || t == trail.end_time() {
                    return Err(diverge(format!("backtrack time {t} is not inside {trail:?}")));
                }
                t
            }
            BackChoice::Restart => Time::ZERO,
            BackChoice::Asserting => pick.asserting.ok_or_else(|| diverge(format!("{} is not asserting", pick.clause)))?,
        };
        let (derivation, axiom_sources) = seq.derivation_of(pick.index);
        let duplicate = f.clauses().contains(&pick.clause);
        f.push(pick.clause.clone());
        proof.rounds.push(Round {
            trail: trail.clone(),
            learned: pick.clause,
            learned_index: pick.index,
            derivation,
            axiom_sources,
            backtrack,
            duplicate,
        });
        trail.backtrack(backtrack).expect("checked above");
    }
    Ok(proof)
}
