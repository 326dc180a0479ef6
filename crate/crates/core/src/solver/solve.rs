use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::learn::{learnable_sequence, pick_learned, LearnError, Scheme};
use crate::proof::{QcdclProof, Round};
use crate::qbf::{Lit, Prefix, Qcnf};
use crate::trail::{legal_decisions, propagate, DecisionPolicy, PropagationPolicy, Time, Trail};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Heuristic {
    /// Lowest quantifier level, then lowest variable id, positive literal first.
    Lowest,
    /// Uniform choice among the legal literals, seeded.
    Random,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    pub decision: DecisionPolicy,
    pub propagation: PropagationPolicy,
    pub scheme: Scheme,
    pub heuristic: Heuristic,
    pub seed: u64,
    /// Maximum number of learned clauses.
    pub max_conflicts: usize,
    /// Maximum number of conflict-free full trails in a row (no clause
    /// learned in between) before giving up.
    pub max_saturations: usize,
}

impl SolverConfig {
    pub fn new(decision: DecisionPolicy, propagation: PropagationPolicy) -> SolverConfig {
        SolverConfig {
            decision,
            propagation,
            scheme: Scheme::Asserting,
            heuristic: Heuristic::Lowest,
            seed: 0,
            max_conflicts: 10_000,
            max_saturations: 10_000,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub conflicts: usize,
    pub decisions: usize,
    pub saturations: usize,
    pub duplicates: usize,
}

#[derive(Clone, Debug)]
pub enum SolveOutcome {
    Refuted(QcdclProof, SolveStats),
    BudgetExhausted(QcdclProof, SolveStats),
    SaturatedNoConflict(QcdclProof, SolveStats),
}

impl SolveOutcome {
    pub fn proof(&self) -> &QcdclProof {
        match self {
            SolveOutcome::Refuted(p, _) | SolveOutcome::BudgetExhausted(p, _) | SolveOutcome::SaturatedNoConflict(p, _) => p,
        }
    }

    pub fn stats(&self) -> &SolveStats {
        match self {
            SolveOutcome::Refuted(_, s) | SolveOutcome::BudgetExhausted(_, s) | SolveOutcome::SaturatedNoConflict(_, s) => s,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SolveOutcome::Refuted(..) => "refuted",
            SolveOutcome::BudgetExhausted(..) => "budget-exhausted",
            SolveOutcome::SaturatedNoConflict(..) => "saturated",
        }
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, SolveOutcome::Refuted(..))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Learn(#[from] LearnError),
}

fn choose(prefix: &Prefix, legal: &[Lit], heuristic: Heuristic, rng: &mut ChaCha8Rng) -> Lit {
    match heuristic {
        Heuristic::Lowest => *legal.iter().min_by_key(|l| (prefix.level(l.var()), l.var(), !l.is_positive())).expect("nonempty"),
        Heuristic::Random => *legal.choose(rng).expect("nonempty"),
    }
}

/// Runs QCDCL until `(⊥)` is learned, the conflict budget runs out, or the
/// search over decision polarities finds only conflict-free full trails.
///
/// A conflict-free full trail is abandoned by flipping the most recent
/// universal decision not yet tried both ways; the flags reset whenever a
/// clause is learned. Existential decisions are never flipped: a full trail
/// without conflict satisfies every clause, so the existential choices on it
/// already won that branch. Abandoned trails are not rounds, but the previous round's
/// backtrack time is lowered to the deepest point the search returned to, so
/// the recorded rounds still chain as required.
///
/// Out-of-order decisions can leave every full trail conflict-free on a false
/// formula (a universal decided first makes a lower existential propagate
/// under NO-RED). So with the random heuristic the first saturation restarts
/// and switches to the level-ordered choice until the next clause is learned.
pub fn solve(qcnf: &Qcnf, cfg: &SolverConfig) -> Result<SolveOutcome, SolveError> {
    if cfg.max_conflicts == 0 {
        return Err(SolveError::Config("max_conflicts must be at least 1".into()));
    }
    let mut f = qcnf.clone();
    let mut proof = QcdclProof::new(qcnf.clone(), cfg.decision, cfg.propagation);
    let mut stats = SolveStats::default();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut trail = Trail::new(cfg.decision, cfg.propagation);
    let mut flipped: Vec<bool> = Vec::new();
    let mut ordered = cfg.heuristic == Heuristic::Lowest;
    let mut stalled = 0;

    loop {
        if propagate(&f, &mut trail, &[]) {
            let seq = learnable_sequence(&trail, &f)?;
            let pick = pick_learned(cfg.scheme, &seq, &trail, &f)?;
            let duplicate = f.clauses().contains(&pick.clause);
            stats.duplicates += duplicate as usize;
            let (derivation, axiom_sources) = seq.derivation_of(pick.index);
            f.push(pick.clause.clone());
            proof.rounds.push(Round {
                trail: trail.clone(),
                learned: pick.clause.clone(),
                learned_index: pick.index,
                derivation,
                axiom_sources,
                backtrack: pick.backtrack,
                duplicate,
            });
            stats.conflicts += 1;
            if pick.clause.is_empty() {
                return Ok(SolveOutcome::Refuted(proof, stats));
            }
            if stats.conflicts >= cfg.max_conflicts {
                return Ok(SolveOutcome::BudgetExhausted(proof, stats));
            }
            trail.backtrack(pick.backtrack).expect("asserting time lies in the trail");
            flipped = trail.decisions().map(|d| f.prefix.is_existential(d.var())).collect();
            ordered = cfg.heuristic == Heuristic::Lowest;
            stalled = 0;
            continue;
        }

        let legal = legal_decisions(&f.prefix, &trail);
        if !legal.is_empty() {
            let h = if ordered { Heuristic::Lowest } else { cfg.heuristic };
            let lit = choose(&f.prefix, &legal, h, &mut rng);
            trail.push_decision(lit);
            flipped.push(f.prefix.is_existential(lit.var()));
            stats.decisions += 1;
            continue;
        }

        stats.saturations += 1;
        stalled += 1;
        if stalled > cfg.max_saturations {
            return Ok(SolveOutcome::SaturatedNoConflict(proof, stats));
        }
        let level = match flipped.iter().rposition(|&done| !done) {
            _ if !ordered => None,
            Some(i) => Some(i + 1),
            None => return Ok(SolveOutcome::SaturatedNoConflict(proof, stats)),
        };
        let d = level.map(|l| trail.decisions().nth(l - 1).unwrap());
        let len = level.map_or(0, |l| trail.prefix_len(Time::new(l, 0)).unwrap() - 1);
        trail.truncate(len);
        if let Some(last) = proof.rounds.last_mut() {
            let kept = last.trail.prefix_len(last.backtrack).unwrap();
            if len < kept {
                last.backtrack = last.trail.time_of_len(len);
            }
        }
        let (Some(level), Some(d)) = (level, d) else {
            ordered = true;
            flipped.clear();
            continue;
        };
        flipped.truncate(level - 1);
        if !propagate(&f, &mut trail, &[]) && trail.value(d.var()).is_none() {
            trail.push_decision(!d);
            flipped.push(true);
            stats.decisions += 1;
        }
    }
}
