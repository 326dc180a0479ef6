//! Turning a Q-resolution refutation into a QCDCL refutation under ASS-ORD
//! and NO-RED, clause by clause, by making each clause of the input proof
//! unreliable (or learning `(⊥)` on the way).

use std::collections::{HashMap, HashSet};

use crate::learn::{learnable_sequence, pick_learned, LearnError, Scheme};
use crate::proof::{check_refutation, Derivation, QcdclProof, Round, Rule, StepId, Verdict};
use crate::qbf::{Clause, Lit, Prefix, Qcnf, ResolutionMode};
use crate::trail::{check_decision, check_trail, propagate, DecisionPolicy, PropagationPolicy, Time, Trail, TrailError};

const P: DecisionPolicy = DecisionPolicy::AssOrd;
const R: PropagationPolicy = PropagationPolicy::NoRed;

/// A trail whose decisions lie in `¬C` and which propagates `lit ∈ C`.
/// The clause itself is the key it is stored under.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub trail: Trail,
    pub lit: Lit,
}

impl Witness {
    /// Decisions in trail order.
    pub fn decisions(&self) -> Vec<Lit> {
        self.trail.decisions().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimError {
    #[error("input is not a Q-resolution refutation: {0}")]
    InputNotRefutation(String),
    #[error("decision order violates ASS-ORD: {0}")]
    IllegalDecisionOrder(TrailError),
    #[error("make_unreliable ran {rounds} rounds, bound is {bound}")]
    LoopBoundExceeded { rounds: usize, bound: usize },
    #[error("witness for {clause} is invalid: {why}")]
    WitnessInvalid { clause: Clause, why: String },
    #[error("trail built for {clause} ended without conflict or blocking")]
    Stuck { clause: Clause },
    #[error(transparent)]
    Learn(#[from] LearnError),
}

/// Checks that `w` witnesses the unreliability of `c` with respect to `f`.
pub fn check_witness(f: &Qcnf, w: &Witness, c: &Clause) -> Result<(), String> {
    if (w.trail.decision, w.trail.propagation) != (P, R) {
        return Err("trail is not an ASS-ORD / NO-RED trail".into());
    }
    check_trail(f, &w.trail, usize::MAX).map_err(|e| e.to_string())?;
    if !f.prefix.is_existential(w.lit.var()) || !c.contains(w.lit) {
        return Err(format!("{} is not an existential literal of the clause", w.lit));
    }
    if w.trail.lit_value(w.lit) != Some(true) {
        return Err(format!("{} is not on the trail", w.lit));
    }
    for d in w.trail.decisions() {
        if d == !w.lit || !c.contains(!d) {
            return Err(format!("decision {d} is not allowed"));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    Completed(Trail),
    Conflicted(Trail),
    /// A listed decision was found falsified; the witness holds its negation.
    Blocked(Witness),
}

/// Extends `start` naturally, deciding `decisions` in order and skipping
/// those already satisfied.
pub fn construct_trail_with_decisions(f: &Qcnf, start: Trail, decisions: &[Lit]) -> Result<Construction, SimError> {
    let mut t = start;
    if propagate(f, &mut t, &[]) {
        return Ok(Construction::Conflicted(t));
    }
    for &d in decisions {
        match t.lit_value(d) {
            Some(true) => continue,
            Some(false) => return Ok(Construction::Blocked(Witness { trail: t, lit: !d })),
            None => {}
        }
        check_decision(&f.prefix, &t, d).map_err(SimError::IllegalDecisionOrder)?;
        t.push_decision(d);
        if propagate(f, &mut t, &[]) {
            return Ok(Construction::Conflicted(t));
        }
    }
    Ok(Construction::Completed(t))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Unreliable {
    DerivedEmpty { rounds: usize },
    NowUnreliable { rounds: usize, witness: Witness },
}

/// Decisions sorted by quantifier level, then variable; duplicates dropped.
fn level_ordered(prefix: &Prefix, lits: impl IntoIterator<Item = Lit>) -> Vec<Lit> {
    let mut v: Vec<Lit> = lits.into_iter().collect::<HashSet<_>>().into_iter().collect();
    v.sort_by_key(|l| (prefix.level(l.var()), l.var(), !l.is_positive()));
    v
}

/// Upper bound on make_unreliable rounds for `n` variables: each round
/// lowers the first level some variable was seen at.
pub fn loop_bound(n: usize) -> usize {
    n * (n + 2) + 1
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimStats {
    /// Largest round count of a single make_unreliable call.
    pub max_loop_rounds: usize,
    /// Number of make_unreliable calls.
    pub loops: usize,
    /// Input clauses whose witness came for free.
    pub reused: usize,
}

enum Attempt {
    Empty,
    Found(Witness),
}

pub struct SimState {
    f: Qcnf,
    proof: QcdclProof,
    witnesses: HashMap<Clause, Witness>,
    scheme: Scheme,
    pub stats: SimStats,
}

impl SimState {
    pub fn new(base: &Qcnf, scheme: Scheme) -> SimState {
        SimState {
            f: base.clone(),
            proof: QcdclProof::new(base.clone(), P, R),
            witnesses: HashMap::new(),
            scheme,
            stats: SimStats::default(),
        }
    }

    /// Base formula plus everything learned so far.
    pub fn formula(&self) -> &Qcnf {
        &self.f
    }

    pub fn proof(&self) -> &QcdclProof {
        &self.proof
    }

    pub fn into_proof(self) -> QcdclProof {
        self.proof
    }

    pub fn refuted(&self) -> bool {
        self.proof.is_refutation()
    }

    /// The stored witness for `c`, re-validated against the current formula.
    pub fn witness(&self, c: &Clause) -> Result<Option<&Witness>, SimError> {
        match self.witnesses.get(c) {
            None => Ok(None),
            Some(w) => check_witness(&self.f, w, c).map(|_| Some(w)).map_err(|why| SimError::WitnessInvalid { clause: c.clone(), why }),
        }
    }

    fn premise(&self, c: &Clause) -> Result<Witness, SimError> {
        self.witness(c)?.cloned().ok_or_else(|| SimError::WitnessInvalid { clause: c.clone(), why: "premise has no witness".into() })
    }

    /// Next trail starts from scratch.
    fn restart(&mut self) {
        if let Some(last) = self.proof.rounds.last_mut() {
            last.backtrack = Time::ZERO;
        }
    }

    /// Learns from `initial` and re-extends with `decisions` until `(⊥)` is
    /// learned or the decisions block each other.
    pub fn make_unreliable(&mut self, target: &Clause, decisions: &[Lit], initial: Trail) -> Result<Unreliable, SimError> {
        let bound = loop_bound(self.f.prefix.num_vars());
        let mut trail = initial;
        let mut rounds = 0;
        self.stats.loops += 1;
        loop {
            rounds += 1;
            if rounds > bound {
                return Err(SimError::LoopBoundExceeded { rounds, bound });
            }
            self.stats.max_loop_rounds = self.stats.max_loop_rounds.max(rounds);
            let seq = learnable_sequence(&trail, &self.f)?;
            let pick = pick_learned(self.scheme, &seq, &trail, &self.f)?;
            let (derivation, axiom_sources) = seq.derivation_of(pick.index);
            let duplicate = self.f.clauses().contains(&pick.clause);
            self.f.push(pick.clause.clone());
            self.proof.rounds.push(Round {
                trail: trail.clone(),
                learned: pick.clause.clone(),
                learned_index: pick.index,
                derivation,
                axiom_sources,
                backtrack: pick.backtrack,
                duplicate,
            });
            if pick.clause.is_empty() {
                return Ok(Unreliable::DerivedEmpty { rounds });
            }
            trail.backtrack(pick.backtrack).expect("learned backtrack time lies in the trail");
            match construct_trail_with_decisions(&self.f, trail, decisions)? {
                Construction::Conflicted(t) => trail = t,
                Construction::Blocked(witness) => return Ok(Unreliable::NowUnreliable { rounds, witness }),
                Construction::Completed(_) => return Err(SimError::Stuck { clause: target.clone() }),
            }
        }
    }

    /// Fresh trail with `decisions`; a conflict goes through make_unreliable.
    fn attempt(&mut self, target: &Clause, decisions: &[Lit]) -> Result<Attempt, SimError> {
        self.restart();
        match construct_trail_with_decisions(&self.f, Trail::new(P, R), decisions)? {
            Construction::Blocked(w) => Ok(Attempt::Found(w)),
            Construction::Completed(_) => Err(SimError::Stuck { clause: target.clone() }),
            Construction::Conflicted(t) => Ok(match self.make_unreliable(target, decisions, t)? {
                Unreliable::DerivedEmpty { .. } => Attempt::Empty,
                Unreliable::NowUnreliable { witness, .. } => Attempt::Found(witness),
            }),
        }
    }

    fn neg_ordered(&self, lits: impl IntoIterator<Item = Lit>) -> Vec<Lit> {
        level_ordered(&self.f.prefix, lits.into_iter().map(|l| !l))
    }

    /// Case `ℓ₁ = x`: decide `¬ℓ₂` and both decision sets except `x`.
    fn resolve_one_sided(&mut self, c: &Clause, x: Lit, w1: &Witness, w2: &Witness) -> Result<Attempt, SimError> {
        let lits = std::iter::once(!w2.lit).chain(w1.decisions()).chain(w2.decisions()).filter(|&l| l != x);
        let decisions = level_ordered(&self.f.prefix, lits);
        self.attempt(c, &decisions)
    }

    fn simulate_resolution(&mut self, c: &Clause, left: &Clause, right: &Clause, x: Lit) -> Result<Attempt, SimError> {
        let (w1, w2) = (self.premise(left)?, self.premise(right)?);
        match (w1.lit == x, w2.lit == !x) {
            (true, true) => {
                let decisions = level_ordered(&self.f.prefix, w1.decisions().into_iter().chain(w2.decisions()));
                self.attempt(c, &decisions)
            }
            (true, false) => self.resolve_one_sided(c, x, &w1, &w2),
            (false, true) => self.resolve_one_sided(c, !x, &w2, &w1),
            (false, false) => {
                // ¬x is decided last; everything before it lies in ¬C.
                let mut decisions = level_ordered(&self.f.prefix, std::iter::once(!w1.lit).chain(w1.decisions()).filter(|&l| l != !x));
                decisions.push(!x);
                self.restart();
                match construct_trail_with_decisions(&self.f, Trail::new(P, R), &decisions)? {
                    Construction::Blocked(w) if w.lit == x => {
                        let lits =
                            [!w1.lit, !w2.lit].into_iter().chain(w1.decisions()).chain(w2.decisions()).filter(|&l| l.var() != x.var());
                        let decisions = level_ordered(&self.f.prefix, lits);
                        self.attempt(c, &decisions)
                    }
                    Construction::Blocked(w) => Ok(Attempt::Found(w)),
                    Construction::Completed(_) => Err(SimError::Stuck { clause: c.clone() }),
                    Construction::Conflicted(t) => match self.make_unreliable(left, &decisions, t)? {
                        Unreliable::DerivedEmpty { .. } => Ok(Attempt::Empty),
                        Unreliable::NowUnreliable { witness, .. } if witness.lit != x => Ok(Attempt::Found(witness)),
                        Unreliable::NowUnreliable { witness, .. } => {
                            check_witness(&self.f, &witness, left).map_err(|why| SimError::WitnessInvalid { clause: left.clone(), why })?;
                            self.resolve_one_sided(c, x, &witness, &w2)
                        }
                    },
                }
            }
        }
    }

    /// Makes the clause of `step` unreliable, or learns `(⊥)`. `clauses`
    /// maps step ids of the input derivation to their clauses.
    pub fn simulate_clause(&mut self, rule: &Rule, c: &Clause, clauses: &HashMap<StepId, Clause>) -> Result<(), SimError> {
        if self.refuted() || self.witness(c)?.is_some() {
            return Ok(());
        }
        let attempt = match rule {
            Rule::Axiom(_) => {
                let decisions = self.neg_ordered(c.lits());
                self.attempt(c, &decisions)?
            }
            Rule::Reduce { source } => {
                let d = &clauses[source];
                let w = self.premise(d)?;
                if check_witness(&self.f, &w, c).is_ok() {
                    self.stats.reused += 1;
                    Attempt::Found(w)
                } else {
                    let decisions = level_ordered(&self.f.prefix, std::iter::once(!w.lit).chain(w.decisions()));
                    self.attempt(d, &decisions)?
                }
            }
            Rule::Resolve { pivot, left, right } => {
                let (l, r) = (&clauses[left], &clauses[right]);
                let x = if l.contains(Lit::pos(*pivot)) { Lit::pos(*pivot) } else { Lit::neg(*pivot) };
                let reusable = [l, r].into_iter().find_map(|p| {
                    let w = self.witnesses.get(p)?;
                    check_witness(&self.f, w, c).is_ok().then(|| w.clone())
                });
                match reusable {
                    Some(w) => {
                        self.stats.reused += 1;
                        Attempt::Found(w)
                    }
                    None => self.simulate_resolution(c, l, r, x)?,
                }
            }
        };
        if let Attempt::Found(w) = attempt {
            check_witness(&self.f, &w, c).map_err(|why| SimError::WitnessInvalid { clause: c.clone(), why })?;
            self.witnesses.insert(c.clone(), w);
        }
        Ok(())
    }
}

/// QCDCL refutation under ASS-ORD / NO-RED simulating the Q-resolution
/// refutation `pi`.
pub fn simulate_refutation(qcnf: &Qcnf, pi: &Derivation, scheme: Scheme) -> Result<QcdclProof, SimError> {
    simulate_refutation_with_stats(qcnf, pi, scheme).map(|(p, _)| p)
}

pub fn simulate_refutation_with_stats(qcnf: &Qcnf, pi: &Derivation, scheme: Scheme) -> Result<(QcdclProof, SimStats), SimError> {
    if let Verdict::Invalid { step, reason } = check_refutation(qcnf, pi, ResolutionMode::Qres) {
        return Err(SimError::InputNotRefutation(format!("step {step}: {reason}")));
    }
    let clauses = pi
        .clauses_in_mode(&qcnf.prefix, ResolutionMode::Qres)
        .map_err(|(s, why)| SimError::InputNotRefutation(format!("step {s}: {why}")))?;
    let by_id: HashMap<StepId, Clause> = pi.steps.iter().map(|s| s.id).zip(clauses).collect();
    let mut state = SimState::new(qcnf, scheme);
    for step in &pi.steps {
        state.simulate_clause(&step.rule, &by_id[&step.id], &by_id)?;
        if state.refuted() {
            let stats = state.stats.clone();
            return Ok((state.into_proof(), stats));
        }
    }
    Err(SimError::Stuck { clause: Clause::empty() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qbf::Quant::{Exists as E, Forall as A};

    /// ∃x ∀u ∃y,z with x=1 u=2 y=3 z=4.
    fn f(clauses: &[&[i64]]) -> Qcnf {
        let p = Prefix::new([(E, vec![1]), (A, vec![2]), (E, vec![3, 4])]).unwrap();
        Qcnf::new(p, clauses.iter().map(|c| Clause::from_dimacs(c)).collect()).unwrap()
    }

    fn dec(ds: &[i64]) -> Vec<Lit> {
        ds.iter().map(|&d| Lit::from_dimacs(d).unwrap()).collect()
    }

    fn build(f: &Qcnf, ds: &[i64]) -> Construction {
        construct_trail_with_decisions(f, Trail::new(P, R), &dec(ds)).unwrap()
    }

    #[test]
    fn all_decisions_made() {
        match build(&f(&[&[-1, -2, -3, 4]]), &[1, 2, 3]) {
            Construction::Completed(t) => assert_eq!(format!("{t:?}"), "(1; 2; 3, 4)"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn propagated_decision_is_skipped() {
        match build(&f(&[&[-1, -2, -3, 4], &[-1, -2, 3]]), &[1, 2, 3]) {
            Construction::Completed(t) => assert_eq!(format!("{t:?}"), "(1; 2, 3, 4)"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn conflict_stops_construction() {
        let g = f(&[&[-1, -2, -3, 4], &[-1, -2, 4], &[-1, -2, -4]]);
        match build(&g, &[1, 2, 3]) {
            Construction::Conflicted(t) => assert_eq!(format!("{t:?}"), "(1; 2, 4, ⊥)"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn blocked_decisions_give_a_witness() {
        let g = f(&[&[-1, -2, 4], &[-4, -3]]);
        match build(&g, &[1, 2, 3]) {
            Construction::Blocked(w) => {
                assert_eq!(format!("{:?}", w.trail), "(1; 2, 4, -3)");
                assert_eq!(w.lit, Lit::neg(3));
                check_witness(&g, &w, &Clause::from_dimacs(&[-1, -2, -3])).unwrap();
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn universal_out_of_order_is_rejected() {
        let g = f(&[&[1, 2, 3]]);
        let e = construct_trail_with_decisions(&g, Trail::new(P, R), &dec(&[3, 2])).unwrap_err();
        assert!(matches!(e, SimError::IllegalDecisionOrder(_)));
    }

    #[test]
    fn make_unreliable_blocks_after_learning() {
        // ∃x,y,z: (¬x∨¬y∨z), (¬x∨¬y∨¬z); deciding x, y conflicts, the
        // learned ¬x∨¬y then propagates ¬y under x alone
        let p = Prefix::new([(E, vec![1, 2, 3])]).unwrap();
        let g = Qcnf::new(p, vec![Clause::from_dimacs(&[-1, -2, 3]), Clause::from_dimacs(&[-1, -2, -3])]).unwrap();
        let target = Clause::from_dimacs(&[-1, -2]);
        let mut st = SimState::new(&g, Scheme::Asserting);
        let Construction::Conflicted(t) = construct_trail_with_decisions(&g, Trail::new(P, R), &dec(&[1, 2])).unwrap() else {
            panic!("expected a conflict")
        };
        match st.make_unreliable(&target, &dec(&[1, 2]), t).unwrap() {
            Unreliable::NowUnreliable { rounds, witness } => {
                assert_eq!(rounds, 1);
                assert_eq!(format!("{:?}", witness.trail), "(1, -2)");
                check_witness(st.formula(), &witness, &target).unwrap();
            }
            other => panic!("{other:?}"),
        }
        st.proof().validate().unwrap();
    }

    #[test]
    fn unit_axiom_is_unreliable_without_decisions() {
        let p = Prefix::new([(E, vec![1]), (A, vec![2])]).unwrap();
        let g = Qcnf::new(p, vec![Clause::from_dimacs(&[-1]), Clause::from_dimacs(&[1, 2])]).unwrap();
        let mut st = SimState::new(&g, Scheme::Asserting);
        let c = Clause::from_dimacs(&[-1]);
        st.simulate_clause(&Rule::Axiom(c.clone()), &c, &HashMap::new()).unwrap();
        assert!(!st.refuted());
        let w = st.witness(&c).unwrap().unwrap();
        assert_eq!(format!("{:?}", w.trail), "(-1)");
        assert!(st.proof().rounds.is_empty());
    }

    #[test]
    fn one_step_refutation() {
        let p = Prefix::new([(E, vec![1])]).unwrap();
        let g = Qcnf::new(p, vec![Clause::from_dimacs(&[1]), Clause::from_dimacs(&[-1])]).unwrap();
        let mut pi = Derivation::new(ResolutionMode::Qres);
        let a = pi.push(Rule::Axiom(Clause::from_dimacs(&[1])));
        let b = pi.push(Rule::Axiom(Clause::from_dimacs(&[-1])));
        pi.push(Rule::Resolve { pivot: 1, left: a, right: b });
        let proof = simulate_refutation(&g, &pi, Scheme::Asserting).unwrap();
        assert_eq!(proof.rounds.len(), 1);
        proof.validate().unwrap();
    }

    #[test]
    fn reduction_with_universal_decided_last() {
        // ∃x ∀u: (¬x ∨ ¬u), (x); reduce ¬x∨¬u to ¬x, resolve with x
        let p = Prefix::new([(E, vec![1]), (A, vec![2])]).unwrap();
        let g = Qcnf::new(p, vec![Clause::from_dimacs(&[-1, -2]), Clause::from_dimacs(&[1])]).unwrap();
        let mut pi = Derivation::new(ResolutionMode::Qres);
        let a = pi.push(Rule::Axiom(Clause::from_dimacs(&[-1, -2])));
        let r = pi.push(Rule::Reduce { source: a });
        let b = pi.push(Rule::Axiom(Clause::from_dimacs(&[1])));
        pi.push(Rule::Resolve { pivot: 1, left: b, right: r });
        let proof = simulate_refutation(&g, &pi, Scheme::Asserting).unwrap();
        proof.validate().unwrap();
        assert!(proof.is_refutation());
    }

    #[test]
    fn rejects_non_refutations() {
        let g = f(&[&[1, 3]]);
        let mut pi = Derivation::new(ResolutionMode::Qres);
        pi.push(Rule::Axiom(Clause::from_dimacs(&[1, 3])));
        assert!(matches!(simulate_refutation(&g, &pi, Scheme::Asserting), Err(SimError::InputNotRefutation(_))));
    }
}
