use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::qbf::{reduce, resolve, Clause, Lit, Phase, Prefix, Qcnf, ResolutionMode, Var};

pub type StepId = u32;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Axiom(Clause),
    /// Resolution over an existential variable; `left` holds the pivot in
    /// one polarity and `right` in the other.
    Resolve {
        pivot: Var,
        left: StepId,
        right: StepId,
    },
    Reduce {
        source: StepId,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProofStep {
    pub id: StepId,
    pub rule: Rule,
}

/// A (long-distance) Q-resolution derivation. Derived clauses are not stored;
/// [`Derivation::clauses`] recomputes them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub mode: ResolutionMode,
    pub steps: Vec<ProofStep>,
    pub conclusion: StepId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid { step: StepId, reason: String },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        *self == Verdict::Valid
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Valid => write!(f, "valid"),
            Verdict::Invalid { step, reason } => write!(f, "invalid at step {step}: {reason}"),
        }
    }
}

impl Derivation {
    pub fn new(mode: ResolutionMode) -> Derivation {
        Derivation { mode, steps: Vec::new(), conclusion: 0 }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Appends a step with the next free id and makes it the conclusion.
    pub fn push(&mut self, rule: Rule) -> StepId {
        let id = self.steps.last().map(|s| s.id + 1).unwrap_or(1);
        self.steps.push(ProofStep { id, rule });
        self.conclusion = id;
        id
    }

    pub fn count_reductions(&self) -> usize {
        self.steps.iter().filter(|s| matches!(s.rule, Rule::Reduce { .. })).count()
    }

    /// Recomputes every clause under `mode`, failing at the first bad step.
    pub fn clauses_in_mode(&self, prefix: &Prefix, mode: ResolutionMode) -> Result<Vec<Clause>, (StepId, String)> {
        let mut index: HashMap<StepId, usize> = HashMap::with_capacity(self.steps.len());
        let mut out: Vec<Clause> = Vec::with_capacity(self.steps.len());
        for step in &self.steps {
            let bad = |why: String| (step.id, why);
            let get = |id: StepId| index.get(&id).map(|&i| &out[i]).ok_or_else(|| bad(format!("premise {id} is not an earlier step")));
            let c = match &step.rule {
                Rule::Axiom(c) => {
                    if let Some(v) = c.vars().find(|&v| !prefix.is_bound(v)) {
                        return Err(bad(format!("variable {v} is not bound")));
                    }
                    c.clone()
                }
                Rule::Resolve { pivot, left, right } => {
                    let (l, r) = (get(*left)?, get(*right)?);
                    let lit = match l.phase(*pivot) {
                        Some(Phase::Pos) => Lit::pos(*pivot),
                        Some(Phase::Neg) => Lit::neg(*pivot),
                        _ => return Err(bad(format!("pivot {pivot} missing from step {left}"))),
                    };
                    resolve(l, r, lit, mode, prefix).map_err(|e| bad(e.to_string()))?
                }
                Rule::Reduce { source } => reduce(get(*source)?, prefix),
            };
            if index.insert(step.id, out.len()).is_some() {
                return Err(bad("duplicate step id".into()));
            }
            out.push(c);
        }
        Ok(out)
    }

    pub fn clauses(&self, prefix: &Prefix) -> Result<Vec<Clause>, (StepId, String)> {
        self.clauses_in_mode(prefix, self.mode)
    }

    /// The derived clause, if the derivation is well-formed.
    pub fn conclusion_clause(&self, prefix: &Prefix) -> Option<Clause> {
        let cs = self.clauses(prefix).ok()?;
        let i = self.steps.iter().position(|s| s.id == self.conclusion)?;
        Some(cs[i].clone())
    }

    /// True if no clause of the derivation contains a universal merge.
    pub fn merge_free(&self, prefix: &Prefix) -> bool {
        match self.clauses_in_mode(prefix, ResolutionMode::LdQres) {
            Ok(cs) => cs.iter().all(|c| !c.has_merge()),
            Err(_) => false,
        }
    }
}

/// Checks every step of `d` under `mode` against the matrix of `f`.
pub fn check_derivation(f: &Qcnf, d: &Derivation, mode: ResolutionMode) -> Verdict {
    let axioms: HashSet<&Clause> = f.clauses().iter().collect();
    for s in &d.steps {
        if let Rule::Axiom(c) = &s.rule {
            if !axioms.contains(c) {
                return Verdict::Invalid { step: s.id, reason: format!("axiom {c} is not a clause of the formula") };
            }
        }
    }
    match d.clauses_in_mode(&f.prefix, mode) {
        Err((step, reason)) => Verdict::Invalid { step, reason },
        Ok(_) if !d.steps.iter().any(|s| s.id == d.conclusion) => {
            Verdict::Invalid { step: d.conclusion, reason: "conclusion is not a step".into() }
        }
        Ok(_) => Verdict::Valid,
    }
}

/// [`check_derivation`] plus the requirement that the conclusion is empty.
pub fn check_refutation(f: &Qcnf, d: &Derivation, mode: ResolutionMode) -> Verdict {
    match check_derivation(f, d, mode) {
        Verdict::Valid => {
            let empty = d.conclusion_clause(&f.prefix).map(|c| c.is_empty()).unwrap_or(false);
            if empty {
                Verdict::Valid
            } else {
                Verdict::Invalid { step: d.conclusion, reason: "conclusion is not the empty clause".into() }
            }
        }
        v => v,
    }
}
