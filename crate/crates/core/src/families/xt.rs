use std::fmt;

use crate::qbf::{Clause, ClauseId, Phase, Qcnf, Quant};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum XtViolation {
    /// A clause over X and T variables only.
    XtClause,
    /// A single-literal clause over T.
    UnitTClause,
    /// Two T-clauses clashing on exactly one variable; holds the second id.
    ResolvableTPair(ClauseId),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XtReport {
    /// The prefix has the shape ∃X ∀U ∃T.
    pub applicable: bool,
    pub holds: bool,
    pub counterexample: Option<(ClauseId, XtViolation)>,
}

impl fmt::Display for XtReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.applicable, self.counterexample) {
            (false, _) => write!(f, "not applicable: prefix is not of the form e X a U e T"),
            (true, None) => write!(f, "holds"),
            (true, Some((id, v))) => write!(f, "fails: clause {id}: {v:?}"),
        }
    }
}

fn clash_count(a: &Clause, b: &Clause) -> usize {
    a.occs().iter().filter(|o| matches!((o.phase, b.phase(o.var)), (Phase::Pos, Some(Phase::Neg)) | (Phase::Neg, Some(Phase::Pos)))).count()
}

pub fn xt_check(f: &Qcnf) -> XtReport {
    let quants: Vec<Quant> = f.prefix.blocks().iter().map(|b| b.quant).collect();
    if quants != [Quant::Exists, Quant::Forall, Quant::Exists] {
        return XtReport { applicable: false, holds: false, counterexample: None };
    }
    let has = |c: &Clause, level: u32| c.vars().any(|v| f.prefix.level(v) == level);
    let mut t_clauses: Vec<ClauseId> = Vec::new();
    let fail = |id, v| XtReport { applicable: true, holds: false, counterexample: Some((id, v)) };
    for (id, c) in f.clauses().iter().enumerate() {
        let (x, u, t) = (has(c, 1), has(c, 2), has(c, 3));
        if x && t && !u {
            return fail(id, XtViolation::XtClause);
        }
        if t && !x && !u {
            if c.len() == 1 {
                return fail(id, XtViolation::UnitTClause);
            }
            t_clauses.push(id);
        }
    }
    for (i, &a) in t_clauses.iter().enumerate() {
        for &b in &t_clauses[i + 1..] {
            if clash_count(f.clause(a), f.clause(b)) == 1 {
                return fail(a, XtViolation::ResolvableTPair(b));
            }
        }
    }
    XtReport { applicable: true, holds: true, counterexample: None }
}
