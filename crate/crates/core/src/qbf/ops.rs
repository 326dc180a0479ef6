//! Universal reduction, resolution and restriction.

use std::fmt;

use super::clause::{Clause, Occ, Phase};
use super::lit::{Lit, Var};
use super::prefix::Prefix;

/// Side conditions applied by [`resolve`].
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum ResolutionMode {
    /// Q-resolution: resolvents must be non-tautological.
    Qres,
    /// Long-distance Q-resolution: universal merges allowed above the pivot level.
    LdQres,
}

impl ResolutionMode {
    pub fn name(self) -> &'static str {
        match self {
            ResolutionMode::Qres => "qres",
            ResolutionMode::LdQres => "ldqres",
        }
    }

    pub fn from_name(s: &str) -> Option<ResolutionMode> {
        match s {
            "qres" => Some(ResolutionMode::Qres),
            "ldqres" => Some(ResolutionMode::LdQres),
            _ => None,
        }
    }
}

impl fmt::Display for ResolutionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ResolveError {
    #[error("pivot literal {0} missing from the left premise or its negation from the right premise")]
    PivotMissing(Lit),
    #[error("pivot variable {0} is not existential")]
    UniversalPivot(Var),
    #[error("resolvent would contain both polarities of variable {var} ({why})")]
    IllegalTautology { var: Var, why: &'static str },
}

/// `red(c)`: drops every universal occurrence whose level exceeds the level of
/// all existential occurrences. Without existential occurrences the result is empty.
pub fn reduce(c: &Clause, prefix: &Prefix) -> Clause {
    let max_e = c.vars().filter(|&v| prefix.is_existential(v)).map(|v| prefix.level(v)).max().unwrap_or(0);
    let occs = c.occs().iter().copied().filter(|o| prefix.is_existential(o.var) || prefix.level(o.var) < max_e).collect();
    Clause::from_sorted_occs(occs)
}

/// Resolves `c1` (containing `pivot`) with `c2` (containing `¬pivot`).
pub fn resolve(c1: &Clause, c2: &Clause, pivot: Lit, mode: ResolutionMode, prefix: &Prefix) -> Result<Clause, ResolveError> {
    let pv = pivot.var();
    if !prefix.is_existential(pv) {
        return Err(ResolveError::UniversalPivot(pv));
    }
    let expect = |c: &Clause, l: Lit| c.phase(l.var()) == Some(if l.is_positive() { Phase::Pos } else { Phase::Neg });
    if !expect(c1, pivot) || !expect(c2, !pivot) {
        return Err(ResolveError::PivotMissing(pivot));
    }
    let pivot_level = prefix.level(pv);
    let (a, b) = (c1.occs(), c2.occs());
    let (mut i, mut j) = (0, 0);
    let mut out: Vec<Occ> = Vec::with_capacity(a.len() + b.len());
    let check_merge = |var: Var, shared: bool| -> Result<(), ResolveError> {
        if prefix.is_existential(var) {
            return Err(ResolveError::IllegalTautology { var, why: "existential variable" });
        }
        match mode {
            ResolutionMode::Qres => Err(ResolveError::IllegalTautology { var, why: "not allowed in Q-resolution" }),
            ResolutionMode::LdQres if shared && prefix.level(var) < pivot_level => {
                Err(ResolveError::IllegalTautology { var, why: "merged universal is left of the pivot" })
            }
            ResolutionMode::LdQres => Ok(()),
        }
    };
    while i < a.len() || j < b.len() {
        let (occ, shared) = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) if x.var == y.var => {
                i += 1;
                j += 1;
                let phase = if x.phase == y.phase { x.phase } else { Phase::Merged };
                (Occ { var: x.var, phase }, true)
            }
            (Some(x), Some(y)) if x.var < y.var => {
                i += 1;
                (*x, false)
            }
            (Some(x), None) => {
                i += 1;
                (*x, false)
            }
            (_, Some(y)) => {
                j += 1;
                (*y, false)
            }
            (None, None) => unreachable!(),
        };
        if occ.var == pv {
            continue;
        }
        if occ.phase == Phase::Merged {
            check_merge(occ.var, shared)?;
        }
        out.push(occ);
    }
    Ok(Clause::from_sorted_occs(out))
}

/// Partial assignment indexed by variable id.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment {
    values: Vec<Option<bool>>,
}

impl Assignment {
    pub fn new() -> Assignment {
        Assignment::default()
    }

    /// Builds an assignment from literals; `None` if two literals clash.
    pub fn from_lits(lits: impl IntoIterator<Item = Lit>) -> Option<Assignment> {
        let mut a = Assignment::new();
        for l in lits {
            match a.lit_value(l) {
                Some(false) => return None,
                _ => a.set(l),
            }
        }
        Some(a)
    }

    pub fn value(&self, v: Var) -> Option<bool> {
        self.values.get(v as usize).copied().flatten()
    }

    /// Truth value of `l`, if its variable is assigned.
    pub fn lit_value(&self, l: Lit) -> Option<bool> {
        self.value(l.var()).map(|b| b == l.is_positive())
    }

    pub fn set(&mut self, l: Lit) {
        let v = l.var() as usize;
        if self.values.len() <= v {
            self.values.resize(v + 1, None);
        }
        self.values[v] = Some(l.is_positive());
    }

    pub fn unset(&mut self, v: Var) {
        if let Some(x) = self.values.get_mut(v as usize) {
            *x = None;
        }
    }

    pub fn is_assigned(&self, v: Var) -> bool {
        self.value(v).is_some()
    }

    pub fn lits(&self) -> impl Iterator<Item = Lit> + '_ {
        self.values.iter().enumerate().filter_map(|(v, x)| x.map(|b| Lit::new(v as Var, b)))
    }
}

/// Result of restricting a clause by an assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Restricted {
    Satisfied,
    Clause(Clause),
}

/// `c|σ`. A merged occurrence is satisfied as soon as its variable is assigned.
pub fn restrict(c: &Clause, sigma: &Assignment) -> Restricted {
    let mut occs = Vec::with_capacity(c.len());
    for o in c.occs() {
        match (sigma.value(o.var), o.phase) {
            (None, _) => occs.push(*o),
            (Some(_), Phase::Merged) | (Some(true), Phase::Pos) | (Some(false), Phase::Neg) => return Restricted::Satisfied,
            _ => {}
        }
    }
    Restricted::Clause(Clause::from_sorted_occs(occs))
}
