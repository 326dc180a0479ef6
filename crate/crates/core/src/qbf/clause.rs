use std::fmt;

use super::lit::{Lit, Var};

/// Occurrence of a variable inside a clause.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Phase {
    Pos,
    Neg,
    /// Long-distance merge `u ∨ ¬u` of a universal variable.
    Merged,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Occ {
    pub var: Var,
    pub phase: Phase,
}

impl Occ {
    /// The literal of a non-merged occurrence.
    pub fn lit(self) -> Option<Lit> {
        match self.phase {
            Phase::Pos => Some(Lit::pos(self.var)),
            Phase::Neg => Some(Lit::neg(self.var)),
            Phase::Merged => None,
        }
    }

    pub fn contains(self, lit: Lit) -> bool {
        self.var == lit.var()
            && match self.phase {
                Phase::Pos => lit.is_positive(),
                Phase::Neg => !lit.is_positive(),
                Phase::Merged => true,
            }
    }
}

/// A clause: a set of variable occurrences sorted by variable id.
///
/// A variable occurs at most once; both polarities are represented by a single
/// [`Phase::Merged`] occurrence. The empty clause has no occurrences.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Clause {
    occs: Vec<Occ>,
}

impl Clause {
    pub fn empty() -> Clause {
        Clause { occs: Vec::new() }
    }

    /// Builds a clause from literals, merging complementary pairs.
    pub fn from_lits(lits: impl IntoIterator<Item = Lit>) -> Clause {
        let mut lits: Vec<Lit> = lits.into_iter().collect();
        lits.sort_unstable();
        lits.dedup();
        let mut occs: Vec<Occ> = Vec::with_capacity(lits.len());
        for l in lits {
            let phase = if l.is_positive() { Phase::Pos } else { Phase::Neg };
            match occs.last_mut() {
                Some(o) if o.var == l.var() => o.phase = Phase::Merged,
                _ => occs.push(Occ { var: l.var(), phase }),
            }
        }
        Clause { occs }
    }

    /// Builds a clause from DIMACS integers; panics on 0.
    pub fn from_dimacs(lits: &[i64]) -> Clause {
        Clause::from_lits(lits.iter().map(|&d| Lit::from_dimacs(d).expect("nonzero literal")))
    }

    pub(crate) fn from_sorted_occs(occs: Vec<Occ>) -> Clause {
        debug_assert!(occs.windows(2).all(|w| w[0].var < w[1].var));
        Clause { occs }
    }

    pub fn occs(&self) -> &[Occ] {
        &self.occs
    }

    pub fn len(&self) -> usize {
        self.occs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.occs.is_empty()
    }

    pub fn phase(&self, var: Var) -> Option<Phase> {
        self.occs.binary_search_by_key(&var, |o| o.var).ok().map(|i| self.occs[i].phase)
    }

    /// True if the clause contains `lit`, counting merges as containing both polarities.
    pub fn contains(&self, lit: Lit) -> bool {
        self.phase(lit.var()).map(|p| Occ { var: lit.var(), phase: p }.contains(lit)).unwrap_or(false)
    }

    pub fn has_merge(&self) -> bool {
        self.occs.iter().any(|o| o.phase == Phase::Merged)
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.occs.iter().map(|o| o.var)
    }

    /// All literals, expanding merges into both polarities.
    pub fn lits(&self) -> impl Iterator<Item = Lit> + '_ {
        self.occs.iter().flat_map(|o| {
            let (a, b) = match o.phase {
                Phase::Pos => (Some(Lit::pos(o.var)), None),
                Phase::Neg => (Some(Lit::neg(o.var)), None),
                Phase::Merged => (Some(Lit::pos(o.var)), Some(Lit::neg(o.var))),
            };
            a.into_iter().chain(b)
        })
    }

    /// DIMACS rendering, merges written as `v -v`.
    pub fn to_dimacs(&self) -> String {
        let mut s = String::new();
        for l in self.lits() {
            s.push_str(&l.to_dimacs().to_string());
            s.push(' ');
        }
        s.push('0');
        s
    }
}

impl fmt::Debug for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "(⊥)");
        }
        write!(f, "(")?;
        for (i, o) in self.occs.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            match o.phase {
                Phase::Pos => write!(f, "{}", o.var)?,
                Phase::Neg => write!(f, "-{}", o.var)?,
                Phase::Merged => write!(f, "±{}", o.var)?,
            }
        }
        write!(f, ")")
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
