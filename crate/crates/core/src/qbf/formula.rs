use super::clause::{Clause, Phase};
use super::lit::Var;
use super::prefix::Prefix;

/// Index of a clause in a [`Qcnf`]; learned clauses receive the next free id.
pub type ClauseId = usize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormulaError {
    #[error("clause {clause} contains variable {var} which is not bound by the prefix")]
    Unbound { clause: ClauseId, var: Var },
    #[error("clause {0} is tautological")]
    Tautological(ClauseId),
}

/// Closed prenex formula with CNF matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Qcnf {
    pub prefix: Prefix,
    clauses: Vec<Clause>,
}

impl Qcnf {
    /// Builds a formula whose matrix clauses are non-tautological and closed.
    pub fn new(prefix: Prefix, clauses: Vec<Clause>) -> Result<Qcnf, FormulaError> {
        for (id, c) in clauses.iter().enumerate() {
            if let Some(o) = c.occs().iter().find(|o| !prefix.is_bound(o.var)) {
                return Err(FormulaError::Unbound { clause: id, var: o.var });
            }
            if c.occs().iter().any(|o| o.phase == Phase::Merged) {
                return Err(FormulaError::Tautological(id));
            }
        }
        Ok(Qcnf { prefix, clauses })
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn clause(&self, id: ClauseId) -> &Clause {
        &self.clauses[id]
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    /// Appends a derived clause (which may contain universal merges).
    pub fn push(&mut self, c: Clause) -> ClauseId {
        debug_assert!(c.vars().all(|v| self.prefix.is_bound(v)));
        self.clauses.push(c);
        self.clauses.len() - 1
    }

    /// Drops clauses with id `>= len`.
    pub fn truncate(&mut self, len: usize) {
        self.clauses.truncate(len);
    }
}
