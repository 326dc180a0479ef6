//! Formulas: literals, clauses, prefixes, QDIMACS, reduction and resolution.

mod clause;
mod formula;
mod lit;
mod ops;
mod prefix;
mod qdimacs;

pub use clause::{Clause, Occ, Phase};
pub use formula::{ClauseId, FormulaError, Qcnf};
pub use lit::{Lit, Var};
pub use ops::{reduce, resolve, restrict, Assignment, ResolutionMode, ResolveError, Restricted};
pub use prefix::{Block, Prefix, PrefixError, Quant};
pub use qdimacs::{parse_qdimacs, write_qdimacs, ParseError};
