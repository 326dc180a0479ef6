use std::fmt;

use super::lit::Var;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Quant {
    Exists,
    Forall,
}

impl Quant {
    pub fn symbol(self) -> char {
        match self {
            Quant::Exists => 'e',
            Quant::Forall => 'a',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub quant: Quant,
    pub vars: Vec<Var>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PrefixError {
    #[error("variable {0} is quantified more than once")]
    Rebound(Var),
    #[error("variable id 0 is not allowed")]
    ZeroVar,
}

/// Prenex quantifier prefix with alternating, non-empty blocks.
///
/// Levels are 1-based block indices; unbound variables have level 0.
#[derive(Clone, PartialEq, Eq)]
pub struct Prefix {
    blocks: Vec<Block>,
    level: Vec<u32>,
}

impl Prefix {
    /// Builds a prefix, dropping empty blocks and merging adjacent blocks of
    /// the same quantifier.
    pub fn new(blocks: impl IntoIterator<Item = (Quant, Vec<Var>)>) -> Result<Prefix, PrefixError> {
        let mut merged: Vec<Block> = Vec::new();
        for (quant, vars) in blocks {
            if vars.is_empty() {
                continue;
            }
            match merged.last_mut() {
                Some(b) if b.quant == quant => b.vars.extend(vars),
                _ => merged.push(Block { quant, vars }),
            }
        }
        let mut level = Vec::new();
        for (i, b) in merged.iter().enumerate() {
            for &v in &b.vars {
                if v == 0 {
                    return Err(PrefixError::ZeroVar);
                }
                let v = v as usize;
                if level.len() <= v {
                    level.resize(v + 1, 0);
                }
                if level[v] != 0 {
                    return Err(PrefixError::Rebound(v as Var));
                }
                level[v] = i as u32 + 1;
            }
        }
        Ok(Prefix { blocks: merged, level })
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Quantifier level of `v`, or 0 if `v` is not bound.
    pub fn level(&self, v: Var) -> u32 {
        self.level.get(v as usize).copied().unwrap_or(0)
    }

    pub fn is_bound(&self, v: Var) -> bool {
        self.level(v) != 0
    }

    /// Quantifier of a bound variable.
    pub fn quant(&self, v: Var) -> Quant {
        let l = self.level(v);
        assert!(l != 0, "variable {v} is not bound");
        self.blocks[l as usize - 1].quant
    }

    pub fn is_universal(&self, v: Var) -> bool {
        self.quant(v) == Quant::Forall
    }

    pub fn is_existential(&self, v: Var) -> bool {
        self.quant(v) == Quant::Exists
    }

    /// Largest bound variable id.
    pub fn max_var(&self) -> Var {
        self.level.len().saturating_sub(1) as Var
    }

    pub fn num_vars(&self) -> usize {
        self.blocks.iter().map(|b| b.vars.len()).sum()
    }

    pub fn num_levels(&self) -> u32 {
        self.blocks.len() as u32
    }

    /// Bound variables in prefix order.
    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.blocks.iter().flat_map(|b| b.vars.iter().copied())
    }
}

impl fmt::Debug for Prefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}{:?}", b.quant.symbol(), b.vars)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjacent_blocks_merge() {
        let p = Prefix::new([(Quant::Exists, vec![1]), (Quant::Exists, vec![2]), (Quant::Forall, vec![3])]).unwrap();
        assert_eq!(p.num_levels(), 2);
        assert_eq!(p.level(1), 1);
        assert_eq!(p.level(2), 1);
        assert_eq!(p.level(3), 2);
        assert_eq!(p.level(4), 0);
    }

    #[test]
    fn empty_blocks_vanish() {
        let p = Prefix::new([(Quant::Exists, vec![1]), (Quant::Forall, vec![]), (Quant::Exists, vec![2])]).unwrap();
        assert_eq!(p.num_levels(), 1);
    }

    #[test]
    fn rebinding_is_rejected() {
        let e = Prefix::new([(Quant::Exists, vec![1]), (Quant::Forall, vec![1])]).unwrap_err();
        assert_eq!(e, PrefixError::Rebound(1));
    }
}
