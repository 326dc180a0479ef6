use std::fmt;
use std::ops::Not;

/// Variable id, 1-based as in DIMACS.
pub type Var = u32;

/// A literal over a positive variable id.
///
/// Encoded as `2 * var + neg` so that the derived ordering sorts by variable
/// first and puts the positive literal before the negative one.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit(u32);

impl Lit {
    pub fn new(var: Var, positive: bool) -> Lit {
        assert!(var > 0, "variable ids start at 1");
        Lit(var << 1 | (!positive) as u32)
    }

    pub fn pos(var: Var) -> Lit {
        Lit::new(var, true)
    }

    pub fn neg(var: Var) -> Lit {
        Lit::new(var, false)
    }

    /// Parses a nonzero DIMACS integer.
    pub fn from_dimacs(value: i64) -> Option<Lit> {
        if value == 0 || value.unsigned_abs() > (u32::MAX >> 1) as u64 {
            return None;
        }
        Some(Lit::new(value.unsigned_abs() as Var, value > 0))
    }

    pub fn to_dimacs(self) -> i64 {
        let v = self.var() as i64;
        if self.is_positive() {
            v
        } else {
            -v
        }
    }

    pub fn var(self) -> Var {
        self.0 >> 1
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }
}

impl Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

impl fmt::Debug for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negation_is_an_involution() {
        for v in [1, 2, 77] {
            for l in [Lit::pos(v), Lit::neg(v)] {
                assert_eq!(!!l, l);
                assert_eq!((!l).var(), l.var());
                assert_ne!(!l, l);
            }
        }
    }

    #[test]
    fn dimacs_roundtrip() {
        for d in [1i64, -1, 5, -42] {
            assert_eq!(Lit::from_dimacs(d).unwrap().to_dimacs(), d);
        }
        assert!(Lit::from_dimacs(0).is_none());
    }
}
