//! Trails: decision levels, unit propagation under `RED`/`NO-RED`, decision
//! policies, times and backtracking.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::qbf::{Assignment, Clause, ClauseId, Lit, Phase, Prefix, Qcnf, Var};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DecisionPolicy {
    LevOrd,
    AssOrd,
    AssROrd,
    AnyOrd,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PropagationPolicy {
    Red,
    NoRed,
}

impl DecisionPolicy {
    pub const ALL: [DecisionPolicy; 4] = [DecisionPolicy::LevOrd, DecisionPolicy::AssOrd, DecisionPolicy::AssROrd, DecisionPolicy::AnyOrd];

    pub fn name(self) -> &'static str {
        match self {
            DecisionPolicy::LevOrd => "lev-ord",
            DecisionPolicy::AssOrd => "ass-ord",
            DecisionPolicy::AssROrd => "ass-r-ord",
            DecisionPolicy::AnyOrd => "any-ord",
        }
    }
}

impl PropagationPolicy {
    pub fn name(self) -> &'static str {
        match self {
            PropagationPolicy::Red => "red",
            PropagationPolicy::NoRed => "no-red",
        }
    }
}

impl fmt::Display for DecisionPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for PropagationPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DecisionPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        DecisionPolicy::ALL.into_iter().find(|p| p.name() == s).ok_or_else(|| format!("unknown decision policy `{s}`"))
    }
}

impl FromStr for PropagationPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "red" => Ok(PropagationPolicy::Red),
            "no-red" => Ok(PropagationPolicy::NoRed),
            _ => Err(format!("unknown propagation policy `{s}`")),
        }
    }
}

/// The six combinations studied as proof systems.
pub const POLICY_PAIRS: [(DecisionPolicy, PropagationPolicy); 6] = [
    (DecisionPolicy::LevOrd, PropagationPolicy::Red),
    (DecisionPolicy::LevOrd, PropagationPolicy::NoRed),
    (DecisionPolicy::AssOrd, PropagationPolicy::NoRed),
    (DecisionPolicy::AssROrd, PropagationPolicy::Red),
    (DecisionPolicy::AnyOrd, PropagationPolicy::Red),
    (DecisionPolicy::AnyOrd, PropagationPolicy::NoRed),
];

/// Position in a trail: `offset` 0 is the decision of `level` (or the empty
/// prefix for level 0), offset `t > 0` the `t`-th propagation in that level.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Time {
    pub level: usize,
    pub offset: usize,
}

impl Time {
    pub const ZERO: Time = Time { level: 0, offset: 0 };

    pub fn new(level: usize, offset: usize) -> Time {
        Time { level, offset }
    }
}

impl fmt::Display for Time {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.level, self.offset)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Reason {
    Decision,
    Propagated(ClauseId),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Entry {
    pub lit: Lit,
    pub reason: Reason,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TrailError {
    #[error("illegal decision {lit} under {policy}: {why}")]
    IllegalDecision { lit: Lit, policy: DecisionPolicy, why: String },
    #[error("decision attempted while clause {0} is unit or falsified")]
    PendingPropagation(ClauseId),
    #[error("trail already ends in a conflict")]
    Conflicting,
    #[error("time {0} is not a position of this trail")]
    InvalidTime(Time),
}

/// A trail built under a fixed policy pair. The conflict `⊥`, when present, is
/// stored apart from the literal entries and always counts as the last element.
#[derive(Clone)]
pub struct Trail {
    pub decision: DecisionPolicy,
    pub propagation: PropagationPolicy,
    entries: Vec<Entry>,
    decision_pos: Vec<usize>,
    conflict: Option<ClauseId>,
    assignment: Assignment,
}

impl PartialEq for Trail {
    fn eq(&self, other: &Trail) -> bool {
        self.decision == other.decision
            && self.propagation == other.propagation
            && self.entries == other.entries
            && self.conflict == other.conflict
    }
}

impl Eq for Trail {}

impl fmt::Debug for Trail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(if e.reason == Reason::Decision { "; " } else { ", " })?;
            }
            write!(f, "{}", e.lit)?;
        }
        if self.conflict.is_some() {
            f.write_str(if self.entries.is_empty() { "⊥" } else { ", ⊥" })?;
        }
        write!(f, ")")
    }
}

impl Trail {
    pub fn new(decision: DecisionPolicy, propagation: PropagationPolicy) -> Trail {
        Trail { decision, propagation, entries: Vec::new(), decision_pos: Vec::new(), conflict: None, assignment: Assignment::new() }
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn conflict(&self) -> Option<ClauseId> {
        self.conflict
    }

    pub fn is_conflicting(&self) -> bool {
        self.conflict.is_some()
    }

    /// Number of elements, counting `⊥`.
    pub fn len(&self) -> usize {
        self.entries.len() + self.conflict.is_some() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn assignment(&self) -> &Assignment {
        &self.assignment
    }

    pub fn value(&self, v: Var) -> Option<bool> {
        self.assignment.value(v)
    }

    pub fn lit_value(&self, l: Lit) -> Option<bool> {
        self.assignment.lit_value(l)
    }

    /// Number of decision levels `r`.
    pub fn num_levels(&self) -> usize {
        self.decision_pos.len()
    }

    pub fn decisions(&self) -> impl Iterator<Item = Lit> + '_ {
        self.decision_pos.iter().map(|&i| self.entries[i].lit)
    }

    /// Number of propagations `g_s` in level `s` (including `⊥`).
    pub fn level_props(&self, s: usize) -> Option<usize> {
        if s > self.num_levels() {
            return None;
        }
        let start = if s == 0 { 0 } else { self.decision_pos[s - 1] + 1 };
        let end = self.decision_pos.get(s).copied().unwrap_or(self.entries.len());
        let bottom = (s == self.num_levels() && self.conflict.is_some()) as usize;
        Some(end - start + bottom)
    }

    /// Number of elements in the subtrail `T[s,t]`.
    pub fn prefix_len(&self, time: Time) -> Option<usize> {
        let g = self.level_props(time.level)?;
        if time.level == 0 {
            (time.offset <= g).then_some(time.offset)
        } else {
            (time.offset <= g).then(|| self.decision_pos[time.level - 1] + 1 + time.offset)
        }
    }

    /// The time naming the subtrail made of the first `len` elements.
    pub fn time_of_len(&self, len: usize) -> Time {
        assert!(len <= self.len());
        let level = self.decision_pos.partition_point(|&p| p < len);
        let offset = if level == 0 { len } else { len - self.decision_pos[level - 1] - 1 };
        Time { level, offset }
    }

    pub fn end_time(&self) -> Time {
        self.time_of_len(self.len())
    }

    /// Level at which entry `idx` was assigned.
    pub fn level_of_index(&self, idx: usize) -> usize {
        self.decision_pos.partition_point(|&p| p <= idx)
    }

    /// Keeps the first `len` elements.
    pub fn truncate(&mut self, len: usize) {
        assert!(len <= self.len());
        if len <= self.entries.len() {
            self.conflict = None;
        }
        while self.entries.len() > len {
            let e = self.entries.pop().unwrap();
            self.assignment.unset(e.lit.var());
            if e.reason == Reason::Decision {
                self.decision_pos.pop();
            }
        }
    }

    /// Backtracks to `T[s,t]`; `(0,0)` restarts.
    pub fn backtrack(&mut self, time: Time) -> Result<(), TrailError> {
        let len = self.prefix_len(time).ok_or(TrailError::InvalidTime(time))?;
        self.truncate(len);
        Ok(())
    }

    pub fn subtrail(&self, time: Time) -> Result<Trail, TrailError> {
        let mut t = self.clone();
        t.backtrack(time)?;
        Ok(t)
    }

    /// Appends a decision without checking the policy.
    pub fn push_decision(&mut self, lit: Lit) {
        debug_assert!(self.conflict.is_none() && self.value(lit.var()).is_none());
        self.decision_pos.push(self.entries.len());
        self.entries.push(Entry { lit, reason: Reason::Decision });
        self.assignment.set(lit);
    }

    /// Appends a propagated literal without checking its antecedent.
    pub fn push_propagation(&mut self, lit: Lit, ante: ClauseId) {
        debug_assert!(self.conflict.is_none() && self.value(lit.var()).is_none());
        self.entries.push(Entry { lit, reason: Reason::Propagated(ante) });
        self.assignment.set(lit);
    }

    pub fn set_conflict(&mut self, ante: ClauseId) {
        debug_assert!(self.conflict.is_none());
        self.conflict = Some(ante);
    }

    /// Appends a forced element: a literal, or `⊥` for `None`.
    pub fn push_forced(&mut self, lit: Option<Lit>, ante: ClauseId) {
        match lit {
            Some(l) => self.push_propagation(l, ante),
            None => self.set_conflict(ante),
        }
    }

    /// Checked decision: the literal must be legal and nothing may be pending.
    pub fn decide(&mut self, f: &Qcnf, lit: Lit) -> Result<(), TrailError> {
        if self.conflict.is_some() {
            return Err(TrailError::Conflicting);
        }
        check_decision(&f.prefix, self, lit)?;
        if let Some((id, _)) = first_forced(f, self, &[]) {
            return Err(TrailError::PendingPropagation(id));
        }
        self.push_decision(lit);
        Ok(())
    }

    /// Line-oriented dump: `D <lit>`, `P <lit> <ante>`, `K 0 <ante>`.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for e in &self.entries {
            let _ = match e.reason {
                Reason::Decision => writeln!(s, "D {}", e.lit),
                Reason::Propagated(c) => writeln!(s, "P {} {}", e.lit, c),
            };
        }
        if let Some(c) = self.conflict {
            let _ = writeln!(s, "K 0 {c}");
        }
        s
    }
}

/// Status of a clause under a partial assignment and a propagation policy.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ClauseStatus {
    Satisfied,
    Open,
    Unit(Lit),
    Conflict,
}

pub fn clause_status(c: &Clause, a: &Assignment, prefix: &Prefix, r: PropagationPolicy) -> ClauseStatus {
    let mut free = 0usize;
    let mut exist: Option<Lit> = None;
    let mut n_exist = 0usize;
    let mut min_univ = u32::MAX;
    for o in c.occs() {
        match (a.value(o.var), o.phase) {
            (Some(_), Phase::Merged) | (Some(true), Phase::Pos) | (Some(false), Phase::Neg) => return ClauseStatus::Satisfied,
            (Some(_), _) => {}
            (None, phase) => {
                free += 1;
                if prefix.is_existential(o.var) {
                    n_exist += 1;
                    exist = Some(Lit::new(o.var, phase == Phase::Pos));
                } else {
                    min_univ = min_univ.min(prefix.level(o.var));
                }
            }
        }
    }
    match r {
        PropagationPolicy::NoRed => match (free, exist) {
            (0, _) => ClauseStatus::Conflict,
            (1, Some(x)) => ClauseStatus::Unit(x),
            _ => ClauseStatus::Open,
        },
        PropagationPolicy::Red => match (n_exist, exist) {
            (0, _) => ClauseStatus::Conflict,
            (1, Some(x)) if min_univ > prefix.level(x.var()) => ClauseStatus::Unit(x),
            _ => ClauseStatus::Open,
        },
    }
}

/// All clauses that are unit or falsified under the current trail.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UnitScan {
    /// `(clause, forced literal)`; `None` stands for `⊥`.
    pub units: Vec<(ClauseId, Option<Lit>)>,
    pub conflict_present: bool,
}

pub fn unit_scan(f: &Qcnf, trail: &Trail) -> UnitScan {
    let mut scan = UnitScan::default();
    for (id, c) in f.clauses().iter().enumerate() {
        match clause_status(c, trail.assignment(), &f.prefix, trail.propagation) {
            ClauseStatus::Unit(l) => scan.units.push((id, Some(l))),
            ClauseStatus::Conflict => {
                scan.units.push((id, None));
                scan.conflict_present = true;
            }
            _ => {}
        }
    }
    scan
}

/// The next element a natural trail must take: the lowest falsified clause if
/// any, otherwise the lowest unit clause. Entries of `prefer` that are
/// currently available take precedence over that choice, except that a
/// preferred literal never displaces a conflict.
pub fn first_forced(f: &Qcnf, trail: &Trail, prefer: &[(ClauseId, Option<Lit>)]) -> Option<(ClauseId, Option<Lit>)> {
    if trail.is_conflicting() {
        return None;
    }
    let (a, p, r) = (trail.assignment(), &f.prefix, trail.propagation);
    if !prefer.is_empty() {
        let scan = unit_scan(f, trail);
        let pick = |want_conflict: bool| prefer.iter().find(|x| x.1.is_none() == want_conflict && scan.units.contains(x)).copied();
        if scan.conflict_present {
            return pick(true).or_else(|| scan.units.iter().find(|u| u.1.is_none()).copied());
        }
        return pick(false).or_else(|| scan.units.first().copied());
    }
    let mut unit = None;
    for (id, c) in f.clauses().iter().enumerate() {
        match clause_status(c, a, p, r) {
            ClauseStatus::Conflict => return Some((id, None)),
            ClauseStatus::Unit(l) if unit.is_none() => unit = Some((id, Some(l))),
            _ => {}
        }
    }
    unit
}

/// Extends the trail naturally until no clause is unit or a conflict is hit.
/// Returns true if the trail ends in `⊥`.
pub fn propagate(f: &Qcnf, trail: &mut Trail, prefer: &[(ClauseId, Option<Lit>)]) -> bool {
    while let Some((id, lit)) = first_forced(f, trail, prefer) {
        trail.push_forced(lit, id);
    }
    trail.is_conflicting()
}

/// Minimal quantifier level among unassigned prefix variables.
fn min_free_level(prefix: &Prefix, trail: &Trail) -> Option<u32> {
    prefix.vars().filter(|&v| trail.value(v).is_none()).map(|v| prefix.level(v)).min()
}

fn max_decision_level(prefix: &Prefix, trail: &Trail) -> u32 {
    trail.decisions().map(|d| prefix.level(d.var())).max().unwrap_or(0)
}

fn universals_decided_below(prefix: &Prefix, trail: &Trail, level: u32) -> bool {
    prefix.vars().filter(|&v| prefix.is_universal(v) && prefix.level(v) < level).all(|v| trail.value(v).is_some())
}

/// Why `lit` may not be decided next, if it may not.
pub fn check_decision(prefix: &Prefix, trail: &Trail, lit: Lit) -> Result<(), TrailError> {
    let v = lit.var();
    let err = |why: String| TrailError::IllegalDecision { lit, policy: trail.decision, why };
    if !prefix.is_bound(v) {
        return Err(err(format!("variable {v} is not in the prefix")));
    }
    if trail.value(v).is_some() {
        return Err(err(format!("variable {v} is already assigned")));
    }
    let lv = prefix.level(v);
    match trail.decision {
        DecisionPolicy::LevOrd => {
            let min = min_free_level(prefix, trail).unwrap_or(lv);
            if lv > min {
                return Err(err(format!("level {lv} exceeds the lowest unassigned level {min}")));
            }
        }
        DecisionPolicy::AssOrd => {
            let max = max_decision_level(prefix, trail);
            if prefix.is_universal(v) && lv < max {
                return Err(err(format!("universal of level {lv} after a decision of level {max}")));
            }
        }
        DecisionPolicy::AssROrd => {
            if prefix.is_existential(v) && !universals_decided_below(prefix, trail, lv) {
                return Err(err(format!("undecided universal variables left of level {lv}")));
            }
        }
        DecisionPolicy::AnyOrd => {}
    }
    Ok(())
}

/// Literals the policy allows as next decision, ordered by variable id with
/// the positive literal first.
pub fn legal_decisions(prefix: &Prefix, trail: &Trail) -> Vec<Lit> {
    let mut vars: Vec<Var> = prefix.vars().filter(|&v| trail.value(v).is_none()).collect();
    vars.sort_unstable();
    let min = min_free_level(prefix, trail);
    let max = max_decision_level(prefix, trail);
    vars.retain(|&v| {
        let lv = prefix.level(v);
        match trail.decision {
            DecisionPolicy::LevOrd => Some(lv) == min,
            DecisionPolicy::AssOrd => prefix.is_existential(v) || lv >= max,
            DecisionPolicy::AssROrd => prefix.is_universal(v) || universals_decided_below(prefix, trail, lv),
            DecisionPolicy::AnyOrd => true,
        }
    });
    vars.into_iter().flat_map(|v| [Lit::pos(v), Lit::neg(v)]).collect()
}

/// A violated trail condition found by [`check_trail`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("element {index}: {why}")]
pub struct TrailViolation {
    pub index: usize,
    pub why: String,
}

/// Re-derives every condition of `trail` against `f`: non-repetition, policy
/// conditions on decisions, antecedent conditions on propagations and `⊥`,
/// and naturality for all elements at positions `>= natural_from`.
pub fn check_trail(f: &Qcnf, trail: &Trail, natural_from: usize) -> Result<(), TrailViolation> {
    let prefix = &f.prefix;
    let mut t = Trail::new(trail.decision, trail.propagation);
    let elems: Vec<(Option<Lit>, Reason)> =
        trail.entries().iter().map(|e| (Some(e.lit), e.reason)).chain(trail.conflict().map(|c| (None, Reason::Propagated(c)))).collect();
    for (index, (lit, reason)) in elems.into_iter().enumerate() {
        let bad = |why: String| TrailViolation { index, why };
        let expected = if index >= natural_from { first_forced(f, &t, &[]) } else { None };
        match reason {
            Reason::Decision => {
                let lit = lit.expect("decisions carry literals");
                if let Some((id, _)) = expected {
                    return Err(bad(format!("decision {lit} skips pending clause {id}")));
                }
                check_decision(prefix, &t, lit).map_err(|e| bad(e.to_string()))?;
                t.push_decision(lit);
            }
            Reason::Propagated(id) => {
                if id >= f.len() {
                    return Err(bad(format!("antecedent {id} does not exist")));
                }
                if let Some(l) = lit {
                    if t.value(l.var()).is_some() {
                        return Err(bad(format!("variable {} repeats", l.var())));
                    }
                    if !prefix.is_existential(l.var()) {
                        return Err(bad(format!("propagated literal {l} is universal")));
                    }
                }
                let status = clause_status(f.clause(id), t.assignment(), prefix, t.propagation);
                let certified = match lit {
                    Some(l) => status == ClauseStatus::Unit(l),
                    None => status == ClauseStatus::Conflict,
                };
                if !certified {
                    return Err(bad(format!("clause {id} does not force {lit:?} ({status:?})")));
                }
                if let Some((_, None)) = expected {
                    if lit.is_some() {
                        return Err(bad("a falsified clause takes priority".into()));
                    }
                }
                t.push_forced(lit, id);
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qbf::Quant::{Exists as E, Forall as A};

    /// ∃x ∀u ∃y,z · (x∨u∨y)(¬y)(¬x∨z)(¬x∨¬z) with x=1 u=2 y=3 z=4.
    fn example() -> Qcnf {
        let p = Prefix::new([(E, vec![1]), (A, vec![2]), (E, vec![3, 4])]).unwrap();
        let cs = [&[1, 2, 3][..], &[-3], &[-1, 4], &[-1, -4]].iter().map(|c| Clause::from_dimacs(c)).collect();
        Qcnf::new(p, cs).unwrap()
    }

    #[test]
    fn red_propagates_through_reduction() {
        let f = example();
        let mut t = Trail::new(DecisionPolicy::LevOrd, PropagationPolicy::Red);
        assert_eq!(unit_scan(&f, &t).units, vec![(1, Some(Lit::neg(3)))]);
        assert!(propagate(&f, &mut t, &[]));
        assert_eq!(format!("{t:?}"), "(-3, 1, 4, ⊥)");
        assert_eq!(t.conflict(), Some(3));
        assert_eq!(t.end_time(), Time::new(0, 4));
    }

    #[test]
    fn no_red_needs_a_decision() {
        let f = example();
        let mut t = Trail::new(DecisionPolicy::LevOrd, PropagationPolicy::NoRed);
        assert!(!propagate(&f, &mut t, &[]));
        assert_eq!(format!("{t:?}"), "(-3)");
        assert!(unit_scan(&f, &t).units.is_empty());
        t.decide(&f, Lit::pos(1)).unwrap();
        assert!(propagate(&f, &mut t, &[]));
        assert_eq!(format!("{t:?}"), "(-3; 1, 4, ⊥)");
        assert_eq!(t.dump(), "P -3 1\nD 1\nP 4 2\nK 0 3\n");
        assert_eq!(t.level_props(0), Some(1));
        assert_eq!(t.level_props(1), Some(2));
        assert_eq!(t.prefix_len(Time::new(1, 0)), Some(2));
        assert_eq!(t.time_of_len(2), Time::new(1, 0));
        check_trail(&f, &t, 0).unwrap();
    }

    #[test]
    fn universal_singleton_is_unit_only_under_red() {
        let p = Prefix::new([(E, vec![1]), (A, vec![2])]).unwrap();
        let c = Clause::from_dimacs(&[1, 2]);
        let a = Assignment::from_lits([Lit::neg(1)]).unwrap();
        assert_eq!(clause_status(&c, &a, &p, PropagationPolicy::NoRed), ClauseStatus::Open);
        assert_eq!(clause_status(&c, &a, &p, PropagationPolicy::Red), ClauseStatus::Conflict);
    }

    #[test]
    fn backtracking() {
        let f = example();
        let mut t = Trail::new(DecisionPolicy::LevOrd, PropagationPolicy::NoRed);
        propagate(&f, &mut t, &[]);
        t.decide(&f, Lit::pos(1)).unwrap();
        propagate(&f, &mut t, &[]);
        let full = t.clone();
        t.backtrack(full.end_time()).unwrap();
        assert_eq!(t, full);
        t.backtrack(Time::new(0, 1)).unwrap();
        assert_eq!(format!("{t:?}"), "(-3)");
        assert!(t.value(1).is_none());
        assert_eq!(t.backtrack(Time::new(0, 2)), Err(TrailError::InvalidTime(Time::new(0, 2))));
        t.backtrack(Time::ZERO).unwrap();
        assert!(t.is_empty());
    }

    #[test]
    fn decision_policies() {
        let f = example();
        let mut t = Trail::new(DecisionPolicy::LevOrd, PropagationPolicy::NoRed);
        propagate(&f, &mut t, &[]);
        assert!(matches!(t.decide(&f, Lit::pos(4)), Err(TrailError::IllegalDecision { .. })));
        assert_eq!(legal_decisions(&f.prefix, &t), vec![Lit::pos(1), Lit::neg(1)]);
        t.decision = DecisionPolicy::AnyOrd;
        assert_eq!(legal_decisions(&f.prefix, &t).len(), 6);
        t.decision = DecisionPolicy::AssROrd;
        // z sits right of the undecided universal u
        assert_eq!(legal_decisions(&f.prefix, &t), vec![Lit::pos(1), Lit::neg(1), Lit::pos(2), Lit::neg(2)]);
        t.decision = DecisionPolicy::AssOrd;
        t.push_decision(Lit::pos(4));
        assert!(check_decision(&f.prefix, &t, Lit::pos(2)).is_err());
        assert!(check_decision(&f.prefix, &t, Lit::pos(1)).is_ok());
    }

    #[test]
    fn pending_units_block_decisions() {
        let f = example();
        let mut t = Trail::new(DecisionPolicy::LevOrd, PropagationPolicy::NoRed);
        assert_eq!(t.decide(&f, Lit::pos(1)), Err(TrailError::PendingPropagation(1)));
    }

    #[test]
    fn validator_flags_skipped_units() {
        let f = example();
        let mut t = Trail::new(DecisionPolicy::LevOrd, PropagationPolicy::NoRed);
        t.push_decision(Lit::pos(1));
        assert!(check_trail(&f, &t, 0).is_err());
        assert!(check_trail(&f, &t, 1).is_ok());
    }
}
