//! Hand-built QCDCL runs and a short Q-resolution refutation for the
//! formula families, used as goldens.

use crate::families::{generate, Family, FamilySpec};
use crate::learn::Scheme;
use crate::proof::{Derivation, Rule};
use crate::qbf::{Clause, ClauseId, Lit, Qcnf, ResolutionMode, Var};
use crate::solver::{BackChoice, LearnChoice, ReplayScript, ScriptRound};
use crate::trail::{DecisionPolicy, PropagationPolicy, Time};

fn lits(ds: &[i64]) -> Vec<Lit> {
    ds.iter().map(|&d| Lit::from_dimacs(d).expect("non-zero literal")).collect()
}

fn learn(c: &[i64]) -> LearnChoice {
    LearnChoice::Clause(Clause::from_dimacs(c))
}

/// Time `(s,1)`, or `(s,0)` when level `s` holds only its decision.
fn after_first_prop(s: usize, level_has_props: bool) -> BackChoice {
    BackChoice::Time(Time::new(s, usize::from(level_has_props)))
}

/// QParity under LEV-ORD / RED: two trails per parity variable, learning
/// `x_j ∨ (¬)t_(j-1) ∨ z∨¬z` from the top down and finishing with the two
/// input variables. Needs `n ≥ 3`.
pub fn qparity_script(n: usize) -> ReplayScript {
    assert!(n >= 3, "qparity script needs n >= 3");
    let ni = n as i64;
    let z = ni + 1;
    let t = |i: i64| ni + i;
    let mut rounds = Vec::new();
    for j in (3..=ni).rev() {
        let back = after_first_prop((j - 2) as usize, j - 2 >= 2);
        let merged: &[i64] = if j == ni { &[] } else { &[z, -z] };
        let tn: Vec<i64> = if j == ni { (1..=ni).map(|i| -i).collect() } else { vec![-j] };
        let mut c = vec![j, t(j - 1)];
        let mut d = vec![j, -t(j - 1)];
        if j == ni {
            c.push(z);
            d.push(-z);
        }
        c.extend_from_slice(merged);
        d.extend_from_slice(merged);
        rounds.push(ScriptRound::new(lits(&tn), learn(&c), back));
        rounds.push(ScriptRound::new(lits(&[j - 1, -j]), learn(&d), back));
    }
    rounds.push(ScriptRound::new(lits(&[-2]), learn(&[1, 2]), BackChoice::Restart));
    rounds.push(ScriptRound::new(lits(&[-1]), learn(&[1]), BackChoice::Restart));
    rounds.push(ScriptRound::new(lits(&[-2]), learn(&[2]), BackChoice::Restart));
    rounds.push(ScriptRound::new(vec![], learn(&[]), BackChoice::Restart));
    ReplayScript { rounds }
}

/// Equality under ASS-R-ORD / RED: trails `T_i`, `U_i` for `i = n..1`,
/// restarting after each. Needs `n ≥ 2`.
pub fn equality_script(n: usize) -> ReplayScript {
    assert!(n >= 2, "equality script needs n >= 2");
    let ni = n as i64;
    let (x, u, t) = (|i: i64| i, |i: i64| ni + i, |i: i64| 2 * ni + i);
    let base = 1 + 2 * n;
    // ids of the two clauses over (x_i, u_i, t_i); `neg` picks ¬x∨¬u∨t
    let pos_id = |i: i64, neg: bool| -> ClauseId { 2 * (i as usize - 1) + if neg { 1 } else { 2 } };
    // learned L_i / R_i ids, learned in the order L_n, R_n, L_(n-1), …
    let learned_id = |i: i64, neg: bool| -> ClauseId { base + 2 * (n - i as usize) + usize::from(!neg) };
    let target = |i: i64, neg: bool| -> Vec<i64> {
        let s = if neg { -1 } else { 1 };
        let mut c = vec![s * x(i), s * u(i)];
        for j in i + 1..=ni {
            c.extend([u(j), -u(j)]);
        }
        c.extend((1..i).map(|k| -t(k)));
        c
    };
    let mut rounds = Vec::new();
    for i in (1..=ni).rev() {
        for neg in [true, false] {
            let s = if neg { 1 } else { -1 };
            let mut decisions: Vec<i64> = Vec::new();
            if !(i == 1 && !neg) {
                decisions.extend((1..=i).map(|k| s * x(k)));
            }
            let top = if i == ni { ni - 1 } else { i };
            decisions.extend((1..=top).map(|k| s * u(k)));
            let mut round = ScriptRound::new(lits(&decisions), LearnChoice::Scheme(Scheme::Dec), BackChoice::Restart);
            round.antecedents = (1..=top).map(|k| (Some(Lit::pos(t(k) as Var)), pos_id(k, neg))).collect();
            if i == ni {
                round.antecedents.push((Some(Lit::neg(t(ni) as Var)), 0));
                round.antecedents.push((None, pos_id(ni, neg)));
            } else {
                round.antecedents.push((Some(Lit::neg(x(i + 1) as Var)), learned_id(i + 1, true)));
                round.antecedents.push((None, learned_id(i + 1, false)));
            }
            round.learn = match (i, neg) {
                (1, true) => learn(&[-x(1)]),
                (1, false) => learn(&[]),
                _ => learn(&target(i, neg)),
            };
            rounds.push(round);
        }
    }
    ReplayScript { rounds }
}

/// Lonsing under ASS-R-ORD / RED: deciding `¬x` conflicts on the two
/// `x ∨ (¬)c` clauses and `(⊥)` is learned at once.
pub fn lonsing_script(n: usize) -> ReplayScript {
    let x = (n * (n + 1) + 3) as Var;
    let mut round = ScriptRound::new(vec![Lit::neg(x)], LearnChoice::Scheme(Scheme::Dec), BackChoice::Restart);
    round.antecedents = vec![(Some(Lit::pos(x + 2)), 3), (None, 4)];
    ReplayScript { rounds: vec![round] }
}

/// Trapdoor under LEV-ORD / NO-RED: `(¬y_1)` from the first trail, `(⊥)`
/// from the second, never touching the pigeonhole part.
pub fn trapdoor_script(n: usize) -> ReplayScript {
    let s = (n * (n + 1)) as i64;
    let w = s + 1;
    let mut first: Vec<i64> = (1..=s).collect();
    first.push(-w);
    let mut second: Vec<i64> = (2..=s).map(|i| -i).collect();
    second.push(-w);
    let dec = || LearnChoice::Scheme(Scheme::Dec);
    ReplayScript {
        rounds: vec![
            ScriptRound::new(lits(&first), dec(), BackChoice::Restart),
            ScriptRound::new(lits(&second), dec(), BackChoice::Restart),
        ],
    }
}

/// Constant-size Q-resolution refutation of Trapdoor: resolve away `t` on
/// both signs of `y_1`, reduce `w`, resolve on `y_1`.
pub fn trapdoor_qres_refutation(n: usize) -> Derivation {
    let s = (n * (n + 1)) as i64;
    let (w, t) = (s + 1, s + 2);
    let mut d = Derivation::new(ResolutionMode::Qres);
    let mut half = |y: i64| {
        let a = d.push(Rule::Axiom(Clause::from_dimacs(&[y, w, t])));
        let b = d.push(Rule::Axiom(Clause::from_dimacs(&[y, w, -t])));
        let r = d.push(Rule::Resolve { pivot: t as Var, left: a, right: b });
        d.push(Rule::Reduce { source: r })
    };
    let pos = half(1);
    let neg = half(-1);
    d.push(Rule::Resolve { pivot: 1, left: pos, right: neg });
    d
}

/// Which hand-built construction a golden replays.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Golden {
    QParity,
    Equality,
    Lonsing,
    Trapdoor,
    TrapdoorQres,
}

impl Golden {
    pub const ALL: [Golden; 5] = [Golden::QParity, Golden::Equality, Golden::Lonsing, Golden::Trapdoor, Golden::TrapdoorQres];

    pub fn name(self) -> &'static str {
        match self {
            Golden::QParity => "qparity",
            Golden::Equality => "equality",
            Golden::Lonsing => "lonsing",
            Golden::Trapdoor => "trapdoor",
            Golden::TrapdoorQres => "trapdoor-qres",
        }
    }

    pub fn family(self) -> Family {
        match self {
            Golden::QParity => Family::QParity,
            Golden::Equality => Family::Equality,
            Golden::Lonsing => Family::Lonsing,
            Golden::Trapdoor | Golden::TrapdoorQres => Family::Trapdoor,
        }
    }

    pub fn min_n(self) -> usize {
        match self {
            Golden::QParity => 3,
            _ => 2,
        }
    }

    pub fn policies(self) -> (DecisionPolicy, PropagationPolicy) {
        match self {
            Golden::QParity => (DecisionPolicy::LevOrd, PropagationPolicy::Red),
            Golden::Equality | Golden::Lonsing => (DecisionPolicy::AssROrd, PropagationPolicy::Red),
            Golden::Trapdoor | Golden::TrapdoorQres => (DecisionPolicy::LevOrd, PropagationPolicy::NoRed),
        }
    }

    pub fn formula(self, n: usize) -> Qcnf {
        generate(&FamilySpec::new(self.family(), n)).expect("golden parameters are valid")
    }

    /// Replay script, `None` for the Q-resolution golden.
    pub fn script(self, n: usize) -> Option<ReplayScript> {
        match self {
            Golden::QParity => Some(qparity_script(n)),
            Golden::Equality => Some(equality_script(n)),
            Golden::Lonsing => Some(lonsing_script(n)),
            Golden::Trapdoor => Some(trapdoor_script(n)),
            Golden::TrapdoorQres => None,
        }
    }
}
