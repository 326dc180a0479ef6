//! Replay scripts.
//!
//! ```text
//! round
//! d -1 -2 -3
//! ante 5 12
//! learn asserting
//! back 1 1
//! ```
//!
//! `d` lists decisions (several `d` lines concatenate). `ante <lit> <clause>`
//! asks for `clause` as the antecedent of `lit` (`0` for the conflict) when
//! several clauses are unit. `learn` takes `asserting`, `dec`, a 0-based index
//! into the learnable sequence, or `clause <lits> 0`. `back` takes a time
//! `<s> <t>`, `restart`, or `asserting`.

use std::fmt::Write as _;

use crate::learn::Scheme;
use crate::qbf::{Clause, ClauseId, Lit};
use crate::trail::Time;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LearnChoice {
    Scheme(Scheme),
    Clause(Clause),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum BackChoice {
    Time(Time),
    Restart,
    Asserting,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptRound {
    pub decisions: Vec<Lit>,
    /// Preferred antecedents; `None` is the conflict.
    pub antecedents: Vec<(Option<Lit>, ClauseId)>,
    pub learn: LearnChoice,
    pub back: BackChoice,
}

impl ScriptRound {
    pub fn new(decisions: Vec<Lit>, learn: LearnChoice, back: BackChoice) -> ScriptRound {
        ScriptRound { decisions, antecedents: Vec::new(), learn, back }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReplayScript {
    pub rounds: Vec<ScriptRound>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("script line {line}: {msg}")]
pub struct ScriptParseError {
    pub line: usize,
    pub msg: String,
}

impl ReplayScript {
    pub fn parse(text: &str) -> Result<ReplayScript, ScriptParseError> {
        let mut rounds = Vec::new();
        type Partial = (Vec<Lit>, Vec<(Option<Lit>, ClauseId)>, Option<LearnChoice>, Option<BackChoice>);
        let mut cur: Option<Partial> = None;
        let mut close = |cur: &mut Option<Partial>, line: usize| -> Result<(), ScriptParseError> {
            if let Some((decisions, antecedents, learn, back)) = cur.take() {
                let err = |m: &str| ScriptParseError { line, msg: m.into() };
                rounds.push(ScriptRound {
                    decisions,
                    antecedents,
                    learn: learn.ok_or_else(|| err("round without `learn`"))?,
                    back: back.ok_or_else(|| err("round without `back`"))?,
                });
            }
            Ok(())
        };
        let mut last = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            last = line;
            let err = |m: &str| ScriptParseError { line, msg: m.into() };
            let toks: Vec<&str> = raw.split('#').next().unwrap().split_whitespace().collect();
            let Some(&head) = toks.first() else { continue };
            let ints = |ts: &[&str]| -> Result<Vec<i64>, ScriptParseError> {
                ts.iter().map(|t| t.parse::<i64>().map_err(|_| err(&format!("bad number `{t}`")))).collect()
            };
            if head == "round" {
                close(&mut cur, line)?;
                cur = Some((Vec::new(), Vec::new(), None, None));
                continue;
            }
            let r = cur.as_mut().ok_or_else(|| err("expected `round`"))?;
            match head {
                "d" => {
                    for d in ints(&toks[1..])? {
                        r.0.push(Lit::from_dimacs(d).ok_or_else(|| err("bad literal"))?);
                    }
                }
                "ante" => match ints(&toks[1..])?.as_slice() {
                    [l, c] if *c >= 0 => r.1.push((Lit::from_dimacs(*l), *c as ClauseId)),
                    _ => return Err(err("expected `ante <lit> <clause>`")),
                },
                "learn" => {
                    let choice = match toks.get(1).copied() {
                        Some("asserting") => LearnChoice::Scheme(Scheme::Asserting),
                        Some("dec") => LearnChoice::Scheme(Scheme::Dec),
                        Some("clause") => {
                            let v = ints(&toks[2..])?;
                            if v.last() != Some(&0) || v[..v.len() - 1].contains(&0) {
                                return Err(err("clause must end with a single 0"));
                            }
                            LearnChoice::Clause(Clause::from_dimacs(&v[..v.len() - 1]))
                        }
                        Some(k) => LearnChoice::Scheme(Scheme::Index(k.parse().map_err(|_| err("bad learn choice"))?)),
                        None => return Err(err("missing learn choice")),
                    };
                    r.2 = Some(choice);
                }
                "back" => {
                    let b = match &toks[1..] {
                        ["restart"] => BackChoice::Restart,
                        ["asserting"] => BackChoice::Asserting,
                        [s, t] => {
                            let v = ints(&[s, t])?;
                            if v.iter().any(|&x| x < 0) {
                                return Err(err("negative time"));
                            }
                            BackChoice::Time(Time::new(v[0] as usize, v[1] as usize))
                        }
                        _ => return Err(err("expected `back <s> <t>`, `back restart` or `back asserting`")),
                    };
                    r.3 = Some(b);
                }
                _ => return Err(err(&format!("unknown directive `{head}`"))),
            }
        }
        close(&mut cur, last)?;
        Ok(ReplayScript { rounds })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.rounds {
            s.push_str("round\n");
            if !r.decisions.is_empty() {
                s.push('d');
                for d in &r.decisions {
                    let _ = write!(s, " {d}");
                }
                s.push('\n');
            }
            for (l, c) in &r.antecedents {
                let _ = writeln!(s, "ante {} {}", l.map(|l| l.to_dimacs()).unwrap_or(0), c);
            }
            let _ = match &r.learn {
                LearnChoice::Scheme(Scheme::Index(k)) => writeln!(s, "learn {k}"),
                LearnChoice::Scheme(sch) => writeln!(s, "learn {sch}"),
                LearnChoice::Clause(c) => writeln!(s, "learn clause {}", c.to_dimacs()),
            };
            let _ = match r.back {
                BackChoice::Time(t) => writeln!(s, "back {} {}", t.level, t.offset),
                BackChoice::Restart => writeln!(s, "back restart"),
                BackChoice::Asserting => writeln!(s, "back asserting"),
            };
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_roundtrip() {
        let text = "round\nd -1 -2\nante 0 3\nlearn clause 1 -2 0\nback 1 0\nround\nlearn 2\nback restart\nround\nlearn asserting\nback asserting\n";
        let s = ReplayScript::parse(text).unwrap();
        assert_eq!(s.rounds.len(), 3);
        assert_eq!(s.to_text(), text);
    }

    #[test]
    fn incomplete_round() {
        assert!(ReplayScript::parse("round\nd 1\n").is_err());
        assert!(ReplayScript::parse("d 1\n").is_err());
    }
}
