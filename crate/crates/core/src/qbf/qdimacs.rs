//! QDIMACS reading and writing.

use std::fmt::Write as _;

use super::clause::Clause;
use super::formula::Qcnf;
use super::lit::{Lit, Var};
use super::prefix::{Prefix, PrefixError, Quant};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: tautological clause")]
    TautologicalAxiom { line: usize },
    #[error("line {line}: variable {var} is not bound by the prefix")]
    UnboundVariable { line: usize, var: Var },
    #[error("line {line}: {source}")]
    Prefix { line: usize, source: PrefixError },
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, msg: msg.into() }
}

/// Parses QDIMACS text. Adjacent quantifier lines of the same kind are merged.
pub fn parse_qdimacs(text: &str) -> Result<Qcnf, ParseError> {
    let mut header = false;
    let mut blocks: Vec<(Quant, Vec<Var>)> = Vec::new();
    let mut clauses: Vec<(usize, Vec<Lit>)> = Vec::new();
    let mut pending: Option<(usize, Vec<Lit>)> = None;
    let mut last_line = 0;
    let mut bound = std::collections::HashSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let first = tokens.next().unwrap();
        if first == "p" {
            if header {
                return Err(syntax(line, "duplicate header"));
            }
            let rest: Vec<&str> = tokens.collect();
            if rest.len() != 3 || rest[0] != "cnf" || rest[1..].iter().any(|t| t.parse::<u64>().is_err()) {
                return Err(syntax(line, "expected `p cnf <vars> <clauses>`"));
            }
            header = true;
            continue;
        }
        if !header {
            return Err(syntax(line, "missing `p cnf` header"));
        }
        if first == "e" || first == "a" {
            if !clauses.is_empty() || pending.is_some() {
                return Err(syntax(line, "quantifier line after clauses"));
            }
            let quant = if first == "e" { Quant::Exists } else { Quant::Forall };
            let mut vars = Vec::new();
            let mut closed = false;
            for t in tokens {
                if closed {
                    return Err(syntax(line, "tokens after terminating 0"));
                }
                match t.parse::<u32>() {
                    Ok(0) => closed = true,
                    Ok(v) if v <= u32::MAX >> 1 => {
                        if !bound.insert(v) {
                            return Err(ParseError::Prefix { line, source: PrefixError::Rebound(v) });
                        }
                        vars.push(v)
                    }
                    _ => return Err(syntax(line, format!("bad variable `{t}`"))),
                }
            }
            if !closed {
                return Err(syntax(line, "quantifier line not terminated by 0"));
            }
            blocks.push((quant, vars));
            continue;
        }
        for t in std::iter::once(first).chain(tokens) {
            let d: i64 = t.parse().map_err(|_| syntax(line, format!("bad literal `{t}`")))?;
            let cur = pending.get_or_insert_with(|| (line, Vec::new()));
            if d == 0 {
                clauses.push(pending.take().unwrap());
            } else {
                let lit = Lit::from_dimacs(d).ok_or_else(|| syntax(line, format!("literal `{t}` out of range")))?;
                cur.1.push(lit);
            }
        }
    }
    if !header {
        return Err(syntax(last_line.max(1), "missing `p cnf` header"));
    }
    if let Some((line, _)) = pending {
        return Err(syntax(line, "clause not terminated by 0"));
    }

    let prefix = Prefix::new(blocks).map_err(|source| ParseError::Prefix { line: last_line, source })?;
    let mut matrix = Vec::with_capacity(clauses.len());
    for (line, lits) in clauses {
        if let Some(l) = lits.iter().find(|l| !prefix.is_bound(l.var())) {
            return Err(ParseError::UnboundVariable { line, var: l.var() });
        }
        let c = Clause::from_lits(lits);
        if c.has_merge() {
            return Err(ParseError::TautologicalAxiom { line });
        }
        matrix.push(c);
    }
    Ok(Qcnf::new(prefix, matrix).expect("matrix checked above"))
}

/// Writes QDIMACS, preceded by `c`-prefixed comment lines.
pub fn write_qdimacs(f: &Qcnf, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "c {c}");
    }
    let max_var = f.prefix.max_var().max(f.clauses().iter().flat_map(|c| c.vars()).max().unwrap_or(0));
    let _ = writeln!(out, "p cnf {} {}", max_var, f.len());
    for b in f.prefix.blocks() {
        out.push(b.quant.symbol());
        for v in &b.vars {
            let _ = write!(out, " {v}");
        }
        out.push_str(" 0\n");
    }
    for c in f.clauses() {
        out.push_str(&c.to_dimacs());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_formula() {
        let f = parse_qdimacs("p cnf 3 2\ne 1 0\na 2 0\ne 3 0\n1 2 3 0\n-1 -3 0\n").unwrap();
        assert_eq!(f.prefix.num_levels(), 3);
        assert_eq!(f.len(), 2);
    }

    #[test]
    fn tautology_rejected() {
        let e = parse_qdimacs("p cnf 1 1\ne 1 0\n1 -1 0\n").unwrap_err();
        assert_eq!(e, ParseError::TautologicalAxiom { line: 3 });
    }

    #[test]
    fn same_quantifier_lines_merge() {
        let f = parse_qdimacs("p cnf 2 0\ne 1 0\ne 2 0\n").unwrap();
        assert_eq!(f.prefix.num_levels(), 1);
        assert_eq!(f.prefix.level(1), 1);
        assert_eq!(f.prefix.level(2), 1);
    }

    #[test]
    fn free_variable_rejected() {
        let e = parse_qdimacs("p cnf 2 1\ne 1 0\n1 2 0\n").unwrap_err();
        assert_eq!(e, ParseError::UnboundVariable { line: 3, var: 2 });
    }

    #[test]
    fn malformed_line_reports_position() {
        let e = parse_qdimacs("c hi\np cnf 2 1\ne 1 2 0\n1 x 0\n").unwrap_err();
        assert!(matches!(e, ParseError::Syntax { line: 4, .. }));
        let e = parse_qdimacs("e 1 0\n").unwrap_err();
        assert!(matches!(e, ParseError::Syntax { line: 1, .. }));
    }

    #[test]
    fn write_then_parse() {
        let text = "p cnf 4 2\ne 1 0\na 2 0\ne 3 4 0\n1 2 3 0\n-3 -4 0\n";
        let f = parse_qdimacs(text).unwrap();
        assert_eq!(write_qdimacs(&f, &[]), text);
    }
}
