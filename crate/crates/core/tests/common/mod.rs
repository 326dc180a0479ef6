//! Shared random instance generator for the integration tests.

#![allow(dead_code)]

use qcdcl::qbf::{Clause, Prefix, Qcnf, Quant};
use rand::seq::index::sample;
use rand::Rng;

/// Random prefix over `1..=vars` with alternating blocks.
pub fn random_prefix<R: Rng>(rng: &mut R, vars: u32) -> Prefix {
    let mut blocks = Vec::new();
    let mut q = if rng.gen() { Quant::Exists } else { Quant::Forall };
    let mut cur = Vec::new();
    for v in 1..=vars {
        cur.push(v);
        if rng.gen_bool(0.4) {
            blocks.push((q, std::mem::take(&mut cur)));
            q = if q == Quant::Exists { Quant::Forall } else { Quant::Exists };
        }
    }
    if !cur.is_empty() {
        blocks.push((q, cur));
    }
    Prefix::new(blocks).expect("fresh variables")
}

/// Random non-tautological clause of width `1..=max_width`.
pub fn random_clause<R: Rng>(rng: &mut R, vars: u32, max_width: usize) -> Clause {
    let w = rng.gen_range(1..=max_width.min(vars as usize));
    let lits: Vec<i64> = sample(rng, vars as usize, w)
        .iter()
        .map(|v| {
            let v = v as i64 + 1;
            if rng.gen() {
                v
            } else {
                -v
            }
        })
        .collect();
    Clause::from_dimacs(&lits)
}

/// Random QCNF with `min_vars..=max_vars` variables and up to `max_clauses` clauses of width ≤ 3.
pub fn random_qcnf<R: Rng>(rng: &mut R, min_vars: u32, max_vars: u32, max_clauses: usize) -> Qcnf {
    let vars = rng.gen_range(min_vars..=max_vars);
    let prefix = random_prefix(rng, vars);
    let m = rng.gen_range(1..=max_clauses);
    let clauses = (0..m).map(|_| random_clause(rng, vars, 3)).collect();
    Qcnf::new(prefix, clauses).expect("clauses use bound variables")
}
