use crate::qbf::{Assignment, Qcnf, Quant, Var};

pub const DEFAULT_EVAL_BOUND: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("formula has {vars} variables, evaluation bound is {bound}")]
pub struct TooLarge {
    pub vars: usize,
    pub bound: usize,
}

enum State {
    True,
    False,
    Open,
}

fn state(f: &Qcnf, a: &Assignment) -> State {
    let mut open = false;
    for c in f.clauses() {
        let mut sat = false;
        let mut free = false;
        for l in c.lits() {
            match a.lit_value(l) {
                Some(true) => {
                    sat = true;
                    break;
                }
                None => free = true,
                Some(false) => {}
            }
        }
        if !sat {
            if !free {
                return State::False;
            }
            open = true;
        }
    }
    if open {
        State::Open
    } else {
        State::True
    }
}

fn game(f: &Qcnf, order: &[(Var, Quant)], a: &mut Assignment) -> bool {
    match state(f, a) {
        State::True => return true,
        State::False => return false,
        State::Open => {}
    }
    let (&(v, q), rest) = order.split_first().expect("all variables assigned yet open clauses");
    let try_value = |b: bool, a: &mut Assignment| {
        a.set(crate::qbf::Lit::new(v, b));
        let r = game(f, rest, a);
        a.unset(v);
        r
    };
    match q {
        Quant::Exists => try_value(false, a) || try_value(true, a),
        Quant::Forall => try_value(false, a) && try_value(true, a),
    }
}

/// Truth value by exhaustive game-tree search along the prefix.
pub fn evaluate_semantics(f: &Qcnf, bound: usize) -> Result<bool, TooLarge> {
    let vars = f.prefix.num_vars();
    if vars > bound {
        return Err(TooLarge { vars, bound });
    }
    let order: Vec<(Var, Quant)> = f.prefix.vars().map(|v| (v, f.prefix.quant(v))).collect();
    Ok(game(f, &order, &mut Assignment::new()))
}
