//! Generators. Variable numbering per family:
//!
//! * QParity(n), n ≥ 2: `x_i = i`, `z = n+1`, `t_i = n+i` for `i = 2..n`.
//! * PHP(n holes, m pigeons): `x_{i,j} = (i-1)·n + j`, pigeon `i`, hole `j`.
//! * Trapdoor(n), `s = n(n+1)`: `y_i = i`, `w = s+1`, `t = s+2`, `x_i = s+2+i`, `u = 2s+3`.
//! * Equality(n): `x_i = i`, `u_i = n+i`, `t_i = 2n+i`.
//! * Lonsing(n), `s = n(n+1)`: `a = 1`, `b = 2`, `b_i = 2+i`, `x = s+3`, `y = s+4`, `c = s+5`, `d = s+6`.
//! * Random Q(n,m,c): `x_i^(k) = (i-1)·n + k`, `u_i^(k) = n² + (i-1)·m + k`, `t_i = n² + n·m + i`.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::qbf::{Clause, Lit, Prefix, Qcnf, Quant, Var};

#[derive(Copy, Clone, Debug, PartialEq)]
pub enum Family {
    QParity,
    Php { pigeons: usize },
    Trapdoor,
    Equality,
    Lonsing,
    Random { m: usize, c: f64, seed: u64 },
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct FamilySpec {
    pub family: Family,
    pub n: usize,
}

impl FamilySpec {
    pub fn new(family: Family, n: usize) -> FamilySpec {
        FamilySpec { family, n }
    }

    pub fn name(&self) -> &'static str {
        match self.family {
            Family::QParity => "qparity",
            Family::Php { .. } => "php",
            Family::Trapdoor => "trapdoor",
            Family::Equality => "equality",
            Family::Lonsing => "lonsing",
            Family::Random { .. } => "random",
        }
    }

    /// Extra parameters beyond `n`, rendered for logs and CSV.
    pub fn params(&self) -> String {
        match self.family {
            Family::Php { pigeons } => format!("m={pigeons}"),
            Family::Random { m, c, seed } => format!("m={m};c={c};seed={seed}"),
            _ => String::new(),
        }
    }

    /// One-line description of the variable numbering.
    pub fn numbering(&self) -> String {
        let n = self.n;
        let s = n * (n + 1);
        match self.family {
            Family::QParity => format!("qparity n={n}: x_i=i, z={}, t_i={n}+i (i=2..{n})", n + 1),
            Family::Php { pigeons } => format!("php holes={n} pigeons={pigeons}: x_(i,j)=(i-1)*{n}+j"),
            Family::Trapdoor => format!("trapdoor n={n}: y_i=i (i=1..{s}), w={}, t={}, x_i={}+i, u={}", s + 1, s + 2, s + 2, 2 * s + 3),
            Family::Equality => format!("equality n={n}: x_i=i, u_i={n}+i, t_i={}+i", 2 * n),
            Family::Lonsing => format!("lonsing n={n}: a=1, b=2, b_i=2+i (i=1..{s}), x={}, y={}, c={}, d={}", s + 3, s + 4, s + 5, s + 6),
            Family::Random { m, c, seed } => {
                format!("random n={n} m={m} c={c} seed={seed}: x_i^k=(i-1)*{n}+k, u_i^k={}+(i-1)*{m}+k, t_i={}+i", n * n, n * n + n * m)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("invalid family parameters: {0}")]
pub struct FamilyError(pub String);

fn cl(lits: &[i64]) -> Clause {
    Clause::from_dimacs(lits)
}

fn qcnf(blocks: Vec<(Quant, Vec<Var>)>, clauses: Vec<Clause>) -> Qcnf {
    Qcnf::new(Prefix::new(blocks).expect("generated prefix"), clauses).expect("generated matrix")
}

fn range(from: usize, to: usize) -> Vec<Var> {
    (from..=to).map(|v| v as Var).collect()
}

/// Pigeonhole clauses over `x_{i,j} = offset + (i-1)·holes + j`.
fn php_clauses(holes: usize, pigeons: usize, offset: usize) -> Vec<Clause> {
    let x = |i: usize, j: usize| (offset + (i - 1) * holes + j) as i64;
    let mut out = Vec::new();
    for i in 1..=pigeons {
        out.push(cl(&(1..=holes).map(|j| x(i, j)).collect::<Vec<_>>()));
    }
    for j in 1..=holes {
        for i1 in 1..=pigeons {
            for i2 in i1 + 1..=pigeons {
                out.push(cl(&[-x(i1, j), -x(i2, j)]));
            }
        }
    }
    out
}

pub fn generate(spec: &FamilySpec) -> Result<Qcnf, FamilyError> {
    let n = spec.n;
    let err = |m: &str| Err(FamilyError(m.to_string()));
    if n == 0 {
        return err("n must be at least 1");
    }
    use Quant::{Exists as E, Forall as A};
    Ok(match spec.family {
        Family::QParity => {
            if n < 2 {
                return err("qparity needs n >= 2");
            }
            let (ni, z) = (n as i64, n as i64 + 1);
            let t = |i: i64| ni + i;
            let mut cs = vec![cl(&[1, 2, -t(2)]), cl(&[1, -2, t(2)]), cl(&[-1, 2, t(2)]), cl(&[-1, -2, -t(2)])];
            for i in 3..=ni {
                cs.push(cl(&[i, t(i - 1), -t(i)]));
                cs.push(cl(&[i, -t(i - 1), t(i)]));
                cs.push(cl(&[-i, t(i - 1), t(i)]));
                cs.push(cl(&[-i, -t(i - 1), -t(i)]));
            }
            cs.push(cl(&[t(ni), z]));
            cs.push(cl(&[-t(ni), -z]));
            qcnf(vec![(E, range(1, n)), (A, vec![z as Var]), (E, range(n + 2, 2 * n))], cs)
        }
        Family::Php { pigeons } => {
            if pigeons == 0 {
                return err("php needs at least one pigeon");
            }
            qcnf(vec![(E, range(1, n * pigeons))], php_clauses(n, pigeons, 0))
        }
        Family::Trapdoor => {
            let s = n * (n + 1);
            let (w, t, u) = ((s + 1) as i64, (s + 2) as i64, (2 * s + 3) as i64);
            let mut cs = php_clauses(n, n + 1, s + 2);
            for i in 1..=s as i64 {
                let (y, x) = (i, s as i64 + 2 + i);
                cs.push(cl(&[-y, x, u]));
                cs.push(cl(&[y, -x, u]));
                cs.push(cl(&[y, w, t]));
                cs.push(cl(&[y, w, -t]));
                cs.push(cl(&[-y, w, t]));
                cs.push(cl(&[-y, w, -t]));
            }
            qcnf(vec![(E, range(1, s)), (A, vec![w as Var]), (E, range(s + 2, 2 * s + 2)), (A, vec![u as Var])], cs)
        }
        Family::Equality => {
            let ni = n as i64;
            let mut cs = vec![cl(&(1..=ni).map(|i| -(2 * ni + i)).collect::<Vec<_>>())];
            for i in 1..=ni {
                let (x, u, t) = (i, ni + i, 2 * ni + i);
                cs.push(cl(&[-x, -u, t]));
                cs.push(cl(&[x, u, t]));
            }
            qcnf(vec![(E, range(1, n)), (A, range(n + 1, 2 * n)), (E, range(2 * n + 1, 3 * n))], cs)
        }
        Family::Lonsing => {
            let s = n * (n + 1);
            let (a, b) = (1i64, 2i64);
            let (x, y, c, d) = ((s + 3) as i64, (s + 4) as i64, (s + 5) as i64, (s + 6) as i64);
            let mut big = vec![a, b];
            big.extend((1..=s as i64).map(|i| 2 + i));
            let mut cs = vec![cl(&[a, x, c]), cl(&big), cl(&[b, y, d]), cl(&[x, c]), cl(&[x, -c])];
            cs.extend(php_clauses(n, n + 1, 2));
            qcnf(vec![(E, range(1, s + 2)), (A, vec![x as Var, y as Var]), (E, vec![c as Var, d as Var])], cs)
        }
        Family::Random { m, c, seed } => {
            if m == 0 || n < 2 || c.is_nan() || c <= 0.0 {
                return err("random needs n >= 2, m >= 1 and c > 0");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let per_block = ((c * n as f64).floor() as usize).max(1);
            let xv = |i: usize, k: usize| ((i - 1) * n + k) as Var;
            let uv = |i: usize, k: usize| (n * n + (i - 1) * m + k) as Var;
            let tv = |i: usize| (n * n + n * m + i) as Var;
            let mut cs = vec![cl(&(1..=n).map(|i| tv(i) as i64).collect::<Vec<_>>())];
            for i in 1..=n {
                for _ in 0..per_block {
                    let u = uv(i, rng.gen_range(1..=m));
                    let xs = sample(&mut rng, n, 2);
                    let mut lits = vec![Lit::neg(tv(i)), Lit::new(u, rng.gen())];
                    for k in xs.iter() {
                        lits.push(Lit::new(xv(i, k + 1), rng.gen()));
                    }
                    cs.push(Clause::from_lits(lits));
                }
            }
            qcnf(vec![(E, range(1, n * n)), (A, range(n * n + 1, n * n + n * m)), (E, range(n * n + n * m + 1, n * n + n * m + n))], cs)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clauses(f: &Qcnf) -> Vec<Clause> {
        f.clauses().to_vec()
    }

    #[test]
    fn equality_one() {
        let f = generate(&FamilySpec::new(Family::Equality, 1)).unwrap();
        assert_eq!(clauses(&f), vec![cl(&[-3]), cl(&[-1, -2, 3]), cl(&[1, 2, 3])]);
        assert_eq!(f.prefix.num_levels(), 3);
    }

    #[test]
    fn qparity_two() {
        // x1=1 x2=2 z=3 t2=4
        let f = generate(&FamilySpec::new(Family::QParity, 2)).unwrap();
        assert_eq!(clauses(&f), vec![cl(&[1, 2, -4]), cl(&[1, -2, 4]), cl(&[-1, 2, 4]), cl(&[-1, -2, -4]), cl(&[4, 3]), cl(&[-4, -3])]);
        assert_eq!(f.prefix.level(3), 2);
        assert_eq!(f.prefix.level(4), 3);
    }

    #[test]
    fn php_smallest() {
        let f = generate(&FamilySpec::new(Family::Php { pigeons: 2 }, 1)).unwrap();
        assert_eq!(clauses(&f), vec![cl(&[1]), cl(&[2]), cl(&[-1, -2])]);
    }

    #[test]
    fn trapdoor_contains_php() {
        let n = 2;
        let s = n * (n + 1);
        let f = generate(&FamilySpec::new(Family::Trapdoor, n)).unwrap();
        let php = php_clauses(n, n + 1, s + 2);
        assert_eq!(&f.clauses()[..php.len()], &php[..]);
        assert_eq!(f.len(), php.len() + 6 * s);
        assert_eq!(f.prefix.num_levels(), 4);
    }

    #[test]
    fn random_is_seeded() {
        let spec = FamilySpec::new(Family::Random { m: 2, c: 1.5, seed: 7 }, 3);
        let a = generate(&spec).unwrap();
        assert_eq!(a, generate(&spec).unwrap());
        assert_eq!(a.len(), 1 + 3 * 4);
        for c in &a.clauses()[1..] {
            assert_eq!(c.len(), 4);
        }
    }
}
