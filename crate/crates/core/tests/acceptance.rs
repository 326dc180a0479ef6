//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Runs without the libtest harness so the report is always shown.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use qcdcl::families::{evaluate_semantics, generate, xt_check, Family, FamilySpec, DEFAULT_EVAL_BOUND};
use qcdcl::harness::{certify, run_golden, run_plan, trapdoor_qres_refutation, write_csv, ExperimentPlan, Golden};
use qcdcl::learn::{learnable_sequence, Scheme};
use qcdcl::proof::{check_derivation, glue_qcdcl_proof, serialize_proof, Derivation, QcdclProof, Rule, Verdict};
use qcdcl::qbf::{Clause, Lit, Prefix, Qcnf, Quant, ResolutionMode};
use qcdcl::sim::{simulate_refutation, simulate_refutation_with_stats};
use qcdcl::solver::{solve, Heuristic, SolverConfig};
use qcdcl::trail::{propagate, DecisionPolicy, PropagationPolicy, Trail, POLICY_PAIRS};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `|ι| ≤ K₁·n²` for the QParity replay (measured maximum 4).
const K1: f64 = 8.0;
/// `|ι| ≤ K₂·n²` for the Equality replay (measured maximum 5.5, at n = 2).
const K2: f64 = 11.0;
/// `|ι| ≤ K₃·n³·|π|` for simulated refutations (measured maximum 0.075).
const K3: f64 = 0.15;
/// make_unreliable rounds `≤ K₄·n²` (measured maximum 0.25).
const K4: f64 = 0.5;

type Outcome = Result<String, String>;

static CERTIFIED: AtomicUsize = AtomicUsize::new(0);
static VIOLATIONS: Mutex<Vec<String>> = Mutex::new(Vec::new());

/// Post-condition on every refutation the suite produces: the rounds
/// validate, and the glued derivation is valid in the mode matching the
/// propagation policy (merge-free under NO-RED).
fn post(proof: &QcdclProof, ctx: &str) -> Result<Derivation, String> {
    match certify(proof) {
        Ok(d) => {
            CERTIFIED.fetch_add(1, Ordering::Relaxed);
            Ok(d)
        }
        Err(e) => {
            let msg = format!("{ctx}: {e}");
            VIOLATIONS.lock().unwrap().push(msg.clone());
            Err(msg)
        }
    }
}

fn config(p: DecisionPolicy, r: PropagationPolicy, h: Heuristic, seed: u64) -> SolverConfig {
    let mut cfg = SolverConfig::new(p, r);
    cfg.heuristic = h;
    cfg.seed = seed;
    cfg
}

fn family(f: Family, n: usize) -> Qcnf {
    generate(&FamilySpec::new(f, n)).expect("valid family parameters")
}

/// Family members with at most 8 variables.
fn small_family_instances() -> Vec<(String, Qcnf)> {
    let mut specs = Vec::new();
    for n in 1..=4 {
        specs.extend([Family::QParity, Family::Equality, Family::Lonsing, Family::Trapdoor].map(|f| FamilySpec::new(f, n)));
        specs.push(FamilySpec::new(Family::Php { pigeons: n + 1 }, n));
    }
    for seed in 0..6 {
        for c in [0.5, 1.0] {
            specs.push(FamilySpec::new(Family::Random { m: 1, c, seed }, 2));
        }
    }
    specs
        .into_iter()
        .filter_map(|s| {
            let f = generate(&s).ok()?;
            (f.prefix.num_vars() <= 8).then(|| (format!("{} n={} {}", s.name(), s.n, s.params()), f))
        })
        .collect()
}

fn c1_oracle() -> Outcome {
    let mut instances = small_family_instances();
    let from_families = instances.len();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    instances.extend((0..500).map(|i| (format!("random #{i}"), common::random_qcnf(&mut rng, 1, 8, 12))));
    let (mut runs, mut refuted, mut false_formulas) = (0, 0, 0);
    for (i, (name, f)) in instances.iter().enumerate() {
        let truth = evaluate_semantics(f, DEFAULT_EVAL_BOUND).map_err(|e| e.to_string())?;
        false_formulas += usize::from(!truth);
        for (p, r) in POLICY_PAIRS {
            for h in [Heuristic::Lowest, Heuristic::Random] {
                let out = solve(f, &config(p, r, h, i as u64)).map_err(|e| format!("{name}: {e}"))?;
                runs += 1;
                match (out.is_refuted(), truth) {
                    (true, true) => return Err(format!("{name} {p}/{r} {h:?}: refuted a true formula")),
                    (false, false) => return Err(format!("{name} {p}/{r} {h:?}: {} on a false formula", out.name())),
                    (true, false) => {
                        post(out.proof(), name)?;
                        refuted += 1;
                    }
                    (false, true) => {}
                }
            }
        }
    }
    Ok(format!("{} instances ({from_families} from families), {false_formulas} false, {runs} runs, {refuted} refutations", instances.len()))
}

fn c2_structure() -> Outcome {
    // a dedicated sweep over the family members, then the suite-wide tally
    let mut sweep = 0;
    for (name, f) in small_family_instances() {
        for (p, r) in POLICY_PAIRS {
            let out = solve(&f, &config(p, r, Heuristic::Lowest, 0)).map_err(|e| e.to_string())?;
            if out.is_refuted() {
                let d = post(out.proof(), &name)?;
                if r == PropagationPolicy::NoRed && d.mode != ResolutionMode::Qres {
                    return Err(format!("{name} {p}/{r}: NO-RED proof glued in {} mode", d.mode));
                }
                sweep += 1;
            }
        }
    }
    let violations = VIOLATIONS.lock().unwrap();
    if let Some(v) = violations.first() {
        return Err(format!("{} violations, first: {v}", violations.len()));
    }
    Ok(format!("{sweep} sweep refutations, {} certified suite-wide, 0 violations", CERTIFIED.load(Ordering::Relaxed)))
}

fn c3_worked_example() -> Outcome {
    use Quant::{Exists as E, Forall as A};
    let p = Prefix::new([(E, vec![1]), (A, vec![2]), (E, vec![3, 4])]).unwrap();
    let cs = [&[1, 2, 3][..], &[-3], &[-1, 4], &[-1, -4]].iter().map(|c| Clause::from_dimacs(c)).collect();
    let f = Qcnf::new(p, cs).unwrap();
    let seq_of = |t: &Trail| -> Result<String, String> {
        let seq = learnable_sequence(t, &f).map_err(|e| e.to_string())?;
        Ok(seq.elements.iter().map(|e| e.clause.to_string()).collect::<Vec<_>>().join(", "))
    };
    let mut t = Trail::new(DecisionPolicy::LevOrd, PropagationPolicy::Red);
    propagate(&f, &mut t, &[]);
    let red = seq_of(&t)?;
    let mut u = Trail::new(DecisionPolicy::LevOrd, PropagationPolicy::NoRed);
    propagate(&f, &mut u, &[]);
    u.decide(&f, Lit::pos(1)).map_err(|e| e.to_string())?;
    propagate(&f, &mut u, &[]);
    let no_red = seq_of(&u)?;
    let want_red = "(-1 -4), (-1), (2 3), (⊥)";
    let want_no_red = "(-1 -4), (-1), (-1)";
    if (format!("{t:?}"), format!("{u:?}")) != ("(-3, 1, 4, ⊥)".into(), "(-3; 1, 4, ⊥)".into()) {
        return Err(format!("trails {t:?} / {u:?}"));
    }
    if red != want_red || no_red != want_no_red {
        return Err(format!("RED [{red}] NO-RED [{no_red}]"));
    }
    Ok(format!("RED [{red}], NO-RED [{no_red}]"))
}

fn scripted(golden: Golden, ns: std::ops::RangeInclusive<usize>, k: f64) -> Outcome {
    let mut worst: f64 = 0.0;
    for n in ns.clone() {
        let rep = run_golden(golden, n);
        if !rep.passed {
            return Err(format!("n={n}: {}", rep.detail));
        }
        CERTIFIED.fetch_add(1, Ordering::Relaxed);
        let iota = rep.iota_size.ok_or("no trail size")? as f64;
        worst = worst.max(iota / (n * n) as f64);
    }
    if worst > k {
        return Err(format!("|ι|/n² reached {worst:.3} > {k}"));
    }
    Ok(format!("n={}..{} replayed and glue-checked, max |ι|/n² = {worst:.3} (K = {k})", ns.start(), ns.end()))
}

fn c6_lonsing_trapdoor() -> Outcome {
    for n in 2..=10 {
        for g in [Golden::Lonsing, Golden::Trapdoor, Golden::TrapdoorQres] {
            let rep = run_golden(g, n);
            if !rep.passed {
                return Err(format!("{} n={n}: {}", g.name(), rep.detail));
            }
            if g == Golden::TrapdoorQres && rep.reductions != 2 {
                return Err(format!("Trapdoor Q-resolution refutation has {} reductions", rep.reductions));
            }
        }
        let rounds = |g: Golden| qcdcl::harness::golden_proof(g, n).map(|p| p.rounds.len());
        if rounds(Golden::Lonsing)? != 1 || rounds(Golden::Trapdoor)? != 2 {
            return Err(format!("n={n}: wrong number of trails"));
        }
    }
    Ok("n=2..10: Lonsing 1 trail, Trapdoor 2 trails, Q-resolution refutation with 2 reductions".into())
}

fn c7_xt() -> Outcome {
    for n in 2..=30 {
        let rep = xt_check(&family(Family::Equality, n));
        if !rep.holds {
            return Err(format!("Equality n={n}: {rep}"));
        }
    }
    for k in 0..100u64 {
        let spec = FamilySpec::new(
            Family::Random { m: 1 + (k % 3) as usize, c: [0.5, 1.0, 2.0][(k / 3 % 3) as usize], seed: k },
            2 + (k % 4) as usize,
        );
        let rep = xt_check(&generate(&spec).map_err(|e| e.to_string())?);
        if !rep.holds {
            return Err(format!("{} n={} {}: {rep}", spec.name(), spec.n, spec.params()));
        }
    }
    let mut merges = 0;
    for k in 0..50u64 {
        let n = 2 + (k % 6) as usize;
        let f = family(Family::Equality, n);
        let mut cfg = config(DecisionPolicy::LevOrd, PropagationPolicy::Red, Heuristic::Random, k);
        cfg.max_conflicts = 100_000;
        let out = solve(&f, &cfg).map_err(|e| e.to_string())?;
        if !out.is_refuted() {
            return Err(format!("Equality n={n} seed {k}: {}", out.name()));
        }
        let d = post(out.proof(), "equality")?;
        merges += usize::from(!d.merge_free(&f.prefix));
    }
    if merges > 0 {
        return Err(format!("{merges} of 50 LEV-ORD/RED refutations contain merges"));
    }
    Ok("Equality n=2..30 and 100 Q(n,m,c) samples have XT; 50 LEV-ORD/RED refutations merge-free".into())
}

fn c8_hardness() -> Outcome {
    let mut report = Vec::new();
    for n in 4..=8 {
        let f = family(Family::Equality, n);
        let bound = 1usize << n;
        let mut conflicts = Vec::new();
        for (h, seed) in [(Heuristic::Lowest, 0), (Heuristic::Random, 1), (Heuristic::Random, 2)] {
            let mut cfg = config(DecisionPolicy::LevOrd, PropagationPolicy::Red, h, seed);
            cfg.max_conflicts = 100_000;
            let out = solve(&f, &cfg).map_err(|e| e.to_string())?;
            if !out.is_refuted() {
                return Err(format!("n={n} {h:?}: {}", out.name()));
            }
            let d = post(out.proof(), "equality")?;
            if d.len() < bound || d.count_reductions() < bound {
                return Err(format!("n={n}: |π| = {}, reductions = {} < 2^n", d.len(), d.count_reductions()));
            }
            conflicts.push(out.stats().conflicts);
        }
        report.push(format!("n={n}: {conflicts:?}"));
    }
    Ok(format!("|π| ≥ 2^n and reductions ≥ 2^n hold; conflicts {}", report.join(" ")))
}

fn c9_simulation() -> Outcome {
    let mut corpus: Vec<(String, Qcnf, Derivation)> =
        vec![("trapdoor qres n=1".into(), Golden::TrapdoorQres.formula(1), trapdoor_qres_refutation(1))];
    let no_red: Vec<_> = POLICY_PAIRS.iter().copied().filter(|&(_, r)| r == PropagationPolicy::NoRed).collect();
    let add = |name: String, f: &Qcnf, seed: u64, corpus: &mut Vec<(String, Qcnf, Derivation)>| -> Result<(), String> {
        let (p, r) = no_red[seed as usize % no_red.len()];
        let h = if seed.is_multiple_of(2) { Heuristic::Lowest } else { Heuristic::Random };
        let out = solve(f, &config(p, r, h, seed)).map_err(|e| e.to_string())?;
        if out.is_refuted() {
            let d = post(out.proof(), &name)?;
            corpus.push((format!("{name} via {p}/{r}"), f.clone(), d));
        }
        Ok(())
    };
    for (name, f) in small_family_instances() {
        add(name, &f, 0, &mut corpus)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut seed = 0;
    while corpus.len() < 40 {
        let f = common::random_qcnf(&mut rng, 3, 12, 20);
        add(format!("random #{seed}"), &f, seed, &mut corpus)?;
        seed += 1;
    }
    let (mut worst3, mut worst4): (f64, f64) = (0.0, 0.0);
    for (name, f, pi) in &corpus {
        let (proof, stats) = simulate_refutation_with_stats(f, pi, Scheme::Asserting).map_err(|e| format!("{name}: {e}"))?;
        if (proof.decision, proof.propagation) != (DecisionPolicy::AssOrd, PropagationPolicy::NoRed) {
            return Err(format!("{name}: wrong policies"));
        }
        let glued = post(&proof, name)?;
        if glued.mode != ResolutionMode::Qres || !glued.merge_free(&f.prefix) {
            return Err(format!("{name}: glued output is not merge-free Q-resolution"));
        }
        let n = f.prefix.num_vars() as f64;
        worst3 = worst3.max(proof.size() as f64 / (n.powi(3) * pi.len() as f64));
        worst4 = worst4.max(stats.max_loop_rounds as f64 / (n * n));
    }
    if worst3 > K3 || worst4 > K4 {
        return Err(format!("|ι|/(n³|π|) = {worst3:.4} (K₃ = {K3}), rounds/n² = {worst4:.4} (K₄ = {K4})"));
    }
    Ok(format!(
        "{} refutations simulated; max |ι|/(n³|π|) = {worst3:.4} (K₃ = {K3}), max loop rounds/n² = {worst4:.4} (K₄ = {K4})",
        corpus.len()
    ))
}

fn c10_unsound_step() -> Outcome {
    use Quant::{Exists as E, Forall as A};
    let p = Prefix::new([(A, vec![1]), (E, vec![2])]).unwrap();
    let f = Qcnf::new(p, vec![Clause::from_dimacs(&[1, -2]), Clause::from_dimacs(&[-1, 2])]).unwrap();
    let mut verdicts = Vec::new();
    for mode in [ResolutionMode::Qres, ResolutionMode::LdQres] {
        let mut d = Derivation::new(mode);
        let a = d.push(Rule::Axiom(Clause::from_dimacs(&[-1, 2])));
        let b = d.push(Rule::Axiom(Clause::from_dimacs(&[1, -2])));
        d.push(Rule::Resolve { pivot: 2, left: a, right: b });
        match check_derivation(&f, &d, mode) {
            Verdict::Valid => return Err(format!("accepted in {mode}")),
            v => verdicts.push(format!("{mode}: {v}")),
        }
    }
    Ok(verdicts.join("; "))
}

fn c11_determinism() -> Outcome {
    let solve_text = |f: &Qcnf, cfg: &SolverConfig| -> Result<String, String> {
        let out = solve(f, cfg).map_err(|e| e.to_string())?;
        Ok(format!("{}{}", out.proof().rounds_text(), serialize_proof(&glue_qcdcl_proof(out.proof()))))
    };
    let f = family(Family::Equality, 4);
    for (p, r) in POLICY_PAIRS {
        let cfg = config(p, r, Heuristic::Random, 7);
        if solve_text(&f, &cfg)? != solve_text(&f, &cfg)? {
            return Err(format!("solver output differs for {p}/{r}"));
        }
    }
    let f = Golden::TrapdoorQres.formula(2);
    let sim = || simulate_refutation(&f, &trapdoor_qres_refutation(2), Scheme::Asserting).map(|p| p.rounds_text());
    if sim() != sim() {
        return Err("simulation output differs".into());
    }
    let mut cells = Vec::new();
    for n in 2..=4 {
        for (p, r) in POLICY_PAIRS {
            cells.push((FamilySpec::new(Family::Equality, n), config(p, r, Heuristic::Random, 3)));
            cells.push((FamilySpec::new(Family::Random { m: 1, c: 1.0, seed: n as u64 }, 2), config(p, r, Heuristic::Lowest, 0)));
        }
    }
    let csv = |jobs: usize| -> Result<Vec<u8>, String> {
        let mut plan = ExperimentPlan::new(cells.clone());
        plan.repetitions = 2;
        plan.timing = false;
        plan.jobs = jobs;
        let mut buf = Vec::new();
        write_csv(&run_plan(&plan), &mut buf).map_err(|e| e.to_string())?;
        Ok(buf)
    };
    let first = csv(4)?;
    if first != csv(4)? || first != csv(1)? {
        return Err("CSV output differs between runs".into());
    }
    Ok(format!("solver, simulation and a {}-row CSV are byte-identical across runs", first.iter().filter(|&&b| b == b'\n').count() - 1))
}

type Criterion = (usize, &'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        (1, "oracle equivalence", c1_oracle),
        (3, "worked example sequences", c3_worked_example),
        (4, "QParity golden", || scripted(Golden::QParity, 3..=30, K1)),
        (5, "Equality golden", || scripted(Golden::Equality, 2..=30, K2)),
        (6, "Lonsing and Trapdoor goldens", c6_lonsing_trapdoor),
        (7, "XT-property", c7_xt),
        (8, "Equality hardness trend", c8_hardness),
        (9, "Q-resolution simulation", c9_simulation),
        (10, "unsound step rejected", c10_unsound_step),
        (11, "determinism", c11_determinism),
        // last, so it sees every refutation produced above
        (2, "glued proof structure", c2_structure),
    ];
    let mut lines = Vec::new();
    for (id, name, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        lines.push((id, name, outcome, secs));
    }
    lines.sort_by_key(|l| l.0);
    let mut failed = 0;
    println!();
    for (id, name, outcome, secs) in &lines {
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {id:>2} {tag} {name} [{secs:.1}s]: {detail}");
    }
    println!("\nacceptance: {} passed, {failed} failed", lines.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
