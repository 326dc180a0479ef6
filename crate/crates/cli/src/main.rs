use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use qcdcl::families::{evaluate_semantics, generate, xt_check, Family, FamilySpec, DEFAULT_EVAL_BOUND};
use qcdcl::harness::{certify, goldens, run_plan, write_csv, ExperimentPlan};
use qcdcl::learn::Scheme;
use qcdcl::proof::{check_derivation, check_refutation, glue_qcdcl_proof, parse_proof, serialize_proof, Verdict};
use qcdcl::qbf::{parse_qdimacs, write_qdimacs, Qcnf, ResolutionMode};
use qcdcl::sim::simulate_refutation_with_stats;
use qcdcl::solver::{replay, solve, Heuristic, ReplayScript, SolveOutcome, SolverConfig};
use qcdcl::trail::{DecisionPolicy, PropagationPolicy, POLICY_PAIRS};

#[derive(Parser)]
#[command(name = "qcdcl", version, about = "QCDCL proof-system laboratory")]
struct Cli {
    /// Worker threads for sweeps (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Policies {
    #[arg(long, default_value = "lev-ord")]
    decision: DecisionPolicy,
    #[arg(long, default_value = "red")]
    propagation: PropagationPolicy,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the QCDCL solver on a QDIMACS file.
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        policies: Policies,
        #[arg(long, default_value = "asserting")]
        scheme: Scheme,
        #[arg(long, default_value_t = 10_000)]
        max_conflicts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Pick decisions at random instead of by level.
        #[arg(long)]
        random: bool,
        #[arg(long)]
        emit_proof: Option<PathBuf>,
        #[arg(long)]
        emit_stats: Option<PathBuf>,
    },
    /// Replay a hand-written round script.
    Replay {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        script: PathBuf,
        #[command(flatten)]
        policies: Policies,
        #[arg(long)]
        emit_proof: Option<PathBuf>,
    },
    /// Check a qrp-lite derivation; exit status 1 when invalid.
    Check {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        proof: PathBuf,
        /// Also require the conclusion to be the empty clause.
        #[arg(long)]
        refutation: bool,
    },
    /// Turn a Q-resolution refutation into an ASS-ORD / NO-RED QCDCL refutation.
    Simulate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        qres_proof: PathBuf,
        #[arg(long)]
        emit_proof: Option<PathBuf>,
        #[arg(long)]
        emit_rounds: Option<PathBuf>,
    },
    /// Generate a family instance.
    Gen {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Check the XT-property.
    XtCheck {
        #[arg(long)]
        input: PathBuf,
    },
    /// Brute-force truth value.
    Eval {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_EVAL_BOUND)]
        bound: usize,
    },
    /// Sweep a family over a range of n and policy pairs, writing CSV.
    Bench {
        #[command(flatten)]
        family: FamilyArgs,
        /// Largest n; the sweep runs `--n ..= --to`.
        #[arg(long)]
        to: Option<usize>,
        /// Policy pairs as `decision/propagation`; all six when omitted.
        #[arg(long = "pair", value_parser = parse_pair)]
        pairs: Vec<(DecisionPolicy, PropagationPolicy)>,
        #[arg(long, default_value = "asserting")]
        scheme: Scheme,
        #[arg(long, default_value_t = 10_000)]
        max_conflicts: usize,
        #[arg(long, default_value_t = 1)]
        reps: usize,
        #[arg(long)]
        random: bool,
        /// Write 0 in the `ms` column.
        #[arg(long)]
        no_timing: bool,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Replay every scripted construction and report.
    Goldens {
        #[arg(long, default_value_t = 10)]
        max_n: usize,
    },
}

#[derive(Args)]
struct FamilyArgs {
    /// qparity, php, trapdoor, equality, lonsing or random.
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: usize,
    /// Pigeons for php (default n+1), universal block size for random.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 0.5)]
    c: f64,
    /// Sampling seed for random.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl FamilyArgs {
    fn spec(&self, n: usize) -> Result<FamilySpec, String> {
        let family = match self.family.as_str() {
            "qparity" => Family::QParity,
            "php" => Family::Php { pigeons: self.m.unwrap_or(n + 1) },
            "trapdoor" => Family::Trapdoor,
            "equality" => Family::Equality,
            "lonsing" => Family::Lonsing,
            "random" => Family::Random { m: self.m.unwrap_or(n), c: self.c, seed: self.seed },
            other => return Err(format!("unknown family `{other}`")),
        };
        Ok(FamilySpec::new(family, n))
    }
}

fn parse_pair(s: &str) -> Result<(DecisionPolicy, PropagationPolicy), String> {
    let (p, r) = s.split_once('/').ok_or("expected decision/propagation")?;
    Ok((p.parse()?, r.parse()?))
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<(), String> {
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn load(path: &Path) -> Result<Qcnf, String> {
    parse_qdimacs(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.cmd {
        Cmd::Solve { input, policies, scheme, max_conflicts, seed, random, emit_proof, emit_stats } => {
            let f = load(&input)?;
            let mut cfg = SolverConfig::new(policies.decision, policies.propagation);
            cfg.scheme = scheme;
            cfg.max_conflicts = max_conflicts;
            cfg.seed = seed;
            if random {
                cfg.heuristic = Heuristic::Random;
            }
            let out = solve(&f, &cfg).map_err(|e| e.to_string())?;
            let proof = out.proof();
            let glued = glue_qcdcl_proof(proof);
            println!("{} conflicts={} iota={} pi={}", out.name(), out.stats().conflicts, proof.size(), glued.len());
            if let Some(p) = emit_proof {
                write(&p, &serialize_proof(&glued))?;
            }
            if let Some(p) = emit_stats {
                let st = out.stats();
                let stats = json!({
                    "outcome": out.name(),
                    "policyP": cfg.decision.name(),
                    "policyR": cfg.propagation.name(),
                    "scheme": cfg.scheme.to_string(),
                    "seed": seed,
                    "conflicts": st.conflicts,
                    "decisions": st.decisions,
                    "saturations": st.saturations,
                    "duplicates": st.duplicates,
                    "iota_size": proof.size(),
                    "pi_size": glued.len(),
                    "reductions": glued.count_reductions(),
                    "certified": matches!(out, SolveOutcome::Refuted(..)) && certify(proof).is_ok(),
                });
                write(&p, &format!("{stats:#}\n"))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Replay { input, script, policies, emit_proof } => {
            let f = load(&input)?;
            let script = ReplayScript::parse(&read(&script)?).map_err(|e| e.to_string())?;
            let proof = replay(&f, &script, policies.decision, policies.propagation).map_err(|e| e.to_string())?;
            let verdict = if proof.is_refutation() { certify(&proof).map(|_| ()) } else { proof.validate().map_err(|e| e.to_string()) };
            let glued = glue_qcdcl_proof(&proof);
            if let Some(p) = emit_proof {
                write(&p, &serialize_proof(&glued))?;
            }
            print!("{}", proof.rounds_text());
            match verdict {
                Ok(()) => {
                    println!("ok iota={} pi={}", proof.size(), glued.len());
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    println!("invalid: {e}");
                    Ok(ExitCode::FAILURE)
                }
            }
        }
        Cmd::Check { input, proof, refutation } => {
            let f = load(&input)?;
            let d = parse_proof(&read(&proof)?).map_err(|e| e.to_string())?;
            let v = if refutation { check_refutation(&f, &d, d.mode) } else { check_derivation(&f, &d, d.mode) };
            println!("{v}");
            Ok(if v == Verdict::Valid { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Cmd::Simulate { input, qres_proof, emit_proof, emit_rounds } => {
            let f = load(&input)?;
            let pi = parse_proof(&read(&qres_proof)?).map_err(|e| e.to_string())?;
            if pi.mode != ResolutionMode::Qres {
                return Err("simulation needs a Q-resolution (qres) proof".into());
            }
            let (proof, stats) = simulate_refutation_with_stats(&f, &pi, Scheme::Asserting).map_err(|e| e.to_string())?;
            let glued = certify(&proof)?;
            println!(
                "refuted rounds={} iota={} pi_in={} pi_out={} max_loop_rounds={}",
                proof.rounds.len(),
                proof.size(),
                pi.len(),
                glued.len(),
                stats.max_loop_rounds
            );
            if let Some(p) = emit_proof {
                write(&p, &serialize_proof(&glued))?;
            }
            if let Some(p) = emit_rounds {
                write(&p, &proof.rounds_text())?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Gen { family, output } => {
            let spec = family.spec(family.n)?;
            let f = generate(&spec).map_err(|e| e.to_string())?;
            let text =
                write_qdimacs(&f, &[format!("{} n={} {}", spec.name(), spec.n, spec.params()).trim_end().to_string(), spec.numbering()]);
            match output {
                Some(p) => write(&p, &text)?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::XtCheck { input } => {
            let report = xt_check(&load(&input)?);
            println!("{report}");
            Ok(if report.holds { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Cmd::Eval { input, bound } => {
            let value = evaluate_semantics(&load(&input)?, bound).map_err(|e| e.to_string())?;
            println!("{}", if value { "true" } else { "false" });
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Bench { family, to, pairs, scheme, max_conflicts, reps, random, no_timing, output } => {
            let pairs = if pairs.is_empty() { POLICY_PAIRS.to_vec() } else { pairs };
            let mut cells = Vec::new();
            for n in family.n..=to.unwrap_or(family.n) {
                let spec = family.spec(n)?;
                for &(p, r) in &pairs {
                    let mut cfg = SolverConfig::new(p, r);
                    cfg.scheme = scheme;
                    cfg.max_conflicts = max_conflicts;
                    cfg.seed = family.seed;
                    if random {
                        cfg.heuristic = Heuristic::Random;
                    }
                    cells.push((spec, cfg));
                }
            }
            let mut plan = ExperimentPlan::new(cells);
            plan.repetitions = reps;
            plan.timing = !no_timing;
            plan.jobs = cli.jobs;
            let records = run_plan(&plan);
            let mut buf = Vec::new();
            write_csv(&records, &mut buf).map_err(|e| e.to_string())?;
            match output {
                Some(p) => fs::write(&p, buf).map_err(|e| format!("{}: {e}", p.display()))?,
                None => print!("{}", String::from_utf8_lossy(&buf)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Goldens { max_n } => {
            let mut ok = true;
            for r in goldens(max_n) {
                ok &= r.passed;
                let iota = r.iota_size.map(|s| s.to_string()).unwrap_or_else(|| "-".into());
                println!(
                    "{} {:<14} n={:<3} iota={:<6} pi={:<6} reductions={:<5} {}",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.golden.name(),
                    r.n,
                    iota,
                    r.pi_size,
                    r.reductions,
                    r.detail
                );
            }
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
