//! Goldens, proof certification and experiment sweeps.

mod plan;
mod scripts;

pub use plan::{run_plan, write_csv, ExperimentPlan, RunRecord, CSV_HEADER};
pub use scripts::{equality_script, lonsing_script, qparity_script, trapdoor_qres_refutation, trapdoor_script, Golden};

use crate::learn::mode_for;
use crate::proof::{check_refutation, glue_qcdcl_proof, Derivation, QcdclProof, Verdict};
use crate::qbf::ResolutionMode;
use crate::solver::replay;
use crate::trail::PropagationPolicy;

/// Runs every check a QCDCL refutation must pass and returns the glued
/// derivation: round validation, `(⊥)` as the last learned clause, a valid
/// glued refutation, and no merges under NO-RED.
pub fn certify(proof: &QcdclProof) -> Result<Derivation, String> {
    proof.validate().map_err(|e| e.to_string())?;
    if !proof.is_refutation() {
        return Err("last learned clause is not (⊥)".into());
    }
    let glued = glue_qcdcl_proof(proof);
    let mode = mode_for(proof.propagation);
    if let Verdict::Invalid { step, reason } = check_refutation(&proof.base, &glued, mode) {
        return Err(format!("glued derivation invalid at step {step}: {reason}"));
    }
    if proof.propagation == PropagationPolicy::NoRed && !glued.merge_free(&proof.base.prefix) {
        return Err("NO-RED refutation glued to a derivation with merges".into());
    }
    Ok(glued)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenReport {
    pub golden: Golden,
    pub n: usize,
    pub passed: bool,
    /// `|ι|`, absent for the Q-resolution golden.
    pub iota_size: Option<usize>,
    pub pi_size: usize,
    pub reductions: usize,
    pub detail: String,
}

/// Replays (or checks) one golden at parameter `n`.
pub fn run_golden(golden: Golden, n: usize) -> GoldenReport {
    let mut report = GoldenReport { golden, n, passed: false, iota_size: None, pi_size: 0, reductions: 0, detail: String::new() };
    if n < golden.min_n() {
        report.detail = format!("needs n >= {}", golden.min_n());
        return report;
    }
    let f = golden.formula(n);
    let (p, r) = golden.policies();
    let result = match golden.script(n) {
        None => {
            let d = trapdoor_qres_refutation(n);
            match check_refutation(&f, &d, ResolutionMode::Qres) {
                Verdict::Valid if d.count_reductions() == 2 => Ok(d),
                Verdict::Valid => Err(format!("expected 2 reductions, found {}", d.count_reductions())),
                Verdict::Invalid { step, reason } => Err(format!("step {step}: {reason}")),
            }
        }
        Some(script) => replay(&f, &script, p, r).map_err(|e| e.to_string()).and_then(|proof| {
            report.iota_size = Some(proof.size());
            certify(&proof)
        }),
    };
    match result {
        Ok(d) => {
            report.passed = true;
            report.pi_size = d.len();
            report.reductions = d.count_reductions();
            report.detail = "ok".into();
        }
        Err(e) => report.detail = e,
    }
    report
}

/// Every golden at `n = min..=max_n`.
pub fn goldens(max_n: usize) -> Vec<GoldenReport> {
    Golden::ALL.iter().flat_map(|&g| (g.min_n()..=max_n).map(move |n| run_golden(g, n))).collect()
}

/// The replayed proof of a scripted golden, for size measurements.
pub fn golden_proof(golden: Golden, n: usize) -> Result<QcdclProof, String> {
    let script = golden.script(n).ok_or("golden has no replay script")?;
    let (p, r) = golden.policies();
    replay(&golden.formula(n), &script, p, r).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_golden_passes_at_small_n() {
        for report in goldens(5) {
            assert!(report.passed, "{} n={}: {}", report.golden.name(), report.n, report.detail);
        }
    }

    #[test]
    fn trapdoor_learns_y1_then_empty() {
        let proof = golden_proof(Golden::Trapdoor, 2).unwrap();
        let learned: Vec<String> = proof.rounds.iter().map(|r| r.learned.to_string()).collect();
        assert_eq!(learned, ["(-1)", "(⊥)"]);
    }

    #[test]
    fn simulated_trapdoor_refutation_certifies() {
        for n in 2..=4 {
            let f = Golden::TrapdoorQres.formula(n);
            let proof = crate::sim::simulate_refutation(&f, &trapdoor_qres_refutation(n), crate::learn::Scheme::Asserting).unwrap();
            assert_eq!((proof.decision, proof.propagation), (crate::trail::DecisionPolicy::AssOrd, PropagationPolicy::NoRed));
            let glued = certify(&proof).unwrap();
            assert!(glued.merge_free(&f.prefix));
        }
    }

    #[test]
    fn lonsing_is_one_trail() {
        let proof = golden_proof(Golden::Lonsing, 3).unwrap();
        assert_eq!(proof.rounds.len(), 1);
        assert_eq!(format!("{:?}", proof.rounds[0].trail), "(-15, 17, ⊥)");
    }
}
