//! File formats and report serialization.
//!
//! State files are JSON: `{"n": 7, "terms": [{"index": 0, "re": ..., "im":
//! ...}, ...]}` with zero amplitudes omitted. Floats are written in shortest
//! round-trip form, so write-then-read reproduces amplitudes bit-exactly.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::potential::{rational_annotation, PotentialReport};
use crate::purity::PuritySummary;
use crate::search::SearchResult;
use crate::state::{make_state, PureState};

#[derive(Debug, Serialize, Deserialize)]
struct TermRecord {
    index: usize,
    re: f64,
    im: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct StateFile {
    n: usize,
    terms: Vec<TermRecord>,
}

/// Serialize a state to the JSON state-file format.
pub fn state_to_json(state: &PureState) -> serde_json::Value {
    let terms: Vec<TermRecord> = state
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(_, a)| a.re != 0.0 || a.im != 0.0)
        .map(|(index, a)| TermRecord {
            index,
            re: a.re,
            im: a.im,
        })
        .collect();
    serde_json::to_value(StateFile { n: state.n(), terms }).expect("state file serializes")
}

/// Parse a state from state-file JSON text. Applies the 1e-9 input norm
/// tolerance of [`make_state`].
pub fn state_from_json(text: &str) -> Result<PureState> {
    let file: StateFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let terms: Vec<(usize, Complex64)> = file
        .terms
        .iter()
        .map(|t| (t.index, Complex64::new(t.re, t.im)))
        .collect();
    make_state(file.n, &terms)
}

fn annotate(value: f64) -> serde_json::Value {
    match rational_annotation(value) {
        Some((p, q)) => json!({ "value": value, "approx": format!("{p}/{q}") }),
        None => json!({ "value": value }),
    }
}

fn summary_json(entry: &PuritySummary) -> serde_json::Value {
    let mut obj = annotate(entry.purity);
    obj["subsystem"] = json!(entry.mask.label());
    obj
}

/// JSON shape of a full potential report.
pub fn potential_report_json(report: &PotentialReport) -> serde_json::Value {
    json!({
        "n": report.n,
        "balanced_k": report.balanced_k,
        "pi_me": annotate(report.pi_me),
        "lower_bound": report.lower_bound,
        "min_purity_subsystem": report.min_mask.label(),
        "max_purity_subsystem": report.max_mask.label(),
        "entries": report.entries.iter().map(summary_json).collect::<Vec<_>>(),
    })
}

/// JSON shape of a k-subsystem purity table.
pub fn purity_table_json(k: usize, entries: &[PuritySummary]) -> serde_json::Value {
    json!({
        "k": k,
        "entries": entries.iter().map(summary_json).collect::<Vec<_>>(),
    })
}

/// JSON shape of a search result, embedding the best state in state-file form.
pub fn search_result_json(result: &SearchResult) -> serde_json::Value {
    json!({
        "config": serde_json::to_value(&result.config).expect("config serializes"),
        "best_pi_me": annotate(result.best_pi_me),
        "best_state": state_to_json(&result.best_state),
        "trajectory": result.trajectory,
        "elapsed_secs": result.elapsed_secs,
    })
}

/// One claimed value checked during `verify-zha`.
#[derive(Debug, Clone, Serialize)]
pub struct ClaimCheck {
    pub name: String,
    pub expected: f64,
    pub actual: f64,
    pub pass: bool,
}

fn check(name: String, expected: f64, actual: f64) -> ClaimCheck {
    ClaimCheck {
        pass: (expected - actual).abs() <= 1e-12,
        name,
        expected,
        actual,
    }
}

/// Check every claimed marginal value of the Zha seven-qubit state against a
/// candidate: all seven π_i = 1/2, all 21 π_ij = 1/4 with ρ_ij = I/4
/// entrywise, the 3-qubit table (1/4 on 127, 457, 367; 1/8 elsewhere), and
/// π_ME = 19/140. Taking the state as a parameter keeps the failure path
/// testable.
pub fn zha_claim_checks(state: &PureState) -> Vec<ClaimCheck> {
    use crate::potential::{entanglement_potential, purity_table};
    use crate::purity::reduced_density_matrix;

    let mut checks = Vec::new();
    for entry in purity_table(state, 1).expect("k=1 valid for n=7") {
        checks.push(check(format!("pi_{}", entry.mask.label()), 0.5, entry.purity));
    }
    for entry in purity_table(state, 2).expect("k=2 valid for n=7") {
        checks.push(check(format!("pi_{}", entry.mask.label()), 0.25, entry.purity));
        let rho = reduced_density_matrix(state, &entry.mask).expect("valid mask");
        let mut defect = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i == j { 0.25 } else { 0.0 };
                defect = defect.max((rho.entry(i, j) - Complex64::new(expected, 0.0)).norm());
            }
        }
        checks.push(check(
            format!("rho_{} = I/4, max entry defect", entry.mask.label()),
            0.0,
            defect,
        ));
    }
    for entry in purity_table(state, 3).expect("k=3 valid for n=7") {
        let label = entry.mask.label();
        let expected = if label == "127" || label == "457" || label == "367" {
            0.25
        } else {
            0.125
        };
        checks.push(check(format!("pi_{label}"), expected, entry.purity));
    }
    let report = entanglement_potential(state);
    checks.push(check("pi_ME".into(), 19.0 / 140.0, report.pi_me));
    checks
}
