//! Per-line command execution. Each input line is handled independently so
//! parallel runs can reorder work freely; the driver restores input order.

use std::time::Instant;

use perfdiv_core::divisibility::{
    find_minimal_non_divisible, find_perfect_division_with_cap, is_perfectly_divisible,
    SweepMode, FIND_DIVISION_CAP,
};
use perfdiv_core::equivalence::{check_equivalence_with, DivideOptions};
use perfdiv_core::graph::DEFAULT_HOMOGENEOUS_CAP;
use perfdiv_core::graph6::{from_graph6, to_graph6};
use perfdiv_core::search::{
    chromatic_number_with_cap, is_perfect_with_cap, max_clique_weight_with_cap,
    DEFAULT_SEARCH_CAP,
};
use perfdiv_core::{Error, Graph, VertexSet, WeightFn};
use serde_json::{json, Value};

use crate::records::{
    certificate_json, division_json, set_json, severity_of, weights_json, Record, Severity,
};
use crate::verify::verify_record;

/// Flags resolved from the command line, shared by every worker.
pub struct Opts {
    pub weights: Option<Vec<u64>>,
    pub wmax: u64,
    pub samples: u64,
    pub seed: u64,
    pub cap_n: Option<usize>,
    pub unit_steps: bool,
    pub timing: bool,
}

impl Opts {
    pub fn cap(&self, default: usize) -> usize {
        self.cap_n.unwrap_or(default)
    }
}

pub enum Cmd {
    Omega,
    Chi,
    IsPerfect,
    HomSets,
    Substitute { vertex: usize, word: String, graph: Graph },
    Divide,
    CheckDivisible,
    CheckEquivalence,
    FindMinimal,
    Verify,
}

impl Cmd {
    pub fn name(&self) -> &'static str {
        match self {
            Cmd::Omega => "omega",
            Cmd::Chi => "chi",
            Cmd::IsPerfect => "is-perfect",
            Cmd::HomSets => "hom-sets",
            Cmd::Substitute { .. } => "substitute",
            Cmd::Divide => "divide",
            Cmd::CheckDivisible => "check-divisible",
            Cmd::CheckEquivalence => "check-equivalence",
            Cmd::FindMinimal => "find-minimal",
            Cmd::Verify => "verify",
        }
    }
}

/// Outcome of one command on one parsed graph: result value plus optional
/// certificate and violation payloads.
struct Outcome {
    result: Value,
    certificate: Option<Value>,
    violation: Option<Value>,
    severity: Severity,
}

impl Outcome {
    fn clean(result: Value) -> Outcome {
        Outcome {
            result,
            certificate: None,
            violation: None,
            severity: Severity::Clean,
        }
    }
}

pub fn process_line(cmd: &Cmd, opts: &Opts, idx: usize, line: &str) -> (Record, Severity) {
    let start = Instant::now();
    let (mut record, severity) = if let Cmd::Verify = cmd {
        verify_record(opts, line)
    } else {
        run_on_graph(cmd, opts, idx, line)
    };
    if opts.timing {
        record.millis = Some(start.elapsed().as_millis() as u64);
    }
    (record, severity)
}

fn run_on_graph(cmd: &Cmd, opts: &Opts, idx: usize, line: &str) -> (Record, Severity) {
    let (word, sidecar) = match line.split_once('\t') {
        Some((w, rest)) => (w, Some(rest)),
        None => (line, None),
    };
    let mut record = Record::new(word, cmd.name());

    let g = match from_graph6(word) {
        Ok(g) => g,
        Err(e) => {
            record.error = Some(e.to_string());
            return (record, Severity::Parse);
        }
    };
    record.n = Some(g.n());

    let h = match line_weights(opts, sidecar, g.n()) {
        Ok(h) => h,
        Err(msg) => {
            record.error = Some(msg);
            return (record, Severity::Parse);
        }
    };

    match dispatch(cmd, opts, idx, &g, &h) {
        Ok(out) => {
            record.result = Some(out.result);
            record.certificate = out.certificate;
            record.violation = out.violation;
            (record, out.severity)
        }
        Err(e) => {
            let severity = severity_of(&e);
            record.error = Some(e.to_string());
            (record, severity)
        }
    }
}

/// Sidecar weights beat the --weights flag; both beat the all-ones default.
fn line_weights(opts: &Opts, sidecar: Option<&str>, n: usize) -> Result<WeightFn, String> {
    let values = if let Some(raw) = sidecar {
        serde_json::from_str::<Vec<u64>>(raw.trim())
            .map_err(|e| format!("bad weight column: {e}"))?
    } else if let Some(values) = &opts.weights {
        values.clone()
    } else {
        return Ok(WeightFn::all_ones(n));
    };
    if values.len() != n {
        return Err(format!("{} weights for {} vertices", values.len(), n));
    }
    WeightFn::new(values).map_err(|e| e.to_string())
}

fn dispatch(
    cmd: &Cmd,
    opts: &Opts,
    idx: usize,
    g: &Graph,
    h: &WeightFn,
) -> Result<Outcome, Error> {
    match cmd {
        Cmd::Omega => {
            let (w, cert) = max_clique_weight_with_cap(g, h, None, opts.cap(DEFAULT_SEARCH_CAP))?;
            Ok(Outcome {
                certificate: Some(certificate_json(&cert)),
                ..Outcome::clean(json!({"omega": w, "weights": weights_json(h)}))
            })
        }
        Cmd::Chi => {
            let (chi, cert) = chromatic_number_with_cap(g, opts.cap(DEFAULT_SEARCH_CAP))?;
            Ok(Outcome {
                certificate: Some(certificate_json(&cert)),
                ..Outcome::clean(json!({"chi": chi}))
            })
        }
        Cmd::IsPerfect => {
            let (perfect, cert) = is_perfect_with_cap(g, opts.cap(DEFAULT_SEARCH_CAP))?;
            Ok(Outcome {
                certificate: cert.as_ref().map(certificate_json),
                severity: if perfect {
                    Severity::Clean
                } else {
                    Severity::Violation
                },
                ..Outcome::clean(json!({"perfect": perfect}))
            })
        }
        Cmd::HomSets => {
            let sets = g.find_homogeneous_sets_with_cap(opts.cap(DEFAULT_HOMOGENEOUS_CAP))?;
            let listed: Vec<Value> = sets.iter().map(|&s| set_json(s)).collect();
            Ok(Outcome::clean(json!({"count": sets.len(), "sets": listed})))
        }
        Cmd::Substitute { vertex, word, graph } => {
            let (out, rec) = g.substitute(*vertex, graph)?;
            Ok(Outcome::clean(json!({
                "vertex": vertex,
                "with": word,
                "graph6": to_graph6(&out),
                "n": out.n(),
                "inserted": set_json(rec.inserted),
            })))
        }
        Cmd::Divide => {
            let cap = opts.cap(FIND_DIVISION_CAP);
            let found = find_perfect_division_with_cap(g, h, g.vertices(), cap)?;
            Ok(Outcome {
                certificate: found.as_ref().map(division_json),
                ..Outcome::clean(json!({
                    "found": found.is_some(),
                    "weights": weights_json(h),
                }))
            })
        }
        Cmd::CheckDivisible => {
            let verdict = is_perfectly_divisible(g, h)?;
            let mut out = Outcome::clean(json!({
                "divisible": verdict.divisible,
                "weights": weights_json(h),
            }));
            if let Some(witness) = verdict.witness {
                out.violation = Some(json!({"subset": set_json(witness)}));
                out.severity = Severity::Violation;
            }
            Ok(out)
        }
        Cmd::CheckEquivalence => run_equivalence(opts, idx, g),
        Cmd::FindMinimal => run_minimal(g),
        Cmd::Verify => unreachable!("verify handled before graph parsing"),
    }
}

fn run_equivalence(opts: &Opts, idx: usize, g: &Graph) -> Result<Outcome, Error> {
    let seed = opts.seed.wrapping_add(idx as u64);
    let mode = if opts.samples == 0 {
        SweepMode::Exhaustive
    } else {
        SweepMode::Sampled {
            seed,
            count: opts.samples,
        }
    };
    let options = DivideOptions {
        unit_steps: opts.unit_steps,
        ..DivideOptions::default()
    };
    let report = check_equivalence_with(g, opts.wmax, mode, options)?;
    let mut result = json!({
        "base_divisible": report.base_divisible,
        "weights_tested": report.weights_tested,
        "cases_checked": report.cases_checked,
        "violations": report.violations.len(),
        "wmax": opts.wmax,
        "samples": opts.samples,
        "seed": seed,
    });
    if let Some(w) = report.base_witness {
        result["base_witness"] = set_json(w);
    }
    let violation = report.violations.first().map(|v| {
        json!({
            "weights": weights_json(&v.weights),
            "subset": set_json(v.subset),
            "detail": v.detail,
        })
    });
    Ok(Outcome {
        result,
        certificate: None,
        severity: if violation.is_some() {
            Severity::Violation
        } else {
            Severity::Clean
        },
        violation,
    })
}

/// Per-graph piece of the minimal-counterexample scan; the driver folds
/// these records into the stream summary.
fn run_minimal(g: &Graph) -> Result<Outcome, Error> {
    let ones = WeightFn::all_ones(g.n());
    let verdict = is_perfectly_divisible(g, &ones)?;
    if verdict.divisible {
        return Ok(Outcome::clean(json!({"divisible": true})));
    }
    let report = find_minimal_non_divisible(std::iter::once(g.clone()));
    Ok(match report.hits.first() {
        Some(hit) => {
            let mut out = Outcome::clean(json!({
                "divisible": false,
                "minimal": true,
                "witness": set_json(hit.witness),
                "hom_sets_empty": hit.hom_sets_empty,
            }));
            if !hit.hom_sets_empty {
                let sets = g
                    .find_homogeneous_sets()
                    .map(|ss| Value::from(ss.iter().map(|&s| set_json(s)).collect::<Vec<_>>()))
                    .unwrap_or(Value::Null);
                out.violation = Some(json!({"hom_sets": sets}));
                out.severity = Severity::Violation;
            }
            out
        }
        None => Outcome::clean(json!({
            "divisible": false,
            "minimal": false,
            "witness": set_json(verdict.witness.unwrap_or(VertexSet::EMPTY)),
        })),
    })
}

/// Trailing summary for a find-minimal stream.
pub fn minimal_summary(records: &[(Record, Severity)]) -> Record {
    let mut examined = 0u64;
    let mut hits = 0u64;
    let mut skipped = 0u64;
    let mut theorem_violations = 0u64;
    for (record, severity) in records {
        match severity {
            Severity::Cap => skipped += 1,
            Severity::Parse => {}
            _ => examined += 1,
        }
        if let Some(result) = &record.result {
            if result.get("minimal").and_then(Value::as_bool) == Some(true) {
                hits += 1;
            }
        }
        if *severity == Severity::Violation {
            theorem_violations += 1;
        }
    }
    let mut summary = Record::new("", "find-minimal");
    summary.result = Some(json!({
        "examined": examined,
        "hits": hits,
        "skipped": skipped,
        "theorem_violations": theorem_violations,
        "vacuous": hits == 0,
    }));
    summary
}

/// Rebuild the exact per-line weight logic for the verify subcommand.
pub fn weights_for_verify(result: &Value, n: usize) -> Result<WeightFn, String> {
    match result.get("weights") {
        Some(v) => {
            let values = crate::records::weights_from_json(v)
                .ok_or_else(|| "bad weights array".to_string())?;
            if values.len() != n {
                return Err(format!("{} weights for {} vertices", values.len(), n));
            }
            WeightFn::new(values).map_err(|e| e.to_string())
        }
        None => Ok(WeightFn::all_ones(n)),
    }
}
