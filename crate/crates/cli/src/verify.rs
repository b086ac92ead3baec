//! The verify subcommand: re-check previously emitted JSON records. Each
//! line is validated independently by recomputing the claimed facts and
//! re-running any attached certificate through the library checkers.

use perfdiv_core::divisibility::{
    find_minimal_non_divisible, find_perfect_division_with_cap, is_perfectly_divisible,
    verify_division, SweepMode, FIND_DIVISION_CAP,
};
use perfdiv_core::equivalence::check_equivalence;
use perfdiv_core::graph::DEFAULT_HOMOGENEOUS_CAP;
use perfdiv_core::graph6::{from_graph6, to_graph6};
use perfdiv_core::search::{
    chromatic_number_with_cap, is_perfect_with_cap, max_clique_weight_with_cap,
    DEFAULT_SEARCH_CAP,
};
use perfdiv_core::{Graph, WeightFn};
use serde_json::{json, Value};

use crate::process::{weights_for_verify, Opts};
use crate::records::{certificate_from_json, division_from_json, set_from_json, Record, Severity};

pub fn verify_record(opts: &Opts, line: &str) -> (Record, Severity) {
    let mut record = Record::new("", "verify");
    let value: Value = match serde_json::from_str(line) {
        Ok(v) => v,
        Err(e) => {
            record.error = Some(format!("bad record: {e}"));
            return (record, Severity::Parse);
        }
    };
    let target = value
        .get("command")
        .and_then(Value::as_str)
        .unwrap_or("")
        .to_string();
    let word = value
        .get("graph6")
        .and_then(Value::as_str)
        .unwrap_or("")
        .to_string();
    record.graph6 = word.clone();

    match check_record(opts, &target, &word, &value) {
        Ok(detail) => {
            let mut result = json!({"target": target, "valid": detail.is_none()});
            if let Some(why) = detail {
                result["detail"] = Value::from(why);
                record.result = Some(result);
                (record, Severity::Violation)
            } else {
                record.result = Some(result);
                (record, Severity::Clean)
            }
        }
        Err(msg) => {
            record.error = Some(msg);
            (record, Severity::Parse)
        }
    }
}

/// Ok(None) means the record checks out; Ok(Some(why)) is a refutation;
/// Err is a malformed or unverifiable record.
fn check_record(
    opts: &Opts,
    target: &str,
    word: &str,
    value: &Value,
) -> Result<Option<String>, String> {
    // records that reported an input failure carry nothing to re-check
    if value.get("error").is_some() {
        return Ok(None);
    }
    // a find-minimal stream summary has no graph attached
    if target == "find-minimal" && word.is_empty() {
        return Ok(None);
    }
    if target == "verify" {
        return Ok(None);
    }

    let g = from_graph6(word).map_err(|e| format!("graph6: {e}"))?;
    let result = value.get("result").ok_or("record has no result")?;
    if let Some(n) = value.get("n").and_then(Value::as_u64) {
        if n as usize != g.n() {
            return Ok(Some(format!("n says {n}, graph has {}", g.n())));
        }
    }

    match target {
        "omega" => check_omega(opts, &g, result, value),
        "chi" => check_chi(opts, &g, result, value),
        "is-perfect" => check_is_perfect(opts, &g, result, value),
        "hom-sets" => check_hom_sets(opts, &g, result),
        "substitute" => check_substitute(&g, result),
        "divide" => check_divide(opts, &g, result, value),
        "check-divisible" => check_divisible(&g, result, value),
        "check-equivalence" => check_equivalence_record(&g, result),
        "find-minimal" => check_minimal(&g, result),
        other => Err(format!("unknown command {other:?}")),
    }
}

fn cert_of(value: &Value) -> Result<Option<Value>, String> {
    Ok(value.get("certificate").cloned())
}

fn check_omega(
    opts: &Opts,
    g: &Graph,
    result: &Value,
    value: &Value,
) -> Result<Option<String>, String> {
    let claimed = result.get("omega").and_then(Value::as_u64).ok_or("no omega")?;
    let h = weights_for_verify(result, g.n())?;
    let cert = cert_of(value)?.ok_or("no certificate")?;
    let cert = certificate_from_json(&cert).ok_or("bad certificate")?;
    if let Err(e) = cert.check(g) {
        return Ok(Some(e.to_string()));
    }
    if let perfdiv_core::search::Certificate::Clique(vs) = &cert {
        let weight: u64 = vs.iter().map(|&v| h.value(v)).sum();
        if weight != claimed {
            return Ok(Some(format!("certificate weighs {weight}, record says {claimed}")));
        }
    } else {
        return Ok(Some("certificate is not a clique".into()));
    }
    let (best, _) = max_clique_weight_with_cap(g, &h, None, opts.cap(DEFAULT_SEARCH_CAP))
        .map_err(|e| e.to_string())?;
    if best != claimed {
        return Ok(Some(format!("maximum is {best}, record says {claimed}")));
    }
    Ok(None)
}

fn check_chi(
    opts: &Opts,
    g: &Graph,
    result: &Value,
    value: &Value,
) -> Result<Option<String>, String> {
    let claimed = result.get("chi").and_then(Value::as_u64).ok_or("no chi")? as usize;
    let cert = cert_of(value)?.ok_or("no certificate")?;
    let cert = certificate_from_json(&cert).ok_or("bad certificate")?;
    if let Err(e) = cert.check(g) {
        return Ok(Some(e.to_string()));
    }
    if let perfdiv_core::search::Certificate::Coloring(colors) = &cert {
        let used = colors.iter().max().map_or(0, |&m| m + 1);
        if used != claimed {
            return Ok(Some(format!("coloring uses {used} colors, record says {claimed}")));
        }
    } else {
        return Ok(Some("certificate is not a coloring".into()));
    }
    let (best, _) = chromatic_number_with_cap(g, opts.cap(DEFAULT_SEARCH_CAP))
        .map_err(|e| e.to_string())?;
    if best != claimed {
        return Ok(Some(format!("chromatic number is {best}, record says {claimed}")));
    }
    Ok(None)
}

fn check_is_perfect(
    opts: &Opts,
    g: &Graph,
    result: &Value,
    value: &Value,
) -> Result<Option<String>, String> {
    let claimed = result
        .get("perfect")
        .and_then(Value::as_bool)
        .ok_or("no perfect field")?;
    if let Some(cert) = cert_of(value)? {
        let cert = certificate_from_json(&cert).ok_or("bad certificate")?;
        if let Err(e) = cert.check(g) {
            return Ok(Some(e.to_string()));
        }
    }
    let (actual, _) =
        is_perfect_with_cap(g, opts.cap(DEFAULT_SEARCH_CAP)).map_err(|e| e.to_string())?;
    if actual != claimed {
        return Ok(Some(format!("graph perfection is {actual}, record says {claimed}")));
    }
    Ok(None)
}

fn check_hom_sets(opts: &Opts, g: &Graph, result: &Value) -> Result<Option<String>, String> {
    let listed = result
        .get("sets")
        .and_then(Value::as_array)
        .ok_or("no sets")?;
    let mut sets = Vec::with_capacity(listed.len());
    for v in listed {
        sets.push(set_from_json(v).ok_or("bad set")?);
    }
    let actual = g
        .find_homogeneous_sets_with_cap(opts.cap(DEFAULT_HOMOGENEOUS_CAP))
        .map_err(|e| e.to_string())?;
    if actual != sets {
        return Ok(Some("homogeneous set list differs".into()));
    }
    Ok(None)
}

fn check_substitute(g: &Graph, result: &Value) -> Result<Option<String>, String> {
    let vertex = result.get("vertex").and_then(Value::as_u64).ok_or("no vertex")? as usize;
    let with_word = result.get("with").and_then(Value::as_str).ok_or("no with")?;
    let claimed = result.get("graph6").and_then(Value::as_str).ok_or("no graph6")?;
    let with = from_graph6(with_word).map_err(|e| format!("with graph: {e}"))?;
    let (out, _) = g.substitute(vertex, &with).map_err(|e| e.to_string())?;
    if to_graph6(&out) != claimed {
        return Ok(Some("substitution result differs".into()));
    }
    Ok(None)
}

fn check_divide(
    opts: &Opts,
    g: &Graph,
    result: &Value,
    value: &Value,
) -> Result<Option<String>, String> {
    let found = result.get("found").and_then(Value::as_bool).ok_or("no found field")?;
    let h = weights_for_verify(result, g.n())?;
    if found {
        let cert = cert_of(value)?.ok_or("no certificate")?;
        let d = division_from_json(&cert).ok_or("bad division")?;
        match verify_division(g, &h, g.vertices(), &d) {
            Ok(true) => Ok(None),
            Ok(false) => Ok(Some("division does not verify".into())),
            Err(e) => Ok(Some(e.to_string())),
        }
    } else {
        let cap = opts.cap(FIND_DIVISION_CAP);
        match find_perfect_division_with_cap(g, &h, g.vertices(), cap) {
            Ok(None) => Ok(None),
            Ok(Some(_)) => Ok(Some("a perfect division exists after all".into())),
            Err(e) => Err(e.to_string()),
        }
    }
}

fn check_divisible(g: &Graph, result: &Value, value: &Value) -> Result<Option<String>, String> {
    let claimed = result
        .get("divisible")
        .and_then(Value::as_bool)
        .ok_or("no divisible field")?;
    let h = weights_for_verify(result, g.n())?;
    let verdict = is_perfectly_divisible(g, &h).map_err(|e| e.to_string())?;
    if verdict.divisible != claimed {
        return Ok(Some(format!(
            "divisibility is {}, record says {claimed}",
            verdict.divisible
        )));
    }
    if let Some(violation) = value.get("violation") {
        let subset = violation
            .get("subset")
            .and_then(set_from_json)
            .ok_or("bad violation subset")?;
        if verdict.witness != Some(subset) {
            return Ok(Some("witness subset differs".into()));
        }
    }
    Ok(None)
}

fn check_equivalence_record(g: &Graph, result: &Value) -> Result<Option<String>, String> {
    let wmax = result.get("wmax").and_then(Value::as_u64).ok_or("no wmax")?;
    let samples = result.get("samples").and_then(Value::as_u64).ok_or("no samples")?;
    let seed = result.get("seed").and_then(Value::as_u64).ok_or("no seed")?;
    let mode = if samples == 0 {
        SweepMode::Exhaustive
    } else {
        SweepMode::Sampled { seed, count: samples }
    };
    let report = check_equivalence(g, wmax, mode).map_err(|e| e.to_string())?;
    let same = |key: &str, actual: u64| -> Option<String> {
        let claimed = result.get(key).and_then(Value::as_u64);
        (claimed != Some(actual)).then(|| format!("{key} is {actual}, record says {claimed:?}"))
    };
    if let Some(why) = same("weights_tested", report.weights_tested)
        .or_else(|| same("cases_checked", report.cases_checked))
        .or_else(|| same("violations", report.violations.len() as u64))
    {
        return Ok(Some(why));
    }
    let claimed_base = result
        .get("base_divisible")
        .and_then(Value::as_bool)
        .ok_or("no base_divisible")?;
    if claimed_base != report.base_divisible {
        return Ok(Some("base divisibility differs".into()));
    }
    Ok(None)
}

fn check_minimal(g: &Graph, result: &Value) -> Result<Option<String>, String> {
    let ones = WeightFn::all_ones(g.n());
    let verdict = is_perfectly_divisible(g, &ones).map_err(|e| e.to_string())?;
    let claimed = result
        .get("divisible")
        .and_then(Value::as_bool)
        .ok_or("no divisible field")?;
    if claimed != verdict.divisible {
        return Ok(Some(format!(
            "divisibility is {}, record says {claimed}",
            verdict.divisible
        )));
    }
    if verdict.divisible {
        return Ok(None);
    }
    let minimal = result.get("minimal").and_then(Value::as_bool).ok_or("no minimal field")?;
    let report = find_minimal_non_divisible(std::iter::once(g.clone()));
    let is_hit = !report.hits.is_empty();
    if minimal != is_hit {
        return Ok(Some(format!("minimality is {is_hit}, record says {minimal}")));
    }
    if let Some(hit) = report.hits.first() {
        let claimed_witness = result
            .get("witness")
            .and_then(set_from_json)
            .ok_or("no witness")?;
        if hit.witness != claimed_witness {
            return Ok(Some("witness differs".into()));
        }
    }
    Ok(None)
}
