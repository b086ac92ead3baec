//! Output records and certificate serialization. One JSON object per input
//! line, fields in a fixed order so identical runs are byte-identical.

use perfdiv_core::divisibility::PerfectDivision;
use perfdiv_core::search::Certificate;
use perfdiv_core::{Error, VertexSet, WeightFn};
use serde::Serialize;
use serde_json::{json, Value};

/// How a record affects the process exit code. Input errors outrank cap
/// skips, which outrank property violations: exit 2 > 3 > 1 > 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Clean,
    Violation,
    Cap,
    Parse,
}

impl Severity {
    pub fn exit_code(self) -> i32 {
        match self {
            Severity::Clean => 0,
            Severity::Violation => 1,
            Severity::Cap => 3,
            Severity::Parse => 2,
        }
    }
}

/// Classify a library error: caps are skips, broken internal invariants
/// are property violations, everything else is bad input.
pub fn severity_of(err: &Error) -> Severity {
    match err {
        Error::CapExceeded { .. } => Severity::Cap,
        Error::InternalVerification { .. }
        | Error::CertificateCheck { .. }
        | Error::NotDivisible { .. } => Severity::Violation,
        _ => Severity::Parse,
    }
}

#[derive(Serialize)]
pub struct Record {
    pub graph6: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

impl Record {
    pub fn new(graph6: impl Into<String>, command: &'static str) -> Record {
        Record {
            graph6: graph6.into(),
            n: None,
            command,
            result: None,
            certificate: None,
            violation: None,
            error: None,
            millis: None,
        }
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("record serialization cannot fail")
    }
}

pub fn set_json(s: VertexSet) -> Value {
    Value::from(s.to_vec())
}

pub fn weights_json(h: &WeightFn) -> Value {
    Value::from(h.as_slice().to_vec())
}

pub fn certificate_json(c: &Certificate) -> Value {
    match c {
        Certificate::Clique(vs) => json!({"type": "clique", "vertices": vs}),
        Certificate::Coloring(colors) => json!({"type": "coloring", "colors": colors}),
        Certificate::OddHole(cycle) => json!({"type": "odd-hole", "cycle": cycle}),
        Certificate::OddAntihole(cycle) => json!({"type": "odd-antihole", "cycle": cycle}),
        Certificate::FailingSubgraph(vs) => {
            json!({"type": "failing-subgraph", "vertices": vs})
        }
    }
}

pub fn division_json(d: &PerfectDivision) -> Value {
    json!({"type": "division", "a": d.a.to_vec(), "b": d.b.to_vec()})
}

pub fn certificate_from_json(v: &Value) -> Option<Certificate> {
    let kind = v.get("type")?.as_str()?;
    let list = |key: &str| -> Option<Vec<usize>> {
        v.get(key)?
            .as_array()?
            .iter()
            .map(|x| x.as_u64().map(|u| u as usize))
            .collect()
    };
    match kind {
        "clique" => Some(Certificate::Clique(list("vertices")?)),
        "coloring" => Some(Certificate::Coloring(list("colors")?)),
        "odd-hole" => Some(Certificate::OddHole(list("cycle")?)),
        "odd-antihole" => Some(Certificate::OddAntihole(list("cycle")?)),
        "failing-subgraph" => Some(Certificate::FailingSubgraph(list("vertices")?)),
        _ => None,
    }
}

pub fn division_from_json(v: &Value) -> Option<PerfectDivision> {
    if v.get("type")?.as_str()? != "division" {
        return None;
    }
    Some(PerfectDivision {
        a: set_from_json(v.get("a")?)?,
        b: set_from_json(v.get("b")?)?,
    })
}

pub fn set_from_json(v: &Value) -> Option<VertexSet> {
    let mut s = VertexSet::EMPTY;
    for x in v.as_array()? {
        let u = x.as_u64()? as usize;
        if u >= 64 {
            return None;
        }
        s.insert(u);
    }
    Some(s)
}

pub fn weights_from_json(v: &Value) -> Option<Vec<u64>> {
    v.as_array()?.iter().map(|x| x.as_u64()).collect()
}
