use serde::{Deserialize, Serialize};

use cubekappa::verify::Violation;
use cubekappa::{BitSet, CubeMeta, Evidence, Verdict, VertexSet};

use crate::args::{Claim, GraphFormat, Mode};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TaskKind {
    Build,
    Kappa,
    Extra,
    Construct,
    Verify,
    Export,
}

impl TaskKind {
    pub fn name(self) -> &'static str {
        match self {
            TaskKind::Build => "build",
            TaskKind::Kappa => "kappa",
            TaskKind::Extra => "extra",
            TaskKind::Construct => "construct",
            TaskKind::Verify => "verify",
            TaskKind::Export => "export",
        }
    }
}

/// Resolved task parameters. Defaults are filled in before a task runs, so
/// two invocations that mean the same thing share a cache key.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub k: u32,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claim: Option<Claim>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph_format: Option<GraphFormat>,
}

/// A cut written as vertex words, with the components it leaves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutRecord {
    pub cut: Vec<String>,
    pub component_sizes: Vec<usize>,
    /// The smallest component, or the last one on ties.
    pub smallest_component: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationRecord {
    pub kind: String,
    pub vertices: Vec<String>,
    pub detail: String,
}

/// Task results. Only the fields a task produces are serialized.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Payload {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub evidence: Option<Evidence>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CutRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex_count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub super_connected: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fragment: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cut_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layer_sizes: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checked_count: Option<u128>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skipped: Option<u128>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub patterns_seen: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub smallest_cut_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violations: Option<Vec<ViolationRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sha256: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TaskRecord {
    pub task: TaskKind,
    pub params: Params,
    pub result: Payload,
    pub version: String,
    /// Wall-clock seconds; the one field that differs between reruns.
    pub duration_secs: f64,
}

impl TaskRecord {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }

    /// The serialized record with the duration zeroed.
    pub fn canonical_json(&self) -> String {
        TaskRecord {
            duration_secs: 0.0,
            ..self.clone()
        }
        .to_json()
    }

    pub fn is_violation(&self) -> bool {
        self.result.verdict == Some(Verdict::Fail)
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(
            self.result.evidence,
            Some(Evidence::Inconclusive { .. } | Evidence::BoundsOnly { .. })
        )
    }

    /// `key: value` lines, nested values as compact JSON.
    pub fn to_table(&self) -> String {
        let value = serde_json::to_value(self).expect("records serialize");
        let mut out = String::new();
        let mut push = |key: String, v: &serde_json::Value| {
            let text = match v {
                serde_json::Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("{key:<20} {text}\n"));
        };
        for (key, v) in value.as_object().expect("record is an object") {
            match v {
                serde_json::Value::Object(inner) => {
                    for (sub, w) in inner {
                        push(format!("{key}.{sub}"), w);
                    }
                }
                _ => push(key.clone(), v),
            }
        }
        out
    }
}

pub fn words(meta: &CubeMeta, set: &VertexSet) -> Vec<String> {
    set.iter().map(|v| word(meta, v)).collect()
}

pub fn word(meta: &CubeMeta, v: usize) -> String {
    meta.word_of(v).map(|w| w.to_string()).unwrap_or_else(|_| v.to_string())
}

pub fn cut_record(meta: &CubeMeta, cut: &VertexSet, components: &[VertexSet]) -> CutRecord {
    let smallest = components
        .iter()
        .rev()
        .min_by_key(|c| c.len())
        .map(|c| words(meta, c))
        .unwrap_or_default();
    CutRecord {
        cut: words(meta, cut),
        component_sizes: components.iter().map(BitSet::len).collect(),
        smallest_component: smallest,
    }
}

pub fn violation_record(meta: &CubeMeta, v: &Violation) -> ViolationRecord {
    match v {
        Violation::Cut(report) => ViolationRecord {
            kind: "cut".into(),
            vertices: words(meta, &report.fault_set),
            detail: format!(
                "{} components, small sides {:?}",
                report.components.len(),
                report.small_shapes.iter().map(ToString::to_string).collect::<Vec<_>>()
            ),
        },
        Violation::CommonNeighbors { u, v, adjacent, count } => ViolationRecord {
            kind: "common-neighbors".into(),
            vertices: vec![word(meta, *u), word(meta, *v)],
            detail: format!("adjacent = {adjacent}, {count} common neighbors"),
        },
        Violation::Property { detail } => ViolationRecord {
            kind: "property".into(),
            vertices: Vec::new(),
            detail: detail.clone(),
        },
    }
}
