use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use dtcsp::{ComplexityVerdict, Instance, Method, Stats};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Sat,
    Unsat,
    Error,
}

/// Counters plus wall time.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportStats {
    pub facts_asserted: u64,
    pub ac_revisions: u64,
    pub branches: u64,
    pub nodes: u64,
    pub fallbacks: u64,
    pub wall_time_us: u64,
}

impl ReportStats {
    pub fn new(s: &Stats, wall_time_us: u64) -> Self {
        ReportStats {
            facts_asserted: s.facts_asserted,
            ac_revisions: s.ac_revisions,
            branches: s.branches,
            nodes: s.nodes,
            fallbacks: s.fallbacks,
            wall_time_us,
        }
    }
}

/// Machine-readable result of one `classify` or `solve` run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub status: Option<Status>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<Method>,
    pub verdict: Option<ComplexityVerdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assignment: Option<IndexMap<String, i64>>,
    #[serde(default)]
    pub stats: ReportStats,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instance: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl RunReport {
    pub fn empty() -> Self {
        RunReport {
            status: None,
            method: None,
            verdict: None,
            assignment: None,
            stats: ReportStats::default(),
            instance: None,
            seed: None,
            notes: Vec::new(),
            error: None,
        }
    }
}

/// Variable names to values, in declaration order.
pub fn named_assignment(inst: &Instance, values: &[i64]) -> IndexMap<String, i64> {
    inst.variables()
        .iter()
        .cloned()
        .zip(values.iter().copied())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_round_trips() {
        let mut r = RunReport::empty();
        r.status = Some(Status::Unsat);
        r.method = Some(Method::Backtracking);
        r.notes.push("no support".into());
        r.stats.branches = 4;
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.contains(r#""status":"UNSAT""#));
        assert!(text.contains(r#""method":"backtracking""#));
        assert_eq!(serde_json::from_str::<RunReport>(&text).unwrap(), r);
    }
}
