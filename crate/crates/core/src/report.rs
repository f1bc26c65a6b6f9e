//! Versioned, deterministic reports: one record per checked item with its
//! parameters, verdict, residual term count and evidence.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: &str = "wittsuper-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Undecided,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Undecided => "UNDECIDED",
            Verdict::Fail => "FAIL",
        }
    }
}

pub type Params = BTreeMap<String, String>;

/// Builds a parameter map from `(name, value)` pairs.
pub fn params<const N: usize>(pairs: [(&str, String); N]) -> Params {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Item {
    pub identity: String,
    pub parameters: Params,
    pub verdict: Verdict,
    pub residual_terms: usize,
    pub evidence: Value,
}

impl Item {
    pub fn new(identity: impl Into<String>, parameters: Params, ok: bool, residual_terms: usize, evidence: impl Serialize) -> Self {
        Self {
            identity: identity.into(),
            parameters,
            verdict: Verdict::from_bool(ok),
            residual_terms,
            evidence: serde_json::to_value(evidence).expect("serializable evidence"),
        }
    }

    /// An item whose computation could not decide (the error is named).
    pub fn undecided(identity: impl Into<String>, parameters: Params, what: impl Into<String>) -> Self {
        Self {
            identity: identity.into(),
            parameters,
            verdict: Verdict::Undecided,
            residual_terms: 0,
            evidence: Value::String(what.into()),
        }
    }

    fn summary_line(&self) -> String {
        let ps: Vec<String> = self.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!(
            "{:<9} {} ({}) residual-terms={}",
            self.verdict.label(),
            self.identity,
            ps.join(", "),
            self.residual_terms
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub parameters: Params,
    pub verdict: Verdict,
    /// One-line statement of the command's outcome.
    #[serde(skip_serializing_if = "String::is_empty")]
    pub headline: String,
    pub items: Vec<Item>,
    /// Command-specific result (the classification verdict, the shadow
    /// partition, ...).
    #[serde(skip_serializing_if = "Value::is_null")]
    pub result: Value,
}

impl Report {
    pub fn new(command: impl Into<String>, parameters: Params, items: Vec<Item>, result: Value) -> Self {
        let verdict = items.iter().map(|i| i.verdict).max().unwrap_or(Verdict::Pass);
        Self {
            schema: SCHEMA,
            command: command.into(),
            parameters,
            verdict,
            headline: String::new(),
            items,
            result,
        }
    }

    pub fn with_headline(mut self, headline: impl Into<String>) -> Self {
        self.headline = headline.into();
        self
    }

    /// `0` when every item passes, `1` when one is false, `2` when one is
    /// undecided (and none false).
    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Undecided => 2,
        }
    }

    /// The full report: pretty JSON with a trailing newline.
    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable report");
        s.push('\n');
        s
    }

    /// The human-readable summary.
    pub fn summary(&self) -> String {
        let mut out = format!("{} {}\n", SCHEMA, self.command);
        if !self.headline.is_empty() {
            out.push_str(&self.headline);
            out.push('\n');
        }
        for item in &self.items {
            out.push_str(&item.summary_line());
            out.push('\n');
        }
        let failed = self.items.iter().filter(|i| i.verdict == Verdict::Fail).count();
        let undecided = self.items.iter().filter(|i| i.verdict == Verdict::Undecided).count();
        out.push_str(&format!(
            "{}: {} items, {} failed, {} undecided\n",
            self.verdict.label(),
            self.items.len(),
            failed,
            undecided
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_and_exit_codes() {
        let pass = Item::new("a", params([("m", "1".into())]), true, 0, 3);
        let fail = Item::new("b", Params::new(), false, 2, "x");
        let und = Item::undecided("c", Params::new(), "window");
        assert_eq!(Report::new("verify", Params::new(), vec![pass.clone()], Value::Null).exit_code(), 0);
        assert_eq!(Report::new("verify", Params::new(), vec![pass.clone(), und.clone()], Value::Null).exit_code(), 2);
        assert_eq!(Report::new("verify", Params::new(), vec![und, fail, pass], Value::Null).exit_code(), 1);
        let r = Report::new("verify", Params::new(), vec![], Value::Null);
        assert!(r.to_text().starts_with("{\n  \"schema\": \"wittsuper-report/1\""));
    }
}
