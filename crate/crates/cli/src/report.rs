use serde::Serialize;

use crate::config::RunConfig;

/// One verified property. Exact checks carry `tol = 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckLine {
    pub suite: String,
    pub name: String,
    pub passed: bool,
    pub value: f64,
    pub tol: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckLine {
    pub fn numeric(suite: &str, name: impl Into<String>, value: f64, tol: f64) -> Self {
        CheckLine { suite: suite.into(), name: name.into(), passed: value <= tol, value, tol, detail: None }
    }

    pub fn exact(suite: &str, name: impl Into<String>, holds: bool) -> Self {
        CheckLine {
            suite: suite.into(),
            name: name.into(),
            passed: holds,
            value: if holds { 0.0 } else { 1.0 },
            tol: 0.0,
            detail: None,
        }
    }

    pub fn with_detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }
}

/// Envelope shared by every subcommand. Contains nothing that varies
/// between runs with the same config and seed.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport<B: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub config: RunConfig,
    pub seed: u64,
    pub passed: bool,
    pub body: B,
}

impl<B: Serialize> RunReport<B> {
    pub fn new(command: impl Into<String>, config: &RunConfig, passed: bool, body: B) -> Self {
        RunReport {
            tool: "phasespace",
            version: env!("CARGO_PKG_VERSION"),
            command: command.into(),
            config: config.clone(),
            seed: config.seed,
            passed,
            body,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}
