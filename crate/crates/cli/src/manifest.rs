//! Provenance record attached to every emitted result.

use alhqg::GyroConfig;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub subcommand: &'static str,
    /// Command line as given, without the program name.
    pub arguments: Vec<String>,
    /// Configuration after file loading and flag overrides.
    pub config: GyroConfig,
    /// Files written by this run; empty when the result goes to stdout.
    pub outputs: Vec<String>,
    /// Command-specific scalars that do not fit the emitted table.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<serde_json::Value>,
    /// Wall-clock time of the run. Only the sidecar file carries it, so that
    /// identical invocations produce identical data output.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
}

impl RunManifest {
    pub fn new(subcommand: &'static str, arguments: Vec<String>, config: GyroConfig) -> Self {
        Self {
            tool: "alhqg",
            version: env!("CARGO_PKG_VERSION"),
            subcommand,
            arguments,
            config,
            outputs: Vec::new(),
            summary: None,
            timestamp: None,
        }
    }

    pub fn stamped(&self) -> Self {
        Self {
            timestamp: Some(chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)),
            ..self.clone()
        }
    }
}
