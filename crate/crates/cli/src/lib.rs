//! Command-line front end for the `alhqg` toolkit.
//!
//! Results go to stdout (or `--out`), diagnostics to stderr. Exit status: 0
//! on success, 1 when a verification fails, 2 for configuration or usage
//! errors. Nothing is written unless the whole computation succeeded.

pub mod args;
pub mod commands;
pub mod config;
pub mod manifest;
pub mod output;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::Parser;
use serde_json::Value;

use args::Cli;
use commands::Artifact;
use manifest::RunManifest;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Config(String),
    Usage(String),
    Model(alhqg::Error),
    Io(String),
    Verification(String),
    Internal(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Model(e) => write!(f, "{e}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::Verification(m) => write!(f, "verification failed: {m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<alhqg::Error> for CliError {
    fn from(e: alhqg::Error) -> Self {
        CliError::Model(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => EXIT_VERIFY_FAILED,
            _ => EXIT_USAGE,
        }
    }
}

/// Sidecar path for `--out PATH`.
pub fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

fn with_manifest(manifest: &RunManifest, body: Value) -> Result<Value, CliError> {
    let mut map = serde_json::Map::new();
    map.insert(
        "manifest".into(),
        serde_json::to_value(manifest).map_err(|e| CliError::Internal(e.to_string()))?,
    );
    match body {
        Value::Object(fields) => map.extend(fields),
        other => {
            map.insert("result".into(), other);
        }
    }
    Ok(Value::Object(map))
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

/// Runs one invocation and returns its exit status.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(stdout, "{}", e.render());
            return EXIT_OK;
        }
    };
    let arguments = argv
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    match execute(&cli, arguments) {
        Ok((code, Some(text))) => match stdout.write_all(text.as_bytes()) {
            Ok(()) => code,
            Err(e) => {
                let _ = writeln!(stderr, "alhqg: cannot write output: {e}");
                EXIT_USAGE
            }
        },
        Ok((code, None)) => code,
        Err(e) => {
            let _ = writeln!(stderr, "alhqg: {e}");
            e.exit_code()
        }
    }
}

/// Computes the artifact, then either returns it for stdout or writes it and
/// its manifest sidecar to `--out`.
fn execute(cli: &Cli, arguments: Vec<String>) -> Result<(i32, Option<String>), CliError> {
    let cfg = config::resolve(&cli.config)?;
    let artifact = commands::execute(&cli.command, &cfg)?;
    let mut manifest = RunManifest::new(cli.command.name(), arguments, cfg);
    if let Some(out) = &cli.out {
        manifest.outputs = vec![
            out.display().to_string(),
            manifest_path(out).display().to_string(),
        ];
    }
    let (text, code) = match artifact {
        Artifact::Json(body) => (output::to_json(&with_manifest(&manifest, body)?)?, EXIT_OK),
        Artifact::Verdict { report, passed } => (
            output::to_json(&with_manifest(&manifest, report)?)?,
            if passed { EXIT_OK } else { EXIT_VERIFY_FAILED },
        ),
        Artifact::Csv { text, summary } => {
            manifest.summary = summary;
            (text, EXIT_OK)
        }
    };
    match &cli.out {
        Some(out) => {
            write_file(out, &text)?;
            write_file(&manifest_path(out), &output::to_json(&manifest.stamped())?)?;
            Ok((code, None))
        }
        None => Ok((code, Some(text))),
    }
}
