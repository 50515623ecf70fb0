use std::collections::BTreeMap;
use std::path::Path;

use addtop::Error;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;

/// Failure of a subcommand before it could produce results.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::TooLarge(_) | Error::WindowOverflow(_) | Error::Unstable(_) => EXIT_RESOURCE,
            _ => EXIT_INPUT,
        };
        Failure { code, message: e.to_string() }
    }
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Failure {
        Failure { code: EXIT_INPUT, message: message.into() }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

/// Everything a run emits on stdout. Keys serialize sorted.
#[derive(Debug, Default)]
pub struct RunReport {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub results: Value,
    pub warnings: Vec<String>,
    pub exit_code: u8,
}

impl RunReport {
    pub fn new(command: &str) -> RunReport {
        RunReport { command: command.into(), results: Value::Null, ..RunReport::default() }
    }

    /// Reads a file and records its hash under `role`.
    pub fn read_input(&mut self, role: &str, path: &Path) -> Result<Value, Failure> {
        let bytes = std::fs::read(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
        self.inputs.insert(role.into(), sha256_hex(&bytes));
        serde_json::from_slice(&bytes).map_err(|e| Failure::input(format!("{}: malformed JSON: {e}", path.display())))
    }

    pub fn record_args(&mut self, args: &Value) {
        self.inputs.insert("args".into(), sha256_hex(args.to_string().as_bytes()));
    }

    pub fn fail_check(&mut self) {
        self.exit_code = self.exit_code.max(EXIT_CHECK_FAILED);
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "warnings": self.warnings,
            "exitCode": self.exit_code,
        })
    }
}
