use std::fmt;
use std::str::FromStr;

use rinfty_core::report::Report;
use rinfty_core::ParseError;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid {flag}: {err}\n  {input}\n  {caret}^", caret = " ".repeat(err.pos))]
    Parse { flag: String, input: String, err: ParseError },
    #[error("{0}")]
    Invalid(String),
}

impl CliError {
    pub fn invalid(msg: impl fmt::Display) -> Self {
        CliError::Invalid(msg.to_string())
    }
}

/// Parses a literal, reporting the failing position under the input.
pub fn parse<T: FromStr<Err = ParseError>>(flag: &str, input: &str) -> Result<T, CliError> {
    input.parse().map_err(|err| CliError::Parse { flag: flag.into(), input: input.into(), err })
}

/// The result of one command: human text, a JSON payload, and whether every
/// check it made passed.
pub struct Output {
    pub ok: bool,
    pub human: String,
    pub json: Value,
}

impl Output {
    pub fn new(human: impl Into<String>, json: Value) -> Self {
        Output { ok: true, human: human.into(), json }
    }

    pub fn checked(ok: bool, human: impl Into<String>, json: Value) -> Self {
        Output { ok, human: human.into(), json }
    }

    pub fn report(report: &Report) -> Self {
        Output::checked(report.all_passed(), report.to_string(), to_value(report))
    }

    pub fn to_json(&self, command: &str) -> String {
        let envelope = json!({ "command": command, "ok": self.ok, "result": self.json });
        serde_json::to_string_pretty(&envelope).expect("JSON values serialize")
    }
}

pub fn to_value<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("report types serialize")
}
