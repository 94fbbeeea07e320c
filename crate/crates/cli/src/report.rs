//! Line-oriented reports, errors and exit codes.

use std::fmt;
use std::io;

use milnor::algebra::AlgebraError;
use milnor::equivalence::EquivalenceError;
use milnor::exactpoly::ParseError;
use milnor::nilpoly::NilpolyError;
use serde_json::{Map, Value};

pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

/// Ordered `KEY: value` pairs plus the exit code of the run.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    entries: Vec<(String, Value)>,
    sections: Vec<(String, Report)>,
    pub code: i32,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn put(&mut self, key: &str, value: impl Into<Value>) {
        self.entries.push((key.to_string(), value.into()));
    }

    /// Records a pass/fail line; a failure sets the exit code.
    pub fn verdict(&mut self, key: &str, ok: bool) {
        self.put(key, if ok { "pass" } else { "fail" });
        if !ok {
            self.code = self.code.max(EXIT_FAIL);
        }
    }

    /// Appends a labelled sub-report, e.g. one grid point.
    pub fn section(&mut self, label: String, report: Report) {
        self.code = self.code.max(report.code);
        self.sections.push((label, report));
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (k, v) in &self.entries {
            map.insert(k.clone(), v.clone());
        }
        if !self.sections.is_empty() {
            let points = self
                .sections
                .iter()
                .map(|(label, r)| {
                    let mut entry = Map::new();
                    entry.insert("point".into(), label.clone().into());
                    entry.insert("exit".into(), r.code.into());
                    if let Value::Object(inner) = r.to_json() {
                        entry.extend(inner);
                    }
                    Value::Object(entry)
                })
                .collect();
            map.insert("points".into(), Value::Array(points));
        }
        Value::Object(map)
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
            s.push('\n');
            return s;
        }
        self.to_string()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.entries {
            match v {
                Value::String(s) => writeln!(f, "{k}: {s}")?,
                other => writeln!(f, "{k}: {other}")?,
            }
        }
        for (label, r) in &self.sections {
            writeln!(f, "[{label}]")?;
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn precondition(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_PRECONDITION,
            message: message.into(),
        }
    }

    pub fn failure(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_FAIL,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::usage(format!("parse error: {e}"))
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::usage(format!("i/o error: {e}"))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::usage(format!("malformed JSON: {e}"))
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::BadShape(_) | AlgebraError::LabelNotMonomial(_) => CliError::usage(e.to_string()),
            _ => CliError::precondition(e.to_string()),
        }
    }
}

impl From<NilpolyError> for CliError {
    fn from(e: NilpolyError) -> Self {
        match e {
            NilpolyError::NotAdmissible(k) => CliError::precondition(format!("not admissible (dim Ann = {k})")),
            NilpolyError::IdentityFailed(_) => CliError::failure(e.to_string()),
            NilpolyError::Algebra(inner) => inner.into(),
            _ => CliError::precondition(e.to_string()),
        }
    }
}

impl From<EquivalenceError> for CliError {
    fn from(e: EquivalenceError) -> Self {
        match e {
            EquivalenceError::DimensionMismatch(_) | EquivalenceError::Malformed(_) => CliError::usage(e.to_string()),
            EquivalenceError::VerificationFailed => CliError::failure(e.to_string()),
            EquivalenceError::Nilpoly(inner) => inner.into(),
            EquivalenceError::Algebra(inner) => inner.into(),
            _ => CliError::precondition(e.to_string()),
        }
    }
}
