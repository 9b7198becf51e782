//! Machine-readable pass/fail reports shared by the case studies and the CLI.

use std::fmt;

use serde::{Serialize, Serializer};

/// Serializes a value through its `Display` impl.
pub fn display<T: fmt::Display, S: Serializer>(value: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(value)
}

/// Where an asserted value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// Stated in the published example or proof being reproduced.
    Published,
    /// Immediate from definitions.
    Elementary,
    /// Obtained by an independent computation.
    Computed,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::Published => "published",
            Basis::Elementary => "elementary",
            Basis::Computed => "computed",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub basis: Basis,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
    /// Claims deliberately not verified, with the reason.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub not_checked: Vec<String>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), checks: Vec::new(), not_checked: Vec::new() }
    }

    pub fn check(&mut self, name: impl Into<String>, basis: Basis, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), basis, passed, detail: detail.into() });
    }

    pub fn skip(&mut self, what: impl Into<String>) {
        self.not_checked.push(what.into());
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.title)?;
        for c in &self.checks {
            let verdict = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "  {verdict} [{}] {}: {}", c.basis, c.name, c.detail)?;
        }
        for s in &self.not_checked {
            writeln!(f, "  not checked: {s}")?;
        }
        Ok(())
    }
}
