//! Itemized check results shared by the verifiers.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
    Unknown,
    Skipped,
}

impl Status {
    pub fn from_bool(b: bool) -> Status {
        if b {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn from_tri(t: crate::Tri) -> Status {
        match t {
            crate::Tri::True => Status::Pass,
            crate::Tri::False => Status::Fail,
            crate::Tri::Unknown => Status::Unknown,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Unknown => "unknown",
            Status::Skipped => "skipped",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub witness: Option<String>,
}

/// An ordered list of named checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn new() -> ValidationReport {
        ValidationReport::default()
    }

    pub fn push(&mut self, name: impl Into<String>, status: Status, witness: Option<String>) {
        self.checks.push(Check { name: name.into(), status, witness });
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.push(name, Status::Pass, None);
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: impl Into<String>) {
        self.push(name, Status::Fail, Some(witness.into()));
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.checks.extend(other.checks);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.status == Status::Fail)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}
