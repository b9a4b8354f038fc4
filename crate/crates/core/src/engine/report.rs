use std::fmt;
use std::time::Duration;

use crate::homology::HomologySummary;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Outcome of one verification suite.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub suite: String,
    pub p: u32,
    pub spec: Option<String>,
    pub summaries: Vec<HomologySummary>,
    pub checks: Vec<CheckResult>,
    /// Conventions and informational observations that are not pass/fail.
    pub notes: Vec<String>,
    pub wall_time: Duration,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, p: u32) -> Self {
        Self {
            suite: suite.into(),
            p,
            spec: None,
            summaries: Vec::new(),
            checks: Vec::new(),
            notes: Vec::new(),
            wall_time: Duration::ZERO,
        }
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(CheckResult { name: name.into(), pass, detail: detail.into() });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// True when there is at least one check and all of them pass.
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.pass)
    }

    pub fn summary(&self, degree: usize) -> Option<&HomologySummary> {
        self.summaries.iter().find(|s| s.degree == degree)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// Appends another report's checks under a prefix.
    pub fn absorb(&mut self, prefix: &str, other: VerificationReport) {
        for c in other.checks {
            self.checks.push(CheckResult { name: format!("{prefix}: {}", c.name), ..c });
        }
        for n in other.notes {
            self.notes.push(format!("{prefix}: {n}"));
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} (p = {})", self.suite, self.p)?;
        if let Some(spec) = &self.spec {
            writeln!(f, "  complex: {spec}")?;
        }
        for s in &self.summaries {
            writeln!(f, "  {s}")?;
        }
        for c in &self.checks {
            let mark = if c.pass { "pass" } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "  [{mark}] {}", c.name)?;
            } else {
                writeln!(f, "  [{mark}] {} ({})", c.name, c.detail)?;
            }
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}
