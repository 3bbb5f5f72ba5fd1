//! Pass/fail bookkeeping shared by the validators and the lab harnesses.

use std::fmt::{self, Display, Write as _};

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// The `k` or input the check ran on.
    pub subject: String,
    pub expected: String,
    pub measured: String,
    pub pass: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    /// Index into `checks`.
    pub check: usize,
    pub name: String,
    pub subject: String,
    /// Factorization dumps or other context needed to reproduce the failure.
    pub payload: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub title: String,
    pub checks: Vec<Check>,
    pub summary: Summary,
    pub first_failure: Option<Failure>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl VerificationReport {
    pub fn new(title: impl Into<String>) -> Self {
        VerificationReport {
            title: title.into(),
            checks: Vec::new(),
            summary: Summary::default(),
            first_failure: None,
            seed: None,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }

    /// Records a check whose pass condition is `expected == measured`.
    pub fn check_eq<T: PartialEq + Display>(
        &mut self,
        name: &str,
        subject: impl Display,
        expected: T,
        measured: T,
    ) -> bool {
        let pass = expected == measured;
        self.push(name, subject, expected, measured, pass, String::new)
    }

    /// Like [`check_eq`](Self::check_eq), attaching `payload()` if this is the
    /// first failing check.
    pub fn check_eq_with<T: PartialEq + Display>(
        &mut self,
        name: &str,
        subject: impl Display,
        expected: T,
        measured: T,
        payload: impl FnOnce() -> String,
    ) -> bool {
        let pass = expected == measured;
        self.push(name, subject, expected, measured, pass, payload)
    }

    pub fn push(
        &mut self,
        name: &str,
        subject: impl Display,
        expected: impl Display,
        measured: impl Display,
        pass: bool,
        payload: impl FnOnce() -> String,
    ) -> bool {
        let check = Check {
            name: name.to_string(),
            subject: subject.to_string(),
            expected: expected.to_string(),
            measured: measured.to_string(),
            pass,
        };
        if pass {
            self.summary.passed += 1;
        } else {
            self.summary.failed += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(Failure {
                    check: self.checks.len(),
                    name: check.name.clone(),
                    subject: check.subject.clone(),
                    payload: payload(),
                });
            }
        }
        self.checks.push(check);
        pass
    }

    /// Appends `other`'s checks after ours, keeping the summary consistent.
    pub fn extend(&mut self, other: VerificationReport) {
        let offset = self.checks.len();
        if self.first_failure.is_none() {
            self.first_failure = other.first_failure.map(|mut f| {
                f.check += offset;
                f
            });
        }
        self.summary.passed += other.summary.passed;
        self.summary.failed += other.summary.failed;
        self.checks.extend(other.checks);
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {}", self.title);
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "# seed {seed}");
        }
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{} {} [{}] expected={} measured={}",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.subject,
                c.expected,
                c.measured
            );
        }
        let _ = writeln!(out, "passed {} failed {}", self.summary.passed, self.summary.failed);
        if let Some(f) = &self.first_failure {
            let _ = writeln!(out, "first failure: {} [{}]", f.name, f.subject);
            if !f.payload.is_empty() {
                let _ = writeln!(out, "{}", f.payload);
            }
        }
        out
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("name\tsubject\texpected\tmeasured\tpass\n");
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}",
                c.name, c.subject, c.expected, c.measured, c.pass
            );
        }
        out
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
