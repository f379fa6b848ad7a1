//! Structured pass/fail records with rendered witnesses.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub witness: String,
}

/// An ordered list of named checks.
///
/// Rendered one check per line as `[PASS] name: witness`, followed by a
/// `-- N passed, M failed, K skipped` summary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    title: String,
    checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(title: impl Into<String>) -> Self {
        Self {
            title: title.into(),
            checks: Vec::new(),
        }
    }

    pub fn title(&self) -> &str {
        &self.title
    }

    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    pub fn push(&mut self, name: impl Into<String>, status: Status, witness: impl ToString) {
        self.checks.push(Check {
            name: name.into(),
            status,
            witness: witness.to_string(),
        });
    }

    pub fn pass(&mut self, name: impl Into<String>, witness: impl ToString) {
        self.push(name, Status::Pass, witness);
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: impl ToString) {
        self.push(name, Status::Fail, witness);
    }

    pub fn skip(&mut self, name: impl Into<String>, witness: impl ToString) {
        self.push(name, Status::Skip, witness);
    }

    /// Records `Pass` when `ok`, `Fail` otherwise.
    pub fn check(&mut self, name: impl Into<String>, ok: bool, witness: impl ToString) -> bool {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.push(name, status, witness);
        ok
    }

    /// Appends the checks of `other`, prefixing their names with its title.
    pub fn absorb(&mut self, other: VerificationReport) {
        for c in other.checks {
            self.checks.push(Check {
                name: alloc::format!("{}/{}", other.title, c.name),
                ..c
            });
        }
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn all_passed(&self) -> bool {
        self.count(Status::Fail) == 0
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== {} ==", self.title)?;
        for c in &self.checks {
            if c.witness.is_empty() {
                writeln!(f, "[{}] {}", c.status.label(), c.name)?;
            } else {
                writeln!(f, "[{}] {}: {}", c.status.label(), c.name, c.witness)?;
            }
        }
        write!(
            f,
            "-- {} passed, {} failed, {} skipped",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skip)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;

    #[test]
    fn rendering_is_line_stable() {
        let mut r = VerificationReport::new("demo");
        r.pass("a", "x = 1");
        r.check("b", false, "");
        let mut inner = VerificationReport::new("inner");
        inner.skip("c", "noncompact");
        r.absorb(inner);
        assert_eq!(
            format!("{r}"),
            "== demo ==\n[PASS] a: x = 1\n[FAIL] b\n[SKIP] inner/c: noncompact\n-- 1 passed, 1 failed, 1 skipped"
        );
        assert!(!r.all_passed());
        assert_eq!(r.failures().count(), 1);
    }
}
