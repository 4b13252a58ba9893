//! Structured pass/fail reports for the identity-verification suites.
//!
//! Checkers evaluate families of algebraic identities over exhaustive or
//! sampled instance sets; rather than panicking, they collect per-identity
//! results so callers (tests, the command line) can render or serialize the
//! outcome and decide how to react.

use std::fmt;

/// Outcome of checking one identity over a set of instances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    /// What was checked, e.g. `epsilon-antisymmetry`.
    pub identity: String,
    /// How many instances were evaluated.
    pub instances: usize,
    /// Human-readable descriptions of failing instances (empty = pass).
    pub failures: Vec<String>,
}

impl CheckResult {
    /// Whether every instance passed.
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// A named bundle of identity checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    /// Report name, e.g. `color-axioms`.
    pub name: String,
    /// Individual identity results.
    pub checks: Vec<CheckResult>,
}

impl CheckReport {
    /// A new empty report.
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            checks: Vec::new(),
        }
    }

    /// Record one identity's outcome.
    pub fn record(
        &mut self,
        identity: impl Into<String>,
        instances: usize,
        failures: Vec<String>,
    ) {
        self.checks.push(CheckResult {
            identity: identity.into(),
            instances,
            failures,
        });
    }

    /// Whether every identity passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    /// First failure description, if any (handy for assertions).
    pub fn first_failure(&self) -> Option<&str> {
        self.checks
            .iter()
            .flat_map(|c| c.failures.iter())
            .map(String::as_str)
            .next()
    }

    /// JSON rendering: name, per-identity instance counts, pass flags, and
    /// failure details.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "name": self.name,
            "passed": self.passed(),
            "checks": self
                .checks
                .iter()
                .map(|c| {
                    serde_json::json!({
                        "identity": c.identity,
                        "instances": c.instances,
                        "passed": c.passed(),
                        "failures": c.failures,
                    })
                })
                .collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}] {}", if self.passed() { "PASS" } else { "FAIL" }, self.name)?;
        for c in &self.checks {
            writeln!(
                f,
                "  [{}] {} ({} instance(s))",
                if c.passed() { "PASS" } else { "FAIL" },
                c.identity,
                c.instances
            )?;
            for failure in &c.failures {
                writeln!(f, "    ! {failure}")?;
            }
        }
        Ok(())
    }
}
