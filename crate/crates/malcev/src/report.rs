//! Structured verdicts from axiom checks.
//!
//! Every checker walks a deterministic tuple order and records *all*
//! violations, not just the first, so two runs on equal inputs produce
//! identical reports. Rendering (text/JSON) lives in `io`.

use crate::scalar::Scalar;

/// One failing tuple of an identity: which basis tuple, and both sides'
/// coordinate vectors (flattened row-major when the identity is
/// matrix-valued).
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub tuple: Vec<usize>,
    pub lhs: Vec<Scalar>,
    pub rhs: Vec<Scalar>,
}

/// Outcome of checking a single named identity over a tuple range.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    /// Short stable name, e.g. "skewness" or "malcev (basis x)".
    pub name: String,
    /// Number of tuples evaluated.
    pub tuples_checked: usize,
    pub violations: Vec<Violation>,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A bundle of identity checks about one object.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    /// What was checked, e.g. "malcev algebra (dim 3 over Q)".
    pub subject: String,
    pub checks: Vec<IdentityCheck>,
    /// Free-form remarks (e.g. substituted identities, untypeable printed
    /// variants) — never affects pass/fail.
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        VerificationReport { subject: subject.into(), checks: Vec::new(), notes: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(IdentityCheck::passed)
    }

    /// First failing check name, for error messages.
    pub fn first_failure(&self) -> Option<&str> {
        self.checks.iter().find(|c| !c.passed()).map(|c| c.name.as_str())
    }
}

/// Helper that accumulates one identity's violations in scan order.
pub struct CheckBuilder {
    name: String,
    tuples: usize,
    violations: Vec<Violation>,
}

impl CheckBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        CheckBuilder { name: name.into(), tuples: 0, violations: Vec::new() }
    }

    /// Record one tuple: passes when both sides agree coordinatewise.
    pub fn record(&mut self, tuple: &[usize], lhs: &[Scalar], rhs: &[Scalar]) {
        self.tuples += 1;
        if lhs != rhs {
            self.violations.push(Violation {
                tuple: tuple.to_vec(),
                lhs: lhs.to_vec(),
                rhs: rhs.to_vec(),
            });
        }
    }

    pub fn finish(self) -> IdentityCheck {
        IdentityCheck { name: self.name, tuples_checked: self.tuples, violations: self.violations }
    }
}
