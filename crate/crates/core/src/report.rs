use std::fmt;

use serde::Serialize;

use crate::exact::ExactScalar;

/// One instance where the two sides of an identity differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityFailure {
    pub inputs: String,
    pub lhs: ExactScalar,
    pub rhs: ExactScalar,
}

/// Outcome of an exact identity sweep. `failures` is empty iff every checked
/// instance agreed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub instances_checked: usize,
    pub failures: Vec<IdentityFailure>,
}

impl IdentityReport {
    pub fn new(name: impl Into<String>) -> Self {
        IdentityReport {
            name: name.into(),
            instances_checked: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Records one comparison.
    pub fn check(&mut self, inputs: impl FnOnce() -> String, lhs: ExactScalar, rhs: ExactScalar) {
        self.instances_checked += 1;
        if lhs != rhs {
            self.failures.push(IdentityFailure {
                inputs: inputs(),
                lhs,
                rhs,
            });
        }
    }

    /// Records a comparison whose two sides are not scalars.
    pub fn check_bool(&mut self, inputs: impl FnOnce() -> String, ok: bool) {
        let v = |b: bool| ExactScalar::from_integer(b as i64);
        self.check(inputs, v(ok), v(true));
    }

    pub fn merge(&mut self, other: IdentityReport) {
        self.instances_checked += other.instances_checked;
        self.failures.extend(other.failures);
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {}: {} instances, {} failures",
            self.name,
            self.instances_checked,
            self.failures.len()
        )
    }
}
