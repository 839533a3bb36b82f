//! Per-check records shared by all verification engines.

use std::collections::BTreeMap;

use serde::Serialize;

/// Number of witnesses kept per check; the failure count is always exact.
pub const MAX_WITNESSES: usize = 20;

#[derive(Debug, Clone, Default, Serialize, PartialEq)]
pub struct CheckReport {
    pub identity: String,
    pub params: String,
    /// Instances examined.
    pub checked: usize,
    /// Instances where both sides were nonzero (or otherwise informative).
    pub nontrivial: usize,
    pub failed: usize,
    pub failures: Vec<String>,
    /// Resolved conventions, tables and other findings, keyed for output.
    pub data: BTreeMap<String, String>,
}

impl CheckReport {
    pub fn new(identity: impl Into<String>, params: impl Into<String>) -> Self {
        Self {
            identity: identity.into(),
            params: params.into(),
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    pub fn record(&mut self, ok: bool, nontrivial: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if nontrivial {
            self.nontrivial += 1;
        }
        if !ok {
            self.fail(witness());
        }
    }

    pub fn fail(&mut self, witness: String) {
        self.failed += 1;
        if self.failures.len() < MAX_WITNESSES {
            self.failures.push(witness);
        }
    }

    pub fn note(&mut self, key: impl Into<String>, value: impl ToString) {
        self.data.insert(key.into(), value.to_string());
    }

    /// Folds another report's counts and witnesses into this one.
    pub fn absorb(&mut self, other: &CheckReport) {
        self.checked += other.checked;
        self.nontrivial += other.nontrivial;
        self.failed += other.failed;
        for f in &other.failures {
            if self.failures.len() < MAX_WITNESSES {
                self.failures.push(format!("{}: {f}", other.identity));
            }
        }
        for (k, v) in &other.data {
            self.data
                .entry(format!("{}.{k}", other.identity))
                .or_insert_with(|| v.clone());
        }
    }
}
