//! Tallies of named checks over seeded trials.

use std::collections::BTreeMap;

/// Pass count for one property.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub passed: usize,
    pub total: usize,
}

/// A failed check with the data needed to reproduce it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub check: String,
    pub trial: usize,
    pub seed: u64,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub trials: usize,
    pub seed: u64,
    pub checks: BTreeMap<String, Tally>,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    pub fn new(trials: usize, seed: u64) -> SuiteReport {
        SuiteReport { trials, seed, ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn record(&mut self, check: &str, trial: usize, seed: u64, ok: bool, detail: impl FnOnce() -> String) {
        let t = self.checks.entry(check.to_string()).or_default();
        t.total += 1;
        if ok {
            t.passed += 1;
        } else {
            self.failures.push(Failure { check: check.to_string(), trial, seed, detail: detail() });
        }
    }
}

impl SuiteReport {
    pub fn to_json(&self) -> serde_json::Value {
        let checks: serde_json::Map<String, serde_json::Value> = self
            .checks
            .iter()
            .map(|(k, t)| (k.clone(), serde_json::json!({"passed": t.passed, "total": t.total})))
            .collect();
        let failures: Vec<serde_json::Value> = self
            .failures
            .iter()
            .map(|f| serde_json::json!({"check": f.check, "trial": f.trial, "seed": f.seed, "detail": f.detail}))
            .collect();
        serde_json::json!({
            "passed": self.passed(),
            "trials": self.trials,
            "seed": self.seed,
            "checks": checks,
            "failures": failures,
        })
    }
}
