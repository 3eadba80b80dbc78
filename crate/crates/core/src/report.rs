//! Structured results: one record per check.

use std::collections::BTreeMap;
use std::fmt::Display;

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Assertion {
    pub name: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Observation {
    pub name: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub probe: String,
    pub q: u64,
    pub r: u64,
    pub theta_exponent: Option<u64>,
    pub seed: Option<u64>,
    pub assertions: Vec<Assertion>,
    pub observations: Vec<Observation>,
}

impl ProbeReport {
    pub fn new(probe: &str, q: u64, r: u64) -> ProbeReport {
        ProbeReport {
            probe: probe.into(),
            q,
            r,
            theta_exponent: None,
            seed: None,
            assertions: Vec::new(),
            observations: Vec::new(),
        }
    }

    pub fn expect_eq<T: Display + PartialEq>(&mut self, name: &str, expected: T, got: T) {
        let pass = expected == got;
        self.assertions.push(Assertion {
            name: name.into(),
            expected: expected.to_string(),
            got: got.to_string(),
            pass,
        });
    }

    pub fn expect(&mut self, name: &str, pass: bool) {
        self.expect_eq(name, true, pass);
    }

    pub fn observe(&mut self, name: &str, value: impl Display) {
        self.observations.push(Observation { name: name.into(), value: value.to_string() });
    }

    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.pass)
    }

    pub fn failures(&self) -> Vec<&Assertion> {
        self.assertions.iter().filter(|a| !a.pass).collect()
    }
}

/// A single numeric check `lhs = rhs` from the character-sum experiments.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub experiment: String,
    pub p: u64,
    pub m: u32,
    pub r: u64,
    pub k: u32,
    pub params: BTreeMap<String, String>,
    pub lhs: String,
    pub rhs: String,
    pub verdict: String,
}

impl CheckRecord {
    pub fn new(experiment: &str, p: u64, m: u32, r: u64, k: u32) -> CheckRecord {
        CheckRecord {
            experiment: experiment.into(),
            p,
            m,
            r,
            k,
            params: BTreeMap::new(),
            lhs: String::new(),
            rhs: String::new(),
            verdict: String::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Display) -> CheckRecord {
        self.params.insert(key.into(), value.to_string());
        self
    }

    /// Sets both sides and a pass/fail verdict from their equality.
    pub fn compare(mut self, lhs: impl Display, rhs: impl Display) -> CheckRecord {
        self.lhs = lhs.to_string();
        self.rhs = rhs.to_string();
        self.verdict = if self.lhs == self.rhs { "pass" } else { "fail" }.into();
        self
    }

    /// Sets both sides with an explicit verdict, for checks that are not
    /// plain equalities.
    pub fn judge(mut self, lhs: impl Display, rhs: impl Display, pass: bool) -> CheckRecord {
        self.lhs = lhs.to_string();
        self.rhs = rhs.to_string();
        self.verdict = if pass { "pass" } else { "fail" }.into();
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }
}
