//! Check verdicts and counterexample records shared by the verification
//! routines.

use serde::{Serialize, Serializer};

use crate::exactlin::Rational;

pub fn serialize_rational<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// A failed assertion, with enough context to reproduce it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub check: String,
    pub hypergraph: String,
    pub p: Option<usize>,
    pub s: Option<u32>,
    pub expected: String,
    pub got: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "reason", rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub verdict: Verdict,
}

/// Accumulates check verdicts and counterexamples for one subject.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CheckLog {
    pub checks: Vec<CheckRecord>,
    pub counterexamples: Vec<Counterexample>,
}

impl CheckLog {
    pub fn pass(&mut self, name: impl Into<String>) {
        self.checks.push(CheckRecord {
            name: name.into(),
            verdict: Verdict::Pass,
        });
    }

    pub fn skip(&mut self, name: impl Into<String>, reason: impl Into<String>) {
        self.checks.push(CheckRecord {
            name: name.into(),
            verdict: Verdict::Skipped(reason.into()),
        });
    }

    pub fn fail(&mut self, cx: Counterexample) {
        self.checks.push(CheckRecord {
            name: cx.check.clone(),
            verdict: Verdict::Fail,
        });
        self.counterexamples.push(cx);
    }

    /// Records `name` as passed when `ok`, otherwise as failed with the given context.
    #[allow(clippy::too_many_arguments)]
    pub fn expect(
        &mut self,
        ok: bool,
        name: &str,
        hypergraph: &str,
        p: Option<usize>,
        s: Option<u32>,
        expected: impl ToString,
        got: impl ToString,
    ) {
        if ok {
            self.pass(name);
        } else {
            self.fail(Counterexample {
                check: name.to_string(),
                hypergraph: hypergraph.to_string(),
                p,
                s,
                expected: expected.to_string(),
                got: got.to_string(),
            });
        }
    }

    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
            && self.checks.iter().all(|c| c.verdict != Verdict::Fail)
    }

    pub fn merge(&mut self, other: CheckLog) {
        self.checks.extend(other.checks);
        self.counterexamples.extend(other.counterexamples);
    }
}
