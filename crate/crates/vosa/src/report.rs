//! Structured check results shared by every verification suite.

use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    /// Combines two verdicts: any failure fails, otherwise any inconclusive is inconclusive.
    pub fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Pass,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Residual of a check: an exact rational rendered as a string, or a float.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "domain", content = "value", rename_all = "lowercase")]
pub enum Residual {
    Exact(String),
    Approx(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub tag: String,
    pub inputs: String,
    pub residual: Residual,
    pub tolerance: f64,
    pub truncation_budget: f64,
    pub truncated: bool,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

impl CheckRecord {
    /// Exact record: passes iff the residual is zero.
    pub fn exact(tag: &str, inputs: String, residual_zero: bool, residual: String) -> Self {
        CheckRecord {
            tag: tag.to_string(),
            inputs,
            residual: Residual::Exact(residual),
            tolerance: 0.0,
            truncation_budget: 0.0,
            truncated: false,
            verdict: if residual_zero { Verdict::Pass } else { Verdict::Fail },
            witness: None,
        }
    }

    /// Numerical record: pass iff residual ≤ tol + budget; inconclusive if the budget alone exceeds tol
    /// and the residual is not below tol.
    pub fn approx(tag: &str, inputs: String, residual: f64, tol: f64, budget: f64) -> Self {
        let verdict = if !residual.is_finite() {
            Verdict::Fail
        } else if residual <= tol {
            Verdict::Pass
        } else if residual <= tol + budget {
            if budget > tol {
                Verdict::Inconclusive
            } else {
                Verdict::Pass
            }
        } else {
            Verdict::Fail
        };
        CheckRecord {
            tag: tag.to_string(),
            inputs,
            residual: Residual::Approx(residual),
            tolerance: tol,
            truncation_budget: budget,
            truncated: false,
            verdict,
            witness: None,
        }
    }

    pub fn with_witness(mut self, w: impl Into<String>) -> Self {
        self.witness = Some(w.into());
        self
    }

    pub fn with_verdict(mut self, v: Verdict) -> Self {
        self.verdict = v;
        self
    }

    pub fn flag_truncated(mut self, truncated: bool) -> Self {
        self.truncated = truncated;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub suite: String,
    pub model_fingerprint: String,
    pub records: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_time_ms: Option<u64>,
}

impl CheckReport {
    pub fn new(suite: &str, model_fingerprint: &str) -> Self {
        CheckReport {
            suite: suite.to_string(),
            model_fingerprint: model_fingerprint.to_string(),
            records: Vec::new(),
            wall_time_ms: None,
        }
    }

    pub fn push(&mut self, r: CheckRecord) {
        self.records.push(r);
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.records.extend(other.records);
    }

    pub fn verdict(&self) -> Verdict {
        self.records.iter().fold(Verdict::Pass, |v, r| v.and(r.verdict))
    }

    pub fn passed(&self) -> bool {
        self.verdict() == Verdict::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| r.verdict != Verdict::Pass)
    }

    /// Largest numerical residual among the records.
    pub fn max_residual(&self) -> f64 {
        self.records
            .iter()
            .filter_map(|r| match r.residual {
                Residual::Approx(x) => Some(x),
                Residual::Exact(_) => None,
            })
            .fold(0.0, f64::max)
    }

    /// Exit code: 0 pass, 1 fail, 2 inconclusive.
    pub fn exit_code(&self) -> i32 {
        match self.verdict() {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Inconclusive => 2,
        }
    }

    pub fn summary(&self) -> String {
        let n = self.records.len();
        let bad = self.failures().count();
        format!("{}: {} ({} records, {} not passing)", self.suite, self.verdict(), n, bad)
    }
}

/// Short hex digest of a string.
pub fn digest(s: &str) -> String {
    let h = Sha256::digest(s.as_bytes());
    h.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_lattice() {
        let mut r = CheckReport::new("t", "x");
        r.push(CheckRecord::approx("a", String::new(), 1e-12, 1e-9, 0.0));
        assert_eq!(r.exit_code(), 0);
        r.push(CheckRecord::approx("b", String::new(), 1e-3, 1e-9, 1e-2));
        assert_eq!(r.exit_code(), 2);
        r.push(CheckRecord::exact("c", String::new(), false, "1/2".into()));
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn digest_is_stable() {
        assert_eq!(digest("abc"), digest("abc"));
        assert_eq!(digest("abc").len(), 16);
    }
}
