//! Verification reports: every axiom checker returns a list of named checks
//! with pass/fail status and a witness string on failure. Reports are
//! deterministic — checks are sorted by id — so a fixed input and seed
//! reproduce a run byte-for-byte.

use serde::Serialize;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub statement: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<u32>,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(suite: &str) -> VerificationReport {
        VerificationReport { suite: suite.to_string(), seed: None, max_degree: None, checks: Vec::new() }
    }

    pub fn with_seed(mut self, seed: u64) -> VerificationReport {
        self.seed = Some(seed);
        self
    }

    pub fn with_max_degree(mut self, d: u32) -> VerificationReport {
        self.max_degree = Some(d);
        self
    }

    /// Record a check outcome; `witness` is kept only on failure.
    pub fn record(&mut self, id: impl Into<String>, statement: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) {
        self.checks.push(Check {
            id: id.into(),
            statement: statement.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            witness: if ok { None } else { Some(witness()) },
        });
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    /// Canonical order: checks sorted by id (stable for equal ids).
    pub fn finalize(mut self) -> VerificationReport {
        self.checks.sort_by(|a, b| a.id.cmp(&b.id));
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("suite: {}\n", self.suite));
        if let Some(s) = self.seed {
            out.push_str(&format!("seed: {s}\n"));
        }
        if let Some(d) = self.max_degree {
            out.push_str(&format!("max_degree: {d}\n"));
        }
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            out.push_str(&format!("[{tag}] {}: {}\n", c.id, c.statement));
            if let Some(w) = &c.witness {
                out.push_str(&format!("       witness: {w}\n"));
            }
        }
        let (p, f) = (
            self.checks.iter().filter(|c| c.status == Status::Pass).count(),
            self.checks.iter().filter(|c| c.status == Status::Fail).count(),
        );
        out.push_str(&format!("{p} passed, {f} failed\n"));
        out
    }
}
