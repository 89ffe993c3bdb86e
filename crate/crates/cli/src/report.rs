//! Machine-readable run reports. A report is fully determined by its
//! experiment spec: identical specs produce byte-identical JSON except for
//! the timing field, which `stable_json` strips for comparisons.

use serde::Serialize;

pub const SCHEMA: &str = "frobsplit-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
    NotTestable,
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
            Status::NotTestable => "not-testable",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckResult {
    pub fn new(name: impl Into<String>, status: Status, witness: Option<String>) -> Self {
        CheckResult {
            name: name.into(),
            status,
            witness,
        }
    }

    pub fn pass(name: impl Into<String>) -> Self {
        Self::new(name, Status::Pass, None)
    }

    pub fn pass_with(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Self::new(name, Status::Pass, Some(witness.into()))
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Self::new(name, Status::Fail, Some(witness.into()))
    }

    pub fn inconclusive(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Self::new(name, Status::Inconclusive, Some(witness.into()))
    }

    pub fn not_testable(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Self::new(name, Status::NotTestable, Some(witness.into()))
    }
}

/// Echo of everything that determines a run.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentSpec {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ideal: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vars: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub max_pairs: u64,
    pub max_basis: usize,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub experimental: bool,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub normalize: bool,
}

impl ExperimentSpec {
    pub fn new(command: &str) -> Self {
        ExperimentSpec {
            command: command.to_string(),
            p: None,
            n: None,
            m: None,
            q: None,
            group: None,
            family: None,
            ideal: None,
            vars: None,
            grid: None,
            samples: None,
            seed: None,
            max_pairs: frobsplit::groebner::GbConfig::default().max_pairs,
            max_basis: frobsplit::groebner::GbConfig::default().max_basis,
            experimental: false,
            normalize: false,
        }
    }

    pub fn gb_config(&self) -> frobsplit::groebner::GbConfig {
        frobsplit::groebner::GbConfig {
            max_pairs: self.max_pairs,
            max_basis: self.max_basis,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub version: &'static str,
    pub spec: ExperimentSpec,
    /// The splitting driving the run, when one was constructed:
    /// `{p, vars, c, ideal, normalized}`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi: Option<serde_json::Value>,
    pub checks: Vec<CheckResult>,
    pub status: Status,
    pub elapsed_ms: u128,
}

impl Report {
    /// Assembles a report; the overall status is fail if any check failed,
    /// else inconclusive if any check was inconclusive, else pass.
    /// Not-testable checks are neutral.
    pub fn assemble(spec: ExperimentSpec, checks: Vec<CheckResult>, elapsed_ms: u128) -> Report {
        let status = if checks.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else if checks.iter().any(|c| c.status == Status::Inconclusive) {
            Status::Inconclusive
        } else {
            Status::Pass
        };
        Report {
            schema: SCHEMA,
            version: env!("CARGO_PKG_VERSION"),
            spec,
            phi: None,
            checks,
            status,
            elapsed_ms,
        }
    }

    pub fn with_phi(mut self, phi: Option<serde_json::Value>) -> Report {
        self.phi = phi;
        self
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Inconclusive | Status::NotTestable => 2,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON with the timing field zeroed: the determinism contract is
    /// byte-identical stable JSON for identical specs.
    pub fn stable_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Some(obj) = v.as_object_mut() {
            obj.insert("elapsed_ms".into(), serde_json::json!(0));
        }
        serde_json::to_string_pretty(&v).expect("report serializes")
    }

    pub fn human_summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!("[{:^12}] {}", c.status.label(), c.name));
            if let Some(w) = &c.witness {
                out.push_str(&format!(" — {w}"));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "overall: {} ({} checks, {} ms)\n",
            self.status.label(),
            self.checks.len(),
            self.elapsed_ms
        ));
        out
    }
}
