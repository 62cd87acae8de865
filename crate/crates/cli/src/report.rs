//! Deterministic JSON run reports with the exit-code conventions:
//! 0 all checks pass, 1 a check failed, 2 malformed input.

use serde::Serialize;

#[derive(Serialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    PassSampled,
    Fail,
    Info,
}

#[derive(Serialize, Debug, Clone)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check { name: name.into(), status: Status::Pass, value: None, residual: None, witness: None }
    }

    pub fn info(name: impl Into<String>, value: serde_json::Value) -> Self {
        Check {
            name: name.into(),
            status: Status::Info,
            value: Some(value),
            residual: None,
            witness: None,
        }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Fail,
            value: None,
            residual: None,
            witness: Some(witness.into()),
        }
    }

    pub fn with_value(mut self, value: serde_json::Value) -> Self {
        self.value = Some(value);
        self
    }

    pub fn with_residual(mut self, residual: f64) -> Self {
        self.residual = Some(residual);
        self
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct RunReport {
    pub command: String,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub exit: i32,
}

impl RunReport {
    pub fn new(command: impl Into<String>, seed: u64) -> Self {
        RunReport { command: command.into(), seed, checks: Vec::new(), exit: 0 }
    }

    pub fn push(&mut self, check: Check) {
        if check.status == Status::Fail {
            self.exit = 1;
        }
        self.checks.push(check);
    }

    pub fn finish(mut self) -> i32 {
        if self.checks.iter().any(|c| c.status == Status::Fail) {
            self.exit = 1;
        }
        println!("{}", serde_json::to_string_pretty(&self).expect("report serializes"));
        self.exit
    }
}

/// Convert a core verification report into checks.
pub fn from_verify(report: &simpl_core::deligne::VerifyReport) -> Vec<Check> {
    report
        .records
        .iter()
        .map(|r| {
            let name = format!("{} on {:?}", r.name, r.key);
            match r.status {
                simpl_core::deligne::CheckStatus::ExactPass => Check::pass(name),
                simpl_core::deligne::CheckStatus::SampledPass => Check {
                    name,
                    status: Status::PassSampled,
                    value: None,
                    residual: Some(r.residual),
                    witness: None,
                },
                simpl_core::deligne::CheckStatus::Fail => {
                    let witness = r
                        .witness
                        .as_ref()
                        .map(|w| format!("{w:?}"))
                        .unwrap_or_else(|| "exact mismatch".to_string());
                    Check::fail(name, witness).with_residual(r.residual)
                }
            }
        })
        .collect()
}
