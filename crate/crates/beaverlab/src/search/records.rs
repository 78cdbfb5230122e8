//! Line-delimited result records, one machine per line:
//!
//! ```text
//! index<TAB>code<TAB>machine<TAB>status<TAB>steps<TAB>score<TAB>certificate
//! ```
//!
//! `status` is `halts`, `never-halts`, or `holdout`. For halters `steps` and
//! `score` are the exact run values; for holdouts `steps` records the fuel
//! spent before giving up; absent fields print as `-`. The format is stable
//! and order-preserving, so a results file can be truncated at any line
//! boundary and extended later to an identical file.

use std::fmt;
use std::str::FromStr;

use crate::tm::Machine;

use super::{Certificate, Classification};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MachineRecord {
    pub index: u64,
    pub code: u64,
    pub machine: Machine,
    pub classification: Classification,
}

impl fmt::Display for MachineRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (status, steps, score, cert) = match &self.classification {
            Classification::Halts { steps, score } => {
                ("halts", steps.to_string(), score.to_string(), "-".to_string())
            }
            Classification::NeverHalts { certificate } => {
                ("never-halts", "-".into(), "-".into(), certificate.to_string())
            }
            Classification::Holdout { fuel_used } => {
                ("holdout", fuel_used.to_string(), "-".into(), "-".into())
            }
        };
        write!(
            f,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.index, self.code, self.machine, status, steps, score, cert
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseRecordError {
    #[error("record has {0} fields, want 7")]
    FieldCount(usize),
    #[error("bad {field} field {text:?}")]
    Field { field: &'static str, text: String },
    #[error("machine text decodes to code {actual}, line claims {claimed}")]
    CodeMismatch { claimed: u64, actual: u64 },
}

fn field<T: FromStr>(name: &'static str, text: &str) -> Result<T, ParseRecordError> {
    text.parse().map_err(|_| ParseRecordError::Field { field: name, text: text.to_string() })
}

impl FromStr for MachineRecord {
    type Err = ParseRecordError;

    fn from_str(line: &str) -> Result<MachineRecord, ParseRecordError> {
        let parts: Vec<&str> = line.split('\t').collect();
        let [index, code, machine, status, steps, score, cert] = parts.as_slice() else {
            return Err(ParseRecordError::FieldCount(parts.len()));
        };
        let index: u64 = field("index", index)?;
        let code: u64 = field("code", code)?;
        let machine: Machine = field("machine", machine)?;
        if machine.code() != code {
            return Err(ParseRecordError::CodeMismatch { claimed: code, actual: machine.code() });
        }
        let classification = match *status {
            "halts" => Classification::Halts {
                steps: field("steps", steps)?,
                score: field("score", score)?,
            },
            "never-halts" => Classification::NeverHalts {
                certificate: field::<Certificate>("certificate", cert)?,
            },
            "holdout" => Classification::Holdout { fuel_used: field("steps", steps)? },
            other => {
                return Err(ParseRecordError::Field { field: "status", text: other.to_string() })
            }
        };
        Ok(MachineRecord { index, code, machine, classification })
    }
}
