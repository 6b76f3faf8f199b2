//! Serializable summary of a chain computation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pfaffian::ChainReport;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepReport {
    pub p: usize,
    pub generators: Vec<String>,
    pub dim: i64,
    pub trivial: bool,
}

/// `{verdict, rho, p_infinity, steps, autonomized, n_aut}` with generators
/// printed in the polynomial syntax.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub verdict: bool,
    pub rho: i64,
    pub p_infinity: usize,
    pub steps: Vec<StepReport>,
    pub autonomized: bool,
    pub n_aut: usize,
}

impl From<&ChainReport> for Report {
    fn from(chain: &ChainReport) -> Report {
        Report {
            verdict: chain.integrable,
            rho: chain.rho,
            p_infinity: chain.p_infinity,
            steps: chain
                .steps
                .iter()
                .map(|s| StepReport {
                    p: s.p,
                    generators: s.generators.iter().map(|g| g.to_string()).collect(),
                    dim: s.dim,
                    trivial: s.trivial,
                })
                .collect(),
            autonomized: chain.autonomized,
            n_aut: chain.n_aut,
        }
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Report> {
        serde_json::from_str(text).map_err(|e| Error::InvalidSystem(format!("bad report: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::Limits;
    use crate::pfaffian::build_chain;
    use crate::sysfile::parse_system;

    #[test]
    fn json_round_trip() {
        let s =
            parse_system("vars x: a b\nvars y: y\nd y / d a = y^2\nd y / d b = y^2 + 1\n").unwrap();
        let report = Report::from(&build_chain(&s, &Limits::default()).unwrap());
        assert!(!report.verdict);
        assert_eq!(report.steps[2].generators, ["1"]);
        let json = report.to_json();
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["rho"], -1);
        assert_eq!(value["steps"][1]["generators"][0], "y");
        assert_eq!(Report::from_json(&json).unwrap(), report);
        assert!(Report::from_json("{\"verdict\": 1}").is_err());
    }
}
