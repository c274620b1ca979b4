//! Proof files:
//!
//! ```json
//! {"level": "3/2",
//!  "steps": [{"lhs": "(a b)^w", "rhs": "(a b)^w b (a b)^w",
//!             "rule": {"type": "gamma", "u": "a b", "v": "b"}}]}
//! ```
//!
//! Rule objects: `trivial`, `gamma {u, v}`, `mul {left, right}`,
//! `omega {from}`, `trans {first, second}`; indices are 0-based.

use serde::{Deserialize, Serialize};

use super::{Inequality, Justification, Proof, ProofStep};
use crate::error::Error;
use crate::level::Level;
use crate::term::parse_term;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofFile {
    pub level: Level,
    pub steps: Vec<StepFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepFile {
    pub lhs: String,
    pub rhs: String,
    pub rule: RuleFile,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum RuleFile {
    Trivial,
    Gamma { u: String, v: String },
    Mul { left: usize, right: usize },
    Omega { from: usize },
    Trans { first: usize, second: usize },
}

impl ProofFile {
    pub fn from_json(text: &str) -> Result<ProofFile, Error> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("proof files serialize")
    }

    pub fn from_proof(p: &Proof) -> ProofFile {
        ProofFile {
            level: p.level,
            steps: p
                .steps
                .iter()
                .map(|s| StepFile {
                    lhs: s.inequality.lhs.to_string(),
                    rhs: s.inequality.rhs.to_string(),
                    rule: match &s.rule {
                        Justification::Trivial => RuleFile::Trivial,
                        Justification::GammaAxiom { u, v } => RuleFile::Gamma {
                            u: u.to_string(),
                            v: v.to_string(),
                        },
                        Justification::Mul(j, k) => RuleFile::Mul {
                            left: *j,
                            right: *k,
                        },
                        Justification::OmegaRule(j) => RuleFile::Omega { from: *j },
                        Justification::Trans(j, k) => RuleFile::Trans {
                            first: *j,
                            second: *k,
                        },
                    },
                })
                .collect(),
        }
    }

    pub fn to_proof(&self) -> Result<Proof, Error> {
        let steps = self
            .steps
            .iter()
            .map(|s| {
                Ok(ProofStep {
                    inequality: Inequality::new(parse_term(&s.lhs)?, parse_term(&s.rhs)?),
                    rule: match &s.rule {
                        RuleFile::Trivial => Justification::Trivial,
                        RuleFile::Gamma { u, v } => Justification::GammaAxiom {
                            u: parse_term(u)?,
                            v: parse_term(v)?,
                        },
                        RuleFile::Mul { left, right } => Justification::Mul(*left, *right),
                        RuleFile::Omega { from } => Justification::OmegaRule(*from),
                        RuleFile::Trans { first, second } => Justification::Trans(*first, *second),
                    },
                })
            })
            .collect::<Result<Vec<_>, Error>>()?;
        Ok(Proof {
            level: self.level,
            steps,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = r#"{"level":"3/2","steps":[{"lhs":"a^w","rhs":"a^w","rule":{"type":"trivial"}},{"lhs":"(a b)^w","rhs":"(a b)^w b (a b)^w","rule":{"type":"gamma","u":"a b","v":"b"}},{"lhs":"a^w (a b)^w","rhs":"a^w ((a b)^w b (a b)^w)","rule":{"type":"mul","left":0,"right":1}},{"lhs":"(a^w (a b)^w)^w","rhs":"(a^w ((a b)^w b (a b)^w))^w","rule":{"type":"omega","from":2}},{"lhs":"a^w","rhs":"a^w","rule":{"type":"trans","first":0,"second":0}}]}"#;
        let file = ProofFile::from_json(text).unwrap();
        let proof = file.to_proof().unwrap();
        assert_eq!(proof.steps.len(), 5);
        assert_eq!(proof.steps[2].rule, Justification::Mul(0, 1));
        assert_eq!(ProofFile::from_proof(&proof).to_json(), text);
    }

    #[test]
    fn bad_terms_and_rules() {
        let bad_term =
            r#"{"level":"3/2","steps":[{"lhs":"(a","rhs":"a","rule":{"type":"trivial"}}]}"#;
        assert!(ProofFile::from_json(bad_term).unwrap().to_proof().is_err());
        let bad_rule = r#"{"level":"3/2","steps":[{"lhs":"a","rhs":"a","rule":{"type":"magic"}}]}"#;
        assert!(ProofFile::from_json(bad_rule).is_err());
    }
}
