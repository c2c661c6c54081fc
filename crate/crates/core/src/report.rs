use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    HypothesisFailed,
    Counterexample,
}

/// Verdict of one check on one instance.
///
/// A failed hypothesis never hides the conclusion: `conclusion` always holds
/// the value actually computed on the instance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub check_id: String,
    #[serde(serialize_with = "named_flags")]
    pub hypotheses: Vec<(String, bool)>,
    pub conclusion: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub status: Status,
}

impl CheckReport {
    pub fn new(
        check_id: impl Into<String>,
        hypotheses: Vec<(String, bool)>,
        conclusion: bool,
        witness: Option<Value>,
    ) -> Self {
        let status = if !hypotheses.iter().all(|(_, h)| *h) {
            Status::HypothesisFailed
        } else if conclusion {
            Status::Verified
        } else {
            Status::Counterexample
        };
        let witness = match (status, witness) {
            (Status::Counterexample, None) => Some(json!({ "reason": "conclusion is false" })),
            (_, w) => w,
        };
        CheckReport {
            check_id: check_id.into(),
            hypotheses,
            conclusion,
            witness,
            status,
        }
    }

    /// A check with no hypotheses.
    pub fn unconditional(check_id: impl Into<String>, conclusion: bool, witness: Option<Value>) -> Self {
        Self::new(check_id, Vec::new(), conclusion, witness)
    }

    pub fn is_verified(&self) -> bool {
        self.status == Status::Verified
    }

    pub fn is_counterexample(&self) -> bool {
        self.status == Status::Counterexample
    }

    pub fn hypothesis(&self, name: &str) -> Option<bool> {
        self.hypotheses.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }
}

fn named_flags<S: serde::Serializer>(flags: &[(String, bool)], s: S) -> Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Flag<'a> {
        name: &'a str,
        holds: bool,
    }
    s.collect_seq(flags.iter().map(|(name, holds)| Flag { name, holds: *holds }))
}

/// Shorthand for building hypothesis lists.
pub fn hyps<const N: usize>(items: [(&str, bool); N]) -> Vec<(String, bool)> {
    items.iter().map(|(n, v)| (n.to_string(), *v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_rules() {
        let r = CheckReport::new("x", hyps([("h", true)]), true, None);
        assert_eq!(r.status, Status::Verified);
        let r = CheckReport::new("x", hyps([("h", false)]), false, None);
        assert_eq!(r.status, Status::HypothesisFailed);
        assert!(!r.conclusion);
        let r = CheckReport::new("x", hyps([("h", true)]), false, None);
        assert_eq!(r.status, Status::Counterexample);
        assert!(r.witness.is_some());
        let s = serde_json::to_value(&r).unwrap();
        assert_eq!(s["status"], "counterexample");
        assert_eq!(s["hypotheses"][0], json!({"name": "h", "holds": true}));
    }
}
