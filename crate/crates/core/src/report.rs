//! The JSON form of a check, shared by the command line and the service.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::checker::{check, CheckReport, Countermodel, Sequent, Verdict};
use crate::formula::ParseError;
use crate::latex::{build_tree, to_qtree};
use crate::script::{parse_proof, ProofScript};

/// The verdict a grader asks for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expect {
    Valid,
    Countermodel,
}

impl Expect {
    pub fn as_str(self) -> &'static str {
        match self {
            Expect::Valid => "valid",
            Expect::Countermodel => "countermodel",
        }
    }
}

impl FromStr for Expect {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "valid" => Ok(Expect::Valid),
            "countermodel" => Ok(Expect::Countermodel),
            _ => Err(format!("expected 'valid' or 'countermodel', got '{s}'")),
        }
    }
}

impl fmt::Display for Expect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, Default)]
pub struct CheckOptions {
    pub expect: Option<Expect>,
    pub expected_sequent: Option<Sequent>,
    pub latex: bool,
}

impl CheckOptions {
    pub fn grading(&self) -> bool {
        self.expect.is_some() || self.expected_sequent.is_some()
    }
}

/// A checked proof, or the reason it could not be read.
#[derive(Clone, Debug)]
pub enum Outcome {
    Checked { script: ProofScript, report: CheckReport },
    ParseError(ParseError),
}

impl Outcome {
    pub fn from_text(text: &str) -> Outcome {
        match parse_proof(text) {
            Ok(script) => {
                let report = check(&script);
                Outcome::Checked { script, report }
            }
            Err(e) => Outcome::ParseError(e),
        }
    }

    pub fn verdict_kind(&self) -> &'static str {
        match self {
            Outcome::Checked { report, .. } => report.verdict.kind(),
            Outcome::ParseError(_) => "parse_error",
        }
    }

    /// Verdict and sequent both as requested; vacuously true without requests.
    pub fn grade_ok(&self, opts: &CheckOptions) -> bool {
        let Outcome::Checked { report, .. } = self else { return false };
        let verdict_ok = opts.expect.is_none_or(|e| e.as_str() == report.verdict.kind());
        let sequent_ok = opts
            .expected_sequent
            .as_ref()
            .is_none_or(|want| report.sequent.as_ref().is_some_and(|got| got.same_as(want)));
        verdict_ok && sequent_ok
    }

    pub fn latex(&self) -> Option<String> {
        match self {
            Outcome::Checked { script, report } => Some(to_qtree(&build_tree(script, report))),
            Outcome::ParseError(_) => None,
        }
    }

    /// The JSON document; keys come out sorted.
    pub fn to_json(&self, opts: &CheckOptions) -> Value {
        let mut doc = Map::new();
        doc.insert("verdict".into(), json!(self.verdict_kind()));
        match self {
            Outcome::Checked { report, .. } => {
                doc.insert("sequent".into(), report.sequent.as_ref().map_or(Value::Null, sequent_json));
                let diags: Vec<Value> = report
                    .diagnostics
                    .iter()
                    .map(|d| json!({"line": d.line, "code": d.code.as_str(), "message": d.message, "refs": d.refs}))
                    .collect();
                doc.insert("diagnostics".into(), Value::Array(diags));
                if let Verdict::CountermodelFound { model, .. } = &report.verdict {
                    doc.insert("countermodel".into(), countermodel_json(model));
                }
                if matches!(report.verdict, Verdict::CountermodelFound { .. } | Verdict::Incomplete { .. }) {
                    let open: Vec<Value> = report
                        .open_branches
                        .iter()
                        .map(|b| {
                            json!({"start": b.leaf.start, "end": b.leaf.end, "lines": b.lines, "saturated": b.saturated})
                        })
                        .collect();
                    doc.insert("open_branches".into(), Value::Array(open));
                }
            }
            Outcome::ParseError(e) => {
                doc.insert("sequent".into(), Value::Null);
                doc.insert(
                    "diagnostics".into(),
                    json!([{"line": e.line, "column": e.column, "code": "PARSE_ERROR", "message": e.message, "refs": []}]),
                );
            }
        }
        if opts.latex {
            if let Some(tex) = self.latex() {
                doc.insert("latex".into(), json!(tex));
            }
        }
        if opts.grading() {
            doc.insert("grade_ok".into(), json!(self.grade_ok(opts)));
        }
        Value::Object(doc)
    }
}

pub fn sequent_json(seq: &Sequent) -> Value {
    let premises: Vec<String> = seq.premises.iter().map(|p| p.to_string()).collect();
    json!({"premises": premises, "conclusion": seq.conclusion.to_string()})
}

pub fn countermodel_json(model: &Countermodel) -> Value {
    let map: Map<String, Value> =
        model.assignments.iter().map(|(atom, sign)| (atom.clone(), json!(sign.to_string()))).collect();
    Value::Object(map)
}

/// Pretty, stable rendering with a trailing newline.
pub fn to_pretty(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("JSON values always serialise");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::example;

    fn doc(id: &str, opts: &CheckOptions) -> Value {
        Outcome::from_text(example(id).unwrap().text).to_json(opts)
    }

    #[test]
    fn valid_document() {
        let d = doc("transitivity", &CheckOptions::default());
        assert_eq!(d["verdict"], "valid");
        assert_eq!(d["sequent"]["premises"], json!(["A->B", "B->C", "A"]));
        assert_eq!(d["sequent"]["conclusion"], "C");
        assert_eq!(d["diagnostics"], json!([]));
        assert!(d.get("countermodel").is_none());
        assert!(d.get("latex").is_none());
        assert!(d.get("grade_ok").is_none());
    }

    #[test]
    fn countermodel_document() {
        let d = doc("countermodel-2", &CheckOptions::default());
        assert_eq!(d["countermodel"], json!({"A": "T", "C": "F"}));
        assert_eq!(d["open_branches"][0]["lines"], json!([1, 2, 3]));
    }

    #[test]
    fn keys_are_sorted_and_stable() {
        let opts = CheckOptions { latex: true, expect: Some(Expect::Valid), ..Default::default() };
        let a = to_pretty(&doc("countermodel-1", &opts));
        let b = to_pretty(&doc("countermodel-1", &opts));
        assert_eq!(a, b);
        let d = doc("countermodel-1", &opts);
        let keys: Vec<&String> = d.as_object().unwrap().keys().collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn grading() {
        let seq = Sequent::parse("A->B, B->C, A |- C").unwrap();
        let opts =
            CheckOptions { expect: Some(Expect::Valid), expected_sequent: Some(seq.clone()), latex: false };
        assert_eq!(doc("transitivity", &opts)["grade_ok"], true);
        assert_eq!(doc("transitivity-incomplete", &opts)["grade_ok"], false);
        let wrong =
            CheckOptions { expected_sequent: Some(Sequent::parse("A |- C").unwrap()), ..Default::default() };
        assert_eq!(doc("transitivity", &wrong)["grade_ok"], false);
        let cm = CheckOptions { expect: Some(Expect::Countermodel), ..Default::default() };
        assert_eq!(doc("countermodel-1", &cm)["grade_ok"], true);
    }

    #[test]
    fn parse_error_document() {
        let d = Outcome::from_text("T A pre\nF A& conclusion")
            .to_json(&CheckOptions { latex: true, ..Default::default() });
        assert_eq!(d["verdict"], "parse_error");
        assert_eq!(d["diagnostics"][0]["line"], 2);
        assert_eq!(d["diagnostics"][0]["code"], "PARSE_ERROR");
        assert!(d.get("latex").is_none());
    }

    #[test]
    fn expect_parses() {
        assert_eq!("valid".parse::<Expect>(), Ok(Expect::Valid));
        assert!("invalid".parse::<Expect>().is_err());
    }
}
