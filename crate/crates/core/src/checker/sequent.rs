use std::fmt;

use thiserror::Error;

use crate::formula::{parse_sequent_parts, Formula, ParseError, Sign};
use crate::script::{Justification, ProofScript};

/// `φ1, …, φn ⊢ ψ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sequent {
    pub premises: Vec<Formula>,
    pub conclusion: Formula,
}

impl Sequent {
    pub fn new(premises: Vec<Formula>, conclusion: Formula) -> Self {
        Sequent { premises, conclusion }
    }

    /// Parses `A->B, B->C, A |- C`.
    pub fn parse(text: &str) -> Result<Sequent, ParseError> {
        let (premises, conclusion) = parse_sequent_parts(text)?;
        Ok(Sequent { premises, conclusion })
    }

    /// Equal when the premises agree as multisets and the conclusions match.
    pub fn same_as(&self, other: &Sequent) -> bool {
        if self.conclusion != other.conclusion || self.premises.len() != other.premises.len() {
            return false;
        }
        let mut a: Vec<&Formula> = self.premises.iter().collect();
        let mut b: Vec<&Formula> = other.premises.iter().collect();
        a.sort();
        b.sort();
        a == b
    }

    pub fn is_propositional(&self) -> bool {
        self.premises.iter().all(Formula::is_propositional) && self.conclusion.is_propositional()
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.premises.iter().map(|p| p.to_string()).collect();
        if ps.is_empty() {
            write!(f, "|- {}", self.conclusion)
        } else {
            write!(f, "{} |- {}", ps.join(", "), self.conclusion)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("bad initial tableau at line {line}: {message}")]
pub struct BadInitialSegment {
    pub line: usize,
    pub message: String,
}

/// Reads the sequent off the leading `pre` lines and the `conclusion` line.
pub fn theorem_of(script: &ProofScript) -> Result<Sequent, BadInitialSegment> {
    let mut premises = Vec::new();
    for line in &script.lines {
        let bad = |message: &str| BadInitialSegment { line: line.number, message: message.to_string() };
        let sf = line.content.signed();
        match &line.justification {
            Justification::Premise => {
                let sf = sf.ok_or_else(|| bad("a premise must be a signed formula"))?;
                if line.depth != 0 {
                    return Err(bad("premises must come before any branch"));
                }
                if sf.sign != Sign::True {
                    return Err(bad("premises are signed T"));
                }
                premises.push(sf.formula.clone());
            }
            Justification::Conclusion => {
                let sf = sf.ok_or_else(|| bad("the conclusion must be a signed formula"))?;
                if line.depth != 0 {
                    return Err(bad("the conclusion must come before any branch"));
                }
                if sf.sign != Sign::False {
                    return Err(bad("the conclusion is signed F"));
                }
                return Ok(Sequent { premises, conclusion: sf.formula.clone() });
            }
            _ => return Err(bad("expected the conclusion after the premises")),
        }
    }
    Err(BadInitialSegment { line: script.len(), message: "the proof has no conclusion line".to_string() })
}

/// Grading check: does the script prove exactly `expected`?
pub fn matches_sequent(script: &ProofScript, expected: &Sequent) -> bool {
    theorem_of(script).is_ok_and(|s| s.same_as(expected))
}
