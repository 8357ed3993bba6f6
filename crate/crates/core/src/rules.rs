//! The expansion rule attached to each signed formula.

use crate::formula::{Formula, Sign, SignedFormula};
use crate::script::RuleId;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expansion {
    /// Non-branching: every component is added to the branch.
    Alpha(RuleId, Vec<SignedFormula>),
    /// Branching: the branch splits, one component per side.
    Beta(RuleId, SignedFormula, SignedFormula),
    /// `T ∀x φ` / `F ∃x φ`: any substitutable term.
    Gamma {
        rule: RuleId,
        var: String,
        body: Formula,
        sign: Sign,
    },
    /// `F ∀x φ` / `T ∃x φ`: a new variable.
    Delta {
        rule: RuleId,
        var: String,
        body: Formula,
        sign: Sign,
    },
    Literal,
}

impl Expansion {
    pub fn rule(&self) -> Option<RuleId> {
        match self {
            Expansion::Alpha(r, _) | Expansion::Beta(r, _, _) => Some(*r),
            Expansion::Gamma { rule, .. } | Expansion::Delta { rule, .. } => Some(*rule),
            Expansion::Literal => None,
        }
    }
}

pub fn expansion(sf: &SignedFormula) -> Expansion {
    use Sign::{False as F, True as T};
    let t = |f: &Formula| SignedFormula::t(f.clone());
    let f = |x: &Formula| SignedFormula::f(x.clone());
    match (sf.sign, &sf.formula) {
        (_, Formula::Atom(..)) => Expansion::Literal,
        (T, Formula::Not(a)) => Expansion::Alpha(RuleId::NotT, vec![f(a)]),
        (F, Formula::Not(a)) => Expansion::Alpha(RuleId::NotF, vec![t(a)]),
        (T, Formula::And(a, b)) => Expansion::Alpha(RuleId::AndT, vec![t(a), t(b)]),
        (F, Formula::And(a, b)) => Expansion::Beta(RuleId::AndF, f(a), f(b)),
        (T, Formula::Or(a, b)) => Expansion::Beta(RuleId::OrT, t(a), t(b)),
        (F, Formula::Or(a, b)) => Expansion::Alpha(RuleId::OrF, vec![f(a), f(b)]),
        (T, Formula::Implies(a, b)) => Expansion::Beta(RuleId::ImpT, f(a), t(b)),
        (F, Formula::Implies(a, b)) => Expansion::Alpha(RuleId::ImpF, vec![t(a), f(b)]),
        (T, Formula::ForAll(x, body)) => {
            Expansion::Gamma { rule: RuleId::AllT, var: x.clone(), body: (**body).clone(), sign: T }
        }
        (F, Formula::Exists(x, body)) => {
            Expansion::Gamma { rule: RuleId::ExF, var: x.clone(), body: (**body).clone(), sign: F }
        }
        (F, Formula::ForAll(x, body)) => {
            Expansion::Delta { rule: RuleId::AllF, var: x.clone(), body: (**body).clone(), sign: F }
        }
        (T, Formula::Exists(x, body)) => {
            Expansion::Delta { rule: RuleId::ExT, var: x.clone(), body: (**body).clone(), sign: T }
        }
    }
}
