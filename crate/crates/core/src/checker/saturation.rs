use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::formula::{Formula, Sign, SignedFormula};
use crate::rules::{expansion, Expansion};

/// A partial valuation read off an open branch. Atoms that do not occur
/// on the branch are left out and may take either value.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Countermodel {
    /// Ground atom (ASCII spelling) to truth value.
    pub assignments: BTreeMap<String, Sign>,
}

impl Countermodel {
    pub fn get(&self, atom: &str) -> Option<Sign> {
        self.assignments.get(atom).copied()
    }

    /// Truth of a propositional formula, with unassigned atoms taken from
    /// `default`.
    pub fn evaluate(&self, phi: &Formula, default: Sign) -> bool {
        eval(phi, &|atom| self.get(atom).unwrap_or(default) == Sign::True)
    }
}

impl fmt::Display for Countermodel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.assignments.iter().map(|(a, s)| format!("v({a})={s}")).collect();
        f.write_str(&parts.join(", "))
    }
}

/// Truth value of a quantifier-free formula under `value` (keyed by the
/// atom's ASCII spelling).
///
/// # Panics
/// On quantifiers.
pub fn eval(phi: &Formula, value: &dyn Fn(&str) -> bool) -> bool {
    match phi {
        Formula::Atom(..) => value(&phi.to_string()),
        Formula::Not(a) => !eval(a, value),
        Formula::And(a, b) => eval(a, value) && eval(b, value),
        Formula::Or(a, b) => eval(a, value) || eval(b, value),
        Formula::Implies(a, b) => !eval(a, value) || eval(b, value),
        Formula::ForAll(..) | Formula::Exists(..) => {
            panic!("cannot evaluate a quantified formula propositionally")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CountermodelError {
    #[error("the branch is not saturated")]
    NotSaturated,
    #[error("atom {0} contains a variable; first-order branches have no countermodel here")]
    NotGround(String),
    #[error("atom {0} is signed both T and F on the branch")]
    Contradictory(String),
}

/// Every α formula has all its components on the branch, every β formula at
/// least one, and no quantified formula remains.
pub fn saturated(branch: &[SignedFormula]) -> bool {
    branch.iter().all(|sf| match expansion(sf) {
        Expansion::Literal => true,
        Expansion::Alpha(_, comps) => comps.iter().all(|c| branch.contains(c)),
        Expansion::Beta(_, l, r) => branch.contains(&l) || branch.contains(&r),
        Expansion::Gamma { .. } | Expansion::Delta { .. } => false,
    })
}

/// The valuation given by the signed atoms of a saturated branch.
pub fn extract_countermodel(branch: &[SignedFormula]) -> Result<Countermodel, CountermodelError> {
    if !saturated(branch) {
        return Err(CountermodelError::NotSaturated);
    }
    let mut model = Countermodel::default();
    for sf in branch {
        if let Formula::Atom(_, args) = &sf.formula {
            let key = sf.formula.to_string();
            if !args.iter().all(|a| a.is_ground()) {
                return Err(CountermodelError::NotGround(key));
            }
            match model.assignments.insert(key.clone(), sf.sign) {
                Some(prev) if prev != sf.sign => return Err(CountermodelError::Contradictory(key)),
                _ => {}
            }
        }
    }
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;

    fn branch(items: &[&str]) -> Vec<SignedFormula> {
        items
            .iter()
            .map(|s| {
                let (sign, f) = s.split_at(1);
                let sign = if sign == "T" { Sign::True } else { Sign::False };
                SignedFormula::new(sign, parse_formula(f.trim()).unwrap())
            })
            .collect()
    }

    #[test]
    fn saturation_examples() {
        assert!(saturated(&branch(&["T A", "T A&B->C", "F C", "F A&B", "F B"])));
        assert!(saturated(&branch(&["T A|B", "F C", "T A"])));
        assert!(!saturated(&branch(&["T A->B", "T B->C", "T A", "F C", "T B"])));
        assert!(!saturated(&branch(&["T A&B", "T A"])));
        assert!(!saturated(&branch(&["T Ax P(x)", "T P(a)"])));
        assert!(!saturated(&branch(&["T Ex P(x)", "T P(a)"])));
        assert!(saturated(&branch(&["T ~~A", "F ~A", "T A"])));
    }

    #[test]
    fn countermodel_examples() {
        let m = extract_countermodel(&branch(&["T A", "T A&B->C", "F C", "F A&B", "F B"])).unwrap();
        assert_eq!(m.to_string(), "v(A)=T, v(B)=F, v(C)=F");
        let m = extract_countermodel(&branch(&["T A|B", "F C", "T A"])).unwrap();
        assert_eq!(m.to_string(), "v(A)=T, v(C)=F");
        assert_eq!(m.get("B"), None);
        let m = extract_countermodel(&branch(&["T A"])).unwrap();
        assert_eq!(m.to_string(), "v(A)=T");
    }

    #[test]
    fn countermodel_errors() {
        assert_eq!(
            extract_countermodel(&branch(&["T A->B", "T B->C", "T A", "F C", "T B"])),
            Err(CountermodelError::NotSaturated)
        );
        assert_eq!(
            extract_countermodel(&branch(&["T H(a)"])),
            Err(CountermodelError::NotGround("H(a)".into()))
        );
        assert_eq!(
            extract_countermodel(&branch(&["T A", "F A"])),
            Err(CountermodelError::Contradictory("A".into()))
        );
    }

    #[test]
    fn evaluation() {
        let m = extract_countermodel(&branch(&["T A|B", "F C", "T A"])).unwrap();
        let prem = parse_formula("A|B").unwrap();
        let concl = parse_formula("C").unwrap();
        for default in [Sign::True, Sign::False] {
            assert!(m.evaluate(&prem, default));
            assert!(!m.evaluate(&concl, default));
        }
    }
}
