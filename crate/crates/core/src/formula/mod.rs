//! First-order terms and formulas.
//!
//! Every lowercase identifier is a variable; whether it behaves like a
//! constant is decided by the checker (freshness), not by the syntax.

mod format;
pub(crate) mod parse;
pub(crate) mod subst;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use format::{format_formula, Notation};
pub use parse::{parse_formula, parse_sequent_parts, ParseError};
pub use subst::{
    apply_substitution, free_vars, is_substitutable, match_instance, naive_witness, MatchResult,
    NotSubstitutable,
};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(String),
    /// A function application; zero arguments make it a constant, written `c()`.
    Compound(String, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn compound(functor: impl Into<String>, args: Vec<Term>) -> Self {
        Term::Compound(functor.into(), args)
    }

    /// Every variable name occurring in the term.
    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Compound(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Compound(_, args) => args.iter().all(Term::is_ground),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(String, Vec<Term>),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    ForAll(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Formula {
    /// A propositional atom (predicate with no arguments).
    pub fn prop(name: impl Into<String>) -> Self {
        Formula::Atom(name.into(), Vec::new())
    }

    pub fn atom(name: impl Into<String>, args: Vec<Term>) -> Self {
        Formula::Atom(name.into(), args)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Self {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    pub fn forall(var: impl Into<String>, body: Formula) -> Self {
        Formula::ForAll(var.into(), Box::new(body))
    }

    pub fn exists(var: impl Into<String>, body: Formula) -> Self {
        Formula::Exists(var.into(), Box::new(body))
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Formula::Atom(..))
    }

    /// True when no quantifier and no variable occurs anywhere.
    pub fn is_propositional(&self) -> bool {
        match self {
            Formula::Atom(_, args) => args.iter().all(Term::is_ground),
            Formula::Not(f) => f.is_propositional(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.is_propositional() && r.is_propositional()
            }
            Formula::ForAll(..) | Formula::Exists(..) => false,
        }
    }

    /// Every variable name occurring in the formula, free or bound,
    /// including the variables named by quantifiers.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_all_vars(&mut out);
        out
    }

    fn collect_all_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
            Formula::Not(f) => f.collect_all_vars(out),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.collect_all_vars(out);
                r.collect_all_vars(out);
            }
            Formula::ForAll(v, body) | Formula::Exists(v, body) => {
                out.insert(v.clone());
                body.collect_all_vars(out);
            }
        }
    }

    /// Atoms in order of first occurrence (left to right), deduplicated.
    pub fn atoms(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a Formula>) {
        match self {
            Formula::Atom(..) => {
                if !out.contains(&self) {
                    out.push(self);
                }
            }
            Formula::Not(f) => f.collect_atoms(out),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
            Formula::ForAll(_, body) | Formula::Exists(_, body) => body.collect_atoms(out),
        }
    }

    /// Number of connectives and quantifiers.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(..) => 0,
            Formula::Not(f) => 1 + f.size(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => 1 + l.size() + r.size(),
            Formula::ForAll(_, body) | Formula::Exists(_, body) => 1 + body.size(),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_formula(self, Notation::Ascii))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Compound(name, args) => {
                f.write_str(name)?;
                f.write_str("(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "T")]
    True,
    #[serde(rename = "F")]
    False,
}

impl Sign {
    pub fn letter(self) -> char {
        match self {
            Sign::True => 'T',
            Sign::False => 'F',
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::True => Sign::False,
            Sign::False => Sign::True,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedFormula {
    pub sign: Sign,
    pub formula: Formula,
}

impl SignedFormula {
    pub fn new(sign: Sign, formula: Formula) -> Self {
        SignedFormula { sign, formula }
    }

    pub fn t(formula: Formula) -> Self {
        SignedFormula::new(Sign::True, formula)
    }

    pub fn f(formula: Formula) -> Self {
        SignedFormula::new(Sign::False, formula)
    }

    /// `T φ` and `F φ` for the same φ.
    pub fn contradicts(&self, other: &SignedFormula) -> bool {
        self.sign != other.sign && self.formula == other.formula
    }

    pub fn render(&self, notation: Notation) -> String {
        match notation {
            Notation::Latex => format!("{}~{}", self.sign, format_formula(&self.formula, notation)),
            _ => format!("{} {}", self.sign, format_formula(&self.formula, notation)),
        }
    }
}

impl fmt::Display for SignedFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.sign, self.formula)
    }
}
