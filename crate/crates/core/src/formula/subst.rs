use std::collections::BTreeSet;

use thiserror::Error;

use super::{Formula, Term};

/// Outcome of recognising `candidate` as an instance `φ[x := t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatchResult {
    Witness(Term),
    /// `x` is not free in φ, so every term is a witness.
    AnyTerm,
    NoMatch,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("term {term} is not substitutable for {var}: {captured} would be captured by the quantifier on {captured}")]
pub struct NotSubstitutable {
    pub var: String,
    pub term: String,
    pub captured: String,
}

pub fn free_vars(phi: &Formula) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    collect_free(phi, &mut Vec::new(), &mut out);
    out
}

fn collect_free(phi: &Formula, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
    match phi {
        Formula::Atom(_, args) => {
            let mut vars = BTreeSet::new();
            args.iter().for_each(|a| a.collect_vars(&mut vars));
            out.extend(vars.into_iter().filter(|v| !bound.contains(v)));
        }
        Formula::Not(f) => collect_free(f, bound, out),
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
            collect_free(l, bound, out);
            collect_free(r, bound, out);
        }
        Formula::ForAll(v, body) | Formula::Exists(v, body) => {
            bound.push(v.clone());
            collect_free(body, bound, out);
            bound.pop();
        }
    }
}

fn term_mentions(t: &Term, x: &str) -> bool {
    match t {
        Term::Var(v) => v == x,
        Term::Compound(_, args) => args.iter().any(|a| term_mentions(a, x)),
    }
}

/// The first quantifier variable that would capture a variable of `t` at
/// some free occurrence of `x`.
fn capturing_binder(
    phi: &Formula,
    x: &str,
    t_vars: &BTreeSet<String>,
    bound: &mut Vec<String>,
) -> Option<String> {
    match phi {
        Formula::Atom(_, args) => {
            if args.iter().any(|a| term_mentions(a, x)) {
                bound.iter().rev().find(|b| t_vars.contains(*b)).cloned()
            } else {
                None
            }
        }
        Formula::Not(f) => capturing_binder(f, x, t_vars, bound),
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
            capturing_binder(l, x, t_vars, bound).or_else(|| capturing_binder(r, x, t_vars, bound))
        }
        Formula::ForAll(v, body) | Formula::Exists(v, body) => {
            if v == x {
                return None;
            }
            bound.push(v.clone());
            let r = capturing_binder(body, x, t_vars, bound);
            bound.pop();
            r
        }
    }
}

/// True iff no free occurrence of `x` in `phi` sits under a quantifier
/// binding a variable of `t`.
pub fn is_substitutable(phi: &Formula, x: &str, t: &Term) -> bool {
    capturing_binder(phi, x, &t.vars(), &mut Vec::new()).is_none()
}

/// φ with every free occurrence of `x` replaced by `t`.
pub fn apply_substitution(phi: &Formula, x: &str, t: &Term) -> Result<Formula, NotSubstitutable> {
    if let Some(captured) = capturing_binder(phi, x, &t.vars(), &mut Vec::new()) {
        return Err(NotSubstitutable { var: x.to_string(), term: t.to_string(), captured });
    }
    Ok(substitute_unchecked(phi, x, t))
}

/// Replaces free occurrences without the capture check.
pub(crate) fn substitute_unchecked(phi: &Formula, x: &str, t: &Term) -> Formula {
    match phi {
        Formula::Atom(p, args) => {
            Formula::Atom(p.clone(), args.iter().map(|a| substitute_term(a, x, t)).collect())
        }
        Formula::Not(f) => Formula::not(substitute_unchecked(f, x, t)),
        Formula::And(l, r) => Formula::and(substitute_unchecked(l, x, t), substitute_unchecked(r, x, t)),
        Formula::Or(l, r) => Formula::or(substitute_unchecked(l, x, t), substitute_unchecked(r, x, t)),
        Formula::Implies(l, r) => {
            Formula::implies(substitute_unchecked(l, x, t), substitute_unchecked(r, x, t))
        }
        Formula::ForAll(v, _) | Formula::Exists(v, _) if v == x => phi.clone(),
        Formula::ForAll(v, body) => Formula::forall(v.clone(), substitute_unchecked(body, x, t)),
        Formula::Exists(v, body) => Formula::exists(v.clone(), substitute_unchecked(body, x, t)),
    }
}

fn substitute_term(term: &Term, x: &str, t: &Term) -> Term {
    match term {
        Term::Var(v) if v == x => t.clone(),
        Term::Var(_) => term.clone(),
        Term::Compound(f, args) => {
            Term::Compound(f.clone(), args.iter().map(|a| substitute_term(a, x, t)).collect())
        }
    }
}

enum Walk {
    Bound(Term),
    Vacuous,
    Mismatch,
}

struct Matcher<'a> {
    x: &'a str,
    witness: Option<Term>,
}

impl Matcher<'_> {
    fn formula(&mut self, pat: &Formula, cand: &Formula, x_free: bool) -> bool {
        match (pat, cand) {
            (Formula::Atom(p, pargs), Formula::Atom(c, cargs)) => {
                p == c
                    && pargs.len() == cargs.len()
                    && pargs.iter().zip(cargs).all(|(pa, ca)| self.term(pa, ca, x_free))
            }
            (Formula::Not(p), Formula::Not(c)) => self.formula(p, c, x_free),
            (Formula::And(pl, pr), Formula::And(cl, cr))
            | (Formula::Or(pl, pr), Formula::Or(cl, cr))
            | (Formula::Implies(pl, pr), Formula::Implies(cl, cr)) => {
                self.formula(pl, cl, x_free) && self.formula(pr, cr, x_free)
            }
            (Formula::ForAll(pv, pb), Formula::ForAll(cv, cb))
            | (Formula::Exists(pv, pb), Formula::Exists(cv, cb)) => {
                pv == cv && self.formula(pb, cb, x_free && pv != self.x)
            }
            _ => false,
        }
    }

    fn term(&mut self, pat: &Term, cand: &Term, x_free: bool) -> bool {
        match pat {
            Term::Var(v) if x_free && v == self.x => match &self.witness {
                Some(w) => w == cand,
                None => {
                    self.witness = Some(cand.clone());
                    true
                }
            },
            Term::Var(_) => pat == cand,
            Term::Compound(f, pargs) => match cand {
                Term::Compound(g, cargs) => {
                    f == g
                        && pargs.len() == cargs.len()
                        && pargs.iter().zip(cargs).all(|(pa, ca)| self.term(pa, ca, x_free))
                }
                Term::Var(_) => false,
            },
        }
    }
}

fn walk(phi: &Formula, x: &str, candidate: &Formula) -> Walk {
    let mut m = Matcher { x, witness: None };
    if !m.formula(phi, candidate, true) {
        return Walk::Mismatch;
    }
    match m.witness {
        Some(t) => Walk::Bound(t),
        None => Walk::Vacuous,
    }
}

/// Finds the unique `t` with `φ[x := t] == candidate`, honouring the
/// substitutability side condition.
pub fn match_instance(phi: &Formula, x: &str, candidate: &Formula) -> MatchResult {
    match walk(phi, x, candidate) {
        Walk::Bound(t) if is_substitutable(phi, x, &t) => MatchResult::Witness(t),
        Walk::Bound(_) | Walk::Mismatch => MatchResult::NoMatch,
        Walk::Vacuous => MatchResult::AnyTerm,
    }
}

/// Like [`match_instance`] but ignores variable capture, so a caller can
/// tell "not an instance" apart from "instance with a captured term".
pub fn naive_witness(phi: &Formula, x: &str, candidate: &Formula) -> Option<Term> {
    match walk(phi, x, candidate) {
        Walk::Bound(t) => Some(t),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn v(s: &str) -> Term {
        Term::var(s)
    }

    #[test]
    fn free_variable_sets() {
        assert_eq!(free_vars(&p("Ax P(x,y)")), BTreeSet::from(["y".to_string()]));
        assert_eq!(free_vars(&p("H(x)")), BTreeSet::from(["x".to_string()]));
        assert!(free_vars(&p("A")).is_empty());
        assert_eq!(free_vars(&p("P(x) & Ex Q(x, f(z))")), BTreeSet::from(["x".to_string(), "z".to_string()]));
    }

    #[test]
    fn substitutability() {
        assert!(is_substitutable(&p("Ax P(x,y)"), "y", &v("z")));
        assert!(!is_substitutable(&p("Ax P(x,y)"), "y", &v("x")));
        assert!(is_substitutable(&p("P(x)"), "x", &v("x")));
        assert!(!is_substitutable(&p("Ax P(x,y)"), "y", &Term::compound("f", vec![v("x")])));
        // x bound below its own quantifier has no free occurrence to capture.
        assert!(is_substitutable(&p("Ay Ax P(x)"), "x", &v("y")));
    }

    #[test]
    fn substitution_examples() {
        assert_eq!(apply_substitution(&p("H(x)->Ax M(x)"), "x", &v("y")).unwrap(), p("H(y)->Ax M(x)"));
        assert_eq!(apply_substitution(&p("P(x)"), "x", &v("a")).unwrap(), p("P(a)"));
        assert_eq!(apply_substitution(&p("Ax P(x)"), "x", &v("t")).unwrap(), p("Ax P(x)"));
        let err = apply_substitution(&p("Ax P(x,y)"), "y", &v("x")).unwrap_err();
        assert_eq!(err.captured, "x");
    }

    #[test]
    fn match_examples() {
        assert_eq!(match_instance(&p("H(x)->M(x)"), "x", &p("H(s)->M(s)")), MatchResult::Witness(v("s")));
        assert_eq!(match_instance(&p("B"), "x", &p("B")), MatchResult::AnyTerm);
        assert_eq!(match_instance(&p("H(x)"), "x", &p("M(a)")), MatchResult::NoMatch);
        assert_eq!(match_instance(&p("P(x,x)"), "x", &p("P(a,b)")), MatchResult::NoMatch);
        assert_eq!(match_instance(&p("B"), "x", &p("C")), MatchResult::NoMatch);
    }

    #[test]
    fn match_rejects_captured_witness() {
        let phi = p("Ay P(x,y)");
        let cand = p("Ay P(y,y)");
        assert_eq!(match_instance(&phi, "x", &cand), MatchResult::NoMatch);
        assert_eq!(naive_witness(&phi, "x", &cand), Some(v("y")));
    }

    #[test]
    fn match_respects_shadowing() {
        // The inner x is bound, so only the outer occurrence is replaced.
        let phi = p("P(x) & Ax Q(x)");
        assert_eq!(match_instance(&phi, "x", &p("P(a) & Ax Q(x)")), MatchResult::Witness(v("a")));
        assert_eq!(match_instance(&phi, "x", &p("P(a) & Ax Q(a)")), MatchResult::NoMatch);
    }
}
