//! Line-by-line verification of a tableau proof script.
//!
//! [`check`] never fails: every problem becomes a [`Diagnostic`] and the
//! proof as a whole gets a [`Verdict`].

mod saturation;
mod sequent;

use std::fmt;

use crate::formula::{match_instance, naive_witness, Formula, MatchResult, SignedFormula, Term};
use crate::rules::{expansion, Expansion};
use crate::script::{Block, Justification, LeafId, LineContent, ProofLine, ProofScript, RuleId};

pub use saturation::{eval, extract_countermodel, saturated, Countermodel, CountermodelError};
pub use sequent::{matches_sequent, theorem_of, BadInitialSegment, Sequent};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DiagnosticCode {
    BadInitialSegment,
    BadRef,
    ScopeViolation,
    NotExpandable,
    WrongComponent,
    NotFresh,
    NotSubstitutable,
    RuleNameMismatch,
    NotClosedPair,
    ClosureNotLast,
    BadSplit,
    LinesAfterSplit,
    BranchNotComplementary,
}

impl DiagnosticCode {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagnosticCode::BadInitialSegment => "BAD_INITIAL_SEGMENT",
            DiagnosticCode::BadRef => "BAD_REF",
            DiagnosticCode::ScopeViolation => "SCOPE_VIOLATION",
            DiagnosticCode::NotExpandable => "NOT_EXPANDABLE",
            DiagnosticCode::WrongComponent => "WRONG_COMPONENT",
            DiagnosticCode::NotFresh => "NOT_FRESH",
            DiagnosticCode::NotSubstitutable => "NOT_SUBSTITUTABLE",
            DiagnosticCode::RuleNameMismatch => "RULE_NAME_MISMATCH",
            DiagnosticCode::NotClosedPair => "NOT_CLOSED_PAIR",
            DiagnosticCode::ClosureNotLast => "CLOSURE_NOT_LAST",
            DiagnosticCode::BadSplit => "BAD_SPLIT",
            DiagnosticCode::LinesAfterSplit => "LINES_AFTER_SPLIT",
            DiagnosticCode::BranchNotComplementary => "BRANCH_NOT_COMPLEMENTARY",
        }
    }
}

impl fmt::Display for DiagnosticCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub code: DiagnosticCode,
    pub message: String,
    /// Other lines implicated in the problem.
    pub refs: Vec<usize>,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: [{}] {}", self.line, self.code, self.message)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    CountermodelFound { model: Countermodel, branch: LeafId },
    Incomplete { open_branches: Vec<LeafId> },
    Invalid,
}

impl Verdict {
    pub fn kind(&self) -> &'static str {
        match self {
            Verdict::Valid => "valid",
            Verdict::CountermodelFound { .. } => "countermodel",
            Verdict::Incomplete { .. } => "incomplete",
            Verdict::Invalid => "invalid",
        }
    }
}

/// Which rule, applied to which lines, produced a line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineResolution {
    pub line: usize,
    pub rule: Option<RuleId>,
    pub sources: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenBranch {
    pub leaf: LeafId,
    /// Line numbers on the branch, root first.
    pub lines: Vec<usize>,
    pub saturated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub verdict: Verdict,
    pub diagnostics: Vec<Diagnostic>,
    /// `None` when the initial tableau is malformed.
    pub sequent: Option<Sequent>,
    pub resolutions: Vec<LineResolution>,
    /// Leaves not ending in `@`, leftmost first.
    pub open_branches: Vec<OpenBranch>,
}

impl CheckReport {
    pub fn is_valid(&self) -> bool {
        self.verdict == Verdict::Valid
    }

    pub fn countermodel(&self) -> Option<&Countermodel> {
        match &self.verdict {
            Verdict::CountermodelFound { model, .. } => Some(model),
            _ => None,
        }
    }
}

struct Checker<'a> {
    script: &'a ProofScript,
    diags: Vec<Diagnostic>,
    resolutions: Vec<LineResolution>,
    /// First line of every block.
    block_starts: Vec<usize>,
}

/// Checks every line of `script` and classifies the proof.
pub fn check(script: &ProofScript) -> CheckReport {
    let mut c = Checker {
        script,
        diags: Vec::new(),
        resolutions: Vec::new(),
        block_starts: script.all_blocks().iter().map(|b| b.start).collect(),
    };
    let initial_len = c.check_initial_segment();
    for line in &script.lines {
        c.check_line(line, initial_len);
    }
    c.check_blocks(None, &script.blocks);
    c.diags.sort_by_key(|d| d.line);

    let open_branches: Vec<OpenBranch> = script
        .leaves()
        .into_iter()
        .filter(|leaf| !matches!(script.line(leaf.end).map(|l| &l.content), Some(LineContent::Bottom)))
        .map(|leaf| {
            let lines = script.branch_lines(leaf);
            let formulas = signed_of(&lines);
            OpenBranch {
                leaf,
                lines: lines.iter().map(|l| l.number).collect(),
                saturated: saturated(&formulas),
            }
        })
        .collect();

    let verdict = if !c.diags.is_empty() {
        Verdict::Invalid
    } else if open_branches.is_empty() {
        Verdict::Valid
    } else {
        open_branches
            .iter()
            .filter(|b| b.saturated)
            .find_map(|b| {
                let formulas = signed_of(&script.branch_lines(b.leaf));
                extract_countermodel(&formulas)
                    .ok()
                    .map(|model| Verdict::CountermodelFound { model, branch: b.leaf })
            })
            .unwrap_or_else(|| Verdict::Incomplete {
                open_branches: open_branches.iter().map(|b| b.leaf).collect(),
            })
    };

    CheckReport {
        verdict,
        diagnostics: c.diags,
        sequent: theorem_of(script).ok(),
        resolutions: c.resolutions,
        open_branches,
    }
}

fn signed_of(lines: &[&ProofLine]) -> Vec<SignedFormula> {
    lines.iter().filter_map(|l| l.content.signed().cloned()).collect()
}

fn describe(line: &ProofLine) -> String {
    match &line.content {
        LineContent::Signed(sf) => sf.to_string(),
        LineContent::Bottom => "@".to_string(),
    }
}

impl<'a> Checker<'a> {
    fn push(&mut self, line: usize, code: DiagnosticCode, message: String, refs: Vec<usize>) {
        self.diags.push(Diagnostic { line, code, message, refs });
    }

    /// Returns the number of lines in the initial tableau.
    fn check_initial_segment(&mut self) -> usize {
        match theorem_of(self.script) {
            Ok(seq) => seq.premises.len() + 1,
            Err(e) => {
                self.push(e.line, DiagnosticCode::BadInitialSegment, e.message, Vec::new());
                // Lines up to the offending one still count as the opening.
                self.script
                    .lines
                    .iter()
                    .take_while(|l| matches!(l.justification, Justification::Premise))
                    .count()
                    .min(e.line.saturating_sub(1))
            }
        }
    }

    fn check_line(&mut self, line: &ProofLine, initial_len: usize) {
        let n = line.number;
        match &line.justification {
            Justification::Premise | Justification::Conclusion => {
                self.resolutions.push(LineResolution { line: n, rule: None, sources: Vec::new() });
                if n > initial_len && !self.diags.iter().any(|d| d.line == n) {
                    let what =
                        if line.justification == Justification::Premise { "premise" } else { "conclusion" };
                    self.push(
                        n,
                        DiagnosticCode::BadInitialSegment,
                        format!(
                            "a {what} may only appear in the initial tableau, before any rule application"
                        ),
                        Vec::new(),
                    );
                }
                if self.block_starts.contains(&n) {
                    self.bad_split_start(line);
                }
            }
            Justification::Closure(a, b) => {
                self.resolutions.push(LineResolution { line: n, rule: None, sources: vec![*a, *b] });
                self.check_closure(line, *a, *b);
                if self.block_starts.contains(&n) {
                    self.bad_split_start(line);
                }
            }
            Justification::Rule { name, refs } => {
                let rule = self.check_rule_line(line, *name, refs);
                self.resolutions.push(LineResolution { line: n, rule, sources: refs.clone() });
            }
        }
    }

    fn bad_split_start(&mut self, line: &ProofLine) {
        self.push(
            line.number,
            DiagnosticCode::BadSplit,
            format!(
                "a branch must start with the result of a splitting rule (∧F, ∨T, →T), not with {}",
                describe(line)
            ),
            Vec::new(),
        );
    }

    /// Resolves a cited source line, reporting reference problems.
    fn source(&mut self, n: usize, m: usize) -> Option<&'a ProofLine> {
        let script = self.script;
        if m == 0 || m > script.len() {
            self.push(n, DiagnosticCode::BadRef, format!("line {m} does not exist"), vec![m]);
            return None;
        }
        if m >= n {
            self.push(
                n,
                DiagnosticCode::BadRef,
                format!("line {n} cites line {m}, which does not come before it"),
                vec![m],
            );
            return None;
        }
        if !script.in_scope(m, n) {
            self.push(
                n,
                DiagnosticCode::ScopeViolation,
                format!("line {m} is on another branch and cannot be used in the branch of line {n}"),
                vec![m],
            );
            return None;
        }
        script.line(m)
    }

    fn check_closure(&mut self, line: &ProofLine, a: usize, b: usize) {
        let n = line.number;
        let script = self.script;
        let (la, lb) = (self.source(n, a), self.source(n, b));
        let (Some(la), Some(lb)) = (la, lb) else { return };
        match (la.content.signed(), lb.content.signed()) {
            (Some(x), Some(y)) if x.contradicts(y) => {}
            (Some(x), Some(y)) => {
                let hint = if x.sign == y.sign {
                    format!("both are signed {}", x.sign)
                } else if alpha_equivalent(&x.formula, &y.formula) {
                    "the formulas differ only in the names of bound variables, \
                     and closing requires identical formulas"
                        .to_string()
                } else {
                    "the formulas differ".to_string()
                };
                self.push(
                    n,
                    DiagnosticCode::NotClosedPair,
                    format!(
                        "the branch is not closed by {x} in line {a} and {y} in line {b}: \
                         closing needs T φ and F φ for the same φ ({hint})"
                    ),
                    vec![a, b],
                );
            }
            _ => self.push(
                n,
                DiagnosticCode::BadRef,
                "a closing line must cite two signed formulas, not another '@'".to_string(),
                vec![a, b],
            ),
        }
        let block_end = script.innermost_block(n).map_or(script.len(), |b| b.end);
        if block_end != n {
            self.push(
                n,
                DiagnosticCode::ClosureNotLast,
                format!("line {n} closes its branch, so it must be the branch's last line"),
                Vec::new(),
            );
        }
    }

    fn check_rule_line(&mut self, line: &ProofLine, name: Option<RuleId>, refs: &[usize]) -> Option<RuleId> {
        let n = line.number;
        let derived = line.content.signed()?;
        if refs.len() != 1 {
            self.push(
                n,
                DiagnosticCode::BadRef,
                format!("a rule application cites exactly one line, found {}", refs.len()),
                refs.to_vec(),
            );
            return None;
        }
        let m = refs[0];
        let source = self.source(n, m)?;
        let Some(src) = source.content.signed() else {
            self.push(
                n,
                DiagnosticCode::BadRef,
                format!("line {m} is a closing line and cannot be expanded"),
                vec![m],
            );
            return None;
        };
        let exp = expansion(src);
        let Some(rule) = exp.rule() else {
            self.push(
                n,
                DiagnosticCode::NotExpandable,
                format!("no rule applies to the atomic formula {src} in line {m}"),
                vec![m],
            );
            return None;
        };
        let fail = |reason: String| {
            format!(
                "the rule {rule} is not applied correctly to {src} in line {m} to obtain {derived} in line {n}: {reason}"
            )
        };

        let outcome: Result<(), (DiagnosticCode, String, Vec<usize>)> = match &exp {
            Expansion::Literal => unreachable!(),
            Expansion::Alpha(_, comps) => {
                if comps.contains(derived) {
                    Ok(())
                } else {
                    Err((
                        DiagnosticCode::WrongComponent,
                        fail(format!("it yields {}", join_or(comps))),
                        vec![m],
                    ))
                }
            }
            Expansion::Beta(_, l, r) => {
                if derived == l || derived == r {
                    Ok(())
                } else {
                    Err((
                        DiagnosticCode::WrongComponent,
                        fail(format!("it splits into {l} and {r}")),
                        vec![m],
                    ))
                }
            }
            Expansion::Gamma { var, body, sign, .. } => {
                let instance = SignedFormula::new(*sign, body.clone());
                if derived.sign != *sign {
                    Err((
                        DiagnosticCode::WrongComponent,
                        fail(format!("the result must be signed {sign}")),
                        vec![m],
                    ))
                } else {
                    match match_instance(body, var, &derived.formula) {
                        MatchResult::Witness(_) | MatchResult::AnyTerm => Ok(()),
                        MatchResult::NoMatch => match naive_witness(body, var, &derived.formula) {
                            Some(t) => Err((
                                DiagnosticCode::NotSubstitutable,
                                fail(format!(
                                    "the term {t} is not substitutable for {var} in {}",
                                    instance.formula
                                )),
                                vec![m],
                            )),
                            None => Err((
                                DiagnosticCode::WrongComponent,
                                fail(format!("{derived} is not an instance of {} for {var}", instance)),
                                vec![m],
                            )),
                        },
                    }
                }
            }
            Expansion::Delta { var, body, sign, .. } => {
                if derived.sign != *sign {
                    Err((
                        DiagnosticCode::WrongComponent,
                        fail(format!("the result must be signed {sign}")),
                        vec![m],
                    ))
                } else {
                    match match_instance(body, var, &derived.formula) {
                        MatchResult::AnyTerm => Ok(()),
                        MatchResult::Witness(Term::Var(a)) => match self.first_occurrence(&a, n) {
                            Some(k) => Err((
                                DiagnosticCode::NotFresh,
                                fail(format!("the term {a} is not a new variable (see line {k})")),
                                vec![m, k],
                            )),
                            None => Ok(()),
                        },
                        MatchResult::Witness(t) => Err((
                            DiagnosticCode::WrongComponent,
                            fail(format!("{var} must be replaced by a new variable, not by the term {t}")),
                            vec![m],
                        )),
                        MatchResult::NoMatch => match naive_witness(body, var, &derived.formula) {
                            Some(t) => Err((
                                DiagnosticCode::NotSubstitutable,
                                fail(format!("the term {t} is not substitutable for {var} in {body}")),
                                vec![m],
                            )),
                            None => Err((
                                DiagnosticCode::WrongComponent,
                                fail(format!(
                                    "{derived} is not an instance of {}",
                                    SignedFormula::new(*sign, body.clone())
                                )),
                                vec![m],
                            )),
                        },
                    }
                }
            }
        };
        if let Err((code, message, drefs)) = outcome {
            self.push(n, code, message, drefs);
            return None;
        }

        let starts_block = self.block_starts.contains(&n);
        if rule.is_branching() && !starts_block {
            self.push(
                n,
                DiagnosticCode::BadSplit,
                format!(
                    "the rule {rule} splits the branch: {derived} must open a new branch with '{{' \
                     next to a sibling branch for the other component"
                ),
                vec![m],
            );
        } else if !rule.is_branching() && starts_block {
            self.push(
                n,
                DiagnosticCode::BadSplit,
                format!("the rule {rule} does not split the branch, so {derived} cannot open a new branch"),
                vec![m],
            );
        }
        if let Some(written) = name {
            if written != rule {
                self.push(
                    n,
                    DiagnosticCode::RuleNameMismatch,
                    format!(
                        "line {n} names the rule {} but {src} in line {m} is expanded by {} ({})",
                        written.ascii(),
                        rule.ascii(),
                        rule
                    ),
                    vec![m],
                );
            }
        }
        Some(rule)
    }

    /// The first line in scope of `n` mentioning variable `a`.
    fn first_occurrence(&self, a: &str, n: usize) -> Option<usize> {
        self.script
            .ancestors(n)
            .into_iter()
            .find(|l| l.content.signed().is_some_and(|sf| sf.formula.all_vars().contains(a)))
            .map(|l| l.number)
    }

    /// Split discipline for the children of `parent` (`None` = trunk).
    fn check_blocks(&mut self, parent: Option<&Block>, children: &[Block]) {
        for child in children {
            self.check_blocks(Some(child), &child.children);
        }
        let Some(first) = children.first() else { return };
        let script = self.script;
        let (lo, hi) = parent.map_or((1, script.len()), |p| (p.start, p.end));
        for n in first.start..=hi {
            if n < lo {
                continue;
            }
            let direct = !children.iter().any(|c| c.contains(n));
            if direct {
                self.push(
                    n,
                    DiagnosticCode::LinesAfterSplit,
                    format!(
                        "line {n} follows a split (the branch opened at line {}); \
                         after a split, work continues inside the branches",
                        first.start
                    ),
                    vec![first.start],
                );
            }
        }
        if children.len() != 2 {
            let at = children.get(2).unwrap_or(first).start;
            self.push(
                at,
                DiagnosticCode::BadSplit,
                format!("a split opens exactly two sibling branches; found {} here", children.len()),
                children.iter().map(|c| c.start).collect(),
            );
            return;
        }
        let (a, b) = (children[0].start, children[1].start);
        let res = |k: usize| {
            self.resolutions.iter().find(|r| r.line == k && r.rule.is_some_and(RuleId::is_branching)).cloned()
        };
        let (Some(ra), Some(rb)) = (res(a), res(b)) else { return };
        if ra.sources != rb.sources {
            self.push(
                b,
                DiagnosticCode::BranchNotComplementary,
                format!(
                    "the branches starting at lines {a} and {b} must expand the same formula, \
                     but they cite lines {} and {}",
                    ra.sources[0], rb.sources[0]
                ),
                vec![a, ra.sources[0], rb.sources[0]],
            );
            return;
        }
        let m = ra.sources[0];
        let src = script.line(m).and_then(|l| l.content.signed()).cloned();
        let fa = script.line(a).and_then(|l| l.content.signed()).cloned();
        let fb = script.line(b).and_then(|l| l.content.signed()).cloned();
        if let (Some(src), Some(fa), Some(fb)) = (src, fa, fb) {
            if let Expansion::Beta(rule, l, r) = expansion(&src) {
                let ok = (fa == l && fb == r) || (fa == r && fb == l);
                if !ok {
                    self.push(
                        b,
                        DiagnosticCode::BranchNotComplementary,
                        format!(
                            "the rule {rule} applied to {src} in line {m} opens one branch with {l} \
                             and the other with {r}; lines {a} and {b} start with {fa} and {fb}"
                        ),
                        vec![a, m],
                    );
                }
            }
        }
    }
}

/// Equality up to renaming of bound variables.
fn alpha_equivalent(a: &Formula, b: &Formula) -> bool {
    fn term_eq(s: &Term, t: &Term, env: &[(&str, &str)]) -> bool {
        match (s, t) {
            (Term::Var(x), Term::Var(y)) => match env.iter().rev().find(|e| e.0 == *x || e.1 == *y) {
                Some(e) => e.0 == *x && e.1 == *y,
                None => x == y,
            },
            (Term::Compound(f, xs), Term::Compound(g, ys)) => {
                f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| term_eq(x, y, env))
            }
            _ => false,
        }
    }
    fn go<'f>(a: &'f Formula, b: &'f Formula, env: &mut Vec<(&'f str, &'f str)>) -> bool {
        match (a, b) {
            (Formula::Atom(p, xs), Formula::Atom(q, ys)) => {
                p == q && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| term_eq(x, y, env))
            }
            (Formula::Not(x), Formula::Not(y)) => go(x, y, env),
            (Formula::And(a1, a2), Formula::And(b1, b2))
            | (Formula::Or(a1, a2), Formula::Or(b1, b2))
            | (Formula::Implies(a1, a2), Formula::Implies(b1, b2)) => go(a1, b1, env) && go(a2, b2, env),
            (Formula::ForAll(x, p), Formula::ForAll(y, q))
            | (Formula::Exists(x, p), Formula::Exists(y, q)) => {
                env.push((x, y));
                let ok = go(p, q, env);
                env.pop();
                ok
            }
            _ => false,
        }
    }
    go(a, b, &mut Vec::new())
}

fn join_or(items: &[SignedFormula]) -> String {
    let v: Vec<String> = items.iter().map(|s| s.to_string()).collect();
    v.join(" or ")
}
