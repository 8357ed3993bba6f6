//! Automatic propositional tableaux and the truth-table oracle.

use std::collections::VecDeque;

use thiserror::Error;

use crate::checker::{eval, extract_countermodel, Countermodel, Sequent};
use crate::formula::{Formula, Sign, SignedFormula};
use crate::rules::{expansion, Expansion};
use crate::script::{Justification, LineContent, ProofScript, ScriptBuilder};

pub const DEFAULT_BUDGET: usize = 1_000_000;
pub const MAX_TABLE_ATOMS: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProverResult {
    Closed(ProofScript),
    Open(Countermodel),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ProverError {
    #[error(
        "{0} is not propositional; only quantifier-free, variable-free sequents can be proved automatically"
    )]
    NotPropositional(String),
    #[error("gave up after {0} tableau nodes")]
    BudgetExceeded(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{0} atoms exceed the truth-table limit of {MAX_TABLE_ATOMS}")]
pub struct TooManyAtoms(pub usize);

pub fn prove(seq: &Sequent) -> Result<ProverResult, ProverError> {
    prove_with_budget(seq, DEFAULT_BUDGET)
}

/// Expands α formulas before β formulas, each in first-in first-out order.
pub fn prove_with_budget(seq: &Sequent, budget: usize) -> Result<ProverResult, ProverError> {
    for f in seq.premises.iter().chain([&seq.conclusion]) {
        if !f.is_propositional() {
            return Err(ProverError::NotPropositional(f.to_string()));
        }
    }
    let mut p = Prover { out: ScriptBuilder::new(), nodes: 0, budget };
    let mut branch = Branch::default();
    for prem in &seq.premises {
        let n = p.out.push_signed(SignedFormula::t(prem.clone()), Justification::Premise);
        branch.add(n, SignedFormula::t(prem.clone()));
    }
    let n = p.out.push_signed(SignedFormula::f(seq.conclusion.clone()), Justification::Conclusion);
    branch.add(n, SignedFormula::f(seq.conclusion.clone()));
    p.nodes = n;

    let first_pair = branch.lines.iter().enumerate().find_map(|(i, (a, x))| {
        branch.lines[i + 1..].iter().find(|(_, y)| x.contradicts(y)).map(|(b, _)| (*a, *b))
    });
    if let Some((a, b)) = first_pair {
        p.out.push(LineContent::Bottom, Justification::Closure(a, b));
        return Ok(ProverResult::Closed(p.out.finish()));
    }
    match p.run(branch)? {
        None => Ok(ProverResult::Closed(p.out.finish())),
        Some(model) => Ok(ProverResult::Open(model)),
    }
}

#[derive(Clone, Default)]
struct Branch {
    lines: Vec<(usize, SignedFormula)>,
    alpha: VecDeque<usize>,
    beta: VecDeque<usize>,
}

impl Branch {
    fn add(&mut self, n: usize, sf: SignedFormula) {
        match expansion(&sf) {
            Expansion::Alpha(..) => self.alpha.push_back(n),
            Expansion::Beta(..) => self.beta.push_back(n),
            _ => {}
        }
        self.lines.push((n, sf));
    }

    fn get(&self, n: usize) -> &SignedFormula {
        &self.lines.iter().find(|(m, _)| *m == n).expect("line on branch").1
    }

    fn has(&self, sf: &SignedFormula) -> bool {
        self.lines.iter().any(|(_, x)| x == sf)
    }

    fn complement_of(&self, sf: &SignedFormula) -> Option<usize> {
        self.lines.iter().find(|(_, x)| x.contradicts(sf)).map(|(n, _)| *n)
    }
}

struct Prover {
    out: ScriptBuilder,
    nodes: usize,
    budget: usize,
}

impl Prover {
    fn push(&mut self, branch: &mut Branch, sf: SignedFormula, source: usize) -> Result<bool, ProverError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(ProverError::BudgetExceeded(self.budget));
        }
        let rule = expansion(branch.get(source)).rule();
        let closing = branch.complement_of(&sf);
        let n = self.out.push_signed(sf.clone(), Justification::Rule { name: rule, refs: vec![source] });
        branch.add(n, sf);
        if let Some(m) = closing {
            self.out.push(LineContent::Bottom, Justification::Closure(m, n));
            return Ok(true);
        }
        Ok(false)
    }

    /// `None` when every branch below closes, else the leftmost open model.
    fn run(&mut self, mut branch: Branch) -> Result<Option<Countermodel>, ProverError> {
        loop {
            if let Some(src) = branch.alpha.pop_front() {
                let Expansion::Alpha(_, comps) = expansion(branch.get(src)) else { unreachable!() };
                for c in comps {
                    if !branch.has(&c) && self.push(&mut branch, c, src)? {
                        return Ok(None);
                    }
                }
                continue;
            }
            let Some(src) = branch.beta.pop_front() else { break };
            let Expansion::Beta(_, l, r) = expansion(branch.get(src)) else { unreachable!() };
            if branch.has(&l) || branch.has(&r) {
                continue;
            }
            for side in [l, r] {
                let mut sub = branch.clone();
                self.out.open();
                if !self.push(&mut sub, side, src)? {
                    if let Some(model) = self.run(sub)? {
                        return Ok(Some(model));
                    }
                }
                self.out.close();
            }
            return Ok(None);
        }
        let formulas: Vec<SignedFormula> = branch.lines.into_iter().map(|(_, sf)| sf).collect();
        Ok(Some(extract_countermodel(&formulas).expect("saturated propositional branch")))
    }
}

/// Whether the premises entail the conclusion, with a falsifying total
/// valuation when they do not.
pub fn truth_table_entails(seq: &Sequent) -> Result<(bool, Option<Countermodel>), TooManyAtoms> {
    let mut atoms: Vec<String> = Vec::new();
    for f in seq.premises.iter().chain([&seq.conclusion]) {
        for a in f.atoms() {
            let key = a.to_string();
            if !atoms.contains(&key) {
                atoms.push(key);
            }
        }
    }
    if atoms.len() > MAX_TABLE_ATOMS {
        return Err(TooManyAtoms(atoms.len()));
    }
    for bits in 0u32..(1 << atoms.len()) {
        let value = |name: &str| {
            let i = atoms.iter().position(|a| a == name).expect("atom in table");
            bits >> i & 1 == 1
        };
        let holds = |f: &Formula| eval(f, &value);
        if seq.premises.iter().all(holds) && !holds(&seq.conclusion) {
            let mut model = Countermodel::default();
            for (i, a) in atoms.iter().enumerate() {
                model
                    .assignments
                    .insert(a.clone(), if bits >> i & 1 == 1 { Sign::True } else { Sign::False });
            }
            return Ok((false, Some(model)));
        }
    }
    Ok((true, None))
}
