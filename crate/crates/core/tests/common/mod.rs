//! Seeded generators and independent oracles shared by integration tests.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;

use tableau_core::formula::{Formula, SignedFormula, Term};
use tableau_core::script::{Justification, LineContent, ProofScript, RuleId, ScriptBuilder};

pub fn random_prop<R: Rng>(rng: &mut R, atoms: &[&str], depth: usize) -> Formula {
    if depth == 0 || rng.gen_ratio(1, 4) {
        return Formula::prop(*atoms.choose(rng).unwrap());
    }
    match rng.gen_range(0..4) {
        0 => Formula::not(random_prop(rng, atoms, depth - 1)),
        1 => Formula::and(random_prop(rng, atoms, depth - 1), random_prop(rng, atoms, depth - 1)),
        2 => Formula::or(random_prop(rng, atoms, depth - 1), random_prop(rng, atoms, depth - 1)),
        _ => Formula::implies(random_prop(rng, atoms, depth - 1), random_prop(rng, atoms, depth - 1)),
    }
}

const VARS: [&str; 4] = ["x", "y", "z", "a"];

pub fn random_term<R: Rng>(rng: &mut R, depth: usize) -> Term {
    if depth == 0 || rng.gen_ratio(2, 3) {
        return Term::var(*VARS.choose(rng).unwrap());
    }
    match rng.gen_range(0..3) {
        0 => Term::compound("c", Vec::new()),
        1 => Term::compound("f", vec![random_term(rng, depth - 1)]),
        _ => Term::compound("g", vec![random_term(rng, depth - 1), random_term(rng, depth - 1)]),
    }
}

pub fn random_fo<R: Rng>(rng: &mut R, depth: usize) -> Formula {
    if depth == 0 || rng.gen_ratio(1, 5) {
        return match rng.gen_range(0..4) {
            0 => Formula::prop("A"),
            1 => Formula::atom("P", vec![random_term(rng, 2)]),
            2 => Formula::atom("Q", vec![random_term(rng, 1), random_term(rng, 1)]),
            _ => Formula::atom("R", vec![random_term(rng, 1)]),
        };
    }
    let v = *VARS.choose(rng).unwrap();
    match rng.gen_range(0..6) {
        0 => Formula::not(random_fo(rng, depth - 1)),
        1 => Formula::and(random_fo(rng, depth - 1), random_fo(rng, depth - 1)),
        2 => Formula::or(random_fo(rng, depth - 1), random_fo(rng, depth - 1)),
        3 => Formula::implies(random_fo(rng, depth - 1), random_fo(rng, depth - 1)),
        4 => Formula::forall(v, random_fo(rng, depth - 1)),
        _ => Formula::exists(v, random_fo(rng, depth - 1)),
    }
}

/// Every formula over `atoms` with connective depth at most `depth`.
pub fn all_props(atoms: &[&str], depth: usize) -> Vec<Formula> {
    let mut level: Vec<Formula> = atoms.iter().map(|a| Formula::prop(*a)).collect();
    for _ in 0..depth {
        let prev = level.clone();
        let mut next = prev.clone();
        next.extend(prev.iter().map(|f| Formula::not(f.clone())));
        for l in &prev {
            for r in &prev {
                next.push(Formula::and(l.clone(), r.clone()));
                next.push(Formula::or(l.clone(), r.clone()));
                next.push(Formula::implies(l.clone(), r.clone()));
            }
        }
        next.sort();
        next.dedup();
        level = next;
    }
    level
}

fn truth(f: &Formula, atoms: &[String], bits: u32) -> bool {
    match f {
        Formula::Atom(name, _) => bits >> atoms.iter().position(|a| a == name).unwrap() & 1 == 1,
        Formula::Not(a) => !truth(a, atoms, bits),
        Formula::And(a, b) => truth(a, atoms, bits) && truth(b, atoms, bits),
        Formula::Or(a, b) => truth(a, atoms, bits) || truth(b, atoms, bits),
        Formula::Implies(a, b) => !truth(a, atoms, bits) || truth(b, atoms, bits),
        _ => unreachable!("propositional only"),
    }
}

fn atom_names(f: &Formula, out: &mut Vec<String>) {
    match f {
        Formula::Atom(name, _) => {
            if !out.contains(name) {
                out.push(name.clone());
            }
        }
        Formula::Not(a) => atom_names(a, out),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            atom_names(a, out);
            atom_names(b, out);
        }
        _ => unreachable!("propositional only"),
    }
}

/// Brute-force entailment over propositional atoms.
pub fn entails(premises: &[Formula], conclusion: &Formula) -> bool {
    let mut atoms = Vec::new();
    premises.iter().chain([conclusion]).for_each(|f| atom_names(f, &mut atoms));
    (0u32..1 << atoms.len())
        .all(|bits| !premises.iter().all(|p| truth(p, &atoms, bits)) || truth(conclusion, &atoms, bits))
}

/// Evaluates with `value` for named atoms and `default` for the rest.
pub fn eval_with(f: &Formula, value: &dyn Fn(&str) -> Option<bool>, default: bool) -> bool {
    match f {
        Formula::Atom(name, _) => value(name).unwrap_or(default),
        Formula::Not(a) => !eval_with(a, value, default),
        Formula::And(a, b) => eval_with(a, value, default) && eval_with(b, value, default),
        Formula::Or(a, b) => eval_with(a, value, default) || eval_with(b, value, default),
        Formula::Implies(a, b) => !eval_with(a, value, default) || eval_with(b, value, default),
        _ => unreachable!("propositional only"),
    }
}

/// A structurally well-formed script; its rules need not be sound.
pub fn random_script<R: Rng>(rng: &mut R) -> ProofScript {
    let mut b = ScriptBuilder::new();
    let atoms = ["A", "B", "C"];
    let premises = rng.gen_range(0..3);
    for _ in 0..premises {
        b.push_signed(SignedFormula::t(random_fo(rng, 3)), Justification::Premise);
    }
    b.push_signed(SignedFormula::f(random_prop(rng, &atoms, 3)), Justification::Conclusion);
    grow(rng, &mut b, 0);
    b.finish()
}

fn grow<R: Rng>(rng: &mut R, b: &mut ScriptBuilder, depth: usize) {
    for _ in 0..rng.gen_range(0..4) {
        let n = b.next_number();
        let name = rng.gen_bool(0.5).then(|| *RuleId::ALL.choose(rng).unwrap());
        let refs = (0..rng.gen_range(1..3)).map(|_| rng.gen_range(1..n)).collect();
        let sign = if rng.gen_bool(0.5) { SignedFormula::t } else { SignedFormula::f };
        b.push_signed(sign(random_fo(rng, 3)), Justification::Rule { name, refs });
    }
    let n = b.next_number();
    if depth < 3 && rng.gen_ratio(1, 2) {
        for _ in 0..2 {
            b.open();
            let sign = if rng.gen_bool(0.5) { SignedFormula::t } else { SignedFormula::f };
            b.push_signed(
                sign(random_prop(rng, &["A", "B"], 2)),
                Justification::Rule { name: None, refs: vec![1] },
            );
            grow(rng, b, depth + 1);
            b.close();
        }
    } else if rng.gen_bool(0.5) {
        b.push(LineContent::Bottom, Justification::Closure(rng.gen_range(1..n), rng.gen_range(1..n)));
    }
}
