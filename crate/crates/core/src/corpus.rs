//! Bundled example proofs.

pub struct Example {
    pub id: &'static str,
    pub sequent: &'static str,
    /// Expected verdict kind, as in [`crate::checker::Verdict::kind`].
    pub verdict: &'static str,
    pub text: &'static str,
}

macro_rules! example {
    ($id:literal, $seq:literal, $verdict:literal) => {
        Example {
            id: $id,
            sequent: $seq,
            verdict: $verdict,
            text: include_str!(concat!("../corpus/", $id, ".txt")),
        }
    };
}

pub const EXAMPLES: &[Example] = &[
    example!("identity", "A |- A", "valid"),
    example!("double-negation", "A |- ~~A", "valid"),
    example!("and-true", "A&B |- A", "valid"),
    example!("and-false", "A, B |- A&B", "valid"),
    example!("or-true", "A|B, ~B |- A", "valid"),
    example!("or-false", "A |- A|B", "valid"),
    example!("implication-true", "~A->B |- A|B", "valid"),
    example!("implication-false", "B |- A->B", "valid"),
    example!("forall-true", "Ax (H(x)->M(x)), H(s) |- M(s)", "valid"),
    example!("forall-false", "Ax (H(x)->M(x)), Ax H(x) |- Ax M(x)", "valid"),
    example!("exists-true", "Ax (H(x)->M(x)), Ex H(x) |- Ex M(x)", "valid"),
    example!("exists-false", "P(a), Ex P(x)->B |- B", "valid"),
    example!("transitivity", "A->B, B->C, A |- C", "valid"),
    example!("transitivity-incomplete", "A->B, B->C, A |- C", "incomplete"),
    example!("countermodel-1", "A, A&B->C |- C", "countermodel"),
    example!("countermodel-2", "A|B |- C", "countermodel"),
    example!("fresh-variable-error", "Ex H(x), Ax (H(x)->M(x)) |- M(a)", "invalid"),
];

/// The twelve one-rule-at-a-time proofs, one per connective and sign.
pub const RULE_EXAMPLES: [&str; 12] = [
    "identity",
    "double-negation",
    "and-true",
    "and-false",
    "or-true",
    "or-false",
    "implication-true",
    "implication-false",
    "forall-true",
    "forall-false",
    "exists-true",
    "exists-false",
];

pub fn example(id: &str) -> Option<&'static Example> {
    EXAMPLES.iter().find(|e| e.id == id)
}
