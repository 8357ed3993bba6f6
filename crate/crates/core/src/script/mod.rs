//! The linear, line-numbered tableau proof format.
//!
//! ```text
//! 1. T A&B pre
//! 2. F A|B conclusion
//! 3. T A &T 1
//! 4. F A |F 2
//! 5. @ 3,4
//! ```
//!
//! `{` before a line opens a branch and `}` after a line closes it. A line
//! may cite only earlier lines of its own branch or of enclosing branches.

mod parse;
mod serialize;

use std::fmt;

use crate::formula::SignedFormula;

pub use parse::parse_proof;
pub use serialize::serialize_proof;

pub use crate::formula::ParseError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleId {
    NotT,
    NotF,
    AndT,
    AndF,
    OrT,
    OrF,
    ImpT,
    ImpF,
    AllT,
    AllF,
    ExT,
    ExF,
}

impl RuleId {
    pub const ALL: [RuleId; 12] = [
        RuleId::NotT,
        RuleId::NotF,
        RuleId::AndT,
        RuleId::AndF,
        RuleId::OrT,
        RuleId::OrF,
        RuleId::ImpT,
        RuleId::ImpF,
        RuleId::AllT,
        RuleId::AllF,
        RuleId::ExT,
        RuleId::ExF,
    ];

    /// The spelling used in proof scripts, e.g. `&T`.
    pub fn ascii(self) -> &'static str {
        match self {
            RuleId::NotT => "~T",
            RuleId::NotF => "~F",
            RuleId::AndT => "&T",
            RuleId::AndF => "&F",
            RuleId::OrT => "|T",
            RuleId::OrF => "|F",
            RuleId::ImpT => "->T",
            RuleId::ImpF => "->F",
            RuleId::AllT => "AT",
            RuleId::AllF => "AF",
            RuleId::ExT => "ET",
            RuleId::ExF => "EF",
        }
    }

    pub fn from_ascii(s: &str) -> Option<RuleId> {
        RuleId::ALL.into_iter().find(|r| r.ascii() == s)
    }

    /// Symbolic name used in messages, e.g. `∧T`.
    pub fn symbol(self) -> &'static str {
        match self {
            RuleId::NotT => "¬T",
            RuleId::NotF => "¬F",
            RuleId::AndT => "∧T",
            RuleId::AndF => "∧F",
            RuleId::OrT => "∨T",
            RuleId::OrF => "∨F",
            RuleId::ImpT => "→T",
            RuleId::ImpF => "→F",
            RuleId::AllT => "∀T",
            RuleId::AllF => "∀F",
            RuleId::ExT => "∃T",
            RuleId::ExF => "∃F",
        }
    }

    /// Splitting rules (∧F, ∨T, →T).
    pub fn is_branching(self) -> bool {
        matches!(self, RuleId::AndF | RuleId::OrT | RuleId::ImpT)
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    Premise,
    Conclusion,
    Rule { name: Option<RuleId>, refs: Vec<usize> },
    Closure(usize, usize),
}

impl Justification {
    pub fn refs(&self) -> Vec<usize> {
        match self {
            Justification::Premise | Justification::Conclusion => Vec::new(),
            Justification::Rule { refs, .. } => refs.clone(),
            Justification::Closure(m, n) => vec![*m, *n],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LineContent {
    Signed(SignedFormula),
    /// The closing mark, written `@`.
    Bottom,
}

impl LineContent {
    pub fn signed(&self) -> Option<&SignedFormula> {
        match self {
            LineContent::Signed(sf) => Some(sf),
            LineContent::Bottom => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofLine {
    pub number: usize,
    pub content: LineContent,
    pub justification: Justification,
    /// Number of enclosing branches; 0 for the trunk.
    pub depth: usize,
}

/// A branch delimited by braces, covering lines `start..=end`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub start: usize,
    pub end: usize,
    pub children: Vec<Block>,
}

impl Block {
    pub fn contains(&self, line: usize) -> bool {
        self.start <= line && line <= self.end
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProofScript {
    pub lines: Vec<ProofLine>,
    /// Top-level branches; the trunk is the implicit root around them.
    pub blocks: Vec<Block>,
}

/// A leaf of the block tree: one root-to-leaf branch of the tableau.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LeafId {
    pub start: usize,
    pub end: usize,
}

impl fmt::Display for LeafId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lines {}-{}", self.start, self.end)
    }
}

impl ProofScript {
    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// Line `n` (1-based).
    pub fn line(&self, n: usize) -> Option<&ProofLine> {
        n.checked_sub(1).and_then(|i| self.lines.get(i))
    }

    /// Every block in pre-order (textual order of opening).
    pub fn all_blocks(&self) -> Vec<&Block> {
        fn walk<'a>(bs: &'a [Block], out: &mut Vec<&'a Block>) {
            for b in bs {
                out.push(b);
                walk(&b.children, out);
            }
        }
        let mut out = Vec::new();
        walk(&self.blocks, &mut out);
        out
    }

    /// True when line `m` may be cited from line `n`: it comes earlier and
    /// every branch containing `m` also contains `n`.
    pub fn in_scope(&self, m: usize, n: usize) -> bool {
        if m == 0 || m >= n || n > self.len() {
            return false;
        }
        fn ok(bs: &[Block], m: usize, n: usize) -> bool {
            bs.iter().all(|b| if b.contains(m) { b.contains(n) && ok(&b.children, m, n) } else { true })
        }
        ok(&self.blocks, m, n)
    }

    /// Lines referenceable from line `n`, in order.
    pub fn ancestors(&self, n: usize) -> Vec<&ProofLine> {
        (1..n).filter(|&m| self.in_scope(m, n)).filter_map(|m| self.line(m)).collect()
    }

    /// The innermost block containing `n`, or `None` for the trunk.
    pub fn innermost_block(&self, n: usize) -> Option<&Block> {
        let mut cur: Option<&Block> = None;
        let mut level = &self.blocks;
        while let Some(b) = level.iter().find(|b| b.contains(n)) {
            cur = Some(b);
            level = &b.children;
        }
        cur
    }

    /// Leaf branches in textual order (leftmost first).
    pub fn leaves(&self) -> Vec<LeafId> {
        if self.blocks.is_empty() {
            return if self.is_empty() { Vec::new() } else { vec![LeafId { start: 1, end: self.len() }] };
        }
        self.all_blocks()
            .into_iter()
            .filter(|b| b.children.is_empty())
            .map(|b| LeafId { start: b.start, end: b.end })
            .collect()
    }

    /// All lines on the branch ending in `leaf`, root first.
    pub fn branch_lines(&self, leaf: LeafId) -> Vec<&ProofLine> {
        let mut out = self.ancestors(leaf.end);
        if let Some(last) = self.line(leaf.end) {
            out.push(last);
        }
        out
    }
}

/// Incrementally assembles a well-formed [`ProofScript`].
#[derive(Debug, Default)]
pub struct ScriptBuilder {
    lines: Vec<ProofLine>,
    top: Vec<Block>,
    stack: Vec<Block>,
    pending: usize,
}

impl ScriptBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Opens a branch that starts with the next pushed line.
    pub fn open(&mut self) {
        self.pending += 1;
    }

    pub fn push(&mut self, content: LineContent, justification: Justification) -> usize {
        let number = self.lines.len() + 1;
        for _ in 0..self.pending {
            self.stack.push(Block { start: number, end: number, children: Vec::new() });
        }
        self.pending = 0;
        self.lines.push(ProofLine { number, content, justification, depth: self.stack.len() });
        number
    }

    pub fn push_signed(&mut self, sf: SignedFormula, justification: Justification) -> usize {
        self.push(LineContent::Signed(sf), justification)
    }

    /// Closes the innermost open branch after the last pushed line.
    ///
    /// # Panics
    /// If no branch is open or the branch would be empty.
    pub fn close(&mut self) {
        assert_eq!(self.pending, 0, "closing a branch with no lines");
        let mut b = self.stack.pop().expect("no open branch to close");
        b.end = self.lines.len();
        match self.stack.last_mut() {
            Some(parent) => parent.children.push(b),
            None => self.top.push(b),
        }
    }

    pub fn next_number(&self) -> usize {
        self.lines.len() + 1
    }

    pub fn depth(&self) -> usize {
        self.stack.len()
    }

    /// # Panics
    /// If a branch is still open.
    pub fn finish(self) -> ProofScript {
        assert!(self.stack.is_empty() && self.pending == 0, "unclosed branch");
        ProofScript { lines: self.lines, blocks: self.top }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const AND_FALSE: &str = "\
1. T A pre
2. T B pre
3. F A&B conclusion
4. { F A 3
5.   @ 1,4 }
6. { F B 3
7.   @ 2,6 }
";

    fn nums(lines: Vec<&ProofLine>) -> Vec<usize> {
        lines.into_iter().map(|l| l.number).collect()
    }

    #[test]
    fn ancestors_skip_sibling_branch() {
        let s = parse_proof(AND_FALSE).unwrap();
        assert_eq!(nums(s.ancestors(7)), vec![1, 2, 3, 6]);
        assert_eq!(nums(s.ancestors(5)), vec![1, 2, 3, 4]);
        assert!(s.ancestors(1).is_empty());
        assert_eq!(nums(s.ancestors(3)), vec![1, 2]);
    }

    #[test]
    fn leaves_and_branches() {
        let s = parse_proof(AND_FALSE).unwrap();
        let leaves = s.leaves();
        assert_eq!(leaves, vec![LeafId { start: 4, end: 5 }, LeafId { start: 6, end: 7 }]);
        assert_eq!(nums(s.branch_lines(leaves[1])), vec![1, 2, 3, 6, 7]);
        assert_eq!(s.innermost_block(6).map(|b| b.start), Some(6));
        assert!(s.innermost_block(2).is_none());
    }

    #[test]
    fn trunk_only_script_is_one_leaf() {
        let s = parse_proof("T A pre\nF A conclusion\n@ 1,2").unwrap();
        assert_eq!(s.leaves(), vec![LeafId { start: 1, end: 3 }]);
        assert!(ProofScript::default().leaves().is_empty());
    }

    #[test]
    fn builder_matches_parser() {
        use crate::formula::{parse_formula, SignedFormula};
        let f = |s: &str| parse_formula(s).unwrap();
        let mut b = ScriptBuilder::new();
        b.push_signed(SignedFormula::t(f("A")), Justification::Premise);
        b.push_signed(SignedFormula::t(f("B")), Justification::Premise);
        b.push_signed(SignedFormula::f(f("A&B")), Justification::Conclusion);
        b.open();
        b.push_signed(SignedFormula::f(f("A")), Justification::Rule { name: None, refs: vec![3] });
        b.push(LineContent::Bottom, Justification::Closure(1, 4));
        b.close();
        b.open();
        b.push_signed(SignedFormula::f(f("B")), Justification::Rule { name: None, refs: vec![3] });
        b.push(LineContent::Bottom, Justification::Closure(2, 6));
        b.close();
        assert_eq!(b.finish(), parse_proof(AND_FALSE).unwrap());
    }

    #[test]
    fn rule_names_round_trip() {
        for r in RuleId::ALL {
            assert_eq!(RuleId::from_ascii(r.ascii()), Some(r));
        }
        assert_eq!(RuleId::from_ascii("XT"), None);
    }
}
