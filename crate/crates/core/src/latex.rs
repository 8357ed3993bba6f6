//! Tree reconstruction and qtree export.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::checker::{CheckReport, Verdict};
use crate::formula::{Notation, SignedFormula};
use crate::script::{Block, Justification, LineContent, ProofScript};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Highlight {
    None,
    ClosingPair,
    OpenPath,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Terminator {
    Closed,
    Open,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeFormula {
    pub line: usize,
    pub formula: SignedFormula,
    pub highlight: Highlight,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableauTree {
    pub formulas: Vec<TreeFormula>,
    pub children: Vec<TableauTree>,
    /// Set on leaves only.
    pub terminator: Option<Terminator>,
}

impl TableauTree {
    pub fn leaf_count(&self) -> usize {
        if self.children.is_empty() {
            1
        } else {
            self.children.iter().map(TableauTree::leaf_count).sum()
        }
    }

    pub fn split_count(&self) -> usize {
        usize::from(self.children.len() == 2)
            + self.children.iter().map(TableauTree::split_count).sum::<usize>()
    }

    /// All formulas in pre-order.
    pub fn formulas(&self) -> Vec<&TreeFormula> {
        let mut out: Vec<&TreeFormula> = self.formulas.iter().collect();
        for c in &self.children {
            out.extend(c.formulas());
        }
        out
    }
}

/// Rebuilds the tree drawn by `script`, coloured from `report`.
///
/// Formulas cited by a closing line are marked [`Highlight::ClosingPair`]
/// when the tableau is closed; formulas on an open branch are marked
/// [`Highlight::OpenPath`].
pub fn build_tree(script: &ProofScript, report: &CheckReport) -> TableauTree {
    let open: BTreeSet<usize> = report.open_branches.iter().flat_map(|b| b.lines.iter().copied()).collect();
    let closing: BTreeSet<usize> = if report.verdict == Verdict::Valid {
        script
            .lines
            .iter()
            .filter_map(|l| match l.justification {
                Justification::Closure(a, b) => Some([a, b]),
                _ => None,
            })
            .flatten()
            .collect()
    } else {
        BTreeSet::new()
    };
    let highlight = |n: usize| {
        if open.contains(&n) {
            Highlight::OpenPath
        } else if closing.contains(&n) {
            Highlight::ClosingPair
        } else {
            Highlight::None
        }
    };
    build_node(script, 1, script.len(), &script.blocks, &highlight)
}

fn build_node(
    script: &ProofScript,
    lo: usize,
    hi: usize,
    children: &[Block],
    highlight: &dyn Fn(usize) -> Highlight,
) -> TableauTree {
    let mut formulas = Vec::new();
    let mut closed = false;
    for n in lo..=hi {
        if children.iter().any(|c| c.contains(n)) {
            continue;
        }
        match script.line(n).map(|l| &l.content) {
            Some(LineContent::Signed(sf)) => {
                formulas.push(TreeFormula { line: n, formula: sf.clone(), highlight: highlight(n) })
            }
            Some(LineContent::Bottom) => closed = true,
            None => {}
        }
    }
    let kids: Vec<TableauTree> =
        children.iter().map(|b| build_node(script, b.start, b.end, &b.children, highlight)).collect();
    let terminator = kids.is_empty().then_some(if closed { Terminator::Closed } else { Terminator::Open });
    TableauTree { formulas, children: kids, terminator }
}

fn label(node: &TableauTree) -> String {
    let parts: Vec<String> = node
        .formulas
        .iter()
        .map(|f| {
            let math = format!("${}$", f.formula.render(Notation::Latex));
            match f.highlight {
                Highlight::None => math,
                Highlight::ClosingPair => format!("{{\\color{{blue}}{math}}}"),
                Highlight::OpenPath => format!("{{\\color{{red}}{math}}}"),
            }
        })
        .collect();
    format!("{{{}}}", parts.join(" \\\\ "))
}

fn write_node(out: &mut String, node: &TableauTree, depth: usize) {
    write!(out, "[.{}", label(node)).unwrap();
    for child in &node.children {
        write!(out, "\n{}", "  ".repeat(depth + 1)).unwrap();
        write_node(out, child, depth + 1);
    }
    if node.terminator == Some(Terminator::Closed) {
        out.push_str(" [.{$\\times$} ]");
    }
    out.push_str(" ]");
}

/// qtree source for `tree`. Needs the `qtree` and `xcolor` packages.
pub fn to_qtree(tree: &TableauTree) -> String {
    let mut out = String::from("% \\usepackage{qtree} \\usepackage{xcolor}\n\\Tree ");
    write_node(&mut out, tree, 0);
    out.push('\n');
    out
}

/// Checks and exports in one step.
pub fn proof_to_qtree(script: &ProofScript) -> String {
    to_qtree(&build_tree(script, &crate::checker::check(script)))
}
