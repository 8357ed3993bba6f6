use super::{Justification, LineContent, ProofScript};
use crate::formula::{format_formula, Notation};

/// Canonical text: explicit line numbers and one space of indentation per
/// branch level. Rule names are written whenever the script carries them.
pub fn serialize_proof(script: &ProofScript) -> String {
    let blocks = script.all_blocks();
    let mut out = String::new();
    for line in &script.lines {
        let opens = blocks.iter().filter(|b| b.start == line.number).count();
        let closes = blocks.iter().filter(|b| b.end == line.number).count();
        out.push_str(&format!("{}. ", line.number));
        out.push_str(&" ".repeat(line.depth.saturating_sub(opens)));
        out.push_str(&"{ ".repeat(opens));
        match &line.content {
            LineContent::Signed(sf) => {
                out.push(sf.sign.letter());
                out.push(' ');
                out.push_str(&format_formula(&sf.formula, Notation::Ascii));
            }
            LineContent::Bottom => out.push('@'),
        }
        out.push(' ');
        out.push_str(&justification_text(&line.justification));
        out.push_str(&" }".repeat(closes));
        out.push('\n');
    }
    out
}

pub(crate) fn justification_text(j: &Justification) -> String {
    match j {
        Justification::Premise => "pre".to_string(),
        Justification::Conclusion => "conclusion".to_string(),
        Justification::Rule { name, refs } => {
            let refs = refs.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
            match name {
                Some(r) => format!("{} {refs}", r.ascii()),
                None => refs,
            }
        }
        Justification::Closure(m, n) => format!("{m},{n}"),
    }
}
