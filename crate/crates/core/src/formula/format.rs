use super::{Formula, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Notation {
    Ascii,
    Unicode,
    Latex,
}

struct Symbols {
    not: &'static str,
    and: &'static str,
    or: &'static str,
    implies: &'static str,
    forall: &'static str,
    exists: &'static str,
}

const ASCII: Symbols = Symbols { not: "~", and: "&", or: "|", implies: "->", forall: "A", exists: "E" };
const UNICODE: Symbols =
    Symbols { not: "¬", and: " ∧ ", or: " ∨ ", implies: " → ", forall: "∀", exists: "∃" };
const LATEX: Symbols = Symbols {
    not: "\\lnot ",
    and: "\\land ",
    or: "\\lor ",
    implies: "\\rightarrow ",
    forall: "\\forall ",
    exists: "\\exists ",
};

// Binding strength; higher binds tighter.
const IMPLIES: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const UNARY: u8 = 4;
const ATOM: u8 = 5;

fn level(phi: &Formula) -> u8 {
    match phi {
        Formula::Atom(..) => ATOM,
        Formula::Not(_) | Formula::ForAll(..) | Formula::Exists(..) => UNARY,
        Formula::And(..) => AND,
        Formula::Or(..) => OR,
        Formula::Implies(..) => IMPLIES,
    }
}

/// Renders a formula with the fewest parentheses that still parse back
/// to the same tree.
pub fn format_formula(phi: &Formula, notation: Notation) -> String {
    let mut out = String::new();
    write_formula(phi, notation, &mut out);
    out
}

fn symbols(notation: Notation) -> &'static Symbols {
    match notation {
        Notation::Ascii => &ASCII,
        Notation::Unicode => &UNICODE,
        Notation::Latex => &LATEX,
    }
}

fn write_formula(phi: &Formula, notation: Notation, out: &mut String) {
    let sym = symbols(notation);
    match phi {
        Formula::Atom(p, args) => {
            out.push_str(p);
            write_args(args, out);
        }
        Formula::Not(f) => {
            out.push_str(sym.not);
            write_operand(f, level(f) < UNARY, notation, out);
        }
        Formula::ForAll(v, body) | Formula::Exists(v, body) => {
            let q = if matches!(phi, Formula::ForAll(..)) { sym.forall } else { sym.exists };
            out.push_str(q);
            out.push_str(v);
            out.push(' ');
            write_operand(body, level(body) < UNARY, notation, out);
        }
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
            let (op, lv) = match phi {
                Formula::And(..) => (sym.and, AND),
                Formula::Or(..) => (sym.or, OR),
                _ => (sym.implies, IMPLIES),
            };
            write_operand(l, level(l) <= lv, notation, out);
            out.push_str(op);
            write_operand(r, level(r) < lv, notation, out);
        }
    }
}

fn write_operand(phi: &Formula, parens: bool, notation: Notation, out: &mut String) {
    if parens {
        out.push('(');
        write_formula(phi, notation, out);
        out.push(')');
    } else {
        write_formula(phi, notation, out);
    }
}

fn write_args(args: &[Term], out: &mut String) {
    if args.is_empty() {
        return;
    }
    out.push('(');
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&a.to_string());
    }
    out.push(')');
}
