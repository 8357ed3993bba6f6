use std::fmt;

use thiserror::Error;

use super::{Formula, Term};

/// A syntax error with a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { line, column, message: message.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Not,
    And,
    Or,
    Implies,
    Iff,
    Turnstile,
    LParen,
    RParen,
    Comma,
    Upper(String),
    Lower(String),
    ForAll(String),
    Exists(String),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Not => f.write_str("~"),
            Tok::And => f.write_str("&"),
            Tok::Or => f.write_str("|"),
            Tok::Implies => f.write_str("->"),
            Tok::Iff => f.write_str("<->"),
            Tok::Turnstile => f.write_str("|-"),
            Tok::LParen => f.write_str("("),
            Tok::RParen => f.write_str(")"),
            Tok::Comma => f.write_str(","),
            Tok::Upper(s) | Tok::Lower(s) => f.write_str(s),
            Tok::ForAll(v) => write!(f, "A{v}"),
            Tok::Exists(v) => write!(f, "E{v}"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    column: usize,
}

struct Lexed {
    toks: Vec<(Tok, Pos)>,
    end: Pos,
}

fn lex(text: &str, origin: Pos) -> Result<Lexed, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    let mut line = origin.line;
    let mut column = origin.column;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column };
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            column += 1;
            continue;
        }
        let (tok, len) = match c {
            '~' => (Tok::Not, 1),
            '&' => (Tok::And, 1),
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            ',' => (Tok::Comma, 1),
            '|' if chars.get(i + 1) == Some(&'-') => (Tok::Turnstile, 2),
            '|' => (Tok::Or, 1),
            '-' if chars.get(i + 1) == Some(&'>') => (Tok::Implies, 2),
            '<' if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') => (Tok::Iff, 3),
            c if c.is_ascii_alphabetic() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_alphanumeric() {
                    j += 1;
                }
                let word: String = chars[i..j].iter().collect();
                (classify_word(word), j - i)
            }
            other => return Err(ParseError::new(line, column, format!("unexpected character '{other}'"))),
        };
        toks.push((tok, pos));
        i += len;
        column += len;
    }
    Ok(Lexed { toks, end: Pos { line, column } })
}

/// `Ax`/`Ex` (capital A or E immediately followed by a variable) is a
/// quantifier; any other capitalised word is a predicate.
fn classify_word(word: String) -> Tok {
    let mut chars = word.chars();
    let first = chars.next().unwrap_or_default();
    let second = chars.next();
    match (first, second) {
        ('A', Some(c)) if c.is_ascii_lowercase() => Tok::ForAll(word[1..].to_string()),
        ('E', Some(c)) if c.is_ascii_lowercase() => Tok::Exists(word[1..].to_string()),
        (c, _) if c.is_ascii_uppercase() => Tok::Upper(word),
        _ => Tok::Lower(word),
    }
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    idx: usize,
    end: Pos,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(t, _)| t)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.idx).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<(Tok, Pos)> {
        let t = self.toks.get(self.idx).cloned();
        if t.is_some() {
            self.idx += 1;
        }
        t
    }

    fn err_at(&self, pos: Pos, message: impl Into<String>) -> ParseError {
        ParseError::new(pos.line, pos.column, message)
    }

    fn at_end(&self) -> bool {
        self.idx >= self.toks.len()
    }

    fn implies(&mut self) -> Result<Formula, ParseError> {
        let left = self.or()?;
        match self.peek() {
            Some(Tok::Implies) => {
                let (_, pos) = self.bump().unwrap();
                let right = self.operand_after("->", pos, Self::implies)?;
                Ok(Formula::implies(left, right))
            }
            Some(Tok::Iff) => Err(self
                .err_at(self.pos(), "the biconditional '<->' is not supported; write it with '->' and '&'")),
            _ => Ok(left),
        }
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let left = self.and()?;
        if self.peek() == Some(&Tok::Or) {
            let (_, pos) = self.bump().unwrap();
            let right = self.operand_after("|", pos, Self::or)?;
            return Ok(Formula::or(left, right));
        }
        Ok(left)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let left = self.unary()?;
        if self.peek() == Some(&Tok::And) {
            let (_, pos) = self.bump().unwrap();
            let right = self.operand_after("&", pos, Self::and)?;
            return Ok(Formula::and(left, right));
        }
        Ok(left)
    }

    fn operand_after(
        &mut self,
        op: &str,
        op_pos: Pos,
        next: fn(&mut Self) -> Result<Formula, ParseError>,
    ) -> Result<Formula, ParseError> {
        match self.peek() {
            None | Some(Tok::RParen) | Some(Tok::Comma) | Some(Tok::Turnstile) => {
                Err(self.err_at(op_pos, format!("connective '{op}' is missing its right operand")))
            }
            _ => next(self),
        }
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Not) => {
                self.bump();
                if self.at_end() {
                    return Err(self.err_at(pos, "connective '~' is missing its operand"));
                }
                Ok(Formula::not(self.unary()?))
            }
            Some(Tok::ForAll(v)) => {
                self.bump();
                if self.at_end() {
                    return Err(self.err_at(pos, format!("quantifier 'A{v}' has no body")));
                }
                Ok(Formula::forall(v, self.unary()?))
            }
            Some(Tok::Exists(v)) => {
                self.bump();
                if self.at_end() {
                    return Err(self.err_at(pos, format!("quantifier 'E{v}' has no body")));
                }
                Ok(Formula::exists(v, self.unary()?))
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        let pos = self.pos();
        match self.bump() {
            None => Err(self.err_at(pos, "expected a formula, found end of input")),
            Some((Tok::LParen, open)) => {
                let inner = self.implies()?;
                match self.bump() {
                    Some((Tok::RParen, _)) => Ok(inner),
                    None => Err(self.err_at(open, "unbalanced parenthesis: '(' is never closed")),
                    Some((t, p)) => Err(self.err_at(p, format!("expected ')', found '{t}'"))),
                }
            }
            Some((Tok::Upper(name), _)) => {
                let args = self.arguments()?;
                Ok(Formula::Atom(name, args))
            }
            Some((Tok::Lower(name), p)) => Err(self.err_at(
                p,
                format!(
                    "expected a formula, found lowercase identifier '{name}' \
                     (atoms and predicates start with a capital letter)"
                ),
            )),
            Some((Tok::RParen, p)) => Err(self.err_at(p, "unbalanced parenthesis: unexpected ')'")),
            Some((Tok::Iff, p)) => {
                Err(self.err_at(p, "the biconditional '<->' is not supported; write it with '->' and '&'"))
            }
            Some((t @ (Tok::And | Tok::Or | Tok::Implies), p)) => {
                Err(self.err_at(p, format!("connective '{t}' is missing its left operand")))
            }
            Some((t, p)) => Err(self.err_at(p, format!("expected a formula, found '{t}'"))),
        }
    }

    fn arguments(&mut self) -> Result<Vec<Term>, ParseError> {
        if self.peek() != Some(&Tok::LParen) {
            return Ok(Vec::new());
        }
        let (_, open) = self.bump().unwrap();
        let mut args = vec![self.term()?];
        loop {
            match self.bump() {
                Some((Tok::Comma, _)) => args.push(self.term()?),
                Some((Tok::RParen, _)) => return Ok(args),
                None => return Err(self.err_at(open, "unbalanced parenthesis: '(' is never closed")),
                Some((t, p)) => return Err(self.err_at(p, format!("expected ',' or ')', found '{t}'"))),
            }
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some((Tok::Lower(name), _)) => {
                if self.peek() == Some(&Tok::LParen) {
                    if self.toks.get(self.idx + 1).map(|(t, _)| t) == Some(&Tok::RParen) {
                        self.idx += 2;
                        return Ok(Term::Compound(name, Vec::new()));
                    }
                    let args = self.arguments()?;
                    Ok(Term::Compound(name, args))
                } else {
                    Ok(Term::Var(name))
                }
            }
            Some((t @ (Tok::Upper(_) | Tok::ForAll(_) | Tok::Exists(_)), p)) => {
                Err(self
                    .err_at(p, format!("expected a term, found '{t}' (terms start with a lowercase letter)")))
            }
            Some((t, p)) => Err(self.err_at(p, format!("expected a term, found '{t}'"))),
            None => Err(self.err_at(pos, "expected a term, found end of input")),
        }
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        match self.toks.get(self.idx) {
            None => Ok(()),
            Some((Tok::RParen, p)) => Err(self.err_at(*p, "unbalanced parenthesis: unexpected ')'")),
            Some((t, p)) => Err(self.err_at(*p, format!("unexpected '{t}' after a complete formula"))),
        }
    }
}

/// Parses one formula. Precedence from tightest to loosest is
/// `~`, `Ax`, `Ex`, `&`, `|`, `->`; binary connectives group to the right.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    parse_formula_at(text, 1, 1)
}

/// Parses a formula that starts at the given line/column of a larger text,
/// so that error positions refer to the enclosing document.
pub(crate) fn parse_formula_at(text: &str, line: usize, column: usize) -> Result<Formula, ParseError> {
    let lexed = lex(text, Pos { line, column })?;
    let mut p = Parser { toks: lexed.toks, idx: 0, end: lexed.end };
    let f = p.implies()?;
    p.expect_end()?;
    Ok(f)
}

/// Parses `φ1, …, φn |- ψ` into its premises and conclusion.
pub fn parse_sequent_parts(text: &str) -> Result<(Vec<Formula>, Formula), ParseError> {
    let lexed = lex(text, Pos { line: 1, column: 1 })?;
    let mut p = Parser { toks: lexed.toks, idx: 0, end: lexed.end };
    let mut premises = Vec::new();
    if p.peek() != Some(&Tok::Turnstile) {
        loop {
            premises.push(p.implies()?);
            match p.peek() {
                Some(Tok::Comma) => {
                    p.bump();
                }
                Some(Tok::Turnstile) => break,
                None => return Err(p.err_at(p.pos(), "expected '|-' before the conclusion")),
                Some(t) => {
                    let t = t.clone();
                    return Err(p.err_at(p.pos(), format!("expected ',' or '|-', found '{t}'")));
                }
            }
        }
    }
    p.bump();
    let conclusion = p.implies()?;
    p.expect_end()?;
    Ok((premises, conclusion))
}
