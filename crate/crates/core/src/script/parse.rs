use super::{Block, Justification, LineContent, ProofLine, ProofScript, RuleId};
use crate::formula::parse::parse_formula_at;
use crate::formula::{ParseError, Sign, SignedFormula};

/// A run of characters from one text line with its starting column.
#[derive(Clone, Copy)]
struct Span<'a> {
    chars: &'a [char],
    col: usize,
}

impl<'a> Span<'a> {
    fn trim(self) -> Span<'a> {
        let mut s = 0;
        let mut e = self.chars.len();
        while s < e && self.chars[s].is_whitespace() {
            s += 1;
        }
        while e > s && self.chars[e - 1].is_whitespace() {
            e -= 1;
        }
        Span { chars: &self.chars[s..e], col: self.col + s }
    }

    fn split_at(self, i: usize) -> (Span<'a>, Span<'a>) {
        (Span { chars: &self.chars[..i], col: self.col }, Span { chars: &self.chars[i..], col: self.col + i })
    }

    fn text(self) -> String {
        self.chars.iter().collect()
    }

    fn is_empty(self) -> bool {
        self.chars.is_empty()
    }
}

struct OpenBlock {
    start: usize,
    text_line: usize,
    column: usize,
    children: Vec<Block>,
}

struct State {
    lines: Vec<ProofLine>,
    top: Vec<Block>,
    stack: Vec<OpenBlock>,
    /// Braces seen on brace-only lines, waiting for the next proof line.
    pending: Vec<(usize, usize)>,
}

impl State {
    fn close(&mut self, text_line: usize, column: usize) -> Result<(), ParseError> {
        if !self.pending.is_empty() {
            return Err(ParseError::new(text_line, column, "empty branch: '{' is closed before any line"));
        }
        let open = self.stack.pop().ok_or_else(|| {
            ParseError::new(text_line, column, "unbalanced branch delimiter: '}' without a matching '{'")
        })?;
        let block = Block { start: open.start, end: self.lines.len(), children: open.children };
        match self.stack.last_mut() {
            Some(parent) => parent.children.push(block),
            None => self.top.push(block),
        }
        Ok(())
    }
}

/// Parses a proof script. Errors carry the text line and column.
pub fn parse_proof(text: &str) -> Result<ProofScript, ParseError> {
    let mut st = State { lines: Vec::new(), top: Vec::new(), stack: Vec::new(), pending: Vec::new() };
    for (idx, raw) in text.lines().enumerate() {
        let text_line = idx + 1;
        let chars: Vec<char> = raw.chars().take_while(|&c| c != '#').collect();
        let span = Span { chars: &chars, col: 1 }.trim();
        if span.is_empty() {
            continue;
        }
        if span.chars.iter().all(|c| matches!(c, '{' | '}') || c.is_whitespace()) {
            for (i, c) in span.chars.iter().enumerate() {
                match c {
                    '{' => st.pending.push((text_line, span.col + i)),
                    '}' => st.close(text_line, span.col + i)?,
                    _ => {}
                }
            }
            continue;
        }
        parse_line(&mut st, text_line, span)?;
    }
    if let Some(&(line, column)) = st.pending.first() {
        return Err(ParseError::new(
            line,
            column,
            "unbalanced branch delimiter: '{' opens a branch with no lines",
        ));
    }
    if let Some(open) = st.stack.first() {
        return Err(ParseError::new(
            open.text_line,
            open.column,
            format!("unbalanced branch delimiter: the branch opened at line {} is never closed", open.start),
        ));
    }
    Ok(ProofScript { lines: st.lines, blocks: st.top })
}

fn parse_line(st: &mut State, text_line: usize, span: Span<'_>) -> Result<(), ParseError> {
    let number = st.lines.len() + 1;
    let mut rest = span;

    // Optional explicit number.
    let digits = rest.chars.iter().take_while(|c| c.is_ascii_digit()).count();
    if digits > 0 {
        let (num, after) = rest.split_at(digits);
        if after.chars.first() != Some(&'.') {
            return Err(ParseError::new(text_line, after.col, "expected '.' after the line number"));
        }
        let explicit: usize = num
            .text()
            .parse()
            .map_err(|_| ParseError::new(text_line, num.col, "line number out of range"))?;
        if explicit != number {
            return Err(ParseError::new(
                text_line,
                num.col,
                format!("line number {explicit} does not match its position; expected {number}"),
            ));
        }
        rest = after.split_at(1).1.trim();
    }

    // Leading '{'.
    let mut opens = Vec::new();
    while rest.chars.first() == Some(&'{') {
        opens.push(rest.col);
        rest = rest.split_at(1).1.trim();
    }

    // Trailing '}'.
    let mut closes = Vec::new();
    while rest.chars.last() == Some(&'}') {
        let i = rest.chars.len() - 1;
        closes.push(rest.col + i);
        rest = rest.split_at(i).0.trim();
    }
    closes.reverse();

    if rest.is_empty() {
        return Err(ParseError::new(text_line, span.col, "expected a signed formula or '@'"));
    }

    let (content, justification) = parse_body(text_line, rest)?;

    for &(l, c) in &st.pending {
        st.stack.push(OpenBlock { start: number, text_line: l, column: c, children: Vec::new() });
    }
    st.pending.clear();
    for &c in &opens {
        st.stack.push(OpenBlock { start: number, text_line, column: c, children: Vec::new() });
    }
    st.lines.push(ProofLine { number, content, justification, depth: st.stack.len() });
    for c in closes {
        st.close(text_line, c)?;
    }
    Ok(())
}

fn parse_body(text_line: usize, body: Span<'_>) -> Result<(LineContent, Justification), ParseError> {
    let first = body.chars[0];
    let second = body.chars.get(1).copied();
    if first == '@' {
        let rest = body.split_at(1).1.trim();
        let just = parse_justification(text_line, rest, body.col)?;
        return match just.justification {
            Justification::Rule { name: None, refs } if just.formula.is_empty() && refs.len() == 2 => {
                Ok((LineContent::Bottom, Justification::Closure(refs[0], refs[1])))
            }
            _ => Err(ParseError::new(
                text_line,
                body.col,
                "'@' must be justified by exactly two line numbers, e.g. '@ 1,2'",
            )),
        };
    }
    let sign = match (first, second) {
        ('T', s) if s.is_none_or(|c| !c.is_ascii_alphanumeric()) => Sign::True,
        ('F', s) if s.is_none_or(|c| !c.is_ascii_alphanumeric()) => Sign::False,
        _ => {
            return Err(ParseError::new(
                text_line,
                body.col,
                "bad sign: a line must start with 'T', 'F' or '@'",
            ))
        }
    };
    let rest = body.split_at(1).1.trim();
    let just = parse_justification(text_line, rest, body.col)?;
    if just.formula.is_empty() {
        return Err(ParseError::new(text_line, rest.col, "missing formula after the sign"));
    }
    let formula = match just.formula_result {
        Some(r) => r?,
        None => parse_formula_at(&just.formula.text(), text_line, just.formula.col)?,
    };
    Ok((LineContent::Signed(SignedFormula::new(sign, formula)), just.justification))
}

struct SplitJust<'a> {
    formula: Span<'a>,
    /// Already-parsed formula when the rule-name decision needed it.
    formula_result: Option<Result<crate::formula::Formula, ParseError>>,
    justification: Justification,
}

/// Splits `<formula> <justification>` from the right.
fn parse_justification<'a>(
    text_line: usize,
    rest: Span<'a>,
    body_col: usize,
) -> Result<SplitJust<'a>, ParseError> {
    let chars = rest.chars;
    let n = chars.len();
    let word_start = |end: usize| {
        let mut s = end;
        while s > 0 && !chars[s - 1].is_whitespace() {
            s -= 1;
        }
        s
    };

    // Reserved words.
    let ws = word_start(n);
    let last_word: String = chars[ws..].iter().collect();
    if last_word == "pre" || last_word == "conclusion" {
        let formula = rest.split_at(ws).0.trim();
        let j = if last_word == "pre" { Justification::Premise } else { Justification::Conclusion };
        return Ok(SplitJust { formula, formula_result: None, justification: j });
    }

    // Trailing references: digits (',' digits)*, allowing spaces around commas.
    let mut refs = Vec::new();
    let mut i = n;
    loop {
        let end = i;
        while i > 0 && chars[i - 1].is_ascii_digit() {
            i -= 1;
        }
        if i == end {
            return Err(ParseError::new(
                text_line,
                if n == 0 { body_col } else { rest.col + end.min(n - 1) },
                "missing justification: expected 'pre', 'conclusion' or cited line numbers",
            ));
        }
        let num: String = chars[i..end].iter().collect();
        let value: usize =
            num.parse().map_err(|_| ParseError::new(text_line, rest.col + i, "line number out of range"))?;
        refs.push(value);
        let mut j = i;
        while j > 0 && chars[j - 1].is_whitespace() {
            j -= 1;
        }
        if j > 0 && chars[j - 1] == ',' {
            i = j - 1;
            while i > 0 && chars[i - 1].is_whitespace() {
                i -= 1;
            }
            continue;
        }
        break;
    }
    refs.reverse();
    if i > 0 && !chars[i - 1].is_whitespace() {
        return Err(ParseError::new(
            text_line,
            rest.col + i,
            "missing justification: expected whitespace before the cited line numbers",
        ));
    }
    let before = rest.split_at(i).0.trim();
    if before.is_empty() {
        return Ok(SplitJust {
            formula: before,
            formula_result: None,
            justification: Justification::Rule { name: None, refs },
        });
    }

    // Optional rule name: the last word, when what precedes it is a formula.
    let bchars = before.chars;
    let ws = word_start_of(bchars);
    let word: String = bchars[ws..].iter().collect();
    let (head, _) = before.split_at(ws);
    let head = head.trim();
    if ws > 0 {
        if let Some(rule) = RuleId::from_ascii(&word) {
            if let Ok(f) = parse_formula_at(&head.text(), text_line, head.col) {
                return Ok(SplitJust {
                    formula: head,
                    formula_result: Some(Ok(f)),
                    justification: Justification::Rule { name: Some(rule), refs },
                });
            }
        }
    }
    let whole = parse_formula_at(&before.text(), text_line, before.col);
    if whole.is_err()
        && ws > 0
        && looks_like_rule_name(&word)
        && parse_formula_at(&head.text(), text_line, head.col).is_ok()
    {
        return Err(ParseError::new(
            text_line,
            before.col + ws,
            format!(
                "unknown rule name '{word}'; expected one of {}",
                RuleId::ALL.map(|r| r.ascii()).join(" ")
            ),
        ));
    }
    Ok(SplitJust {
        formula: before,
        formula_result: Some(whole),
        justification: Justification::Rule { name: None, refs },
    })
}

fn word_start_of(chars: &[char]) -> usize {
    let mut s = chars.len();
    while s > 0 && !chars[s - 1].is_whitespace() {
        s -= 1;
    }
    s
}

fn looks_like_rule_name(word: &str) -> bool {
    word.len() <= 4 && (word.ends_with('T') || word.ends_with('F'))
}
