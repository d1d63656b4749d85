//! Line-oriented concrete syntax for ground (weighted) rules.
//!
//! ```text
//! rule     := [weight ":"] headlist? ":-"? bodylist? "."
//! headlist := atom ("|" atom)*
//! bodylist := literal ("," literal)*      literal := atom | "not" atom
//! ```
//!
//! One rule per line, `%` starts a comment. Rendering lists atoms in
//! ascending id order, so `parse(render(p)) == p` positionally.

use std::fmt;

use thiserror::Error;

use crate::atoms::{AtomSet, SymbolTable};
use crate::error::{Error, Result};
use crate::program::{Program, Rule};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Unexpected(String),
    MissingTerminator,
    DuplicateTerminator,
    BadWeight(String),
    BadAtom(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Unexpected(tok) => write!(f, "unexpected {tok}"),
            ParseErrorKind::MissingTerminator => write!(f, "rule is missing its terminating `.`"),
            ParseErrorKind::DuplicateTerminator => write!(f, "text after the rule terminator"),
            ParseErrorKind::BadWeight(w) => write!(f, "malformed weight `{w}`"),
            ParseErrorKind::BadAtom(a) => write!(f, "invalid atom `{a}`"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Number(String),
    Bar,
    Comma,
    If,
    Colon,
    Dot,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Number(s) => write!(f, "number `{s}`"),
            Tok::Bar => write!(f, "`|`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::If => write!(f, "`:-`"),
            Tok::Colon => write!(f, "`:`"),
            Tok::Dot => write!(f, "`.`"),
        }
    }
}

fn lex(line: &str, lineno: usize) -> std::result::Result<Vec<(Tok, usize)>, ParseError> {
    let err = |column, kind| ParseError {
        line: lineno,
        column,
        kind,
    };
    let bytes = line.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let col = i + 1;
        match c {
            '%' => break,
            c if c.is_whitespace() => i += 1,
            '|' => {
                toks.push((Tok::Bar, col));
                i += 1;
            }
            ',' => {
                toks.push((Tok::Comma, col));
                i += 1;
            }
            '.' => {
                toks.push((Tok::Dot, col));
                i += 1;
            }
            ':' => {
                if bytes.get(i + 1) == Some(&b'-') {
                    toks.push((Tok::If, col));
                    i += 2;
                } else {
                    toks.push((Tok::Colon, col));
                    i += 1;
                }
            }
            c if c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '+' => {
                let start = i;
                if c.is_ascii_digit() || c == '-' || c == '+' {
                    i += 1;
                    while i < bytes.len() {
                        let d = bytes[i] as char;
                        let exp_sign =
                            (d == '-' || d == '+') && matches!(bytes[i - 1], b'e' | b'E');
                        // a `.` only continues the number when a digit follows
                        let frac = d == '.' && bytes.get(i + 1).is_some_and(|b| b.is_ascii_digit());
                        if d.is_ascii_alphanumeric() || exp_sign || frac {
                            i += 1;
                        } else {
                            break;
                        }
                    }
                    toks.push((Tok::Number(line[start..i].to_string()), col));
                } else {
                    while i < bytes.len()
                        && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                    {
                        i += 1;
                    }
                    toks.push((Tok::Ident(line[start..i].to_string()), col));
                }
            }
            other => return Err(err(col, ParseErrorKind::Unexpected(format!("`{other}`")))),
        }
    }
    Ok(toks)
}

struct LineParser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_col: usize,
    symbols: &'a mut SymbolTable,
}

impl LineParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn error(&self, kind: ParseErrorKind) -> Error {
        ParseError {
            line: self.line,
            column: self.col(),
            kind,
        }
        .into()
    }

    fn unexpected(&self) -> Error {
        match self.peek() {
            Some(tok) => self.error(ParseErrorKind::Unexpected(tok.to_string())),
            None => self.error(ParseErrorKind::MissingTerminator),
        }
    }

    fn atom(&mut self, name: &str) -> Result<crate::atoms::Atom> {
        self.symbols
            .intern(name)
            .map_err(|_| self.error(ParseErrorKind::BadAtom(name.to_string())))
    }

    fn expect_atom(&mut self) -> Result<crate::atoms::Atom> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                let atom = self.atom(&name)?;
                self.pos += 1;
                Ok(atom)
            }
            _ => Err(self.unexpected()),
        }
    }

    fn rule(&mut self) -> Result<Rule> {
        let mut rule = Rule::default();

        if let Some(Tok::Number(text)) = self.peek().cloned() {
            let weight: f64 = text
                .parse()
                .map_err(|_| self.error(ParseErrorKind::BadWeight(text.clone())))?;
            self.pos += 1;
            if self.peek() != Some(&Tok::Colon) {
                return Err(self.unexpected());
            }
            self.pos += 1;
            rule.weight = Some(weight);
        }

        if let Some(Tok::Ident(_)) = self.peek() {
            rule.head.insert(self.expect_atom()?);
            while self.peek() == Some(&Tok::Bar) {
                self.pos += 1;
                rule.head.insert(self.expect_atom()?);
            }
        }

        if self.peek() == Some(&Tok::If) {
            self.pos += 1;
            if self.peek() != Some(&Tok::Dot) {
                self.literal(&mut rule)?;
                while self.peek() == Some(&Tok::Comma) {
                    self.pos += 1;
                    self.literal(&mut rule)?;
                }
            }
        }

        if self.peek() != Some(&Tok::Dot) {
            return Err(self.unexpected());
        }
        self.pos += 1;
        if self.pos < self.toks.len() {
            return Err(self.error(ParseErrorKind::DuplicateTerminator));
        }
        Ok(rule)
    }

    fn literal(&mut self, rule: &mut Rule) -> Result<()> {
        let negated = matches!(self.peek(), Some(Tok::Ident(s)) if s == "not")
            && matches!(self.toks.get(self.pos + 1), Some((Tok::Ident(_), _)));
        if negated {
            self.pos += 1;
            rule.nbody.insert(self.expect_atom()?);
        } else {
            rule.pbody.insert(self.expect_atom()?);
        }
        Ok(())
    }
}

/// Parses a program, interning atoms into `symbols` in order of first appearance.
pub fn parse_program(text: &str, symbols: &mut SymbolTable) -> Result<Program> {
    let mut rules = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let toks = lex(line, i + 1)?;
        if toks.is_empty() {
            continue;
        }
        let mut parser = LineParser {
            toks,
            pos: 0,
            line: i + 1,
            end_col: line.len() + 1,
            symbols,
        };
        rules.push(parser.rule()?);
    }
    Ok(Program::new(rules).in_universe(symbols.id()))
}

/// Parses a single rule.
pub fn parse_rule(text: &str, symbols: &mut SymbolTable) -> Result<Rule> {
    let program = parse_program(text, symbols)?;
    match program.rules.as_slice() {
        [rule] => Ok(*rule),
        _ => Err(ParseError {
            line: 1,
            column: 1,
            kind: ParseErrorKind::Unexpected(format!("{} rules", program.len())),
        }
        .into()),
    }
}

fn names(symbols: &SymbolTable, set: AtomSet, prefix: &str) -> Vec<String> {
    set.iter()
        .map(|a| format!("{prefix}{}", symbols.name(a)))
        .collect()
}

pub fn render_rule(rule: &Rule, symbols: &SymbolTable) -> String {
    let mut out = String::new();
    if let Some(w) = rule.weight {
        out.push_str(&format!("{w} : "));
    }
    let head = names(symbols, rule.head, "").join(" | ");
    let mut body = names(symbols, rule.pbody, "");
    body.extend(names(symbols, rule.nbody, "not "));
    if body.is_empty() {
        if head.is_empty() {
            out.push_str(":- .");
        } else {
            out.push_str(&head);
            out.push('.');
        }
    } else {
        if !head.is_empty() {
            out.push_str(&head);
            out.push(' ');
        }
        out.push_str(":- ");
        out.push_str(&body.join(", "));
        out.push('.');
    }
    out
}

pub fn render_program(program: &Program, symbols: &SymbolTable) -> String {
    program
        .iter()
        .map(|r| render_rule(r, symbols) + "\n")
        .collect()
}
