//! Minimal s-expression reader for PDDL text.
//!
//! Handles `;` line comments, arbitrary whitespace, and case folding.
//! Produces positioned atoms/lists so downstream shape checks can report
//! line/column diagnostics.

use crate::diag::{Code, Diagnostic, Location};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: u32,
    pub col: u32,
}

impl Pos {
    pub fn loc(&self) -> Location {
        Location::Span {
            line: self.line,
            col: self.col,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sexpr {
    Atom(String, Pos),
    List(Vec<Sexpr>, Pos),
}

impl Sexpr {
    pub fn pos(&self) -> Pos {
        match self {
            Sexpr::Atom(_, p) | Sexpr::List(_, p) => *p,
        }
    }

    pub fn atom(&self) -> Option<&str> {
        match self {
            Sexpr::Atom(s, _) => Some(s),
            Sexpr::List(..) => None,
        }
    }

    pub fn list(&self) -> Option<&[Sexpr]> {
        match self {
            Sexpr::List(items, _) => Some(items),
            Sexpr::Atom(..) => None,
        }
    }

    /// The head atom of a list, e.g. `":init"` for `(:init ...)`.
    pub fn head(&self) -> Option<&str> {
        self.list().and_then(|items| items.first()).and_then(Sexpr::atom)
    }
}

/// Symbols may contain letters, digits, `-`, `_`, `:` and `?`.
/// Input is folded to lowercase here, which makes the whole grammar
/// case-insensitive.
fn is_symbol_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | ':' | '?')
}

/// Nesting deeper than this is rejected instead of risking stack overflow.
const MAX_DEPTH: u32 = 256;

/// Read every top-level form in `text`.
pub fn read_all(text: &str) -> Result<Vec<Sexpr>, Diagnostic> {
    let mut reader = Reader {
        chars: text.chars().collect(),
        idx: 0,
        line: 1,
        col: 1,
    };
    let mut forms = Vec::new();
    loop {
        reader.skip_trivia();
        if reader.at_end() {
            return Ok(forms);
        }
        forms.push(reader.read_form(0)?);
    }
}

/// Read exactly one top-level form; trailing content is an error.
pub fn read_one(text: &str) -> Result<Sexpr, Diagnostic> {
    let forms = read_all(text)?;
    match forms.len() {
        0 => Err(Diagnostic::error(
            Code::SyntaxError,
            Location::Span { line: 1, col: 1 },
            "input contains no PDDL form",
        )),
        1 => Ok(forms.into_iter().next().unwrap()),
        _ => Err(Diagnostic::error(
            Code::SyntaxError,
            forms[1].pos().loc(),
            "unexpected content after the top-level form",
        )),
    }
}

struct Reader {
    chars: Vec<char>,
    idx: usize,
    line: u32,
    col: u32,
}

impl Reader {
    fn at_end(&self) -> bool {
        self.idx >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.idx).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.idx += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            col: self.col,
        }
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == ';' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn read_form(&mut self, depth: u32) -> Result<Sexpr, Diagnostic> {
        self.skip_trivia();
        let pos = self.pos();
        if depth > MAX_DEPTH {
            return Err(Diagnostic::error(
                Code::SyntaxError,
                pos.loc(),
                format!("nesting deeper than {MAX_DEPTH} levels"),
            ));
        }
        match self.peek() {
            None => Err(Diagnostic::error(
                Code::UnbalancedParens,
                pos.loc(),
                "unexpected end of input inside a list",
            )),
            Some('(') => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_trivia();
                    match self.peek() {
                        Some(')') => {
                            self.bump();
                            return Ok(Sexpr::List(items, pos));
                        }
                        None => {
                            return Err(Diagnostic::error(
                                Code::UnbalancedParens,
                                pos.loc(),
                                "unclosed '(' — missing ')'",
                            ))
                        }
                        Some(_) => items.push(self.read_form(depth + 1)?),
                    }
                }
            }
            Some(')') => Err(Diagnostic::error(
                Code::UnbalancedParens,
                pos.loc(),
                "unmatched ')'",
            )),
            Some(c) if is_symbol_char(c) => {
                let mut sym = String::new();
                while let Some(c) = self.peek() {
                    if is_symbol_char(c) {
                        sym.push(c.to_ascii_lowercase());
                        self.bump();
                    } else {
                        break;
                    }
                }
                Ok(Sexpr::Atom(sym, pos))
            }
            Some(c) => Err(Diagnostic::error(
                Code::LexicalError,
                pos.loc(),
                format!("invalid character '{c}'"),
            )),
        }
    }
}
