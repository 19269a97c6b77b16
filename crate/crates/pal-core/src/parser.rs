//! Recursive-descent parser for the ASCII concrete syntax.
//!
//! ```text
//! formula := iff
//! iff     := imp ("<->" iff)?
//! imp     := or  ("->" imp)?
//! or      := and ("|" and)*
//! and     := unary ("&" unary)*
//! unary   := "~" unary | "K" ident unary | "E" unary | "C" cbody
//!          | "[" "!" formula "]" unary | "top" | ident | "(" formula ")"
//! cbody   := "(" guard "|" formula ")"    -- relativized form
//!          | "(" formula ")"              -- plain form, parenthesized
//!          | unary                        -- plain form
//! ```
//!
//! Inside `C( .. )` the guard is parsed with `|` suppressed at the top
//! level, so the first bare `|` separates guard from body; a guard that is
//! itself a disjunction must be parenthesized.

use crate::formula::{Agent, Formula};
use std::fmt;
use thiserror::Error;

/// A syntax error, with the 0-based byte offset of the offending token and
/// the set of tokens that would have been accepted there.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at byte {}: expected {}, found {}",
            self.offset,
            self.expected.join(" or "),
            self.found
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Top,
    KwK,
    KwE,
    KwC,
    Tilde,
    Amp,
    Pipe,
    Arrow,
    DArrow,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Bang,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Top => "`top`".into(),
            Tok::KwK => "`K`".into(),
            Tok::KwE => "`E`".into(),
            Tok::KwC => "`C`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Pipe => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::DArrow => "`<->`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Bang => "`!`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn tokens(mut self) -> Result<Vec<(usize, Tok)>, ParseError> {
        let mut out = Vec::new();
        loop {
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
            if self.pos >= self.src.len() {
                out.push((self.pos, Tok::Eof));
                return Ok(out);
            }
            let start = self.pos;
            let c = self.src[self.pos];
            let tok = match c {
                b'~' => {
                    self.pos += 1;
                    Tok::Tilde
                }
                b'&' => {
                    self.pos += 1;
                    Tok::Amp
                }
                b'|' => {
                    self.pos += 1;
                    Tok::Pipe
                }
                b'(' => {
                    self.pos += 1;
                    Tok::LParen
                }
                b')' => {
                    self.pos += 1;
                    Tok::RParen
                }
                b'[' => {
                    self.pos += 1;
                    Tok::LBracket
                }
                b']' => {
                    self.pos += 1;
                    Tok::RBracket
                }
                b'!' => {
                    self.pos += 1;
                    Tok::Bang
                }
                b'-' => {
                    if self.src.get(self.pos + 1) == Some(&b'>') {
                        self.pos += 2;
                        Tok::Arrow
                    } else {
                        return Err(unknown_operator(start, &self.src[start..]));
                    }
                }
                b'<' => {
                    if self.src.get(self.pos + 1) == Some(&b'-')
                        && self.src.get(self.pos + 2) == Some(&b'>')
                    {
                        self.pos += 3;
                        Tok::DArrow
                    } else {
                        return Err(unknown_operator(start, &self.src[start..]));
                    }
                }
                c if c.is_ascii_alphabetic() => {
                    let mut end = self.pos + 1;
                    while end < self.src.len() && self.src[end].is_ascii_alphanumeric() {
                        end += 1;
                    }
                    self.pos = end;
                    let word = std::str::from_utf8(&self.src[start..end]).unwrap();
                    match word {
                        "top" => Tok::Top,
                        "K" => Tok::KwK,
                        "E" => Tok::KwE,
                        "C" => Tok::KwC,
                        _ => Tok::Ident(word.to_string()),
                    }
                }
                _ => return Err(unknown_operator(start, &self.src[start..])),
            };
            out.push((start, tok));
        }
    }
}

fn unknown_operator(offset: usize, rest: &[u8]) -> ParseError {
    let glyph: String = String::from_utf8_lossy(rest).chars().take(1).collect();
    ParseError {
        offset,
        expected: vec!["a formula token".into()],
        found: format!("unknown operator `{glyph}`"),
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn offset(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, label: &str) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[label]))
        }
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError {
            offset: self.offset(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        self.iff(false)
    }

    fn iff(&mut self, no_pipe: bool) -> Result<Formula, ParseError> {
        let lhs = self.imp(no_pipe)?;
        if *self.peek() == Tok::DArrow {
            self.bump();
            let rhs = self.iff(no_pipe)?;
            Ok(Formula::iff(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn imp(&mut self, no_pipe: bool) -> Result<Formula, ParseError> {
        let lhs = self.or(no_pipe)?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.imp(no_pipe)?;
            Ok(Formula::imp(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn or(&mut self, no_pipe: bool) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while *self.peek() == Tok::Pipe && !no_pipe {
            self.bump();
            let rhs = self.and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Tilde => {
                self.bump();
                Ok(Formula::neg(self.unary()?))
            }
            Tok::KwK => {
                self.bump();
                let agent = match self.peek().clone() {
                    Tok::Ident(name) => {
                        self.bump();
                        Agent::new(name).expect("lexer yields valid identifiers")
                    }
                    _ => return Err(self.error(&["an agent name"])),
                };
                Ok(Formula::knows(agent, self.unary()?))
            }
            Tok::KwE => {
                self.bump();
                Ok(Formula::everyone(self.unary()?))
            }
            Tok::KwC => {
                self.bump();
                self.cbody()
            }
            Tok::LBracket => {
                self.bump();
                self.expect(Tok::Bang, "`!`")?;
                let ann = self.formula()?;
                self.expect(Tok::RBracket, "`]`")?;
                Ok(Formula::announce(ann, self.unary()?))
            }
            Tok::Top => {
                self.bump();
                Ok(Formula::Top)
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Formula::Atom(name))
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            _ => Err(self.error(&["a formula"])),
        }
    }

    /// Argument of `C`. A parenthesized argument with a top-level `|` is the
    /// relativized form `C(guard | body)`; otherwise it is plain common
    /// knowledge of the argument.
    fn cbody(&mut self) -> Result<Formula, ParseError> {
        if *self.peek() != Tok::LParen {
            return Ok(Formula::ck(self.unary()?));
        }
        self.bump();
        let guard = self.iff(true)?;
        match self.peek() {
            Tok::Pipe => {
                self.bump();
                let body = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Formula::rck(guard, body))
            }
            Tok::RParen => {
                self.bump();
                Ok(Formula::ck(guard))
            }
            _ => Err(self.error(&["`|`", "`)`"])),
        }
    }
}

/// Parses a formula from its ASCII concrete syntax.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let toks = Lexer::new(text).tokens()?;
    let mut p = Parser { toks, at: 0 };
    let f = p.formula()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error(&["end of input", "an operator"]));
    }
    Ok(f)
}
