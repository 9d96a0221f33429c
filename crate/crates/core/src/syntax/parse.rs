use std::fmt;

use thiserror::Error;

use super::{Formula, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at byte {}: expected {}, found {}",
            self.pos,
            self.expected.join(" or "),
            self.found
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Dot,
    Not,
    And,
    Or,
    Arrow,
    Eq,
    Forall,
    Exists,
    True,
    False,
    Question,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(s) => return write!(f, "identifier `{s}`"),
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::LBrack => "`[`",
            Tok::RBrack => "`]`",
            Tok::Comma => "`,`",
            Tok::Dot => "`.`",
            Tok::Not => "`~`",
            Tok::And => "`&`",
            Tok::Or => "`|`",
            Tok::Arrow => "`->`",
            Tok::Eq => "`=`",
            Tok::Forall => "`forall`",
            Tok::Exists => "`exists`",
            Tok::True => "`true`",
            Tok::False => "`false`",
            Tok::Question => "`?`",
            Tok::Eof => "end of input",
        };
        f.write_str(s)
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some(&(pos, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
            continue;
        }
        if is_ident_start(c) {
            let mut end = pos;
            while let Some(&(i, c)) = it.peek() {
                if !is_ident_char(c) {
                    break;
                }
                end = i + c.len_utf8();
                it.next();
            }
            let word = &text[pos..end];
            let tok = match word {
                "forall" => Tok::Forall,
                "exists" => Tok::Exists,
                "true" => Tok::True,
                "false" => Tok::False,
                _ => Tok::Ident(word.to_string()),
            };
            out.push((pos, tok));
            continue;
        }
        it.next();
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBrack,
            ']' => Tok::RBrack,
            ',' => Tok::Comma,
            '.' => Tok::Dot,
            '~' | '¬' => Tok::Not,
            '&' | '∧' => Tok::And,
            '|' | '∨' => Tok::Or,
            '⊃' | '→' => Tok::Arrow,
            '=' => Tok::Eq,
            '∀' => Tok::Forall,
            '∃' => Tok::Exists,
            '⊤' => Tok::True,
            '⊥' => Tok::False,
            '?' => Tok::Question,
            '-' if matches!(it.peek(), Some((_, '>'))) => {
                it.next();
                Tok::Arrow
            }
            other => {
                return Err(ParseError {
                    pos,
                    expected: vec!["a token".into()],
                    found: format!("character `{other}`"),
                })
            }
        };
        out.push((pos, tok));
    }
    out.push((text.len(), Tok::Eof));
    Ok(out)
}

/// How bare identifiers in term position are read.
#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum TermMode {
    /// Bare identifiers are variables (formula syntax).
    Formula,
    /// Bare identifiers are constants and `?x` is a variable (graph literals).
    Literal,
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    mode: TermMode,
}

impl Parser {
    fn new(text: &str, mode: TermMode) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(text)?,
            at: 0,
            mode,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if t != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn error<T>(&self, expected: &[&str]) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().to_string(),
        })
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(&[&tok.to_string()])
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.error(&["identifier"]),
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            self.error(&["end of input"])
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.junction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.formula()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn junction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::And => {
                    self.bump();
                    acc = Formula::and(acc, self.unary()?);
                }
                Tok::Or => {
                    self.bump();
                    acc = Formula::or(acc, self.unary()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Forall | Tok::Exists => {
                let universal = self.bump() == Tok::Forall;
                let v = self.ident()?;
                self.expect(Tok::Dot)?;
                // The body extends over junctions but stops at `->`.
                let body = Box::new(self.junction()?);
                Ok(if universal {
                    Formula::Forall(v, body)
                } else {
                    Formula::Exists(v, body)
                })
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::True => {
                self.bump();
                Ok(Formula::Top)
            }
            Tok::False => {
                self.bump();
                Ok(Formula::Bottom)
            }
            Tok::LParen | Tok::LBrack => {
                let close = if self.bump() == Tok::LParen {
                    Tok::RParen
                } else {
                    Tok::RBrack
                };
                let f = self.formula()?;
                self.expect(close)?;
                Ok(f)
            }
            Tok::Ident(_) | Tok::Question => {
                let t = self.term()?;
                if *self.peek() == Tok::Eq {
                    self.bump();
                    let rhs = self.term()?;
                    return Ok(Formula::Eq(t, rhs));
                }
                match t {
                    Term::Apply(p, args) => Ok(Formula::Atom(p, args)),
                    Term::Var(p) if self.mode == TermMode::Formula => Ok(Formula::Atom(p, vec![])),
                    Term::Var(_) => self.error(&["`=`"]),
                }
            }
            _ => self.error(&[
                "`~`", "`forall`", "`exists`", "`true`", "`false`", "`(`", "`[`", "identifier",
            ]),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        if *self.peek() == Tok::Question && self.mode == TermMode::Literal {
            self.bump();
            return Ok(Term::Var(self.ident()?));
        }
        let name = self.ident()?;
        if *self.peek() != Tok::LParen {
            return Ok(match self.mode {
                TermMode::Formula => Term::Var(name),
                TermMode::Literal => Term::constant(name),
            });
        }
        self.bump();
        let mut args = Vec::new();
        if *self.peek() != Tok::RParen {
            loop {
                args.push(self.term()?);
                match self.peek() {
                    Tok::Comma => {
                        self.bump();
                    }
                    Tok::RParen => break,
                    _ => return self.error(&["`,`", "`)`"]),
                }
            }
        }
        self.expect(Tok::RParen)?;
        Ok(Term::Apply(name, args))
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text, TermMode::Formula)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    parse_term_in(text, TermMode::Formula)
}

pub(crate) fn parse_term_in(text: &str, mode: TermMode) -> Result<Term, ParseError> {
    let mut p = Parser::new(text, mode)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}
