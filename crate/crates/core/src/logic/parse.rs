//! Recursive-descent parser for the sentence grammar:
//!
//! ```text
//! formula := "exists" var "." formula | "forall" var "." formula
//!          | formula ("&"|"|"|"->") formula | "!" formula | "(" formula ")"
//!          | "E(" var "," var ")" | var "=" var
//!          | "deg(" var ")" ("="|">="|"<=") int
//! var     := [a-z][a-z0-9]*
//! ```
//!
//! Precedence `!` > `&` > `|` > `->`; quantifier scope extends as far right
//! as possible. `exists`, `forall` and `deg` are reserved words.

use std::fmt;

use super::{CmpOp, Formula};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at line {}, column {}: {}",
            self.line, self.column, self.message
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    LParen,
    RParen,
    Comma,
    Dot,
    Bang,
    Amp,
    Pipe,
    Arrow,
    EqSign,
    GeSign,
    LeSign,
    EdgeSym,
    KwExists,
    KwForall,
    KwDeg,
    Ident(String),
    Int(u32),
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::LParen => f.write_str("("),
            Token::RParen => f.write_str(")"),
            Token::Comma => f.write_str(","),
            Token::Dot => f.write_str("."),
            Token::Bang => f.write_str("!"),
            Token::Amp => f.write_str("&"),
            Token::Pipe => f.write_str("|"),
            Token::Arrow => f.write_str("->"),
            Token::EqSign => f.write_str("="),
            Token::GeSign => f.write_str(">="),
            Token::LeSign => f.write_str("<="),
            Token::EdgeSym => f.write_str("E"),
            Token::KwExists => f.write_str("exists"),
            Token::KwForall => f.write_str("forall"),
            Token::KwDeg => f.write_str("deg"),
            Token::Ident(s) => write!(f, "{s}"),
            Token::Int(n) => write!(f, "{n}"),
        }
    }
}

struct Lexer<'a> {
    text: &'a str,
    pos: usize,
}

fn line_col(text: &str, pos: usize) -> (usize, usize) {
    let mut line = 1;
    let mut col = 1;
    for (i, ch) in text.char_indices() {
        if i >= pos {
            break;
        }
        if ch == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    (line, col)
}

impl<'a> Lexer<'a> {
    fn error(&self, pos: usize, message: impl Into<String>) -> ParseError {
        let (line, column) = line_col(self.text, pos);
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }

    fn tokens(&mut self) -> Result<Vec<(Token, usize)>, ParseError> {
        let bytes = self.text.as_bytes();
        let mut out = Vec::new();
        while self.pos < bytes.len() {
            let start = self.pos;
            let c = bytes[self.pos] as char;
            match c {
                ' ' | '\t' | '\n' | '\r' => {
                    self.pos += 1;
                }
                '(' => {
                    out.push((Token::LParen, start));
                    self.pos += 1;
                }
                ')' => {
                    out.push((Token::RParen, start));
                    self.pos += 1;
                }
                ',' => {
                    out.push((Token::Comma, start));
                    self.pos += 1;
                }
                '.' => {
                    out.push((Token::Dot, start));
                    self.pos += 1;
                }
                '!' => {
                    out.push((Token::Bang, start));
                    self.pos += 1;
                }
                '&' => {
                    out.push((Token::Amp, start));
                    self.pos += 1;
                }
                '|' => {
                    out.push((Token::Pipe, start));
                    self.pos += 1;
                }
                '=' => {
                    out.push((Token::EqSign, start));
                    self.pos += 1;
                }
                '-' => {
                    if bytes.get(self.pos + 1) == Some(&b'>') {
                        out.push((Token::Arrow, start));
                        self.pos += 2;
                    } else {
                        return Err(self.error(start, "expected `->`"));
                    }
                }
                '>' | '<' => {
                    if bytes.get(self.pos + 1) == Some(&b'=') {
                        out.push(
                            (if c == '>' { Token::GeSign } else { Token::LeSign }, start),
                        );
                        self.pos += 2;
                    } else {
                        return Err(self.error(start, format!("expected `{c}=`")));
                    }
                }
                'E' => {
                    out.push((Token::EdgeSym, start));
                    self.pos += 1;
                }
                '0'..='9' => {
                    let mut end = self.pos;
                    while end < bytes.len() && bytes[end].is_ascii_digit() {
                        end += 1;
                    }
                    let n: u32 = self.text[self.pos..end]
                        .parse()
                        .map_err(|_| self.error(start, "integer literal too large"))?;
                    out.push((Token::Int(n), start));
                    self.pos = end;
                }
                'a'..='z' => {
                    let mut end = self.pos;
                    while end < bytes.len()
                        && (bytes[end].is_ascii_lowercase() || bytes[end].is_ascii_digit())
                    {
                        end += 1;
                    }
                    let word = &self.text[self.pos..end];
                    let token = match word {
                        "exists" => Token::KwExists,
                        "forall" => Token::KwForall,
                        "deg" => Token::KwDeg,
                        _ => Token::Ident(word.to_string()),
                    };
                    out.push((token, start));
                    self.pos = end;
                }
                _ => return Err(self.error(start, format!("unexpected character `{c}`"))),
            }
        }
        Ok(out)
    }
}

struct Parser<'a> {
    text: &'a str,
    tokens: Vec<(Token, usize)>,
    cursor: usize,
}

impl<'a> Parser<'a> {
    fn error_at(&self, pos: usize, message: impl Into<String>) -> ParseError {
        let (line, column) = line_col(self.text, pos);
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }

    fn error_here(&self, message: impl Into<String>) -> ParseError {
        let pos = self
            .tokens
            .get(self.cursor)
            .map(|&(_, p)| p)
            .unwrap_or(self.text.len());
        self.error_at(pos, message)
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.cursor).map(|(t, _)| t)
    }

    fn advance(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.cursor).map(|(t, _)| t.clone());
        if t.is_some() {
            self.cursor += 1;
        }
        t
    }

    fn expect(&mut self, token: Token) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if *t == token => {
                self.cursor += 1;
                Ok(())
            }
            Some(t) => Err(self.error_here(format!("expected `{token}`, found `{t}`"))),
            None => Err(self.error_here(format!("expected `{token}`, found end of input"))),
        }
    }

    fn expect_var(&mut self) -> Result<String, ParseError> {
        match self.advance() {
            Some(Token::Ident(name)) => Ok(name),
            Some(t) => {
                self.cursor -= 1;
                Err(self.error_here(format!("expected a variable, found `{t}`")))
            }
            None => Err(self.error_here("expected a variable, found end of input")),
        }
    }

    // formula := implies-chain (right associative).
    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or_chain()?;
        if self.peek() == Some(&Token::Arrow) {
            self.cursor += 1;
            let rhs = self.formula()?;
            return Ok(Formula::Implies(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn or_chain(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.and_chain()?;
        while self.peek() == Some(&Token::Pipe) {
            self.cursor += 1;
            let rhs = self.and_chain()?;
            acc = Formula::Or(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn and_chain(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while self.peek() == Some(&Token::Amp) {
            self.cursor += 1;
            let rhs = self.unary()?;
            acc = Formula::And(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Token::Bang) => {
                self.cursor += 1;
                Ok(Formula::Not(Box::new(self.unary()?)))
            }
            Some(Token::KwExists) | Some(Token::KwForall) => {
                let existential = self.peek() == Some(&Token::KwExists);
                self.cursor += 1;
                let var = self.expect_var()?;
                self.expect(Token::Dot)?;
                let body = self.formula()?; // maximal scope
                Ok(if existential {
                    Formula::Exists(var, Box::new(body))
                } else {
                    Formula::Forall(var, Box::new(body))
                })
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Token::LParen) => {
                self.cursor += 1;
                let inner = self.formula()?;
                self.expect(Token::RParen)?;
                Ok(inner)
            }
            Some(Token::EdgeSym) => {
                self.cursor += 1;
                self.expect(Token::LParen)?;
                let a = self.expect_var()?;
                self.expect(Token::Comma)?;
                let b = self.expect_var()?;
                self.expect(Token::RParen)?;
                Ok(Formula::Edge(a, b))
            }
            Some(Token::KwDeg) => {
                self.cursor += 1;
                self.expect(Token::LParen)?;
                let v = self.expect_var()?;
                self.expect(Token::RParen)?;
                let op = match self.advance() {
                    Some(Token::EqSign) => CmpOp::Eq,
                    Some(Token::GeSign) => CmpOp::Ge,
                    Some(Token::LeSign) => CmpOp::Le,
                    _ => {
                        self.cursor = self.cursor.saturating_sub(1);
                        return Err(self.error_here("expected `=`, `>=` or `<=` after deg(..)"));
                    }
                };
                match self.advance() {
                    Some(Token::Int(c)) => Ok(Formula::Deg(v, op, c)),
                    _ => {
                        self.cursor = self.cursor.saturating_sub(1);
                        Err(self.error_here("expected an integer degree bound"))
                    }
                }
            }
            Some(Token::Ident(_)) => {
                let a = self.expect_var()?;
                self.expect(Token::EqSign)?;
                let b = self.expect_var()?;
                Ok(Formula::Eq(a, b))
            }
            Some(t) => Err(self.error_here(format!("expected a formula, found `{t}`"))),
            None => Err(self.error_here("expected a formula, found end of input")),
        }
    }
}

/// Parses a formula (free variables allowed).
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let tokens = Lexer { text, pos: 0 }.tokens()?;
    let mut parser = Parser {
        text,
        tokens,
        cursor: 0,
    };
    let formula = parser.formula()?;
    if parser.cursor != parser.tokens.len() {
        return Err(parser.error_here("trailing input after formula"));
    }
    Ok(formula)
}

/// Parses a sentence: a formula with no free variables.
pub fn parse_sentence(text: &str) -> Result<Formula, ParseError> {
    let formula = parse(text)?;
    let free = formula.free_vars();
    if !free.is_empty() {
        let names: Vec<String> = free.into_iter().collect();
        let (line, column) = line_col(text, 0);
        return Err(ParseError {
            line,
            column,
            message: format!(
                "free variables in sentence position: {}",
                names.join(", ")
            ),
        });
    }
    Ok(formula)
}
