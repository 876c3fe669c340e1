//! Tokenizer and recursive-descent parser.
//!
//! ```text
//! expr  := union
//! union := join { "|" join }
//! join  := atom { "&" atom }
//! atom  := NAME | builtin | "(" expr ")"
//! ```
//!
//! Builtins are `project[..](E)`, `select[..](E)`, `rename[a -> b, ..](E)`,
//! `minus(E, F)`, `minus_literal(E, F)`, `tc[x, y](E)`, `tensor(E, F)`,
//! `dee`, `dum`, `empty[..]` and literals `rel[x, y]{(1, 2), ..}`.
//! `#` starts a comment that runs to the end of the line.

use std::fmt;

use thiserror::Error;

use super::ast::{Expr, Operand, Pred};
use crate::derived::RenameSpec;
use crate::relation::Header;
use crate::symbolic::RelOp;
use crate::value::{Attr, Value, RESERVED_CHAR};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Str(String),
    Amp,
    Bar,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
    Arrow,
    Op(RelOp),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Int(i) => write!(f, "integer {i}"),
            Tok::Str(s) => write!(f, "string {s:?}"),
            Tok::Amp => f.write_str("`&`"),
            Tok::Bar => f.write_str("`|`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBracket => f.write_str("`[`"),
            Tok::RBracket => f.write_str("`]`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Op(op) => write!(f, "`{op}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            chars: text.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn error(&self, line: usize, column: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }

    fn tokens(mut self) -> Result<Vec<Token>, ParseError> {
        let mut out = Vec::new();
        loop {
            // whitespace and comments
            while let Some(&c) = self.chars.peek() {
                if c.is_whitespace() {
                    self.bump();
                } else if c == '#' {
                    while self.chars.peek().is_some_and(|&c| c != '\n') {
                        self.bump();
                    }
                } else {
                    break;
                }
            }
            let (line, column) = (self.line, self.column);
            let Some(c) = self.bump() else {
                out.push(Token {
                    tok: Tok::Eof,
                    line,
                    column,
                });
                return Ok(out);
            };
            let tok = match c {
                '&' => Tok::Amp,
                '|' => Tok::Bar,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                '{' => Tok::LBrace,
                '}' => Tok::RBrace,
                ',' => Tok::Comma,
                '=' => Tok::Op(RelOp::Eq),
                '<' | '>' | '!' => {
                    let eq = self.chars.peek() == Some(&'=');
                    if eq {
                        self.bump();
                    }
                    match (c, eq) {
                        ('<', false) => Tok::Op(RelOp::Lt),
                        ('<', true) => Tok::Op(RelOp::Le),
                        ('>', false) => Tok::Op(RelOp::Gt),
                        ('>', true) => Tok::Op(RelOp::Ge),
                        ('!', true) => Tok::Op(RelOp::Ne),
                        _ => return Err(self.error(line, column, "expected `!=`")),
                    }
                }
                '-' if self.chars.peek() == Some(&'>') => {
                    self.bump();
                    Tok::Arrow
                }
                '-' | '0'..='9' => {
                    let mut digits = String::from(c);
                    while let Some(&d) = self.chars.peek().filter(|d| d.is_ascii_digit()) {
                        digits.push(d);
                        self.bump();
                    }
                    if digits == "-" {
                        return Err(self.error(line, column, "expected a digit after `-`"));
                    }
                    let i = digits
                        .parse()
                        .map_err(|_| self.error(line, column, format!("integer {digits} out of range")))?;
                    Tok::Int(i)
                }
                '"' => {
                    let mut s = String::new();
                    loop {
                        match self.bump() {
                            Some('"') => break,
                            Some('\\') => match self.bump() {
                                Some('"') => s.push('"'),
                                Some('\\') => s.push('\\'),
                                Some('n') => s.push('\n'),
                                _ => return Err(self.error(line, column, "bad escape in string")),
                            },
                            Some(c) => s.push(c),
                            None => return Err(self.error(line, column, "unterminated string")),
                        }
                    }
                    Tok::Str(s)
                }
                c if c.is_ascii_alphabetic() => {
                    let mut s = String::from(c);
                    while let Some(&d) = self
                        .chars
                        .peek()
                        .filter(|d| d.is_ascii_alphanumeric() || **d == '_')
                    {
                        s.push(d);
                        self.bump();
                    }
                    if self.chars.peek() == Some(&RESERVED_CHAR) {
                        return Err(self.error(
                            self.line,
                            self.column,
                            format!("`{RESERVED_CHAR}` is reserved for internal names"),
                        ));
                    }
                    Tok::Ident(s)
                }
                other => return Err(self.error(line, column, format!("unexpected character {other:?}"))),
            };
            out.push(Token { tok, line, column });
        }
    }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, t: &Token, message: impl Into<String>) -> ParseError {
        ParseError {
            line: t.line,
            column: t.column,
            message: message.into(),
        }
    }

    fn expect(&mut self, want: Tok) -> Result<Token, ParseError> {
        let t = self.next();
        if t.tok == want {
            Ok(t)
        } else {
            Err(self.error_at(&t, format!("expected {want}, found {}", t.tok)))
        }
    }

    fn eat(&mut self, want: &Tok) -> bool {
        if &self.peek().tok == want {
            self.next();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut left = self.join()?;
        while self.eat(&Tok::Bar) {
            left = Expr::union(left, self.join()?);
        }
        Ok(left)
    }

    fn join(&mut self) -> Result<Expr, ParseError> {
        let mut left = self.atom()?;
        while self.eat(&Tok::Amp) {
            left = Expr::join(left, self.atom()?);
        }
        Ok(left)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(word) => match word.as_str() {
                "project" => {
                    let attrs = self.header()?;
                    Ok(Expr::Project(Box::new(self.paren_expr()?), attrs))
                }
                "select" => {
                    self.expect(Tok::LBracket)?;
                    let mut preds = vec![self.pred()?];
                    while self.eat(&Tok::Comma) {
                        preds.push(self.pred()?);
                    }
                    self.expect(Tok::RBracket)?;
                    Ok(Expr::Select(Box::new(self.paren_expr()?), preds))
                }
                "rename" => {
                    let open = self.expect(Tok::LBracket)?;
                    let mut pairs = Vec::new();
                    loop {
                        let old = self.attr()?;
                        self.expect(Tok::Arrow)?;
                        pairs.push((old, self.attr()?));
                        if !self.eat(&Tok::Comma) {
                            break;
                        }
                    }
                    self.expect(Tok::RBracket)?;
                    let spec = RenameSpec::new(pairs).map_err(|e| self.error_at(&open, e.to_string()))?;
                    Ok(Expr::Rename(Box::new(self.paren_expr()?), spec))
                }
                "minus" | "minus_literal" | "tensor" => {
                    self.expect(Tok::LParen)?;
                    let l = Box::new(self.expr()?);
                    self.expect(Tok::Comma)?;
                    let r = Box::new(self.expr()?);
                    self.expect(Tok::RParen)?;
                    Ok(match word.as_str() {
                        "minus" => Expr::Minus(l, r),
                        "minus_literal" => Expr::MinusLiteral(l, r),
                        _ => Expr::Tensor(l, r),
                    })
                }
                "tc" => {
                    self.expect(Tok::LBracket)?;
                    let x = self.attr()?;
                    self.expect(Tok::Comma)?;
                    let y = self.attr()?;
                    self.expect(Tok::RBracket)?;
                    Ok(Expr::Tc(Box::new(self.paren_expr()?), x, y))
                }
                "dee" => Ok(Expr::Dee),
                "dum" => Ok(Expr::Dum),
                "empty" => Ok(Expr::Empty(self.header()?)),
                "rel" => self.literal(),
                _ => Ok(Expr::Name(word.clone())),
            },
            other => Err(self.error_at(&t, format!("expected an expression, found {other}"))),
        }
    }

    fn paren_expr(&mut self) -> Result<Expr, ParseError> {
        self.expect(Tok::LParen)?;
        let e = self.expr()?;
        self.expect(Tok::RParen)?;
        Ok(e)
    }

    fn attr(&mut self) -> Result<Attr, ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(s) => Attr::user(s.clone()).map_err(|e| self.error_at(&t, e.to_string())),
            other => Err(self.error_at(&t, format!("expected an attribute name, found {other}"))),
        }
    }

    /// `[a, b, ...]`, possibly empty, without repeats.
    fn attr_list(&mut self) -> Result<Vec<(Token, Attr)>, ParseError> {
        self.expect(Tok::LBracket)?;
        let mut attrs: Vec<(Token, Attr)> = Vec::new();
        if self.eat(&Tok::RBracket) {
            return Ok(attrs);
        }
        loop {
            let t = self.peek().clone();
            let a = self.attr()?;
            if attrs.iter().any(|(_, b)| *b == a) {
                return Err(self.error_at(&t, format!("attribute {a} listed twice")));
            }
            attrs.push((t, a));
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(Tok::RBracket)?;
        Ok(attrs)
    }

    fn header(&mut self) -> Result<Header, ParseError> {
        Ok(self.attr_list()?.into_iter().map(|(_, a)| a).collect())
    }

    fn pred(&mut self) -> Result<Pred, ParseError> {
        let lhs = self.attr()?;
        let t = self.next();
        let Tok::Op(op) = t.tok else {
            return Err(self.error_at(&t, format!("expected a comparison, found {}", t.tok)));
        };
        let t = self.peek().clone();
        let rhs = match &t.tok {
            Tok::Ident(s) if s == "true" || s == "false" => {
                self.next();
                Operand::Value(Value::Bool(s == "true"))
            }
            Tok::Ident(_) => Operand::Attr(self.attr()?),
            _ => Operand::Value(self.value()?),
        };
        Ok(Pred { lhs, op, rhs })
    }

    fn value(&mut self) -> Result<Value, ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::Int(i) => Ok(Value::Int(*i)),
            Tok::Str(s) => Ok(Value::Text(s.clone())),
            Tok::Ident(s) if s == "true" => Ok(Value::Bool(true)),
            Tok::Ident(s) if s == "false" => Ok(Value::Bool(false)),
            other => Err(self.error_at(&t, format!("expected a value, found {other}"))),
        }
    }

    fn literal(&mut self) -> Result<Expr, ParseError> {
        let attrs: Vec<Attr> = self.attr_list()?.into_iter().map(|(_, a)| a).collect();
        self.expect(Tok::LBrace)?;
        let mut rows = Vec::new();
        if !self.eat(&Tok::RBrace) {
            loop {
                let open = self.expect(Tok::LParen)?;
                let mut row = Vec::new();
                if !self.eat(&Tok::RParen) {
                    loop {
                        row.push(self.value()?);
                        if !self.eat(&Tok::Comma) {
                            break;
                        }
                    }
                    self.expect(Tok::RParen)?;
                }
                if row.len() != attrs.len() {
                    return Err(self.error_at(
                        &open,
                        format!("row has {} values, header has {}", row.len(), attrs.len()),
                    ));
                }
                rows.push(row);
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
            self.expect(Tok::RBrace)?;
        }
        let rel = crate::relation::Relation::from_positional(&attrs, rows)
            .expect("attributes checked distinct and rows checked for arity");
        Ok(Expr::Literal(rel))
    }
}

/// Parses a complete expression.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let tokens = Lexer::new(text).tokens()?;
    let mut p = Parser { tokens, pos: 0 };
    let e = p.expr()?;
    let t = p.next();
    if t.tok != Tok::Eof {
        return Err(p.error_at(&t, format!("unexpected {} after expression", t.tok)));
    }
    Ok(e)
}
