//! Lexer and recursive-descent parser for form expressions.
//!
//! ```text
//! sum     := product (("+" | "-") product)*
//! product := unary (("*" | "∧" | "/") unary)*
//! unary   := "-" unary | power
//! power   := atom ("^" integer)?
//! atom    := integer | coordinate | "(" sum ")" | operator
//! ```
//!
//! An identifier directly followed by `(`, `[` or `{` is an operator:
//! `d1(…)`, `d{1,2}(…)`, `lie[X](…)`, `lie[X: c₁, …, c_n](…)`,
//! `insert[X, l](…)`, `kappa[(1 2)](…)`, `H2(…)` and
//! `pullback[u: e₁, v: e₂](…)`, whose argument is read over the coordinates
//! `u, v`. Vector fields are either names bound in the environment or inline
//! component tuples `(c₁, …, c_n)`.

use std::fmt;

use iforms_core::calculus::SlotPermutation;
use iforms_core::coeffs::Space;
use iforms_core::grading::IndexSet;
use num_bigint::BigInt;
use thiserror::Error;

/// A syntax error at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Colon,
    Semicolon,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Int(n) => return write!(f, "`{n}`"),
            Tok::Ident(s) => return write!(f, "`{s}`"),
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::LBrace => "`{`",
            Tok::RBrace => "`}`",
            Tok::LBracket => "`[`",
            Tok::RBracket => "`]`",
            Tok::Comma => "`,`",
            Tok::Colon => "`:`",
            Tok::Semicolon => "`;`",
            Tok::Plus => "`+`",
            Tok::Minus => "`-`",
            Tok::Star => "`*`",
            Tok::Slash => "`/`",
            Tok::Caret => "`^`",
            Tok::Eof => "end of input",
        };
        f.write_str(s)
    }
}

fn lex(source: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = source.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, column };
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars<'_>>| {
            let c = chars.next().expect("peeked");
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let mut digits = String::new();
            while chars.peek().is_some_and(char::is_ascii_digit) {
                digits.push(bump(&mut chars));
            }
            Tok::Int(digits.parse().expect("digits"))
        } else if c.is_alphabetic() || c == '_' {
            let mut name = String::new();
            while chars.peek().is_some_and(|&c| c.is_alphanumeric() || c == '_') {
                name.push(bump(&mut chars));
            }
            Tok::Ident(name)
        } else {
            bump(&mut chars);
            match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '{' => Tok::LBrace,
                '}' => Tok::RBrace,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                ',' => Tok::Comma,
                ':' => Tok::Colon,
                ';' => Tok::Semicolon,
                '+' => Tok::Plus,
                '-' | '−' => Tok::Minus,
                '*' | '∧' | '·' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                other => {
                    return Err(ParseError {
                        line: pos.line,
                        column: pos.column,
                        message: format!("unexpected character `{other}`"),
                    })
                }
            }
        };
        out.push((tok, pos));
    }
    out.push((Tok::Eof, Pos { line, column }));
    Ok(out)
}

/// A vector field argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldRef {
    Named(String),
    Inline(Vec<Expr>),
}

/// The expression tree. Coordinates are resolved against the space in scope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Coord { index: usize, name: String },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    /// The graded product.
    Mul(Box<Expr>, Box<Expr>),
    /// Division by a nonzero constant.
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    /// `d_K`; `d1(…)` parses to a singleton set.
    D { slots: IndexSet, arg: Box<Expr> },
    Lie { field: FieldRef, arg: Box<Expr> },
    Insert { field: FieldRef, slot: u32, arg: Box<Expr> },
    Kappa { sigma: SlotPermutation, arg: Box<Expr> },
    H2(Box<Expr>),
    /// `φ*`, with `φ` given by its components over the outer space and
    /// `arg` read over `target`.
    Pullback { target: Space, components: Vec<Expr>, arg: Box<Expr> },
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        &self.toks[(self.at + offset).min(self.toks.len() - 1)].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn next(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error_at<T>(&self, pos: Pos, message: impl Into<String>) -> PResult<T> {
        Err(ParseError { line: pos.line, column: pos.column, message: message.into() })
    }

    fn unexpected<T>(&self, wanted: &str) -> PResult<T> {
        self.error_at(self.pos(), format!("expected {wanted}, found {}", self.peek()))
    }

    fn expect(&mut self, tok: Tok) -> PResult<()> {
        if *self.peek() == tok {
            self.next();
            Ok(())
        } else {
            self.unexpected(&tok.to_string())
        }
    }

    fn sum(&mut self, space: &Space) -> PResult<Expr> {
        let mut lhs = self.product(space)?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.next();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.product(space)?));
                }
                Tok::Minus => {
                    self.next();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.product(space)?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn product(&mut self, space: &Space) -> PResult<Expr> {
        let mut lhs = self.unary(space)?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.next();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary(space)?));
                }
                Tok::Slash => {
                    self.next();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary(space)?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self, space: &Space) -> PResult<Expr> {
        if *self.peek() == Tok::Minus {
            self.next();
            return Ok(Expr::Neg(Box::new(self.unary(space)?)));
        }
        self.power(space)
    }

    fn power(&mut self, space: &Space) -> PResult<Expr> {
        let base = self.atom(space)?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.next();
        let exp = self.small_int("a nonnegative integer exponent")?;
        Ok(Expr::Pow(Box::new(base), exp))
    }

    fn small_int(&mut self, wanted: &str) -> PResult<u32> {
        let pos = self.pos();
        match self.next().0 {
            Tok::Int(n) => u32::try_from(n).or_else(|_| self.error_at(pos, "integer too large")),
            _ => {
                self.at -= 1;
                self.unexpected(wanted)
            }
        }
    }

    fn slot(&mut self) -> PResult<u32> {
        let pos = self.pos();
        let k = self.small_int("a slot number")?;
        if k == 0 {
            return self.error_at(pos, "slots start at 1");
        }
        Ok(k)
    }

    fn atom(&mut self, space: &Space) -> PResult<Expr> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.next();
                Ok(Expr::Int(n))
            }
            Tok::LParen => {
                self.next();
                let e = self.sum(space)?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(name) => {
                if matches!(self.peek_at(1), Tok::LParen | Tok::LBracket | Tok::LBrace) {
                    self.next();
                    return self.operator(&name, pos, space);
                }
                self.next();
                match space.index_of(&name) {
                    Ok(index) => Ok(Expr::Coord { index, name }),
                    Err(_) => self.error_at(pos, format!("unknown coordinate `{name}` (coordinates: {space})")),
                }
            }
            _ => self.unexpected("an expression"),
        }
    }

    fn argument(&mut self, space: &Space) -> PResult<Box<Expr>> {
        self.expect(Tok::LParen)?;
        let e = self.sum(space)?;
        self.expect(Tok::RParen)?;
        Ok(Box::new(e))
    }

    fn operator(&mut self, name: &str, pos: Pos, space: &Space) -> PResult<Expr> {
        if let Some(digits) = name.strip_prefix('d').filter(|s| !s.is_empty()) {
            let slot: u32 = match digits.parse() {
                Ok(k) if k >= 1 => k,
                _ => return self.error_at(pos, format!("unknown operator `{name}`")),
            };
            let arg = self.argument(space)?;
            return Ok(Expr::D { slots: IndexSet::singleton(slot), arg });
        }
        match name {
            "d" => {
                let brace = self.pos();
                self.expect(Tok::LBrace)?;
                let mut slots = vec![self.slot()?];
                while *self.peek() == Tok::Comma {
                    self.next();
                    slots.push(self.slot()?);
                }
                self.expect(Tok::RBrace)?;
                let slots = match IndexSet::new(slots) {
                    Ok(k) => k,
                    Err(e) => return self.error_at(brace, e.to_string()),
                };
                let arg = self.argument(space)?;
                Ok(Expr::D { slots, arg })
            }
            "lie" => {
                self.expect(Tok::LBracket)?;
                let field = self.field(space, true)?;
                self.expect(Tok::RBracket)?;
                Ok(Expr::Lie { field, arg: self.argument(space)? })
            }
            "insert" => {
                self.expect(Tok::LBracket)?;
                let field = self.field(space, false)?;
                self.expect(Tok::Comma)?;
                let slot = self.slot()?;
                self.expect(Tok::RBracket)?;
                Ok(Expr::Insert { field, slot, arg: self.argument(space)? })
            }
            "kappa" => {
                self.expect(Tok::LBracket)?;
                let sigma = self.permutation()?;
                self.expect(Tok::RBracket)?;
                Ok(Expr::Kappa { sigma, arg: self.argument(space)? })
            }
            "H2" => Ok(Expr::H2(self.argument(space)?)),
            "pullback" => self.pullback(space),
            _ => self.error_at(pos, format!("unknown operator `{name}`")),
        }
    }

    /// `X`, `(c₁, …, c_n)`, or (inside `lie[…]`) `X: c₁, …, c_n`.
    fn field(&mut self, space: &Space, allow_colon: bool) -> PResult<FieldRef> {
        match self.peek().clone() {
            Tok::LParen => {
                self.next();
                let comps = self.expr_list(space)?;
                self.expect(Tok::RParen)?;
                Ok(FieldRef::Inline(comps))
            }
            Tok::Ident(name) => {
                self.next();
                if allow_colon && *self.peek() == Tok::Colon {
                    self.next();
                    return Ok(FieldRef::Inline(self.expr_list(space)?));
                }
                Ok(FieldRef::Named(name))
            }
            _ => self.unexpected("a vector field"),
        }
    }

    fn expr_list(&mut self, space: &Space) -> PResult<Vec<Expr>> {
        let mut out = vec![self.sum(space)?];
        while *self.peek() == Tok::Comma {
            self.next();
            out.push(self.sum(space)?);
        }
        Ok(out)
    }

    /// Disjoint cycles such as `(1 2)(3 4)`; `()` is the identity.
    fn permutation(&mut self) -> PResult<SlotPermutation> {
        let pos = self.pos();
        let mut cycles = Vec::new();
        while *self.peek() == Tok::LParen {
            self.next();
            let mut cycle = Vec::new();
            while *self.peek() != Tok::RParen {
                cycle.push(self.slot()?);
                if *self.peek() == Tok::Comma {
                    self.next();
                }
            }
            self.next();
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
        }
        if cycles.is_empty() && self.toks[self.at - 1].0 != Tok::RParen {
            return self.unexpected("a permutation in cycle notation");
        }
        SlotPermutation::from_cycles(&cycles).or_else(|e| self.error_at(pos, e.to_string()))
    }

    fn pullback(&mut self, space: &Space) -> PResult<Expr> {
        self.expect(Tok::LBracket)?;
        let mut names = Vec::new();
        let mut components = Vec::new();
        let start = self.pos();
        loop {
            match self.next().0 {
                Tok::Ident(name) => names.push(name),
                _ => {
                    self.at -= 1;
                    return self.unexpected("a target coordinate name");
                }
            }
            self.expect(Tok::Colon)?;
            components.push(self.sum(space)?);
            match self.peek() {
                Tok::Comma => {
                    self.next();
                }
                Tok::RBracket => break,
                _ => return self.unexpected("`,` or `]`"),
            }
        }
        self.next();
        let target = Space::new(names).or_else(|e| self.error_at(start, e.to_string()))?;
        let arg = self.argument(&target)?;
        Ok(Expr::Pullback { target, components, arg })
    }
}

/// Parses `source` with coordinates from `space`.
pub fn parse(source: &str, space: &Space) -> Result<Expr, ParseError> {
    let toks = lex(source)?;
    let mut p = Parser { toks, at: 0 };
    let e = p.sum(space)?;
    if *p.peek() != Tok::Eof {
        return p.unexpected("an operator or end of input");
    }
    Ok(e)
}

/// Parses `NAME: c₁, …, c_n`, the inline vector field syntax of `--vf`.
pub fn parse_field_binding(source: &str, space: &Space) -> Result<(String, Vec<Expr>), ParseError> {
    let toks = lex(source)?;
    let mut p = Parser { toks, at: 0 };
    let name = match p.next().0 {
        Tok::Ident(name) => name,
        _ => {
            p.at = 0;
            return p.unexpected("a vector field name");
        }
    };
    p.expect(Tok::Colon)?;
    let comps = p.expr_list(space)?;
    if *p.peek() != Tok::Eof {
        return p.unexpected("`,` or end of input");
    }
    Ok((name, comps))
}
