//! Input language for polynomial systems.
//!
//! ```text
//! # comment
//! vars X1 X2 X3          one declaration line, ascending variable order
//! poly X1*X2^2 + X2 + 1  one polynomial per line
//! chain                  separator between chains of a decomposition
//! poly ...
//! ```
//!
//! Expressions use `+ - * ^` with parentheses, integer literals, and
//! rational literals `a/b`; multiplication is always explicit. Exponents
//! must be non-negative integer constants.

use num_bigint::BigInt;
use qclim_core::mpoly::MPoly;
use qclim_core::rat::Rational;
use qclim_core::vars::VarOrder;

#[derive(Debug)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, col: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, col, message: message.into() })
}

/// A parsed system file: one variable order and one or more chains.
#[derive(Debug, Clone)]
pub struct SystemFile {
    pub vars: VarOrder,
    pub chains: Vec<Vec<MPoly<Rational>>>,
}

impl SystemFile {
    pub fn render(&self) -> String {
        let names: Vec<&str> = (0..self.vars.len()).map(|i| self.vars.name(i)).collect();
        let mut out = format!("vars {}\n", names.join(" "));
        for (k, chain) in self.chains.iter().enumerate() {
            if k > 0 {
                out.push_str("chain\n");
            }
            for p in chain {
                out.push_str("poly ");
                out.push_str(&p.render_with(|i| self.vars.name(i).to_string()));
                out.push('\n');
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

struct Lexer {
    toks: Vec<(Tok, usize)>, // token, 1-based column
    pos: usize,
    line: usize,
    end_col: usize,
}

fn lex(line_no: usize, text: &str, offset: usize) -> Result<Lexer, ParseError> {
    let mut toks = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let col = offset + i + 1;
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => { toks.push((Tok::Plus, col)); i += 1; }
            '-' => { toks.push((Tok::Minus, col)); i += 1; }
            '*' => { toks.push((Tok::Star, col)); i += 1; }
            '^' => { toks.push((Tok::Caret, col)); i += 1; }
            '/' => { toks.push((Tok::Slash, col)); i += 1; }
            '(' => { toks.push((Tok::LParen, col)); i += 1; }
            ')' => { toks.push((Tok::RParen, col)); i += 1; }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                toks.push((Tok::Int(s.parse().unwrap()), col));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
            }
            c => return err(line_no, col, format!("unexpected character `{c}`")),
        }
    }
    let end_col = offset + chars.len() + 1;
    Ok(Lexer { toks, pos: 0, line: line_no, end_col })
}

impl Lexer {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }
}

struct ExprParser<'a> {
    lx: Lexer,
    vars: &'a VarOrder,
}

impl<'a> ExprParser<'a> {
    fn nvars(&self) -> usize {
        self.vars.len()
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        err(self.lx.line, self.lx.col(), message)
    }

    fn expr(&mut self) -> Result<MPoly<Rational>, ParseError> {
        let mut p = self.term()?;
        loop {
            if self.lx.eat(&Tok::Plus) {
                p = p.add(&self.term()?);
            } else if self.lx.eat(&Tok::Minus) {
                p = p.add(&self.term()?.map_coeffs(|c| -c.clone()));
            } else {
                return Ok(p);
            }
        }
    }

    fn term(&mut self) -> Result<MPoly<Rational>, ParseError> {
        let mut p = self.factor()?;
        loop {
            if self.lx.eat(&Tok::Star) {
                p = p.mul(&self.factor()?);
            } else if self.lx.peek() == Some(&Tok::Slash) {
                return self.fail("`/` is only allowed inside rational literals `a/b`");
            } else {
                return Ok(p);
            }
        }
    }

    fn factor(&mut self) -> Result<MPoly<Rational>, ParseError> {
        if self.lx.eat(&Tok::Minus) {
            return Ok(self.factor()?.map_coeffs(|c| -c.clone()));
        }
        let base = self.atom()?;
        if !self.lx.eat(&Tok::Caret) {
            return Ok(base);
        }
        let ecol = self.lx.col();
        let e = self.factor()?;
        // the exponent must be a constant non-negative integer
        let Some(c) = constant_of(&e) else {
            return err(self.lx.line, ecol, "exponent must be constant");
        };
        if !c.is_integer() {
            return err(self.lx.line, ecol, "non-integer exponent");
        }
        let Ok(k) = u32::try_from(c.to_integer()) else {
            return err(self.lx.line, ecol, "exponent must be a non-negative integer (and fit 32 bits)");
        };
        let mut p = MPoly::constant(self.nvars(), Rational::from_integer(1.into()));
        for _ in 0..k {
            p = p.mul(&base);
        }
        Ok(p)
    }

    fn atom(&mut self) -> Result<MPoly<Rational>, ParseError> {
        let col = self.lx.col();
        match self.lx.next() {
            Some(Tok::Ident(name)) => match self.vars.index_of(&name) {
                Some(i) => {
                    let mut e = vec![0u32; self.nvars()];
                    e[i] = 1;
                    Ok(MPoly::monomial(self.nvars(), e, Rational::from_integer(1.into())))
                }
                None => err(self.lx.line, col, format!("undeclared variable `{name}`")),
            },
            Some(Tok::Int(n)) => {
                let mut r = Rational::from_integer(n);
                if self.lx.eat(&Tok::Slash) {
                    let dcol = self.lx.col();
                    match self.lx.next() {
                        Some(Tok::Int(d)) => {
                            if d == 0.into() {
                                return err(self.lx.line, dcol, "zero denominator");
                            }
                            r /= Rational::from_integer(d);
                        }
                        _ => return err(self.lx.line, dcol, "expected integer denominator"),
                    }
                }
                Ok(MPoly::constant(self.nvars(), r))
            }
            Some(Tok::LParen) => {
                let p = self.expr()?;
                if !self.lx.eat(&Tok::RParen) {
                    return self.fail("expected `)`");
                }
                Ok(p)
            }
            _ => err(self.lx.line, col, "expected a variable, number, or `(`"),
        }
    }
}

fn constant_of(p: &MPoly<Rational>) -> Option<Rational> {
    if p.is_zero() {
        return Some(Rational::from_integer(0.into()));
    }
    if p.num_terms() == 1 {
        let (e, c) = p.terms().next().unwrap();
        if e.iter().all(|&k| k == 0) {
            return Some(c.clone());
        }
    }
    None
}

pub fn parse_system(text: &str) -> Result<SystemFile, ParseError> {
    let mut vars: Option<VarOrder> = None;
    let mut chains: Vec<Vec<MPoly<Rational>>> = vec![Vec::new()];
    let mut last_chain_line = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(k) => &raw[..k],
            None => raw,
        };
        if line.trim().is_empty() {
            continue;
        }
        let body = line.trim_end();
        let indent = body.len() - body.trim_start().len();
        let stmt = body.trim_start();
        let col0 = indent + 1;
        if let Some(rest) = stmt.strip_prefix("vars") {
            if !rest.starts_with([' ', '\t']) {
                return err(line_no, col0, "expected `vars <name> ...`");
            }
            if vars.is_some() {
                return err(line_no, col0, "duplicate `vars` line");
            }
            let mut names = Vec::new();
            let mut lx = lex(line_no, rest, indent + 4)?;
            loop {
                let col = lx.col();
                match lx.next() {
                    None => break,
                    Some(Tok::Ident(n)) => names.push(n),
                    Some(_) => return err(line_no, col, "variable names must be identifiers"),
                }
            }
            if names.is_empty() {
                return err(line_no, col0, "expected at least one variable");
            }
            match VarOrder::new(names) {
                Ok(v) => vars = Some(v),
                Err(e) => return err(line_no, col0, e.to_string()),
            }
        } else if stmt == "chain" {
            if vars.is_none() {
                return err(line_no, col0, "`vars` must come first");
            }
            if chains.last().unwrap().is_empty() {
                return err(line_no, col0, "empty chain group before `chain`");
            }
            chains.push(Vec::new());
            last_chain_line = line_no;
        } else if let Some(rest) = stmt.strip_prefix("poly") {
            if !rest.starts_with([' ', '\t']) && !rest.trim().is_empty() {
                return err(line_no, col0, "expected `poly <expression>`");
            }
            let Some(v) = vars.as_ref() else {
                return err(line_no, col0, "`vars` must come first");
            };
            let lx = lex(line_no, rest, indent + 4)?;
            if lx.toks.is_empty() {
                return err(line_no, col0, "empty polynomial expression");
            }
            let mut p = ExprParser { lx, vars: v };
            let poly = p.expr()?;
            if p.lx.pos < p.lx.toks.len() {
                return err(line_no, p.lx.col(), "unexpected trailing input");
            }
            chains.last_mut().unwrap().push(poly);
        } else {
            return err(line_no, col0, "expected `vars`, `poly`, or `chain`");
        }
    }
    let Some(vars) = vars else {
        return err(1, 1, "missing `vars` declaration");
    };
    if chains.last().unwrap().is_empty() {
        if chains.len() == 1 {
            return err(1, 1, "no polynomials in file");
        }
        return err(last_chain_line, 1, "empty chain group at end of file");
    }
    Ok(SystemFile { vars, chains })
}
