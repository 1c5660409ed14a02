//! Recursive-descent parser for the sequence DSL.
//!
//! ```text
//! expr   := term (('*'|'/') term)*
//! term   := factor ('^' rational)?
//! factor := '2^(' linear ')' | '(1+j)^' rational | '(1+log(1+j))^' rational
//!         | 'exp(' rational '*log(1+j)^' rational ')' | 'pw2(' params ')'
//!         | 'table[' reals ']' 'then' expr | number | '(' expr ')'
//! linear := rational '*j' | 'j*' rational | rational
//! ```
//!
//! A trailing `with name=value, ...` clause binds identifiers used in
//! rational positions.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::ParseError;
use crate::rational::{in_range, parse_rational, to_f64, Rational};

use super::ast::SeqExpr;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    offset: usize,
}

fn tokenize(text: &str, base: usize) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || (c == '.' && i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit()) {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                i += 1;
            }
            out.push(Token { tok: Tok::Num(text[start..i].to_string()), offset: base + start });
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Token { tok: Tok::Ident(text[start..i].to_string()), offset: base + start });
        } else if "()[]*/^+-=,".contains(c) {
            out.push(Token { tok: Tok::Sym(c), offset: base + i });
            i += 1;
        } else {
            return Err(ParseError::new(base + i, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    end: usize,
    bindings: &'a HashMap<String, Rational>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|t| &t.tok)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.offset).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::new(self.offset(), msg))
    }

    fn is_sym(&self, c: char) -> bool {
        self.peek() == Some(&Tok::Sym(c))
    }

    fn is_ident(&self, name: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == name)
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.is_sym(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn expect_ident(&mut self, name: &str) -> Result<(), ParseError> {
        if self.is_ident(name) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{name}`"))
        }
    }

    /// Checks a fixed token pattern at the cursor without consuming it.
    fn lookahead(&self, pattern: &[Tok]) -> bool {
        pattern.iter().enumerate().all(|(k, t)| self.peek_at(k) == Some(t))
    }

    fn expr(&mut self) -> Result<SeqExpr, ParseError> {
        let mut factors = vec![self.term()?];
        loop {
            if self.is_sym('*') {
                self.pos += 1;
                factors.push(self.term()?);
            } else if self.is_sym('/') {
                self.pos += 1;
                let t = self.term()?;
                factors.push(SeqExpr::power(t, -Rational::one()));
            } else {
                break;
            }
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { SeqExpr::product(factors) })
    }

    fn term(&mut self) -> Result<SeqExpr, ParseError> {
        let f = self.factor()?;
        if self.is_sym('^') {
            self.pos += 1;
            let r = self.exponent()?;
            return Ok(SeqExpr::power(f, r));
        }
        Ok(f)
    }

    fn factor(&mut self) -> Result<SeqExpr, ParseError> {
        let one = Tok::Num("1".into());
        let j = Tok::Ident("j".into());
        let log_pattern = [
            Tok::Sym('('),
            one.clone(),
            Tok::Sym('+'),
            Tok::Ident("log".into()),
            Tok::Sym('('),
            one.clone(),
            Tok::Sym('+'),
            j.clone(),
            Tok::Sym(')'),
            Tok::Sym(')'),
            Tok::Sym('^'),
        ];
        let power_pattern = [Tok::Sym('('), one.clone(), Tok::Sym('+'), j.clone(), Tok::Sym(')'), Tok::Sym('^')];

        if self.lookahead(&[Tok::Num("2".into()), Tok::Sym('^'), Tok::Sym('(')]) {
            self.pos += 3;
            let node = self.linear()?;
            self.expect_sym(')')?;
            return Ok(node);
        }
        if self.lookahead(&log_pattern) {
            self.pos += log_pattern.len();
            return Ok(SeqExpr::iter_log(self.exponent()?));
        }
        if self.lookahead(&power_pattern) {
            self.pos += power_pattern.len();
            return Ok(SeqExpr::log_power(self.exponent()?));
        }
        match self.peek().cloned() {
            Some(Tok::Ident(name)) if name == "exp" => {
                self.pos += 1;
                self.expect_sym('(')?;
                let coeff = self.rational_full()?;
                self.expect_sym('*')?;
                self.expect_ident("log")?;
                for t in [Tok::Sym('('), one, Tok::Sym('+'), j, Tok::Sym(')'), Tok::Sym('^')] {
                    if self.peek() != Some(&t) {
                        return self.err("expected `log(1+j)^`");
                    }
                    self.pos += 1;
                }
                let at = self.offset();
                let power = self.exponent()?;
                if !(power > Rational::zero() && power < Rational::one()) {
                    return Err(ParseError::new(at, "exp-log power must lie in (0,1)"));
                }
                self.expect_sym(')')?;
                Ok(SeqExpr::exp_log_pow(coeff, power))
            }
            Some(Tok::Ident(name)) if name == "pw2" => {
                self.pos += 1;
                self.expect_sym('(')?;
                let mut s0 = None;
                let mut s1 = None;
                loop {
                    let key = match self.peek().cloned() {
                        Some(Tok::Ident(k)) if k == "s0" || k == "s1" => k,
                        _ => return self.err("expected `s0=` or `s1=`"),
                    };
                    self.pos += 1;
                    self.expect_sym('=')?;
                    let v = self.rational_full()?;
                    if key == "s0" {
                        s0 = Some(v);
                    } else {
                        s1 = Some(v);
                    }
                    if self.is_sym(',') {
                        self.pos += 1;
                        continue;
                    }
                    break;
                }
                let at = self.offset();
                self.expect_sym(')')?;
                match (s0, s1) {
                    (Some(a), Some(b)) if a < b => Ok(SeqExpr::pw2(a, b)),
                    (Some(_), Some(_)) => Err(ParseError::new(at, "pw2 needs s0 < s1")),
                    _ => Err(ParseError::new(at, "pw2 needs both s0 and s1")),
                }
            }
            Some(Tok::Ident(name)) if name == "table" => {
                self.pos += 1;
                self.expect_sym('[')?;
                let mut prefix = Vec::new();
                loop {
                    let at = self.offset();
                    let neg = if self.is_sym('-') {
                        self.pos += 1;
                        true
                    } else {
                        false
                    };
                    let v = self.number()?;
                    if neg || v <= 0.0 {
                        return Err(ParseError::new(at, "table entries must be positive"));
                    }
                    prefix.push(v);
                    if self.is_sym(',') {
                        self.pos += 1;
                        continue;
                    }
                    break;
                }
                self.expect_sym(']')?;
                self.expect_ident("then")?;
                let then = self.expr()?;
                Ok(SeqExpr::table(prefix, then))
            }
            Some(Tok::Num(_)) => {
                let at = self.offset();
                let v = self.number()?;
                if v <= 0.0 {
                    return Err(ParseError::new(at, "non-positive constant"));
                }
                Ok(SeqExpr::constant(v))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            Some(Tok::Sym('-')) => self.err("non-positive constant"),
            Some(_) => self.err("unexpected token"),
            None => self.err("unexpected end of input"),
        }
    }

    fn number(&mut self) -> Result<f64, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Num(text)) => {
                let at = self.offset();
                self.pos += 1;
                text.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| ParseError::new(at, format!("bad number `{text}`")))
            }
            _ => self.err("expected a number"),
        }
    }

    /// Unsigned atom in a rational position: a literal or a bound name.
    fn rational_atom(&mut self) -> Result<Rational, ParseError> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Num(text)) => {
                self.pos += 1;
                parse_rational(&text).map_err(|e| ParseError::new(at, e.message))
            }
            Some(Tok::Ident(name)) if name != "j" => {
                self.pos += 1;
                self.bindings.get(&name).copied().ok_or_else(|| ParseError::new(at, format!("unbound name `{name}`")))
            }
            _ => self.err("expected a rational"),
        }
    }

    fn signed_atom(&mut self) -> Result<Rational, ParseError> {
        if self.is_sym('-') {
            self.pos += 1;
            Ok(-self.rational_atom()?)
        } else {
            self.rational_atom()
        }
    }

    /// `-a`, `a/b`, names; used where no operator ambiguity exists.
    fn rational_full(&mut self) -> Result<Rational, ParseError> {
        let at = self.offset();
        let mut r = self.signed_atom()?;
        if self.is_sym('/') && !matches!(self.peek_at(1), Some(Tok::Ident(s)) if s == "j") {
            self.pos += 1;
            let d = self.signed_atom()?;
            if d.is_zero() {
                return Err(ParseError::new(at, "zero denominator"));
            }
            r /= d;
        }
        self.check_range(r, at)
    }

    /// Exponent after `^`: `2`, `-2`, `b`, or a parenthesised rational.
    fn exponent(&mut self) -> Result<Rational, ParseError> {
        let at = self.offset();
        let r = if self.is_sym('(') {
            self.pos += 1;
            let r = self.rational_full()?;
            self.expect_sym(')')?;
            r
        } else {
            self.signed_atom()?
        };
        self.check_range(r, at)
    }

    fn check_range(&self, r: Rational, at: usize) -> Result<Rational, ParseError> {
        if in_range(&r) {
            Ok(r)
        } else {
            Err(ParseError::new(at, "rational outside exact range"))
        }
    }

    /// Body of `2^( ... )`.
    fn linear(&mut self) -> Result<SeqExpr, ParseError> {
        let at = self.offset();
        if self.is_ident("j") {
            self.pos += 1;
            if self.is_sym('*') {
                self.pos += 1;
                let r = self.rational_full()?;
                return Ok(SeqExpr::geometric(r));
            }
            return Ok(SeqExpr::geometric(Rational::one()));
        }
        if self.lookahead(&[Tok::Sym('-'), Tok::Ident("j".into())]) {
            self.pos += 2;
            return Ok(SeqExpr::geometric(-Rational::one()));
        }
        let r = self.rational_full()?;
        if self.is_sym('*') {
            self.pos += 1;
            self.expect_ident("j")?;
            return Ok(SeqExpr::geometric(r));
        }
        let v = 2f64.powf(to_f64(&r));
        if !(v.is_finite() && v > 0.0) {
            return Err(ParseError::new(at, "constant power of 2 out of range"));
        }
        Ok(SeqExpr::constant(v))
    }
}

/// Splits `expr with a=1, b=-2` into the expression text and its bindings.
fn split_bindings(text: &str) -> Result<(&str, HashMap<String, Rational>), ParseError> {
    let mut depth = 0i32;
    let mut split = None;
    let bytes = text.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' | b'[' => depth += 1,
            b')' | b']' => depth -= 1,
            b'w' if depth == 0 && text[i..].starts_with("with") => {
                let before_ok = i == 0 || !(bytes[i - 1].is_ascii_alphanumeric() || bytes[i - 1] == b'_');
                let after = i + 4;
                let after_ok = after >= bytes.len() || !(bytes[after].is_ascii_alphanumeric() || bytes[after] == b'_');
                if before_ok && after_ok {
                    split = Some(i);
                }
            }
            _ => {}
        }
    }
    let mut bindings = HashMap::new();
    let Some(at) = split else {
        return Ok((text, bindings));
    };
    let clause = &text[at + 4..];
    let base = at + 4;
    let mut offset = base;
    for item in clause.split(',') {
        let (name, value) =
            item.split_once('=').ok_or_else(|| ParseError::new(offset, "expected `name=value` binding"))?;
        let name = name.trim();
        if name.is_empty() || name == "j" || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(ParseError::new(offset, format!("bad binding name `{name}`")));
        }
        let value = parse_rational(value).map_err(|e| ParseError::new(offset + name.len() + 1, e.message))?;
        bindings.insert(name.to_string(), value);
        offset += item.len() + 1;
    }
    Ok((&text[..at], bindings))
}

/// Parses DSL text into an expression.
pub fn parse(text: &str) -> Result<SeqExpr, ParseError> {
    let (body, bindings) = split_bindings(text)?;
    let toks = tokenize(body, 0)?;
    if toks.is_empty() {
        return Err(ParseError::new(0, "empty expression"));
    }
    let mut p = Parser { toks, pos: 0, end: body.len(), bindings: &bindings };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    e.validate().map_err(|err| ParseError::new(0, err.to_string()))?;
    Ok(e)
}

/// Parses an Edmunds–Netrusov parameter function `ω(t)`, `t ∈ (0,1]`, into
/// the sequence `u ↦ ω(2^{-u})`.
///
/// Factors: `t^r`, `(1+log(1/t))^r`, positive numbers, parentheses, `*`, `/`.
pub fn parse_omega(text: &str) -> Result<SeqExpr, ParseError> {
    let (body, bindings) = split_bindings(text)?;
    let toks = tokenize(body, 0)?;
    if toks.is_empty() {
        return Err(ParseError::new(0, "empty expression"));
    }
    let mut p = OmegaParser { inner: Parser { toks, pos: 0, end: body.len(), bindings: &bindings } };
    let e = p.expr()?;
    if p.inner.pos != p.inner.toks.len() {
        return p.inner.err("trailing input");
    }
    Ok(e)
}

struct OmegaParser<'a> {
    inner: Parser<'a>,
}

impl<'a> OmegaParser<'a> {
    fn expr(&mut self) -> Result<SeqExpr, ParseError> {
        let mut factors = vec![self.term()?];
        loop {
            if self.inner.is_sym('*') {
                self.inner.pos += 1;
                factors.push(self.term()?);
            } else if self.inner.is_sym('/') {
                self.inner.pos += 1;
                let t = self.term()?;
                factors.push(SeqExpr::power(t, -Rational::one()));
            } else {
                break;
            }
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { SeqExpr::product(factors) })
    }

    fn term(&mut self) -> Result<SeqExpr, ParseError> {
        let f = self.factor()?;
        if self.inner.is_sym('^') {
            self.inner.pos += 1;
            let r = self.inner.exponent()?;
            return Ok(SeqExpr::power(f, r));
        }
        Ok(f)
    }

    fn factor(&mut self) -> Result<SeqExpr, ParseError> {
        let p = &mut self.inner;
        let log_pattern = [
            Tok::Sym('('),
            Tok::Num("1".into()),
            Tok::Sym('+'),
            Tok::Ident("log".into()),
            Tok::Sym('('),
            Tok::Num("1".into()),
            Tok::Sym('/'),
            Tok::Ident("t".into()),
            Tok::Sym(')'),
            Tok::Sym(')'),
            Tok::Sym('^'),
        ];
        if p.lookahead(&log_pattern) {
            p.pos += log_pattern.len();
            return Ok(SeqExpr::log_power(p.exponent()?));
        }
        if p.is_ident("t") {
            p.pos += 1;
            if p.is_sym('^') {
                p.pos += 1;
                let r = p.exponent()?;
                // t^r = 2^{-r u}
                return Ok(SeqExpr::geometric(-r));
            }
            return Ok(SeqExpr::geometric(-Rational::one()));
        }
        match p.peek().cloned() {
            Some(Tok::Num(_)) => {
                let at = p.offset();
                let v = p.number()?;
                if v <= 0.0 {
                    return Err(ParseError::new(at, "omega must be positive"));
                }
                Ok(SeqExpr::constant(v))
            }
            Some(Tok::Sym('(')) => {
                p.pos += 1;
                let e = self.expr()?;
                self.inner.expect_sym(')')?;
                Ok(e)
            }
            Some(Tok::Sym('-')) => p.err("omega must be positive"),
            _ => p.err("unexpected token in omega"),
        }
    }
}
