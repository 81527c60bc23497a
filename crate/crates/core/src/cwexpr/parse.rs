//! Text syntax (whitespace-insensitive, `#` starts a comment):
//!
//! ```text
//! expr  ::= make | union | eta | rho
//! make  ::= "v(" INT "," IDENT ")"
//! union ::= "(" expr "+" expr ")"
//! eta   ::= "eta(" INT "," INT "){" expr "}"
//! rho   ::= "rho(" INT "->" INT "){" expr "}"
//! ```

use std::collections::HashSet;

use super::{CwExpr, ExprError};

const IDENT_STOP: &[char] = &[',', '(', ')', '{', '}', '#'];

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    names: HashSet<String>,
}

impl<'a> Parser<'a> {
    fn location(&self, pos: usize) -> (usize, usize) {
        let before = &self.src[..pos];
        let line = before.matches('\n').count() + 1;
        let col = before.rfind('\n').map_or(pos, |nl| pos - nl - 1) + 1;
        (line, col)
    }

    fn error(&self, message: impl Into<String>) -> ExprError {
        let (line, col) = self.location(self.pos);
        ExprError::Syntax {
            line,
            col,
            message: message.into(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        loop {
            let rest = self.rest();
            let trimmed = rest.trim_start();
            self.pos += rest.len() - trimmed.len();
            if trimmed.starts_with('#') {
                self.pos += trimmed.find('\n').unwrap_or(trimmed.len());
            } else {
                return;
            }
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), ExprError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{token}`")))
        }
    }

    fn label(&mut self) -> Result<u32, ExprError> {
        self.skip_ws();
        let start = self.pos;
        let digits = self.rest().chars().take_while(char::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.error("expected a label"));
        }
        let value: u32 = self.rest()[..digits]
            .parse()
            .map_err(|_| self.error("label too large"))?;
        if value == 0 {
            let (line, col) = self.location(start);
            return Err(ExprError::LabelZero { line, col });
        }
        self.pos += digits;
        Ok(value)
    }

    fn ident(&mut self) -> Result<String, ExprError> {
        self.skip_ws();
        let len: usize = self
            .rest()
            .chars()
            .take_while(|c| !c.is_whitespace() && !IDENT_STOP.contains(c))
            .map(char::len_utf8)
            .sum();
        if len == 0 {
            return Err(self.error("expected a vertex name"));
        }
        let name = self.rest()[..len].to_owned();
        self.pos += len;
        Ok(name)
    }

    fn distinct(&self, i: u32, j: u32, at: usize) -> Result<(), ExprError> {
        if i == j {
            let (line, col) = self.location(at);
            Err(ExprError::SameLabels { line, col, label: i })
        } else {
            Ok(())
        }
    }

    fn expr(&mut self) -> Result<CwExpr, ExprError> {
        self.skip_ws();
        let at = self.pos;
        if self.eat("eta") {
            self.expect("(")?;
            let i = self.label()?;
            self.expect(",")?;
            let j = self.label()?;
            self.expect(")")?;
            self.distinct(i, j, at)?;
            let child = self.braced()?;
            Ok(CwExpr::eta(i, j, child))
        } else if self.eat("rho") {
            self.expect("(")?;
            let from = self.label()?;
            self.expect("->")?;
            let to = self.label()?;
            self.expect(")")?;
            self.distinct(from, to, at)?;
            let child = self.braced()?;
            Ok(CwExpr::rho(from, to, child))
        } else if self.eat("v") {
            self.expect("(")?;
            let label = self.label()?;
            self.expect(",")?;
            let name = self.ident()?;
            self.expect(")")?;
            if !self.names.insert(name.clone()) {
                return Err(ExprError::DuplicateName(name));
            }
            Ok(CwExpr::make(label, name))
        } else if self.eat("(") {
            let left = self.expr()?;
            self.expect("+")?;
            let right = self.expr()?;
            self.expect(")")?;
            Ok(CwExpr::union(left, right))
        } else {
            Err(self.error("expected `v(`, `(`, `eta(` or `rho(`"))
        }
    }

    fn braced(&mut self) -> Result<CwExpr, ExprError> {
        self.expect("{")?;
        let e = self.expr()?;
        self.expect("}")?;
        Ok(e)
    }
}

pub fn parse_expr(text: &str) -> Result<CwExpr, ExprError> {
    let mut p = Parser {
        src: text,
        pos: 0,
        names: HashSet::new(),
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.error("trailing input"));
    }
    Ok(e)
}
