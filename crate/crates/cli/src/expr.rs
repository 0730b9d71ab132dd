//! Recursive-descent parser for preradical expressions.
//!
//! ```text
//! expr     := ("alpha" | "omega") "(" vertex "," subspace ")"
//!           | ("meet" | "join" | "prod" | "coprod") "(" expr "," expr ")"
//! subspace := "full" | "zero" | "[" row ("," row)* "]"
//! row      := "[" int ("," int)* "]"
//! ```
//!
//! Whitespace is ignored between tokens. A vertex is a bare identifier or a
//! double-quoted string (needed for ids containing `,` or `)`).

use std::fmt;

use qflow_core::preradical::{PreradicalExpr, SubspaceSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at position {}: {}", self.pos, self.message)
    }
}

impl std::error::Error for ParseError {}

pub fn parse_expr(input: &str) -> Result<PreradicalExpr, ParseError> {
    let mut p = Parser { src: input, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < input.len() {
        return Err(p.error("trailing input after expression"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '.' | ':' | '-' | '+' | '\'' | '/')
}

impl<'a> Parser<'a> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            pos: self.pos,
            message: message.into(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(d) => Err(self.error(format!("expected `{c}`, found `{d}`"))),
            None => Err(self.error(format!("expected `{c}`, found end of input"))),
        }
    }

    fn ident(&mut self) -> Result<(usize, &'a str), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let len = self.rest().find(|c: char| !is_ident_char(c)).unwrap_or(self.rest().len());
        if len == 0 {
            return Err(self.error("expected an identifier"));
        }
        self.pos += len;
        Ok((start, &self.src[start..self.pos]))
    }

    fn vertex(&mut self) -> Result<String, ParseError> {
        if self.peek() == Some('"') {
            let start = self.pos;
            self.pos += 1;
            let Some(end) = self.rest().find('"') else {
                self.pos = start;
                return Err(self.error("unterminated quoted vertex id"));
            };
            let id = self.rest()[..end].to_string();
            self.pos += end + 1;
            return Ok(id);
        }
        Ok(self.ident()?.1.to_string())
    }

    fn expr(&mut self) -> Result<PreradicalExpr, ParseError> {
        let (start, name) = self.ident()?;
        self.expect('(')?;
        let e = match name {
            "alpha" | "omega" => {
                let v = self.vertex()?;
                self.expect(',')?;
                let s = self.subspace()?;
                if name == "alpha" {
                    PreradicalExpr::alpha(v, s)
                } else {
                    PreradicalExpr::omega(v, s)
                }
            }
            "meet" | "join" | "prod" | "coprod" => {
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                match name {
                    "meet" => PreradicalExpr::meet(a, b),
                    "join" => PreradicalExpr::join(a, b),
                    "prod" => PreradicalExpr::prod(a, b),
                    _ => PreradicalExpr::coprod(a, b),
                }
            }
            other => {
                return Err(ParseError {
                    pos: start,
                    message: format!("unknown operator `{other}`"),
                })
            }
        };
        self.expect(')')?;
        Ok(e)
    }

    fn subspace(&mut self) -> Result<SubspaceSpec, ParseError> {
        if self.peek() == Some('[') {
            self.pos += 1;
            let mut rows = vec![self.row()?];
            while self.peek() == Some(',') {
                self.pos += 1;
                rows.push(self.row()?);
            }
            self.expect(']')?;
            return Ok(SubspaceSpec::Rows(rows));
        }
        let (start, word) = self.ident()?;
        match word {
            "full" => Ok(SubspaceSpec::Full),
            "zero" => Ok(SubspaceSpec::Zero),
            other => Err(ParseError {
                pos: start,
                message: format!("expected `full`, `zero` or a row list, found `{other}`"),
            }),
        }
    }

    fn row(&mut self) -> Result<Vec<i64>, ParseError> {
        self.expect('[')?;
        let mut row = vec![self.int()?];
        while self.peek() == Some(',') {
            self.pos += 1;
            row.push(self.int()?);
        }
        self.expect(']')?;
        Ok(row)
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let rest = self.rest();
        let sign = usize::from(rest.starts_with('-') || rest.starts_with('+'));
        let digits = rest[sign..].find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len() - sign);
        if digits == 0 {
            return Err(self.error("expected an integer"));
        }
        self.pos += sign + digits;
        self.src[start..self.pos].parse().map_err(|_| ParseError {
            pos: start,
            message: "integer out of range".into(),
        })
    }
}
