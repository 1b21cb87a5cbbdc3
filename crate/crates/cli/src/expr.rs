//! Tiny exact arithmetic over named parameters, used by the `custom` family
//! to fill functional templates such as `{"t": "1 - alpha", "w": "a/2"}`.

use std::collections::BTreeMap;

use convex_order::rational::parse_rational;
use convex_order::Rational;
use num_traits::Zero;

use crate::error::{CliError, Result};

pub fn eval(src: &str, vars: &BTreeMap<String, Rational>) -> Result<Rational> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, vars };
    let v = p.sum()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a BTreeMap<String, Rational>,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> CliError {
        let text = String::from_utf8_lossy(self.src);
        CliError::input(format!("expression `{text}` at {}: {what}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<Rational> {
        let mut acc = self.product()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.product()?;
            acc = if op == b'+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Rational> {
        let mut acc = self.unary()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            if op == b'*' {
                acc *= rhs;
            } else if rhs.is_zero() {
                return Err(self.error("division by zero"));
            } else {
                acc /= rhs;
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Rational> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Rational> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'.') {
                    self.pos += 1;
                }
                let lit = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                parse_rational(lit).map_err(|_| self.error("bad number"))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                self.vars.get(name).cloned().ok_or_else(|| self.error(&format!("unknown parameter `{name}`")))
            }
            _ => Err(self.error("expected a number, parameter or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use convex_order::rational::rat;

    fn vars() -> BTreeMap<String, Rational> {
        [("alpha".to_string(), rat(4, 5)), ("a".to_string(), rat(1, 4))].into_iter().collect()
    }

    #[test]
    fn precedence_and_parameters() {
        assert_eq!(eval("1 - alpha", &vars()).unwrap(), rat(1, 5));
        assert_eq!(eval("1 - 2*a", &vars()).unwrap(), rat(1, 2));
        assert_eq!(eval("(1 - a)/2", &vars()).unwrap(), rat(3, 8));
        assert_eq!(eval("-a + 1/3", &vars()).unwrap(), rat(1, 12));
        assert_eq!(eval("0.25", &vars()).unwrap(), rat(1, 4));
    }

    #[test]
    fn errors() {
        assert!(eval("1/0", &vars()).is_err());
        assert!(eval("beta", &vars()).is_err());
        assert!(eval("(1", &vars()).is_err());
        assert!(eval("1 2", &vars()).is_err());
    }
}
