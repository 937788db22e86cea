//! Recursive-descent parser for rational-function text.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := ('-' | '+') unary | power
//! power := atom ('^' integer)?
//! atom  := integer | identifier | '(' expr ')'
//! ```

use num_bigint::BigInt;

use super::poly::{Poly, Q};
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
    names: &'a [String],
}

impl<'a> Parser<'a> {
    fn location(&self, at: usize) -> (usize, usize) {
        let offset = self.chars.get(at).map(|c| c.0).unwrap_or(self.src.len());
        let before = &self.src[..offset];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().unwrap().chars().count() + 1;
        (line, column)
    }

    fn error<T>(&self, at: usize, message: impl Into<String>) -> Result<T> {
        let (line, column) = self.location(at);
        Err(Error::Parse {
            message: message.into(),
            line,
            column,
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                '-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                '*' => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                '/' => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    if d.is_zero() {
                        return self.error(at, "division by zero");
                    }
                    acc = &acc / &d;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFunc> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return self.error(at, "expected a nonnegative integer exponent");
            }
            let k: u32 = match digits.parse() {
                Ok(k) => k,
                Err(_) => return self.error(at, "exponent too large"),
            };
            return Ok(base.pow(k as i32).expect("nonnegative power"));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(&(_, c)) = self.chars.get(self.pos) {
            if c.is_ascii_digit() {
                s.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        s
    }

    fn atom(&mut self) -> Result<RatFunc> {
        let at = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            None => self.error(at, "unexpected end of input"),
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    let here = self.pos;
                    return self.error(here, "expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                let n: BigInt = d.parse().expect("digits");
                Ok(RatFunc::constant(self.nvars(), Q::from_integer(n)))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&(_, c)) = self.chars.get(self.pos) {
                    if c.is_alphanumeric() || c == '_' {
                        name.push(c);
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                match self.names.iter().position(|n| *n == name) {
                    Some(i) => Ok(RatFunc::var(self.nvars(), i)),
                    None => self.error(at, format!("unknown variable '{name}'")),
                }
            }
            Some(c) => self.error(at, format!("unexpected character '{c}'")),
        }
    }
}

/// Parse a rational function over the named variables.
pub fn parse_ratfunc(src: &str, names: &[String]) -> Result<RatFunc> {
    let mut p = Parser {
        src,
        chars: src.char_indices().collect(),
        pos: 0,
        names,
    };
    let f = p.expr()?;
    if p.peek().is_some() {
        let at = p.pos;
        return p.error(at, "unexpected trailing input");
    }
    Ok(f)
}

/// Parse a polynomial; rejects proper fractions.
pub fn parse_poly(src: &str, names: &[String]) -> Result<Poly> {
    let f = parse_ratfunc(src, names)?;
    if !f.den().is_one() {
        return Err(Error::Parse {
            message: "expected a polynomial".into(),
            line: 1,
            column: 1,
        });
    }
    Ok(f.num().clone())
}

/// Parse an exact rational constant such as `-3/4`.
pub fn parse_rational(src: &str) -> Result<Q> {
    let f = parse_ratfunc(src, &[])?;
    f.constant_value().ok_or_else(|| Error::Parse {
        message: "expected a rational constant".into(),
        line: 1,
        column: 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        ["x", "y", "n"].iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn roundtrip_examples() {
        let ns = names();
        for s in [
            "(x^2 - 1)/(x - 1)",
            "-x/y",
            "1/2*x^3*y - 7",
            "n*(2*n*x+x-2*x^2-1)/(2*(n*x-1))",
            "-(x+y)/(x*y)",
            "3/(y^2)",
            "0",
        ] {
            let f = parse_ratfunc(s, &ns).unwrap();
            let printed = f.to_string_with(&ns);
            let g = parse_ratfunc(&printed, &ns).unwrap();
            assert_eq!(f, g, "{s} -> {printed}");
        }
    }

    #[test]
    fn printing_shape() {
        let ns = names();
        let f = parse_ratfunc("(x^2-1)/(x-1)", &ns).unwrap();
        assert_eq!(f.to_string_with(&ns), "x + 1");
        let g = parse_ratfunc("(2*x+y)/x", &ns).unwrap();
        assert_eq!(g.to_string_with(&ns), "(2*x + y)/x");
        let h = parse_ratfunc("1/(2*y-1)", &ns).unwrap();
        assert_eq!(h.to_string_with(&ns), "1/(2*y - 1)");
    }

    #[test]
    fn error_locations() {
        let ns = names();
        match parse_ratfunc("x +\n  (y * z)", &ns) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 8)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_ratfunc("x/(y-y)", &ns),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(parse_ratfunc("x^", &ns), Err(Error::Parse { .. })));
        assert!(matches!(parse_ratfunc("(x", &ns), Err(Error::Parse { .. })));
    }
}
