//! Reader for polynomial expressions in the printed syntax
//! (`t^4 - 6*t^2*x + 8*t*y - 3*x^2`, `x^2*y - 1/2*b*y`, `(x - u)*(x^3 + b*x - c)`).
//!
//! Division is allowed by nonzero constants only; negative exponents by
//! monomials only.

use crate::error::{Error, Result};
use crate::exact::poly::Poly;
use crate::exact::ring::{parse_q, Ring, Q};

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn err(&self, what: &str) -> Error {
        Error::Domain(format!("cannot parse {:?} at {}: {what}", self.src, self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly<Q>> {
        let mut acc = if self.peek() == Some('-') {
            self.pos += 1;
            -self.term()?
        } else {
            if self.peek() == Some('+') {
                self.pos += 1;
            }
            self.term()?
        };
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                '-' => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly<Q>> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc * self.power()?;
                }
                Some('/') => {
                    self.pos += 1;
                    let d = self.power()?;
                    let d = d.as_constant().filter(|d| !d.is_zero()).ok_or_else(|| self.err("division by a non-constant or zero"))?;
                    acc = acc.scale(&d.inv().expect("nonzero rational is invertible"));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly<Q>> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = self.peek() == Some('-');
        if neg {
            self.pos += 1;
        }
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let k: u32 = self.chars[start..self.pos].iter().collect::<String>().parse().map_err(|_| self.err("expected an exponent"))?;
        if !neg {
            return Ok(base.pow(k));
        }
        let inv = base.monomial_inverse().ok_or_else(|| self.err("negative power of a non-monomial"))?;
        Ok(inv.pow(k))
    }

    fn atom(&mut self) -> Result<Poly<Q>> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some('-') => {
                self.pos += 1;
                Ok(-self.power()?)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => {
                let start = self.pos;
                while self.pos < self.chars.len() && (self.chars[self.pos].is_ascii_digit() || self.chars[self.pos] == '.') {
                    self.pos += 1;
                }
                let s: String = self.chars[start..self.pos].iter().collect();
                let q = parse_q(&s).ok_or_else(|| self.err("bad number"))?;
                Ok(Poly::rational(&q))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.pos < self.chars.len() && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_') {
                    self.pos += 1;
                }
                let s: String = self.chars[start..self.pos].iter().collect();
                Ok(Poly::var(&s))
            }
            _ => Err(self.err("expected a number, variable or '('")),
        }
    }
}

/// Parses a polynomial with rational coefficients.
pub fn parse_poly(src: &str) -> Result<Poly<Q>> {
    let mut p = Parser { chars: src.chars().collect(), pos: 0, src };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ring::rat;

    #[test]
    fn reads_printed_forms() {
        let p = parse_poly("x^2*y - 1/2*b*y").unwrap();
        let (x, y, b) = (Poly::var("x"), Poly::var("y"), Poly::var("b"));
        assert_eq!(p, x.pow(2) * &y - (b * y).scale(&rat(1, 2)));
        assert_eq!(parse_poly("-(x - 1)^2").unwrap(), -(Poly::var("x") - Poly::int(1)).pow(2));
        assert_eq!(parse_poly("0.25*z^-2").unwrap(), Poly::var("z").monomial_inverse().unwrap().pow(2).scale(&rat(1, 4)));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_poly("x/y").is_err());
        assert!(parse_poly("(x + 1").is_err());
        assert!(parse_poly("x y").is_err());
        assert!(parse_poly("(x+1)^-1").is_err());
    }

    #[test]
    fn display_round_trip() {
        let p = parse_poly("t^4 - 6*t^2*x + 8*t*y - 3*x^2 + 3/7*b*c^2").unwrap();
        assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
    }
}
