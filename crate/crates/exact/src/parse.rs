//! Scalar expressions: integers, named variables, `+ - * /`, parentheses and
//! `^` with an integer exponent. The name `q` denotes the deformation parameter.

use crate::error::ExactError;
use crate::ratfunc::RatFunc;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

/// Parse a scalar expression into canonical form.
pub fn parse_scalar(s: &str) -> Result<RatFunc, ExactError> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> ExactError {
        ExactError::Parse { offset: self.pos, msg: msg.to_string() }
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

    fn expr(&mut self) -> Result<RatFunc, ExactError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc, ExactError> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                b'/' => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    acc = acc.div(&d).map_err(|_| ExactError::Parse { offset: at, msg: "division by zero".into() })?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFunc, ExactError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFunc, ExactError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'(') => {
                // allow ^(-k)
                self.pos += 1;
                let neg = if self.peek() == Some(b'-') {
                    self.pos += 1;
                    true
                } else {
                    false
                };
                let e = self.integer()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                return self.apply_pow(base, e, neg);
            }
            _ => false,
        };
        let e = self.integer()?;
        self.apply_pow(base, e, neg)
    }

    fn apply_pow(&self, base: RatFunc, e: u64, neg: bool) -> Result<RatFunc, ExactError> {
        let e = i32::try_from(e).map_err(|_| self.err("exponent too large"))?;
        if neg && base.is_zero() {
            return Err(self.err("division by zero"));
        }
        Ok(base.pow(if neg { -e } else { e }))
    }

    fn integer(&mut self) -> Result<u64, ExactError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap().parse().map_err(|_| self.err("integer overflow"))
    }

    fn atom(&mut self) -> Result<RatFunc, ExactError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let big: num_bigint::BigInt = digits.parse().map_err(|_| self.err("bad integer"))?;
                Ok(RatFunc::from(big))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                Ok(RatFunc::var(std::str::from_utf8(&self.src[start..self.pos]).unwrap()))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar() {
        let q = RatFunc::q();
        assert_eq!(parse_scalar("q - q^-1").unwrap(), crate::ratfunc::lambda());
        assert_eq!(parse_scalar("q^(-2)*q^2").unwrap(), RatFunc::one());
        assert_eq!(parse_scalar(" (q+1)*(q-1) / (q^2-1) ").unwrap(), RatFunc::one());
        assert_eq!(parse_scalar("-3/6").unwrap(), RatFunc::ratio(-1, 2));
        assert_eq!(parse_scalar("2*q").unwrap(), q.scale_int(2));
        assert_eq!(parse_scalar("alpha^2").unwrap(), RatFunc::var("alpha").pow(2));
        assert_eq!(parse_scalar("123456789012345678901234567890").unwrap().to_expr(), "123456789012345678901234567890");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_scalar("q +"), Err(ExactError::Parse { .. })));
        assert!(matches!(parse_scalar("1/0"), Err(ExactError::Parse { .. })));
        assert!(matches!(parse_scalar("q^x"), Err(ExactError::Parse { .. })));
        assert!(matches!(parse_scalar("(q"), Err(ExactError::Parse { .. })));
        assert!(matches!(parse_scalar("q $"), Err(ExactError::Parse { .. })));
    }

    #[test]
    fn round_trip() {
        for s in ["q^3 - 2*q*a + 1", "(q^2 + 1)/(q)", "1/(q^2 - 2*a)", "-5/(3*q^4)"] {
            let v = parse_scalar(s).unwrap();
            assert_eq!(parse_scalar(&v.to_expr()).unwrap(), v, "{s}");
        }
    }
}
