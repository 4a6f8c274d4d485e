//! Recursive-descent reader for elements of K and K[X].
//!
//! Grammar: `expr := term (('+'|'-') term)*`, `term := power (('*'|'/') power)*`,
//! `power := unary ('^' int)?`, `unary := '-' unary | atom`,
//! `atom := int | 'w' | 'X' | '(' expr ')'`. `w` is √m. Division is only by
//! nonzero constants.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Field, FieldElement, NumError, NumResult, Poly};

struct Reader<'a> {
    src: &'a [u8],
    pos: usize,
    field: Field,
}

impl<'a> Reader<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> NumResult<T> {
        Err(NumError::Parse { col: self.pos + 1, msg: msg.into() })
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

    fn expr(&mut self) -> NumResult<Poly> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { acc.add(&rhs)? } else { acc.sub(&rhs)? };
        }
        Ok(acc)
    }

    fn term(&mut self) -> NumResult<Poly> {
        let mut acc = self.power()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.power()?;
            if c == b'*' {
                acc = acc.mul(&rhs)?;
            } else {
                if rhs.degree().is_some_and(|d| d > 0) {
                    return self.err("division by a non-constant polynomial");
                }
                let c = rhs.coeff(0).inv()?;
                acc = acc.scale(&c)?;
            }
        }
        Ok(acc)
    }

    fn power(&mut self) -> NumResult<Poly> {
        let base = self.unary()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return self.err("expected exponent");
            }
            let e: u32 = std::str::from_utf8(&self.src[start..self.pos])
                .ok()
                .and_then(|s| s.parse().ok())
                .ok_or(NumError::Parse { col: start + 1, msg: "exponent too large".into() })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn unary(&mut self) -> NumResult<Poly> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        self.atom()
    }

    fn atom(&mut self) -> NumResult<Poly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'w') => {
                self.pos += 1;
                match FieldElement::sqrt_m(self.field) {
                    Ok(w) => Ok(Poly::constant(w)),
                    Err(_) => {
                        self.pos -= 1;
                        self.err("'w' is not available over Q")
                    }
                }
            }
            Some(b'X') => {
                self.pos += 1;
                Ok(Poly::x(self.field))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
                let n: BigInt = s.parse().expect("ascii digits");
                Ok(Poly::constant(FieldElement::from_rational(self.field, BigRational::from(n))))
            }
            Some(c) => self.err(format!("unexpected character '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

fn read(field: Field, s: &str) -> NumResult<Poly> {
    let mut r = Reader { src: s.as_bytes(), pos: 0, field };
    let p = r.expr()?;
    if r.peek().is_some() {
        return r.err("trailing input");
    }
    Ok(p)
}

pub fn parse_poly(field: Field, s: &str) -> NumResult<Poly> {
    read(field, s)
}

pub fn parse_element(field: Field, s: &str) -> NumResult<FieldElement> {
    let p = read(field, s)?;
    if p.degree().is_some_and(|d| d > 0) {
        return Err(NumError::Parse { col: 1, msg: "expected a constant".into() });
    }
    Ok(p.coeff(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_elements() {
        let k = Field::quadratic(-3).unwrap();
        let x = parse_element(k, "(1 + w)/2").unwrap();
        assert_eq!(x.to_string(), "1/2 + 1/2*w");
        assert_eq!(parse_element(k, "w^2").unwrap(), FieldElement::from_int(k, -3));
    }

    #[test]
    fn reads_polys() {
        let k = Field::Rational;
        let p = parse_poly(k, "(X - 1)*(X + 1)").unwrap();
        assert_eq!(p, Poly::from_ints(k, &[-1, 0, 1]));
    }

    #[test]
    fn reports_column() {
        let k = Field::Rational;
        match parse_poly(k, "1 + * 2") {
            Err(NumError::Parse { col, .. }) => assert_eq!(col, 5),
            other => panic!("{other:?}"),
        }
        assert!(parse_element(k, "w").is_err());
        assert!(parse_poly(k, "1/X").is_err());
        assert!(matches!(parse_element(k, "1/0"), Err(NumError::DivisionByZero)));
    }
}
