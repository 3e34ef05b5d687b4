//! Textual element syntax: polynomial expressions in `z` with `+ - * / ^`,
//! integers and parentheses. `^` takes an integer exponent, possibly negative.

use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{CycloRatElem, CyclotomicField};
use crate::error::{Error, Result};

pub(super) fn write_poly(f: &mut fmt::Formatter<'_>, coeffs: &[BigInt]) -> fmt::Result {
    let mut first = true;
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if first {
            if c.is_negative() {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if c.is_negative() { " - " } else { " + " })?;
        }
        first = false;
        match (k, mag.is_one()) {
            (0, _) => write!(f, "{mag}")?,
            (_, true) => {}
            (_, false) => write!(f, "{mag}*")?,
        }
        match k {
            0 => {}
            1 => f.write_str("z")?,
            _ => write!(f, "z^{k}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

pub(super) fn parse(field: CyclotomicField, text: &str) -> Result<CycloRatElem> {
    let mut p = Parser { field, src: text.as_bytes(), pos: 0 };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    field: CyclotomicField,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse { position: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<CycloRatElem> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<CycloRatElem> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.unary()?;
                acc = acc.checked_div(&d).map_err(|_| Error::Parse { position: at, message: "division by zero".into() })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<CycloRatElem> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<CycloRatElem> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let negative = self.eat(b'-');
        let at = self.pos;
        let e = self.integer()?;
        let e: i64 = i64::try_from(e).map_err(|_| Error::Parse { position: at, message: "exponent too large".into() })?;
        let e = if negative { -e } else { e };
        base.pow(e).map_err(|_| Error::Parse { position: at, message: "negative power of zero".into() })
    }

    fn atom(&mut self) -> Result<CycloRatElem> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(v)
            }
            Some(b'z') => {
                self.pos += 1;
                Ok(self.field.zeta())
            }
            Some(b) if b.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(self.field.rational(&n.into()))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let digits = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("nonempty digit string"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn print_shapes() {
        let f = CyclotomicField::new(7).unwrap();
        assert_eq!(f.zero().to_string(), "0");
        assert_eq!(f.int(-4).to_string(), "-4");
        assert_eq!(f.from_i64_coeffs(&[1, -1, 3]).to_string(), "3*z^2 - z + 1");
        assert_eq!(f.parse("-z^5 + 2").unwrap().to_string(), "-z^5 + 2");
    }

    #[test]
    fn parse_quotient() {
        let f = CyclotomicField::new(5).unwrap();
        let b = f.parse("5/(z^3-z^2)").unwrap();
        let d = &f.zeta_pow(3) - &f.zeta_pow(2);
        assert_eq!(&b * &d, f.int(5));
        assert_eq!(f.parse(&b.to_string()).unwrap(), b);
        assert_eq!(f.parse("z^-1").unwrap(), f.zeta_pow(4));
    }

    #[test]
    fn parse_errors() {
        let f = CyclotomicField::new(5).unwrap();
        assert!(matches!(f.parse("z +"), Err(Error::Parse { .. })));
        assert!(matches!(f.parse("1/0"), Err(Error::Parse { .. })));
        assert!(matches!(f.parse("(z"), Err(Error::Parse { .. })));
        assert!(matches!(f.parse("y"), Err(Error::Parse { position: 0, .. })));
    }
}
