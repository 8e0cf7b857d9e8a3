//! Parser for the plain-text rational function syntax used by fixtures and
//! printed output: `q`, `t`, integers, `+ - * /`, `^` with integer or
//! `(p/2)` exponents, and `sqrt(...)` of monomials.

use super::laurent::{LaurentPoly, Monomial};
use super::ratfn::RationalFunction;
use super::scalar::Coeff;
use crate::error::{Error, Result};

pub fn parse_rational<C: Coeff>(src: &str) -> Result<RationalFunction<C>> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

/// Parses an expression that must be a Laurent polynomial.
pub fn parse_laurent<C: Coeff>(src: &str) -> Result<LaurentPoly<C>> {
    let v = parse_rational::<C>(src)?.reduce();
    if !v.denominator_factors().is_empty() {
        return Err(Error::Parse { pos: 0, msg: format!("{src:?} is not a Laurent polynomial") });
    }
    Ok(v.numerator().clone())
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn expr<C: Coeff>(&mut self) -> Result<RationalFunction<C>> {
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

    fn term<C: Coeff>(&mut self) -> Result<RationalFunction<C>> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.eat(b'/') {
                let pos = self.pos;
                let d = self.unary()?;
                acc = acc.checked_div(&d).map_err(|_| Error::Parse { pos, msg: "division by zero".into() })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary<C: Coeff>(&mut self) -> Result<RationalFunction<C>> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power<C: Coeff>(&mut self) -> Result<RationalFunction<C>> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let pos = self.pos;
        let (num, den) = self.exponent()?;
        if den == 1 {
            return base.pow(num).map_err(|_| Error::Parse { pos, msg: "zero to a negative power".into() });
        }
        let m = unit_monomial(&base).ok_or_else(|| Error::Parse { pos, msg: "fractional power of a non-monomial".into() })?;
        // doubled exponents: x^(2e/2) raised to num/den
        let (eq, et) = (m.q as i64 * num as i64, m.t as i64 * num as i64);
        if eq % den as i64 != 0 || et % den as i64 != 0 {
            return Err(Error::Parse { pos, msg: "exponent leaves the half-integer lattice".into() });
        }
        Ok(RationalFunction::monomial(Monomial::new((eq / den as i64) as i32, (et / den as i64) as i32)))
    }

    /// `n`, `-n`, `(n)`, `(-n)`, `(p/d)` or `(-p/d)`.
    fn exponent(&mut self) -> Result<(i32, i32)> {
        if self.eat(b'(') {
            let neg = self.eat(b'-');
            let p = self.integer()? as i32;
            let d = if self.eat(b'/') { self.integer()? as i32 } else { 1 };
            self.expect(b')')?;
            if d == 0 {
                return Err(self.err("zero denominator in exponent"));
            }
            Ok((if neg { -p } else { p }, d))
        } else {
            let neg = self.eat(b'-');
            let p = self.integer()? as i32;
            Ok((if neg { -p } else { p }, 1))
        }
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap().parse().map_err(|_| self.err("integer too large"))
    }

    fn atom<C: Coeff>(&mut self) -> Result<RationalFunction<C>> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let c = C::from_fraction_strings(digits, "1").ok_or_else(|| self.err("bad integer"))?;
                Ok(RationalFunction::from_poly(LaurentPoly::constant(c)))
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(RationalFunction::monomial(Monomial::q(1)))
            }
            Some(b't') => {
                self.pos += 1;
                Ok(RationalFunction::monomial(Monomial::t(1)))
            }
            Some(b's') if self.src[self.pos..].starts_with(b"sqrt") => {
                self.pos += 4;
                self.expect(b'(')?;
                let pos = self.pos;
                let v: RationalFunction<C> = self.expr()?;
                self.expect(b')')?;
                let m = unit_monomial(&v).ok_or_else(|| Error::Parse { pos, msg: "sqrt of a non-monomial".into() })?;
                if m.q % 2 != 0 || m.t % 2 != 0 {
                    return Err(Error::Parse { pos, msg: "sqrt leaves the half-integer lattice".into() });
                }
                Ok(RationalFunction::monomial(Monomial::new(m.q / 2, m.t / 2)))
            }
            _ => Err(self.err("expected a number, q, t, sqrt or '('")),
        }
    }
}

fn unit_monomial<C: Coeff>(v: &RationalFunction<C>) -> Option<Monomial> {
    let (m, c) = v.reduce().as_term()?;
    c.is_one().then_some(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Laurent, RatFn, Rational};

    fn parse(s: &str) -> RatFn {
        parse_rational::<Rational>(s).unwrap()
    }

    #[test]
    fn monomials() {
        assert_eq!(parse("sqrt(q)"), RatFn::monomial(Monomial::new(1, 0)));
        assert_eq!(parse("q^(3/2)"), RatFn::monomial(Monomial::new(3, 0)));
        assert_eq!(parse("t^(-5/2)"), RatFn::monomial(Monomial::new(0, -5)));
        assert_eq!(parse("q^-1"), RatFn::monomial(Monomial::new(-2, 0)));
        assert_eq!(parse("sqrt(t*q)"), RatFn::monomial(Monomial::new(1, 1)));
    }

    #[test]
    fn rational_value() {
        let got = parse("q^2*(1+q^2)/(t^(5/2)*(1-q)^2*(1-q^2))");
        let q = Laurent::monomial(Monomial::q(1));
        let num = (&Laurent::one() + &q.pow(2)).mul_monomial(Monomial::new(4, -5));
        let den = &(&Laurent::one() - &q).pow(2) * &(&Laurent::one() - &q.pow(2));
        assert_eq!(got, RatFn::new(num, den).unwrap());
    }

    #[test]
    fn round_trip_display() {
        for s in ["sqrt(q)/(1-q)", "(1+q^2)/(1-q)^2", "-q^(3/2)*t^(-1)", "(q+t)/((1-q)*(1-t))"] {
            let v = parse(s);
            assert_eq!(parse(&v.to_string()), v, "{s}");
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_rational::<Rational>("q+"), Err(Error::Parse { .. })));
        assert!(matches!(parse_rational::<Rational>("(1+q)^(1/2)"), Err(Error::Parse { .. })));
        assert!(matches!(parse_rational::<Rational>("1/(q-q)"), Err(Error::Parse { .. })));
        assert!(matches!(parse_rational::<Rational>("x"), Err(Error::Parse { .. })));
        assert!(parse_laurent::<Rational>("1/(1-q)").is_err());
    }
}
