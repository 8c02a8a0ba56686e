//! Text syntax for polynomials and ideals.
//!
//! Polynomials print like `x_0*x_2-x_1^2` with balanced coefficients
//! (`-2` rather than `32001`); the parser accepts the same syntax with `*`
//! optional between a coefficient and its monomial.  Parser and printer
//! round-trip exactly.
//!
//! Ideal files are a ring header followed by one polynomial per line:
//!
//! ```text
//! ring 32003; x: x_0 x_1 x_2
//! x_0*x_1
//! x_2
//! ```

use crate::error::{Error, Result};
use crate::field::{Fp, PrimeField};
use crate::groebner::Ideal;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::{Block, RingRef, RingSpec};
use std::fmt::Write as _;

pub fn poly_to_string(f: &Polynomial) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let field = *f.ring().field();
    let mut out = String::new();
    for (idx, (m, c)) in f.terms().iter().enumerate() {
        let b = field.balanced(*c);
        let neg = b < 0;
        let mag = b.unsigned_abs();
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push('-');
        } else {
            out.push('+');
        }
        let mut factors = String::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !factors.is_empty() {
                factors.push('*');
            }
            factors.push_str(f.ring().var_name(i));
            if e > 1 {
                let _ = write!(factors, "^{e}");
            }
        }
        if factors.is_empty() {
            let _ = write!(out, "{mag}");
        } else if mag == 1 {
            out.push_str(&factors);
        } else {
            let _ = write!(out, "{mag}*{factors}");
        }
    }
    out
}

pub fn parse_poly(ring: &RingRef, input: &str) -> Result<Polynomial> {
    let mut p = Parser { ring, chars: input.chars().collect(), pos: 0 };
    let poly = p.parse()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(Error::Parse(format!("trailing input at byte {} in `{input}`", p.pos)));
    }
    Ok(poly)
}

struct Parser<'a> {
    ring: &'a RingRef,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn parse(&mut self) -> Result<Polynomial> {
        let field = *self.ring.field();
        let mut terms: Vec<(Monomial, Fp)> = Vec::new();
        self.skip_ws();
        let mut sign = match self.peek() {
            Some('-') => {
                self.bump();
                -1i64
            }
            Some('+') => {
                self.bump();
                1
            }
            _ => 1,
        };
        loop {
            let (m, c) = self.parse_term()?;
            let coeff = field.mul(c, field.from_i64(sign));
            terms.push((m, coeff));
            self.skip_ws();
            sign = match self.peek() {
                Some('+') => {
                    self.bump();
                    1
                }
                Some('-') => {
                    self.bump();
                    -1
                }
                _ => break,
            };
        }
        Ok(Polynomial::from_terms(self.ring, terms))
    }

    fn parse_term(&mut self) -> Result<(Monomial, Fp)> {
        let field = *self.ring.field();
        self.skip_ws();
        let mut coeff = field.one();
        let mut mono = Monomial::one(self.ring.nvars());
        let mut saw_factor = false;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let n = self.parse_int()?;
            coeff = field.from_i64(n);
            saw_factor = true;
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.bump();
                    self.skip_ws();
                }
                Some(c) if c.is_alphabetic() => {}
                _ => break,
            }
            self.skip_ws();
            match self.peek() {
                Some(c) if c.is_alphabetic() => {
                    let (i, e) = self.parse_factor()?;
                    mono.set_exp(i, mono.exp(i) + e);
                    saw_factor = true;
                }
                _ => return Err(Error::Parse("expected a variable after `*`".into())),
            }
        }
        if !saw_factor {
            return Err(Error::Parse("expected a term".into()));
        }
        Ok((mono, coeff))
    }

    fn parse_factor(&mut self) -> Result<(usize, u16)> {
        let mut name = String::new();
        while matches!(self.peek(), Some(c) if c.is_alphanumeric() || c == '_') {
            name.push(self.bump().unwrap());
        }
        let idx = self
            .ring
            .var_index(&name)
            .ok_or_else(|| Error::Parse(format!("unknown variable `{name}`")))?;
        let mut exp = 1u16;
        self.skip_ws();
        if self.peek() == Some('^') {
            self.bump();
            self.skip_ws();
            let n = self.parse_int()?;
            exp = u16::try_from(n).map_err(|_| Error::Parse(format!("exponent {n} too large")))?;
        }
        Ok((idx, exp))
    }

    fn parse_int(&mut self) -> Result<i64> {
        let mut s = String::new();
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            s.push(self.bump().unwrap());
        }
        s.parse::<i64>().map_err(|e| Error::Parse(format!("bad integer `{s}`: {e}")))
    }
}

/// Serialize an ideal: ring header plus one generator per line.
pub fn ideal_to_string(ideal: &Ideal) -> String {
    let ring = ideal.ring();
    let mut out = format!("ring {}", ring.field().prime());
    for (bi, b) in ring.blocks().iter().enumerate() {
        let vars: Vec<&str> = ring
            .block_vars(bi)
            .into_iter()
            .map(|j| ring.var_name(j))
            .collect();
        let _ = write!(out, "; {}: {}", b.name, vars.join(" "));
    }
    out.push('\n');
    for g in ideal.generators() {
        out.push_str(&poly_to_string(g));
        out.push('\n');
    }
    out
}

/// Parse the plain-text ideal format produced by [`ideal_to_string`].
pub fn parse_ideal(input: &str) -> Result<Ideal> {
    let mut lines = input
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or(Error::EmptyInput("ideal file"))?;
    let rest = header
        .strip_prefix("ring")
        .ok_or_else(|| Error::Parse("ideal file must start with a `ring` header".into()))?;
    let mut parts = rest.split(';').map(str::trim);
    let p: u32 = parts
        .next()
        .ok_or_else(|| Error::Parse("missing prime".into()))?
        .parse()
        .map_err(|e| Error::Parse(format!("bad prime: {e}")))?;
    let field = PrimeField::new(p)?;
    let mut blocks = Vec::new();
    for spec in parts {
        let (name, vars) = spec
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("bad block spec `{spec}`")))?;
        blocks.push(Block {
            name: name.trim().to_string(),
            vars: vars.split_whitespace().map(str::to_string).collect(),
        });
    }
    if blocks.is_empty() {
        return Err(Error::Parse("ring header names no blocks".into()));
    }
    let ring = RingSpec::new(field, blocks, vec![])?;
    let gens = lines.map(|l| parse_poly(&ring, l)).collect::<Result<Vec<_>>>()?;
    Ok(Ideal::new(&ring, gens))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> RingRef {
        RingSpec::projective(PrimeField::default_field(), 2).unwrap()
    }

    #[test]
    fn print_and_parse_basic() {
        let r = ring();
        let f = parse_poly(&r, "x_0*x_2 - x_1^2").unwrap();
        // Terms print grevlex-descending: x_1^2 beats x_0*x_2.
        assert_eq!(poly_to_string(&f), "-x_1^2+x_0*x_2");
        assert_eq!(parse_poly(&r, &poly_to_string(&f)).unwrap(), f);
    }

    #[test]
    fn coefficient_star_is_optional() {
        let r = ring();
        let a = parse_poly(&r, "3x_0").unwrap();
        let b = parse_poly(&r, "3*x_0").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn balanced_printing() {
        let r = ring();
        let f = parse_poly(&r, "32001*x_0").unwrap();
        assert_eq!(poly_to_string(&f), "-2*x_0");
    }

    #[test]
    fn zero_prints_as_zero() {
        let r = ring();
        assert_eq!(poly_to_string(&Polynomial::zero(&r)), "0");
    }
}
