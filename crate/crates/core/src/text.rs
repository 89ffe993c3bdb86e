//! Polynomial text format.
//!
//! Grammar (whitespace insignificant):
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' uint)?
//! base   := int | ident | '(' expr ')'
//! ident  := [A-Za-z][A-Za-z0-9_]*
//! int    := [0-9]+
//! ```
//! Coefficients are reduced mod p on parse. Printing lists terms in
//! descending monomial order with coefficients in `0..p`, uses `^` only for
//! exponents above one, and omits unit coefficients except on the constant
//! term, so `parse(print(f)) = f`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::field::GroundField;
use crate::order::MonomialOrder;
use crate::poly::{Polynomial, VarSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at byte {pos}")]
    UnknownVariable { pos: usize, name: String },
    #[error("exponent too large at byte {pos}")]
    ExponentTooLarge { pos: usize },
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: GroundField,
    vars: VarSet,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn err<T>(&self, msg: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        })
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        // An optional leading sign is accepted even though printing never
        // produces one.
        let mut negate = false;
        if let Some(c) = self.peek() {
            if c == b'+' || c == b'-' {
                self.pos += 1;
                negate = c == b'-';
            }
        }
        let first = self.term()?;
        let mut acc = if negate { first.neg() } else { first };
        while let Some(c) = self.peek() {
            if c != b'+' && c != b'-' {
                break;
            }
            self.pos += 1;
            let t = self.term()?;
            acc = if c == b'+' {
                acc.try_add(&t).expect("parser varset")
            } else {
                acc.try_sub(&t).expect("parser varset")
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = acc.try_mul(&f).expect("parser varset");
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let start = self.pos;
            let e = self.uint()?;
            base.try_pow(e)
                .map_err(|_| ParseError::ExponentTooLarge { pos: start })
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.bump() != Some(b')') {
                    self.pos -= 1;
                    return self.err("expected `)`");
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint()?;
                Ok(Polynomial::constant(
                    self.field,
                    &self.vars,
                    self.field.reduce_u64(n % u64::from(self.field.p())) as i64,
                ))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                let name = self.ident();
                match self.vars.index_of(&name) {
                    Some(i) => Ok(Polynomial::var(self.field, &self.vars, i)),
                    None => Err(ParseError::UnknownVariable { pos: start, name }),
                }
            }
            _ => self.err("expected number, variable or `(`"),
        }
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        self.pos += 1;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn uint(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut v: u64 = 0;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            v = v
                .checked_mul(10)
                .and_then(|v| v.checked_add(u64::from(self.src[self.pos] - b'0')))
                .ok_or(ParseError::ExponentTooLarge { pos: start })?;
            // Large literals are fine for coefficients, which reduce mod p;
            // keep them bounded to avoid silent wrap.
            if v > (1 << 62) {
                return Err(ParseError::ExponentTooLarge { pos: start });
            }
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected digits");
        }
        Ok(v)
    }
}

/// Parses `text` against a declared variable set; unknown identifiers error.
pub fn parse(text: &str, field: GroundField, vars: &VarSet) -> Result<Polynomial, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        field,
        vars: vars.clone(),
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return p.err("trailing input");
    }
    Ok(out)
}

/// Parses `text`, inferring the variable set from identifiers in order of
/// first appearance.
pub fn parse_infer(text: &str, field: GroundField) -> Result<(Polynomial, VarSet), ParseError> {
    let mut names: Vec<String> = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i].is_ascii_alphabetic() {
            let start = i;
            i += 1;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let name = String::from_utf8_lossy(&bytes[start..i]).into_owned();
            if !names.contains(&name) {
                names.push(name);
            }
        } else {
            i += 1;
        }
    }
    let vars = VarSet::new(names).expect("first-appearance names are distinct");
    let poly = parse(text, field, &vars)?;
    Ok((poly, vars))
}

/// Prints in the default grevlex order.
pub fn print(f: &Polynomial) -> String {
    print_with(f, &MonomialOrder::grevlex())
}

pub fn print_with(f: &Polynomial, order: &MonomialOrder) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut terms: Vec<_> = f.terms().collect();
    terms.sort_by(|a, b| order.cmp(b.0, a.0));
    let mut out = String::new();
    for (i, (m, c)) in terms.iter().enumerate() {
        if i > 0 {
            out.push_str(" + ");
        }
        let mut factors: Vec<String> = Vec::new();
        if *c != 1 || m.is_one() {
            factors.push(c.to_string());
        }
        for (vi, &e) in m.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if e == 1 {
                factors.push(f.vars().name(vi).to_string());
            } else {
                let mut s = String::new();
                write!(s, "{}^{}", f.vars().name(vi), e).unwrap();
                factors.push(s);
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GroundField;

    fn fp(p: u32) -> GroundField {
        GroundField::new(p).unwrap()
    }

    #[test]
    fn parses_symmetric_determinant() {
        let vars = VarSet::new(["y11", "y12", "y22"]).unwrap();
        let f = parse("y11*y22 - y12^2", fp(3), &vars).unwrap();
        assert_eq!(f.num_terms(), 2);
        assert_eq!(f.coeff(&crate::poly::Monomial::new(vec![1, 0, 1])), 1);
        assert_eq!(f.coeff(&crate::poly::Monomial::new(vec![0, 2, 0])), 2);
    }

    #[test]
    fn squares_binomials_char_2() {
        let vars = VarSet::new(["x", "y"]).unwrap();
        let f = parse("(x+y)^2", fp(2), &vars).unwrap();
        assert_eq!(print(&f), "x^2 + y^2");
    }

    #[test]
    fn coefficients_reduce_on_parse() {
        let vars = VarSet::new(["x"]).unwrap();
        let f = parse("3*x", fp(3), &vars).unwrap();
        assert!(f.is_zero());
        assert_eq!(print(&f), "0");
    }

    #[test]
    fn syntax_error_carries_position() {
        let vars = VarSet::new(["x"]).unwrap();
        match parse("x + * 2", fp(3), &vars) {
            Err(ParseError::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_variable_with_declared_set() {
        let vars = VarSet::new(["x"]).unwrap();
        match parse("x + zz", fp(3), &vars) {
            Err(ParseError::UnknownVariable { name, .. }) => assert_eq!(name, "zz"),
            other => panic!("expected unknown-variable error, got {other:?}"),
        }
    }

    #[test]
    fn infer_collects_by_first_appearance() {
        let (f, vars) = parse_infer("b*a + c^2", fp(5)).unwrap();
        assert_eq!(vars.names(), &["b", "a", "c"]);
        assert_eq!(f.num_terms(), 2);
    }

    #[test]
    fn printing_conventions() {
        let vars = VarSet::new(["x", "y"]).unwrap();
        let f = parse("2*x^2 + x*y + y + 1", fp(5), &vars).unwrap();
        assert_eq!(print(&f), "2*x^2 + x*y + y + 1");
        let c = parse("4", fp(5), &vars).unwrap();
        assert_eq!(print(&c), "4");
    }

    #[test]
    fn negative_coefficients_print_canonically() {
        let vars = VarSet::new(["y11", "y12", "y22"]).unwrap();
        let f = parse("y11*y22 - y12^2", fp(3), &vars).unwrap();
        // y12^2 beats y11*y22 in grevlex
        assert_eq!(print(&f), "2*y12^2 + y11*y22");
        assert_eq!(parse(&print(&f), fp(3), &vars).unwrap(), f);
    }

    #[test]
    fn leading_sign_accepted() {
        let vars = VarSet::new(["x"]).unwrap();
        let f = parse("-x + x", fp(3), &vars).unwrap();
        assert!(f.is_zero());
    }
}
