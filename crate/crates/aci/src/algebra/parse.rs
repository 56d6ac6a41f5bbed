//! A small infix reader for polynomials: `+ - * / ^`, parentheses, integer
//! literals, the imaginary unit `i` and named constants. Division is only
//! allowed by constants.

use std::collections::BTreeMap;

use super::field::{Field, Qi};
use super::poly::MultiPoly;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut k = 0;
    while k < cs.len() {
        let c = cs[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let st = k;
            while k < cs.len() && cs[k].is_ascii_digit() {
                k += 1;
            }
            let t: String = cs[st..k].iter().collect();
            out.push(Tok::Num(t.parse().map_err(|_| Error::Parse(format!("integer literal {t}")))?));
        } else if c.is_alphabetic() || c == '_' {
            let st = k;
            while k < cs.len() && (cs[k].is_alphanumeric() || cs[k] == '_') {
                k += 1;
            }
            out.push(Tok::Ident(cs[st..k].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            k += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character '{c}' in '{s}'")));
        }
    }
    Ok(out)
}

struct Reader<'a> {
    toks: Vec<Tok>,
    pos: usize,
    vars: &'a [String],
    consts: &'a BTreeMap<String, Qi>,
}

impl Reader<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<MultiPoly<Qi>> {
        let mut acc = if self.eat('-') { -self.product()? } else {
            self.eat('+');
            self.product()?
        };
        loop {
            if self.eat('+') {
                acc = &acc + &self.product()?;
            } else if self.eat('-') {
                acc = &acc - &self.product()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<MultiPoly<Qi>> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.power()?;
            } else if self.eat('/') {
                let d = self.power()?;
                let c = d.as_constant().filter(|c| !c.is_zero()).ok_or_else(|| Error::Parse("division by a non-constant".into()))?;
                acc = acc.scale(&c.inv());
            } else if matches!(self.peek(), Some(Tok::Ident(_)) | Some(Tok::Num(_)) | Some(Tok::Op('('))) {
                // juxtaposition, as in `2q1` or `3i`
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<MultiPoly<Qi>> {
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(n)) if !neg => {
                    self.pos += 1;
                    Ok(base.pow(n as u32))
                }
                _ => Err(Error::Parse("exponent must be a non-negative integer".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MultiPoly<Qi>> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(MultiPoly::constant(self.vars, Qi::from_i64(n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if let Some(j) = self.vars.iter().position(|v| *v == name) {
                    Ok(MultiPoly::var(self.vars, j))
                } else if let Some(c) = self.consts.get(&name) {
                    Ok(MultiPoly::constant(self.vars, c.clone()))
                } else if name == "i" {
                    Ok(MultiPoly::constant(self.vars, Qi::i()))
                } else {
                    Err(Error::Parse(format!("unknown symbol '{name}'")))
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let p = self.sum()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(p)
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(-self.power()?)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Reads `expr` as a polynomial in `vars`; other identifiers are looked up in
/// `consts`.
pub fn parse_poly(expr: &str, vars: &[String], consts: &BTreeMap<String, Qi>) -> Result<MultiPoly<Qi>> {
    let mut r = Reader { toks: lex(expr)?, pos: 0, vars, consts };
    let p = r.sum()?;
    if r.pos != r.toks.len() {
        return Err(Error::Parse(format!("trailing input in '{expr}'")));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::names;

    #[test]
    fn reads_products_powers_and_constants() {
        let v = names(&["x", "y"]);
        let mut c = BTreeMap::new();
        c.insert("A".to_string(), Qi::ratio(1, 2));
        let p = parse_poly("-A*x^2 + 2x y - (y - 1)/4 + 3i", &v, &c).unwrap();
        assert_eq!(p.coeff(&[2, 0]), Qi::ratio(-1, 2));
        assert_eq!(p.coeff(&[1, 1]), Qi::from_i64(2));
        assert_eq!(p.coeff(&[0, 1]), Qi::ratio(-1, 4));
        assert_eq!(p.coeff(&[0, 0]), Qi::gaussian((1, 4), (3, 1)));
    }

    #[test]
    fn rejects_division_by_variable() {
        let v = names(&["x"]);
        assert!(parse_poly("1/x", &v, &BTreeMap::new()).is_err());
    }
}
