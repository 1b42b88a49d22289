//! A small recursive-descent parser for polynomial expressions.
//!
//! Grammar: integers, variable names, `+ - * / ^` and parentheses.
//! Exponents are integer literals (negative exponents invert). Expressions
//! are parsed once into an [`Expr`] and evaluated in any [`Field`] given a
//! variable binding.

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser { src, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

/// Parse and evaluate in one step.
pub fn eval_str<F: Field>(
    field: &F,
    src: &str,
    vars: &dyn Fn(&str) -> Option<F::Elem>,
) -> Result<F::Elem> {
    parse(src)?.eval(field, vars)
}

impl Expr {
    pub fn eval<F: Field>(
        &self,
        field: &F,
        vars: &dyn Fn(&str) -> Option<F::Elem>,
    ) -> Result<F::Elem> {
        Ok(match self {
            Expr::Int(n) => field.from_i64(*n),
            Expr::Var(v) => vars(v).ok_or_else(|| Error::UnknownVariable(v.clone()))?,
            Expr::Neg(a) => field.neg(&a.eval(field, vars)?),
            Expr::Add(a, b) => field.add(&a.eval(field, vars)?, &b.eval(field, vars)?),
            Expr::Sub(a, b) => field.sub(&a.eval(field, vars)?, &b.eval(field, vars)?),
            Expr::Mul(a, b) => field.mul(&a.eval(field, vars)?, &b.eval(field, vars)?),
            Expr::Div(a, b) => {
                let d = b.eval(field, vars)?;
                field
                    .div(&a.eval(field, vars)?, &d)
                    .ok_or(Error::DivisionByZero)?
            }
            Expr::Pow(a, n) => {
                let base = a.eval(field, vars)?;
                let pw = field.pow(&base, n.unsigned_abs());
                if *n < 0 {
                    field.inv(&pw).ok_or(Error::DivisionByZero)?
                } else {
                    pw
                }
            }
        })
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            offset: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            let n = self.integer()?;
            return Ok(Expr::Pow(Box::new(base), if neg { -n } else { n }));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| Error::Parse {
                offset: start,
                msg: "integer literal out of range".into(),
            })
    }

    fn atom(&mut self) -> Result<Expr> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Expr::Int(self.integer()?)),
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self
                    .peek()
                    .is_some_and(|c| c.is_alphanumeric() || c == '_')
                {
                    self.pos += self.peek().unwrap().len_utf8();
                }
                Ok(Expr::Var(self.src[start..self.pos].to_string()))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::FieldDesc;
    use crate::ratfunc::RatFuncField;

    #[test]
    fn parses_and_evaluates_over_f3y() {
        let k = FieldDesc::rational_prime(3, "y").unwrap();
        let y = k.transcendental().unwrap();
        let vars = |v: &str| (v == "y").then(|| y.clone());
        let f = eval_str(&k, "(y + 1)^3 - y^3", &vars).unwrap();
        assert_eq!(f, k.one());
        let g = eval_str(&k, "2*y^2 + y/y - -1", &vars).unwrap();
        assert_eq!(g, k.add(&k.mul(&k.from_i64(2), &k.pow(&y, 2)), &k.from_i64(2)));
        let h = eval_str(&k, "y^-2 * y^2", &vars).unwrap();
        assert_eq!(h, k.one());
    }

    #[test]
    fn format_round_trips_through_the_parser() {
        let k = FieldDesc::rational_prime(3, "y").unwrap();
        let kx = RatFuncField::new(k.clone(), "x");
        let y = k.transcendental().unwrap();
        let vars = |v: &str| match v {
            "x" => Some(kx.var()),
            "y" => Some(kx.from_base(y.clone())),
            _ => None,
        };
        for src in ["x^2*y + 2", "(x + y)/(x^2 + 2*y)", "(y^2 + 1)/y * x^3 + x/(y + 1)"] {
            let a = eval_str(&kx, src, &vars).unwrap();
            let back = eval_str(&kx, &kx.format(&a), &vars).unwrap();
            assert_eq!(a, back, "{src} -> {}", kx.format(&a));
        }
    }

    #[test]
    fn errors_carry_offsets() {
        assert_eq!(
            parse("y + * 2").unwrap_err(),
            Error::Parse { offset: 4, msg: "unexpected character".into() }
        );
        assert!(matches!(parse("(y"), Err(Error::Parse { .. })));
        let k = FieldDesc::finite_prime(3).unwrap();
        assert_eq!(
            eval_str(&k, "z", &|_| None).unwrap_err(),
            Error::UnknownVariable("z".into())
        );
        assert_eq!(eval_str(&k, "1/3", &|_| None).unwrap_err(), Error::DivisionByZero);
    }
}
