//! Text syntax for elements of `B`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | atom ('^' nat)?
//! atom   := 't' | 'z'nat | 'a'nat | 'y'nat | 'w'nat | nat | '(' expr ')'
//! ```
//!
//! `y_i = (z_i - a_i)^2` and `w_i = t^{n_i+1}(z_i - a_i)`. The right operand of
//! `/` must be an element of `A` dividing every coefficient, so `1/2` and
//! `(1)/(1 + t)` are accepted and the output of `Display` parses back.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::base_ring::{AElem, BaseRing};
use crate::error::{Error, Result};
use crate::ring_b::{BElem, RingB};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    Z,
    A,
    Y,
    W,
}

impl Var {
    fn letter(self) -> char {
        match self {
            Var::Z => 'z',
            Var::A => 'a',
            Var::Y => 'y',
            Var::W => 'w',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    T,
    Indexed { var: Var, index: usize, pos: usize },
    Int(BigInt),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, u32),
}

struct Parser<'s> {
    src: &'s [u8],
    pos: usize,
}

impl<'s> Parser<'s> {
    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, message: message.into() })
    }

    fn digits(&mut self) -> Option<&'s str> {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?), at);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let Some(d) = self.digits() else {
                return self.error("expected a natural number after '^'");
            };
            let Ok(e) = d.parse::<u32>() else {
                return self.error(format!("exponent {d} is too large"));
            };
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let Some(c) = self.peek() else {
            return self.error("unexpected end of input");
        };
        let start = self.pos;
        match c {
            b'(' => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.error("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            b't' => {
                self.pos += 1;
                Ok(Expr::T)
            }
            b'z' | b'a' | b'y' | b'w' => {
                self.pos += 1;
                let var = match c {
                    b'z' => Var::Z,
                    b'a' => Var::A,
                    b'y' => Var::Y,
                    _ => Var::W,
                };
                let Some(d) = self.digits() else {
                    return self.error(format!("expected an index after '{}'", c as char));
                };
                let Ok(index) = d.parse::<usize>() else {
                    return Err(Error::Syntax { pos: start, message: format!("index {d} is too large") });
                };
                Ok(Expr::Indexed { var, index, pos: start })
            }
            b'0'..=b'9' => {
                let d = self.digits().expect("starts with a digit");
                Ok(Expr::Int(d.parse().expect("decimal digits")))
            }
            other => self.error(format!("unexpected character '{}'", other as char)),
        }
    }
}

/// Parse without evaluating.
pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.error("unexpected trailing input");
    }
    Ok(e)
}

/// Parse and evaluate to an element of `B`.
pub fn parse_expression(ring: &RingB<'_>, text: &str) -> Result<BElem> {
    eval_b(ring, &parse(text)?)
}

/// Parse an expression built from `t` and integers only, as an element of `A`.
pub fn parse_aelem(base: BaseRing, text: &str) -> Result<AElem> {
    eval_a(base, &parse(text)?)
}

fn divide_b(ring: &RingB<'_>, num: &BElem, den: &BElem, pos: usize) -> Result<BElem> {
    let (Some(0), Some(d)) = (den.degree(), den.coeff(0)) else {
        return Err(Error::Syntax { pos, message: format!("divisor {den} is not an element of A") });
    };
    let coeffs = num
        .coeffs()
        .iter()
        .map(|c| c.checked_div(d))
        .collect::<Result<Vec<_>>>()
        .map_err(|_| Error::Syntax { pos, message: format!("{num} is not divisible by {d} in B") })?;
    ring.from_coeffs(num.level(), coeffs)
}

pub fn eval_b(ring: &RingB<'_>, e: &Expr) -> Result<BElem> {
    let cons = ring.construction();
    Ok(match e {
        Expr::T => ring.constant(ring.base().t()),
        Expr::Int(n) => ring.constant(ring.base().from_rational(&BigRational::from_integer(n.clone()))?),
        Expr::Indexed { var, index, .. } => {
            let max = cons.top_level();
            if *index > max {
                return Err(Error::UnknownIndex { name: var.letter(), index: *index, max });
            }
            match var {
                Var::Z => ring.z(*index)?,
                Var::A => ring.constant(cons.a(*index).clone()),
                Var::Y => {
                    let u = ring.z_minus_a(*index)?;
                    ring.mul(&u, &u)
                }
                Var::W => ring.mul_t_pow(&ring.z_minus_a(*index)?, cons.n(*index) + 1),
            }
        }
        Expr::Neg(x) => ring.neg(&eval_b(ring, x)?),
        Expr::Add(x, y) => ring.add(&eval_b(ring, x)?, &eval_b(ring, y)?),
        Expr::Sub(x, y) => ring.sub(&eval_b(ring, x)?, &eval_b(ring, y)?),
        Expr::Mul(x, y) => ring.mul(&eval_b(ring, x)?, &eval_b(ring, y)?),
        Expr::Div(x, y, pos) => divide_b(ring, &eval_b(ring, x)?, &eval_b(ring, y)?, *pos)?,
        Expr::Pow(x, k) => ring.pow(&eval_b(ring, x)?, *k),
    })
}

pub fn eval_a(base: BaseRing, e: &Expr) -> Result<AElem> {
    Ok(match e {
        Expr::T => base.t(),
        Expr::Int(n) => base.from_rational(&BigRational::from_integer(n.clone()))?,
        Expr::Indexed { var, pos, .. } => {
            return Err(Error::Syntax {
                pos: *pos,
                message: format!("'{}' is not allowed in an element of A", var.letter()),
            })
        }
        Expr::Neg(x) => -eval_a(base, x)?,
        Expr::Add(x, y) => &eval_a(base, x)? + &eval_a(base, y)?,
        Expr::Sub(x, y) => &eval_a(base, x)? - &eval_a(base, y)?,
        Expr::Mul(x, y) => &eval_a(base, x)? * &eval_a(base, y)?,
        Expr::Div(x, y, pos) => {
            let (num, den) = (eval_a(base, x)?, eval_a(base, y)?);
            num.checked_div(&den)
                .map_err(|_| Error::Syntax { pos: *pos, message: format!("{num} is not divisible by {den} in A") })?
        }
        Expr::Pow(x, k) => eval_a(base, x)?.pow(*k),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_ring::ResidueField;
    use crate::construction::Construction;

    const Q: BaseRing = BaseRing::Localized(ResidueField::Rationals);

    #[test]
    fn grammar_examples() {
        let c = Construction::minimal_ones(Q, 4).unwrap();
        let b = RingB::new(&c);
        let w0 = parse_expression(&b, "t*(z0 - a0)").unwrap();
        assert_eq!(w0.coeffs(), &[-Q.t(), Q.t()]);
        assert!(b.equal(&w0, &parse_expression(&b, "w0").unwrap()));
        let f = parse_expression(&b, "y1^2 + 3").unwrap();
        assert_eq!((f.level(), f.degree()), (1, Some(4)));
        assert_eq!(
            parse_expression(&b, "z9"),
            Err(Error::UnknownIndex { name: 'z', index: 9, max: 5 })
        );
    }

    #[test]
    fn syntax_errors_report_positions() {
        let c = Construction::minimal_ones(Q, 4).unwrap();
        let b = RingB::new(&c);
        assert!(matches!(parse_expression(&b, "t +"), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse_expression(&b, "(t"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_expression(&b, "t ^ x"), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse_expression(&b, "t $"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_expression(&b, "z0 / t"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_expression(&b, "1 / z0"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn division_and_negation() {
        let c = Construction::minimal_ones(Q, 4).unwrap();
        let b = RingB::new(&c);
        let half = parse_expression(&b, "-1/2 * z0").unwrap();
        assert_eq!(half.coeff(1).unwrap().to_string(), "-1/2");
        assert_eq!(parse_aelem(Q, "t^3/t").unwrap(), Q.t_pow(2));
        let padic = BaseRing::PAdic(5);
        assert_eq!(parse_aelem(padic, "50").unwrap().valuation().finite(), Some(2));
        assert!(parse_aelem(padic, "1/5").is_err());
        assert!(parse_aelem(Q, "z0").is_err());
    }

    #[test]
    fn display_round_trips() {
        let c = Construction::minimal_ones(Q, 4).unwrap();
        let b = RingB::new(&c);
        for text in ["(1 + t)/(1 - t) * z2^3 - 7*t^5*z2", "y0*w0 - 3", "1/(1 + t^2)", "0", "-z1"] {
            let f = parse_expression(&b, text).unwrap();
            let again = parse_expression(&b, &f.to_string()).unwrap();
            assert_eq!(f, again, "{text} -> {f}");
        }
    }
}
