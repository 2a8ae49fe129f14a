//! Text syntax for scalars.
//!
//! Grammar: sums and products of numbers, parentheses, `sqrt(q)`, integer
//! powers `^n`, and `root(poly; [lo, hi])` for an algebraic real given by a
//! polynomial in `x`, `λ`/`lambda` or `E` plus an isolating interval. A
//! trailing `≈ decimal` after a root is ignored, so printed values parse
//! back.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{AlgebraicReal, QPoly, Scalar};
use crate::error::{Error, Result};

/// How decimal literals are read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    /// Decimal literals make the whole expression a float.
    #[default]
    Auto,
    /// Decimal literals must be dyadic and are read exactly.
    Exact,
    /// The result is demoted to a float.
    Float,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Dec(String),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit()
            || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()))
        {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let text: String = chars[start..i].iter().collect();
            if text.chars().all(|c| c.is_ascii_digit()) {
                out.push(Tok::Int(
                    text.parse()
                        .map_err(|_| Error::Parse(format!("bad integer {text}")))?,
                ));
            } else {
                out.push(Tok::Dec(text));
            }
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()[],;≈~".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Node {
    Int(BigInt),
    Dec(String),
    Var,
    Neg(Box<Node>),
    Bin(char, Box<Node>, Box<Node>),
    Pow(Box<Node>, u32),
    Sqrt(Box<Node>),
    Root(Box<Node>, Box<Node>, Box<Node>),
}

impl Node {
    fn has_decimal(&self) -> bool {
        match self {
            Node::Dec(_) => true,
            Node::Int(_) | Node::Var => false,
            Node::Neg(a) | Node::Pow(a, _) | Node::Sqrt(a) => a.has_decimal(),
            Node::Bin(_, a, b) => a.has_decimal() || b.has_decimal(),
            Node::Root(..) => false,
        }
    }
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::Parse(format!("expected '{c}'")))
        }
    }

    fn expr(&mut self) -> Result<Node> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Node::Bin('+', Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Node::Bin('-', Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Node> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Node::Bin('*', Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Node::Bin('/', Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Node> {
        if self.eat('-') {
            return Ok(Node::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Int(n)) => {
                    self.pos += 1;
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| Error::Parse("exponent too large".into()))?;
                    return Ok(Node::Pow(Box::new(base), e));
                }
                _ => {
                    return Err(Error::Parse(
                        "exponent must be a nonnegative integer".into(),
                    ))
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node> {
        let tok = self
            .peek()
            .cloned()
            .ok_or_else(|| Error::Parse("unexpected end of input".into()))?;
        self.pos += 1;
        match tok {
            Tok::Int(n) => Ok(Node::Int(n)),
            Tok::Dec(d) => Ok(Node::Dec(d)),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => match name.as_str() {
                "sqrt" => {
                    self.expect('(')?;
                    let e = self.expr()?;
                    self.expect(')')?;
                    Ok(Node::Sqrt(Box::new(e)))
                }
                "root" => {
                    self.expect('(')?;
                    let p = self.expr()?;
                    self.expect(';')?;
                    self.expect('[')?;
                    let lo = self.expr()?;
                    self.expect(',')?;
                    let hi = self.expr()?;
                    self.expect(']')?;
                    self.expect(')')?;
                    if self.eat('≈') || self.eat('~') {
                        // Printed approximation; informational only.
                        self.eat('-');
                        match self.peek() {
                            Some(Tok::Dec(_)) | Some(Tok::Int(_)) => self.pos += 1,
                            _ => return Err(Error::Parse("expected a decimal after '≈'".into())),
                        }
                    }
                    Ok(Node::Root(Box::new(p), Box::new(lo), Box::new(hi)))
                }
                "x" | "λ" | "lambda" | "E" => Ok(Node::Var),
                other => Err(Error::Parse(format!("unknown name '{other}'"))),
            },
            Tok::Sym(c) => Err(Error::Parse(format!("unexpected '{c}'"))),
        }
    }
}

fn parse_tree(s: &str) -> Result<Node> {
    let mut p = Parser {
        toks: tokenize(s)?,
        pos: 0,
    };
    let node = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in '{s}'")));
    }
    Ok(node)
}

/// Exact value of a decimal literal, if it is dyadic.
fn dyadic(text: &str) -> Result<BigRational> {
    let (mant, exp) = match text.find(['e', 'E']) {
        Some(i) => (
            &text[..i],
            text[i + 1..]
                .parse::<i32>()
                .map_err(|_| Error::Parse(format!("bad exponent in {text}")))?,
        ),
        None => (text, 0),
    };
    let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant, ""));
    let digits = format!("{int_part}{frac_part}");
    let n: BigInt = digits
        .parse()
        .map_err(|_| Error::Parse(format!("bad number {text}")))?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let q = if scale >= 0 {
        BigRational::from_integer(n * ten.pow(scale as u32))
    } else {
        BigRational::new(n, ten.pow((-scale) as u32))
    };
    let mut den = q.denom().clone();
    let two = BigInt::from(2);
    while (&den % &two).is_zero() {
        den /= &two;
    }
    if !den.is_one() {
        return Err(Error::Parse(format!(
            "{text} is not exactly representable; use a fraction"
        )));
    }
    Ok(q)
}

fn eval_float(n: &Node) -> Result<f64> {
    Ok(match n {
        Node::Int(i) => i.to_string().parse::<f64>().unwrap_or(f64::INFINITY),
        Node::Dec(d) => d
            .parse::<f64>()
            .map_err(|_| Error::Parse(format!("bad number {d}")))?,
        Node::Var => return Err(Error::Parse("unexpected variable".into())),
        Node::Neg(a) => -eval_float(a)?,
        Node::Bin(op, a, b) => {
            let (x, y) = (eval_float(a)?, eval_float(b)?);
            match op {
                '+' => x + y,
                '-' => x - y,
                '*' => x * y,
                _ => x / y,
            }
        }
        Node::Pow(a, e) => eval_float(a)?.powi(*e as i32),
        Node::Sqrt(a) => eval_float(a)?.sqrt(),
        Node::Root(..) => eval_exact(n)?.to_f64(),
    })
}

fn eval_exact(n: &Node) -> Result<Scalar> {
    Ok(match n {
        Node::Int(i) => Scalar::Rational(BigRational::from_integer(i.clone())),
        Node::Dec(d) => Scalar::Rational(dyadic(d)?),
        Node::Var => return Err(Error::Parse("unexpected variable".into())),
        Node::Neg(a) => -eval_exact(a)?,
        Node::Bin(op, a, b) => {
            let (x, y) = (eval_exact(a)?, eval_exact(b)?);
            match op {
                '+' => &x + &y,
                '-' => &x - &y,
                '*' => &x * &y,
                _ => x.checked_div(&y)?,
            }
        }
        Node::Pow(a, e) => eval_exact(a)?.pow(*e),
        Node::Sqrt(a) => eval_exact(a)?.sqrt()?,
        Node::Root(p, lo, hi) => {
            let poly = eval_poly(p)?;
            let lo = rational_of(lo)?;
            let hi = rational_of(hi)?;
            let r = AlgebraicReal::from_poly_interval(&poly, lo, hi)
                .ok_or_else(|| Error::Parse("interval does not isolate exactly one root".into()))?;
            Scalar::from_algebraic_real(r)
        }
    })
}

fn rational_of(n: &Node) -> Result<BigRational> {
    match eval_exact(n)? {
        Scalar::Rational(q) => Ok(q),
        _ => Err(Error::Parse("interval endpoints must be rational".into())),
    }
}

fn eval_poly(n: &Node) -> Result<QPoly> {
    Ok(match n {
        Node::Var => QPoly::x(),
        Node::Neg(a) => -eval_poly(a)?,
        Node::Bin(op, a, b) => {
            let (x, y) = (eval_poly(a)?, eval_poly(b)?);
            match op {
                '+' => &x + &y,
                '-' => &x - &y,
                '*' => &x * &y,
                _ => {
                    if !y.is_constant() || y.is_zero() {
                        return Err(Error::Parse("polynomial division by a non-constant".into()));
                    }
                    x.scale(&y.coeff(0).recip())
                }
            }
        }
        Node::Pow(a, e) => eval_poly(a)?.pow(*e),
        other => QPoly::constant(rational_of(other)?),
    })
}

pub fn parse_scalar(s: &str, mode: Mode) -> Result<Scalar> {
    let tree = parse_tree(s)?;
    match mode {
        Mode::Float => Ok(Scalar::Float(eval_float(&tree)?)),
        Mode::Auto if tree.has_decimal() => Ok(Scalar::Float(eval_float(&tree)?)),
        _ => eval_exact(&tree),
    }
}

/// Parses a polynomial in `x`, `λ` or `E` with rational coefficients.
pub fn parse_qpoly(s: &str) -> Result<QPoly> {
    eval_poly(&parse_tree(s)?)
}

/// Splits on commas outside parentheses and brackets.
pub fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

pub fn parse_list(s: &str, mode: Mode) -> Result<Vec<Scalar>> {
    split_top_level(s)
        .into_iter()
        .map(|t| parse_scalar(t, mode))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples_from_the_interface() {
        assert_eq!(parse_scalar("3", Mode::Auto).unwrap(), Scalar::int(3));
        assert_eq!(
            parse_scalar("-5/7", Mode::Auto).unwrap(),
            Scalar::ratio(-5, 7)
        );
        let a = parse_scalar("1/2*sqrt(2)", Mode::Auto).unwrap();
        let b = parse_scalar("sqrt(2)/2", Mode::Auto).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "1/2*sqrt(2)");
        assert_eq!(
            parse_scalar("0.25", Mode::Auto).unwrap(),
            Scalar::Float(0.25)
        );
        assert_eq!(
            parse_scalar("0.25", Mode::Exact).unwrap(),
            Scalar::ratio(1, 4)
        );
        assert!(parse_scalar("0.1", Mode::Exact).is_err());
        assert_eq!(
            parse_scalar("1/4", Mode::Float).unwrap(),
            Scalar::Float(0.25)
        );
    }

    #[test]
    fn printed_values_parse_back() {
        let r = parse_scalar("root(x^3 - 2; [1, 2])", Mode::Auto).unwrap();
        let text = r.to_string();
        assert!(text.starts_with("root(x^3 - 2; ["), "{text}");
        assert_eq!(parse_scalar(&text, Mode::Auto).unwrap(), r);
        let s = parse_scalar("1-sqrt(2)", Mode::Auto).unwrap();
        assert_eq!(parse_scalar(&s.to_string(), Mode::Auto).unwrap(), s);
        let q = parse_scalar("root(2*λ^2 - 1; [0, 1])", Mode::Auto).unwrap();
        assert_eq!(q, parse_scalar("sqrt(2)/2", Mode::Auto).unwrap());
    }

    #[test]
    fn list_splitting_respects_brackets() {
        let v = parse_list("1, root(x^2 - 2; [1, 2]), -1/2", Mode::Auto).unwrap();
        assert_eq!(v.len(), 3);
        assert!(parse_scalar("1 +", Mode::Auto).is_err());
        assert!(parse_scalar("root(x^2 - 1; [-2, 2])", Mode::Auto).is_err());
    }
}
