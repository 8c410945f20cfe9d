//! Expression parser for elements of the skew Laurent ring and of GWAs.
//!
//! `*` is noncommutative and left-associative; there is no implicit
//! multiplication. Precedence is `^` over `*` over `+`/`-`.

use std::sync::Arc;

use crate::cuspops::{delta_at, w, CuspShape};
use crate::error::{Error, Result};
use crate::exactpoly::{parse_rational, BasePoly, Rational};
use crate::gwa::{GwaElement, GwaPresentation};
use crate::skewlaurent::LaurentOp;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            // a/b with no spaces is a single rational literal
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            let s: String = chars[start..i].iter().collect();
            let q = parse_rational(&s).ok_or_else(|| Error::parse(start, format!("bad number {s}")))?;
            out.push((start, Tok::Num(q)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*^(),@".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::parse(i, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Rational),
    /// `h`, `x3`, `X`, ...: letters plus an optional factor index.
    Var {
        name: String,
        index: Option<usize>,
        pos: usize,
    },
    /// `delta(i@k)`, `w(-i)`, `d(i)`.
    Call {
        name: String,
        arg: i64,
        at: Option<usize>,
        pos: usize,
    },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64, usize),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::parse(self.pos(), format!("expected '{c}'")))
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
        while self.eat('*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.primary()?;
        if self.eat('^') {
            let pos = self.pos();
            let e = self.signed_int()?;
            return Ok(Expr::Pow(Box::new(base), e, pos));
        }
        Ok(base)
    }

    fn signed_int(&mut self) -> Result<i64> {
        let neg = self.eat('-');
        let pos = self.pos();
        match self.peek() {
            Some(Tok::Num(q)) if q.is_integer() => {
                let v: i64 = q
                    .to_integer()
                    .try_into()
                    .map_err(|_| Error::parse(pos, "integer too large"))?;
                self.at += 1;
                Ok(if neg { -v } else { v })
            }
            _ => Err(Error::parse(pos, "expected an integer")),
        }
    }

    fn primary(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(q)) => {
                self.at += 1;
                Ok(Expr::Num(q))
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                if self.eat('(') {
                    let arg = self.signed_int()?;
                    let at = if self.eat('@') {
                        let p = self.pos();
                        let k = self.signed_int()?;
                        if k < 1 {
                            return Err(Error::parse(p, "factor selector must be >= 1"));
                        }
                        Some(k as usize)
                    } else {
                        None
                    };
                    self.expect(')')?;
                    return Ok(Expr::Call { name, arg, at, pos });
                }
                let split = name.find(|c: char| c.is_ascii_digit()).unwrap_or(name.len());
                let (letters, digits) = name.split_at(split);
                let index = if digits.is_empty() {
                    None
                } else {
                    match digits.parse::<usize>() {
                        Ok(k) if k >= 1 => Some(k),
                        _ => return Err(Error::UnknownGenerator(name.clone())),
                    }
                };
                Ok(Expr::Var {
                    name: letters.to_string(),
                    index,
                    pos,
                })
            }
            Some(Tok::Sym(c)) => Err(Error::parse(pos, format!("unexpected '{c}'"))),
            None => Err(Error::parse(pos, "unexpected end of input")),
        }
    }
}

pub fn parse(text: &str) -> Result<Expr> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(Error::parse(0, "empty expression"));
    }
    let mut p = Parser {
        toks,
        at: 0,
        end: text.chars().count(),
    };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return Err(Error::parse(p.pos(), "trailing input"));
    }
    Ok(e)
}

/// Which algebra `X` and `Y` refer to when evaluating into the skew Laurent ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algebra {
    DA,
    BbA,
    CalA,
    Weyl,
}

impl Algebra {
    pub fn name(&self) -> &'static str {
        match self {
            Algebra::DA => "DA",
            Algebra::BbA => "bbA",
            Algebra::CalA => "calA",
            Algebra::Weyl => "weyl",
        }
    }

    pub fn presentation(&self, shape: &CuspShape) -> Result<GwaPresentation> {
        match self {
            Algebra::DA => Err(Error::InvalidPresentation("DA is not presented as a GWA".into())),
            Algebra::BbA => Ok(GwaPresentation::bb_a(shape.rank_one()?)),
            Algebra::CalA => Ok(GwaPresentation::cal_a(shape.rank_one()?)),
            Algebra::Weyl => Ok(GwaPresentation::weyl(shape.rank())),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LaurentContext {
    pub shape: CuspShape,
    pub algebra: Algebra,
}

impl LaurentContext {
    pub fn new(shape: CuspShape, algebra: Algebra) -> Self {
        LaurentContext { shape, algebra }
    }

    fn nvars(&self) -> usize {
        self.shape.rank()
    }

    fn factor(&self, index: Option<usize>, name: &str) -> Result<usize> {
        let k = index.unwrap_or(1);
        if k > self.nvars() {
            return Err(Error::UnknownGenerator(format!("{name}{k}")));
        }
        Ok(k - 1)
    }

    fn gwa_image(&self, name: &str, k: usize) -> Result<LaurentOp> {
        let n = self.nvars();
        let unknown = || Error::UnknownGenerator(name.to_string());
        let m = || self.shape.m(k) as i64;
        let op = match (self.algebra, name) {
            (Algebra::Weyl, "X") => LaurentOp::x(n, k),
            (Algebra::Weyl, "Y") => LaurentOp::partial(n, k),
            (Algebra::CalA, "X") => LaurentOp::x_pow(n, k, m()),
            (Algebra::CalA, "Y") => delta_at(&self.shape, k, -m())?.into_op(),
            (Algebra::BbA, "X") => delta_at(&self.shape, k, 1)?.into_op(),
            (Algebra::BbA, "Y") => delta_at(&self.shape, k, -1)?.into_op(),
            _ => return Err(unknown()),
        };
        Ok(op)
    }

    pub fn eval(&self, e: &Expr) -> Result<LaurentOp> {
        let n = self.nvars();
        match e {
            Expr::Num(q) => Ok(LaurentOp::from_rational(n, q.clone())),
            Expr::Var { name, index, .. } => {
                let k = self.factor(*index, name)?;
                match name.as_str() {
                    "h" => Ok(LaurentOp::h(n, k)),
                    "x" => Ok(LaurentOp::x(n, k)),
                    "d" => Ok(LaurentOp::partial(n, k)),
                    "X" | "Y" => self.gwa_image(name, k),
                    _ => Err(Error::UnknownGenerator(name.clone())),
                }
            }
            Expr::Call { name, arg, at, .. } => {
                let k = self.factor(*at, name)?;
                match name.as_str() {
                    "delta" => Ok(delta_at(&self.shape, k, *arg)?.into_op()),
                    "d" if at.is_none() && *arg >= 1 => {
                        Ok(LaurentOp::partial(n, self.factor(Some(*arg as usize), "d")?))
                    }
                    "w" if n == 1 => w(self.shape.m(0), *arg),
                    _ => Err(Error::UnknownGenerator(format!("{name}(..)"))),
                }
            }
            Expr::Neg(a) => Ok(-&self.eval(a)?),
            Expr::Add(a, b) => self.eval(a)?.checked_add(&self.eval(b)?),
            Expr::Sub(a, b) => self.eval(a)?.checked_sub(&self.eval(b)?),
            Expr::Mul(a, b) => self.eval(a)?.checked_mul(&self.eval(b)?),
            Expr::Pow(base, exp, pos) => {
                if *exp >= 0 {
                    return Ok(self.eval(base)?.pow(*exp as u32));
                }
                match base.as_ref() {
                    Expr::Var { name, index, .. } if name == "x" => {
                        Ok(LaurentOp::x_pow(n, self.factor(*index, name)?, *exp))
                    }
                    _ => Err(Error::parse(*pos, "negative exponent on a non-invertible symbol")),
                }
            }
        }
    }

    pub fn parse(&self, text: &str) -> Result<LaurentOp> {
        self.eval(&parse(text)?)
    }
}

/// Evaluates into a GWA: numbers, `h_i`, `X_i`, `Y_i`.
pub fn eval_gwa(e: &Expr, pres: &Arc<GwaPresentation>) -> Result<GwaElement> {
    let n = pres.nvars();
    let factor = |index: &Option<usize>, name: &str| -> Result<usize> {
        let k = index.unwrap_or(1);
        if k > n {
            return Err(Error::UnknownGenerator(format!("{name}{k}")));
        }
        Ok(k - 1)
    };
    match e {
        Expr::Num(q) => Ok(GwaElement::from_poly(pres, BasePoly::constant(n, q.clone()))),
        Expr::Var { name, index, .. } => {
            let k = factor(index, name)?;
            match name.as_str() {
                "h" => Ok(GwaElement::h(pres, k)),
                "X" => Ok(GwaElement::x(pres, k)),
                "Y" => Ok(GwaElement::y(pres, k)),
                _ => Err(Error::UnknownGenerator(name.clone())),
            }
        }
        Expr::Call { name, .. } => Err(Error::UnknownGenerator(format!("{name}(..)"))),
        Expr::Neg(a) => Ok(eval_gwa(a, pres)?.neg()),
        Expr::Add(a, b) => eval_gwa(a, pres)?.checked_add(&eval_gwa(b, pres)?),
        Expr::Sub(a, b) => eval_gwa(a, pres)?.checked_sub(&eval_gwa(b, pres)?),
        Expr::Mul(a, b) => eval_gwa(a, pres)?.checked_mul(&eval_gwa(b, pres)?),
        Expr::Pow(base, exp, pos) => {
            if *exp < 0 {
                return Err(Error::parse(*pos, "negative exponent on a non-invertible symbol"));
            }
            Ok(eval_gwa(base, pres)?.pow(*exp as u32))
        }
    }
}

pub fn parse_gwa(text: &str, pres: &Arc<GwaPresentation>) -> Result<GwaElement> {
    eval_gwa(&parse(text)?, pres)
}

/// A univariate or multivariate polynomial in `h` / `h_i`.
pub fn parse_poly(text: &str, nvars: usize) -> Result<BasePoly> {
    let shape = CuspShape::new(vec![1; nvars])?;
    let op = LaurentContext::new(shape, Algebra::DA).parse(text)?;
    op.as_poly()
        .ok_or_else(|| Error::parse(0, "expected a polynomial in h"))
}
