use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::lexer::{tokenize, Pos, Tok};
use crate::algebra::{GaussianRational, Poly, VarSpace};
use crate::error::{Error, Result};
use std::sync::Arc;

/// Largest exponent the grammar accepts.
const MAX_EXPONENT: u32 = 10_000;

#[derive(Clone, Debug)]
pub(crate) enum Node {
    Num(BigRational),
    I,
    Var { name: String, conj: bool, pos: Pos },
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>, Pos),
    Pow(Box<Node>, u32),
    Conj(Box<Node>, Pos),
}

/// Identifiers referenced by an expression.
#[derive(Default, Debug)]
pub(crate) struct Usage {
    pub vars: Vec<(String, Pos)>,
    pub conjugates: bool,
}

impl Node {
    pub fn usage(&self) -> Usage {
        let mut u = Usage::default();
        self.collect(&mut u);
        u
    }

    fn collect(&self, u: &mut Usage) {
        match self {
            Node::Num(_) | Node::I => {}
            Node::Var { name, conj, pos } => {
                u.conjugates |= *conj;
                u.vars.push((name.clone(), *pos));
            }
            Node::Neg(a) | Node::Pow(a, _) => a.collect(u),
            Node::Conj(a, _) => {
                u.conjugates = true;
                a.collect(u);
            }
            Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b, _) => {
                a.collect(u);
                b.collect(u);
            }
        }
    }

    pub fn eval(&self, space: &Arc<VarSpace>) -> Result<Poly> {
        Ok(match self {
            Node::Num(r) => Poly::constant(space, GaussianRational::real(r.clone())),
            Node::I => Poly::constant(space, GaussianRational::i()),
            Node::Var { name, conj, pos } => {
                let idx = space.index_of(name).ok_or_else(|| Error::UndeclaredVariable {
                    line: pos.line,
                    column: pos.column,
                    name: name.clone(),
                })?;
                if *conj {
                    let p = space.partner(idx).ok_or_else(|| Error::NoConjugatePartner {
                        line: pos.line,
                        column: pos.column,
                        name: name.clone(),
                    })?;
                    Poly::var(space, p)
                } else {
                    Poly::var(space, idx)
                }
            }
            Node::Neg(a) => -&a.eval(space)?,
            Node::Add(a, b) => &a.eval(space)? + &b.eval(space)?,
            Node::Sub(a, b) => &a.eval(space)? - &b.eval(space)?,
            Node::Mul(a, b) => &a.eval(space)? * &b.eval(space)?,
            Node::Div(a, b, pos) => {
                let d = b.eval(space)?;
                if !d.is_constant() {
                    return Err(pos.syntax("division is only allowed by a nonzero constant"));
                }
                let inv = d
                    .constant_term()
                    .inv()
                    .ok_or_else(|| pos.syntax("division by zero"))?;
                a.eval(space)?.scale(&inv)
            }
            Node::Pow(a, k) => a.eval(space)?.pow(*k),
            Node::Conj(a, pos) => {
                let inner = a.eval(space)?;
                for (m, _) in inner.terms() {
                    if let Some(k) = m.support().find(|&k| space.partner(k).is_none()) {
                        return Err(Error::NoConjugatePartner {
                            line: pos.line,
                            column: pos.column,
                            name: space.name(k).to_string(),
                        });
                    }
                }
                inner.mirror()?
            }
        })
    }
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(self.pos().syntax(format!("expected {what}, found {}", describe(self.peek()))))
        }
    }

    fn expr(&mut self) -> Result<Node> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Node::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Node::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Node> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Node::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    let (_, pos) = self.bump();
                    lhs = Node::Div(Box::new(lhs), Box::new(self.unary()?), pos);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Node> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(Node::Neg(Box::new(self.unary()?)))
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Node> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let (tok, pos) = self.bump();
        let k = match tok {
            Tok::Number(s) if !s.contains('.') => {
                if *self.peek() == Tok::Slash {
                    return Err(pos.syntax("fractional exponents are not supported"));
                }
                s.parse::<u32>()
                    .ok()
                    .filter(|&k| k <= MAX_EXPONENT)
                    .ok_or_else(|| pos.syntax(format!("exponent `{s}` is too large")))?
            }
            Tok::Number(_) => return Err(pos.syntax("fractional exponents are not supported")),
            Tok::Minus => return Err(pos.syntax("negative exponents are not supported")),
            other => {
                return Err(pos.syntax(format!(
                    "expected a nonnegative integer exponent, found {}",
                    describe(&other)
                )))
            }
        };
        if *self.peek() == Tok::Caret {
            return Err(self.pos().syntax("chained exponents need parentheses"));
        }
        Ok(Node::Pow(Box::new(base), k))
    }

    fn atom(&mut self) -> Result<Node> {
        let (tok, pos) = self.bump();
        match tok {
            Tok::Number(s) => Ok(Node::Num(parse_decimal(&s))),
            Tok::Ident(name) if name == "i" => Ok(Node::I),
            Tok::Ident(name) if name == "conj" => {
                self.expect(Tok::LParen, "`(` after conj")?;
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Node::Conj(Box::new(inner), pos))
            }
            Tok::Ident(name) => Ok(Node::Var {
                name,
                conj: false,
                pos,
            }),
            Tok::Tilde => match self.bump() {
                (Tok::Ident(name), p) if name != "i" && name != "conj" => Ok(Node::Var {
                    name,
                    conj: true,
                    pos: p,
                }),
                (other, p) => Err(p.syntax(format!(
                    "expected a variable after `~`, found {}",
                    describe(&other)
                ))),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            other => Err(pos.syntax(format!("unexpected {}", describe(&other)))),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Number(s) => format!("number `{s}`"),
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::Tilde => "`~`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::End => "end of input".into(),
    }
}

fn parse_decimal(s: &str) -> BigRational {
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let digits = format!("{int}{frac}");
    let num: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().expect("lexer only admits digits")
    };
    let den = num_traits::pow(BigInt::from(10), frac.len());
    if den.is_one() {
        BigRational::from_integer(num)
    } else {
        BigRational::new(num, den)
    }
}

/// Parses `text` into an expression tree; `first_line` offsets reported
/// positions when the expression follows a file header.
pub(crate) fn parse_tree(text: &str, first_line: usize) -> Result<Node> {
    let toks = tokenize(text, first_line)?;
    let mut p = Parser { toks, at: 0 };
    if *p.peek() == Tok::End {
        return Err(p.pos().syntax("empty expression"));
    }
    let node = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p
            .pos()
            .syntax(format!("unexpected {} after expression", describe(p.peek()))));
    }
    Ok(node)
}
