//! Expression language for elements.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := factor ('^' int)?
//! factor  := int | q | qbar | v | r2 | gen | '(' expr ')' | bracket
//! bracket := ('c' | 'ac' | 'sc') '(' expr ',' expr (';' expr)? ')'
//! gen     := [efkL](bar)?[0-9]+ | a[0-9]+[+-]
//! ```

use std::fmt;

use crate::coeff::Scalar;
use crate::error::{Error, Result};
use crate::presentation::RankParams;
use crate::superalg::{Element, Family, Gen, Kind};

#[derive(Clone, Debug, PartialEq)]
pub enum Ast {
    Int(i64),
    /// `q`, `qbar`, `v` or `r2`.
    Sym(String),
    Gen(Gen),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Neg(Box<Ast>),
    Pow(Box<Ast>, i32),
    Bracket { family: Family, lhs: Box<Ast>, rhs: Box<Ast>, x: Option<Box<Ast>> },
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    Gen(Gen),
    Op(char),
}

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
    rank: RankParams,
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { pos, msg: msg.into() }
}

impl<'a> Lexer<'a> {
    fn digits(&mut self) -> Option<&'a str> {
        let st = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > st).then(|| std::str::from_utf8(&self.s[st..self.pos]).expect("ascii"))
    }

    fn gen(&self, kind: Kind, idx: &str, at: usize) -> Result<Gen> {
        let i: usize = idx.parse().map_err(|_| syntax(at, "index too large"))?;
        self.rank.check_index(i)?;
        Ok(self.rank.gen(kind, i))
    }

    fn tokens(mut self) -> Result<Vec<(usize, Tok)>> {
        let mut out = Vec::new();
        while self.pos < self.s.len() {
            let c = self.s[self.pos];
            let at = self.pos;
            if c.is_ascii_whitespace() {
                self.pos += 1;
            } else if c.is_ascii_digit() {
                let d = self.digits().expect("digit");
                out.push((at, Tok::Int(d.parse().map_err(|_| syntax(at, "integer too large"))?)));
            } else if c.is_ascii_alphabetic() {
                let st = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphabetic() {
                    self.pos += 1;
                }
                let word = std::str::from_utf8(&self.s[st..self.pos]).expect("ascii");
                if word == "a" {
                    let idx = self.digits().ok_or_else(|| syntax(self.pos, "expected index after `a`"))?;
                    let kind = match self.s.get(self.pos) {
                        Some(b'+') => Kind::Aplus,
                        Some(b'-') => Kind::Aminus,
                        _ => return Err(syntax(self.pos, "expected `+` or `-` after ladder index")),
                    };
                    self.pos += 1;
                    out.push((at, Tok::Gen(self.gen(kind, idx, at)?)));
                } else if let Some(idx) = self.digits() {
                    if word == "r" && idx == "2" {
                        out.push((at, Tok::Ident("r2".to_string())));
                        continue;
                    }
                    let kind = match word {
                        "e" => Kind::E,
                        "f" => Kind::F,
                        "k" => Kind::K,
                        "kbar" => Kind::Kbar,
                        "L" => Kind::L,
                        "Lbar" => Kind::Lbar,
                        _ => return Err(Error::UnknownGenerator(format!("{word}{idx}"))),
                    };
                    out.push((at, Tok::Gen(self.gen(kind, idx, at)?)));
                } else {
                    out.push((at, Tok::Ident(word.to_string())));
                }
            } else if "+-*/^(),;".contains(c as char) {
                out.push((at, Tok::Op(c as char)));
                self.pos += 1;
            } else {
                return Err(syntax(at, format!("unexpected character `{}`", c as char)));
            }
        }
        Ok(out)
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |t| t.0)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(syntax(self.pos(), format!("expected `{c}`")))
        }
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut a = self.term()?;
        loop {
            if self.eat('+') {
                a = Ast::Add(Box::new(a), Box::new(self.term()?));
            } else if self.eat('-') {
                a = Ast::Sub(Box::new(a), Box::new(self.term()?));
            } else {
                return Ok(a);
            }
        }
    }

    fn term(&mut self) -> Result<Ast> {
        let mut a = self.unary()?;
        loop {
            if self.eat('*') {
                a = Ast::Mul(Box::new(a), Box::new(self.unary()?));
            } else if self.eat('/') {
                a = Ast::Div(Box::new(a), Box::new(self.unary()?));
            } else {
                return Ok(a);
            }
        }
    }

    fn unary(&mut self) -> Result<Ast> {
        if self.eat('-') {
            return Ok(Ast::Neg(Box::new(self.unary()?)));
        }
        let base = self.factor()?;
        if self.eat('^') {
            let neg = self.eat('-');
            let at = self.pos();
            match self.peek().cloned() {
                Some(Tok::Int(k)) => {
                    self.i += 1;
                    let k = i32::try_from(k).map_err(|_| syntax(at, "exponent too large"))?;
                    return Ok(Ast::Pow(Box::new(base), if neg { -k } else { k }));
                }
                _ => return Err(syntax(at, "expected integer exponent")),
            }
        }
        Ok(base)
    }

    fn factor(&mut self) -> Result<Ast> {
        let at = self.pos();
        let tok = self.peek().cloned().ok_or_else(|| syntax(at, "unexpected end of input"))?;
        self.i += 1;
        match tok {
            Tok::Int(k) => Ok(Ast::Int(k)),
            Tok::Gen(g) => Ok(Ast::Gen(g)),
            Tok::Op('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(w) => match w.as_str() {
                "q" | "qbar" | "v" | "r2" => Ok(Ast::Sym(w)),
                "c" | "ac" | "sc" => {
                    let family = match w.as_str() {
                        "c" => Family::Plain,
                        "ac" => Family::Anti,
                        _ => Family::Super,
                    };
                    self.expect('(')?;
                    let lhs = self.expr()?;
                    self.expect(',')?;
                    let rhs = self.expr()?;
                    let x = if self.eat(';') { Some(Box::new(self.expr()?)) } else { None };
                    self.expect(')')?;
                    Ok(Ast::Bracket { family, lhs: Box::new(lhs), rhs: Box::new(rhs), x })
                }
                _ => Err(syntax(at, format!("unknown identifier `{w}`"))),
            },
            Tok::Op(c) => Err(syntax(at, format!("unexpected `{c}`"))),
        }
    }
}

/// Parses `text`; generator tokens are validated against `rank`.
pub fn parse_expression(text: &str, rank: RankParams) -> Result<Ast> {
    let toks = Lexer { s: text.as_bytes(), pos: 0, rank }.tokens()?;
    let mut p = Parser { toks, i: 0, end: text.len() };
    let e = p.expr()?;
    if p.i < p.toks.len() {
        return Err(syntax(p.pos(), "trailing input"));
    }
    Ok(e)
}

fn as_scalar(x: &Element, what: &str) -> Result<Scalar> {
    if x.is_zero() {
        return Ok(Scalar::zero());
    }
    match x.terms().iter().next() {
        Some((w, c)) if x.len() == 1 && w.is_empty() => Ok(c.clone()),
        _ => Err(syntax(0, format!("{what} must be a scalar"))),
    }
}

impl Ast {
    pub fn elaborate(&self) -> Result<Element> {
        Ok(match self {
            Ast::Int(k) => Element::scalar(Scalar::int(*k)),
            Ast::Sym(s) => Element::scalar(match s.as_str() {
                "q" => Scalar::q(),
                "qbar" => Scalar::qbar(),
                "v" => Scalar::v(),
                _ => Scalar::sqrt2(),
            }),
            Ast::Gen(g) => Element::gen(*g),
            Ast::Add(a, b) => a.elaborate()?.add(&b.elaborate()?),
            Ast::Sub(a, b) => a.elaborate()?.sub(&b.elaborate()?),
            Ast::Mul(a, b) => a.elaborate()?.mul(&b.elaborate()?),
            Ast::Div(a, b) => {
                let d = as_scalar(&b.elaborate()?, "divisor")?;
                a.elaborate()?.scale(&d.inv()?)
            }
            Ast::Neg(a) => a.elaborate()?.neg(),
            Ast::Pow(a, k) => {
                let base = a.elaborate()?;
                if *k < 0 {
                    Element::scalar(as_scalar(&base, "base of a negative power")?.pow(*k)?)
                } else {
                    (0..*k).fold(Element::one(), |acc, _| acc.mul(&base))
                }
            }
            Ast::Bracket { family, lhs, rhs, x } => {
                let x = match x {
                    Some(x) => as_scalar(&x.elaborate()?, "bracket subscript")?,
                    None => Scalar::one(),
                };
                Element::bracket(&lhs.elaborate()?, &rhs.elaborate()?, &x, *family)?
            }
        })
    }

    fn prec(&self) -> u8 {
        match self {
            Ast::Add(..) | Ast::Sub(..) => 1,
            Ast::Mul(..) | Ast::Div(..) => 2,
            Ast::Neg(_) => 3,
            Ast::Pow(..) => 4,
            _ => 5,
        }
    }
}

fn child(f: &mut fmt::Formatter<'_>, a: &Ast, min: u8) -> fmt::Result {
    if a.prec() < min {
        write!(f, "({a})")
    } else {
        write!(f, "{a}")
    }
}

impl fmt::Display for Ast {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ast::Int(k) if *k < 0 => write!(f, "({k})"),
            Ast::Int(k) => write!(f, "{k}"),
            Ast::Sym(s) => write!(f, "{s}"),
            Ast::Gen(g) => write!(f, "{g}"),
            Ast::Add(a, b) => {
                child(f, a, 1)?;
                write!(f, " + ")?;
                child(f, b, 2)
            }
            Ast::Sub(a, b) => {
                child(f, a, 1)?;
                write!(f, " - ")?;
                child(f, b, 2)
            }
            Ast::Mul(a, b) => {
                child(f, a, 2)?;
                write!(f, "*")?;
                child(f, b, 3)
            }
            Ast::Div(a, b) => {
                child(f, a, 2)?;
                write!(f, "/")?;
                child(f, b, 3)
            }
            Ast::Neg(a) => {
                write!(f, "-")?;
                child(f, a, 3)
            }
            Ast::Pow(a, k) => {
                child(f, a, 5)?;
                write!(f, "^{k}")
            }
            Ast::Bracket { family, lhs, rhs, x } => {
                let name = match family {
                    Family::Plain => "c",
                    Family::Anti => "ac",
                    Family::Super => "sc",
                };
                write!(f, "{name}({lhs}, {rhs}")?;
                if let Some(x) = x {
                    write!(f, "; {x}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Parses and elaborates in one step.
pub fn parse_element(text: &str, rank: RankParams) -> Result<Element> {
    parse_expression(text, rank)?.elaborate()
}
