//! Element expressions and the ring-expression grammar.
//!
//! ```text
//! ring  := quot ('*' quot)*
//! quot  := atom ('[' var ']' '/' '(' poly ')')*
//! atom  := 'Z' | 'Z' '/' n | 'F' q | 'F' p '[' var ']' | '(' ring ')'
//! ```
//! Element expressions are sums of products of powers of integers,
//! variables, parenthesised expressions and tuples `[a, b]`; juxtaposition
//! multiplies (`3x^2`).

use num_bigint::BigInt;

use crate::error::{Error, ParseError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt, usize),
    Var(String, usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
    Tuple(Vec<Expr>, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(text: &str, offset: usize) -> std::result::Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|x| x.1).collect();
            out.push((Tok::Int(s.parse().unwrap()), offset + pos));
        } else if c.is_alphabetic() {
            let start = i;
            i += 1;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|x| x.1).collect();
            out.push((Tok::Ident(s), offset + pos));
        } else if "+-*^()[],/".contains(c) {
            out.push((Tok::Sym(c), offset + pos));
            i += 1;
        } else {
            return Err(ParseError::new(offset + pos, &["integer", "variable", "operator"], format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct ExprParser {
    toks: Vec<(Tok, usize)>,
    i: usize,
    end: usize,
}

impl ExprParser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.0)
    }
    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |t| t.1)
    }
    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.i += 1;
            true
        } else {
            false
        }
    }
    fn expect(&mut self, c: char) -> std::result::Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(ParseError::new(self.pos(), &[&c.to_string()], "unexpected token"))
        }
    }

    fn expr(&mut self) -> std::result::Result<Expr, ParseError> {
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

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::Sym('(')) | Some(Tok::Sym('[')))
    }

    fn term(&mut self) -> std::result::Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') || self.starts_atom() {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> std::result::Result<Expr, ParseError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.i += 1;
                    let e: u32 = n.try_into().map_err(|_| ParseError::new(self.pos(), &["small exponent"], "exponent too large"))?;
                    return Ok(Expr::Pow(Box::new(base), e));
                }
                _ => return Err(ParseError::new(self.pos(), &["integer"], "exponent must be a literal")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> std::result::Result<Expr, ParseError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.i += 1;
                Ok(Expr::Int(n, pos))
            }
            Some(Tok::Ident(s)) => {
                self.i += 1;
                Ok(Expr::Var(s, pos))
            }
            Some(Tok::Sym('(')) => {
                self.i += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Sym('[')) => {
                self.i += 1;
                let mut items = vec![self.expr()?];
                while self.eat(',') {
                    items.push(self.expr()?);
                }
                self.expect(']')?;
                Ok(Expr::Tuple(items, pos))
            }
            _ => Err(ParseError::new(pos, &["integer", "variable", "(", "["], "expected an operand")),
        }
    }
}

/// Parse an element expression; positions are reported relative to `offset`.
pub fn parse_expr(text: &str, offset: usize) -> std::result::Result<Expr, ParseError> {
    let toks = tokenize(text, offset)?;
    let mut p = ExprParser { toks, i: 0, end: offset + text.len() };
    let e = p.expr()?;
    if p.i != p.toks.len() {
        return Err(ParseError::new(p.pos(), &["+", "-", "*", "end of input"], "trailing input"));
    }
    Ok(e)
}

/// Target of expression evaluation.
pub(crate) trait Algebra {
    type V: Clone;
    fn from_int(&self, n: &BigInt, pos: usize) -> Result<Self::V>;
    fn var(&self, name: &str, pos: usize) -> Result<Self::V>;
    fn tuple(&self, items: &[Expr], pos: usize) -> Result<Self::V>;
    fn add(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn neg(&self, a: &Self::V) -> Self::V;
    fn mul(&self, a: &Self::V, b: &Self::V) -> Self::V;
}

pub(crate) fn eval<A: Algebra>(a: &A, e: &Expr) -> Result<A::V> {
    Ok(match e {
        Expr::Int(n, pos) => a.from_int(n, *pos)?,
        Expr::Var(s, pos) => a.var(s, *pos)?,
        Expr::Tuple(items, pos) => a.tuple(items, *pos)?,
        Expr::Add(x, y) => a.add(&eval(a, x)?, &eval(a, y)?),
        Expr::Sub(x, y) => a.add(&eval(a, x)?, &a.neg(&eval(a, y)?)),
        Expr::Mul(x, y) => a.mul(&eval(a, x)?, &eval(a, y)?),
        Expr::Neg(x) => a.neg(&eval(a, x)?),
        Expr::Pow(x, k) => {
            let b = eval(a, x)?;
            let mut acc = a.from_int(&BigInt::from(1), 0)?;
            for _ in 0..*k {
                acc = a.mul(&acc, &b);
            }
            acc
        }
    })
}

pub(crate) fn unknown_var(name: &str, pos: usize, known: &[&str]) -> Error {
    Error::Parse(ParseError::new(pos, known, format!("unknown variable '{name}'")))
}

/// Split `text` on `sep` at bracket depth zero, returning (offset, piece).
pub fn split_top(text: &str, sep: char) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ if c == sep && depth == 0 => {
                out.push((start, &text[start..i]));
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push((start, &text[start..]));
    out
}

/// Contents of a parenthesised list `( a, b, ... )`, with offsets.
pub fn paren_list(text: &str, offset: usize) -> std::result::Result<Vec<(usize, &str)>, ParseError> {
    let trimmed_start = text.len() - text.trim_start().len();
    let t = text.trim();
    if !t.starts_with('(') {
        return Err(ParseError::new(offset + trimmed_start, &["("], "expected a parenthesised list"));
    }
    if !t.ends_with(')') {
        return Err(ParseError::new(offset + trimmed_start + t.len(), &[")"], "unclosed list"));
    }
    let inner = &t[1..t.len() - 1];
    let base = offset + trimmed_start + 1;
    if inner.trim().is_empty() {
        return Ok(vec![]);
    }
    Ok(split_top(inner, ',').into_iter().map(|(o, s)| (base + o, s)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn implicit_multiplication_and_powers() {
        let e = parse_expr("3x^2 + x - 1", 0).unwrap();
        match e {
            Expr::Sub(_, _) => {}
            other => panic!("{other:?}"),
        }
        assert!(parse_expr("[1, x+1]y", 0).is_ok());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_expr("x + * 2", 0).unwrap_err();
        assert_eq!(e.pos, 4);
        let e = parse_expr("(x + 1", 10).unwrap_err();
        assert_eq!(e.pos, 16);
        assert!(e.expected.contains(&")".to_string()));
    }

    #[test]
    fn top_level_split() {
        let v = split_top("(2, [1,0]), (3)", ',');
        assert_eq!(v.len(), 2);
        let l = paren_list(" (2, x+1) ", 0).unwrap();
        assert_eq!(l.iter().map(|x| x.1.trim()).collect::<Vec<_>>(), vec!["2", "x+1"]);
    }
}
