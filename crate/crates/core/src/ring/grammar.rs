//! Ring expressions: `Z/12`, `F4`, `F2[x]/(x^2+x+1)`, `Z/4 * F3`, `Z`, `F5[t]`.
//! Quotients bind tighter than products; whitespace is ignored. `F<q>` for
//! q = p^k, k > 1, is `F_p[x]/(f)` with f the least monic irreducible of
//! degree k (coefficients compared from the top down).

use super::parse::{eval, parse_expr};
use super::poly::conway_like_irreducible;
use super::{build_finite_for_parse, PolyOver, RingDescriptor};
use crate::error::{Error, ParseError, Result};

struct P<'a> {
    s: &'a str,
    chars: Vec<(usize, char)>,
    i: usize,
}

enum Atom {
    Desc(RingDescriptor),
    /// `F<p>`: a prime field that may still turn into `F<p>[x]`.
    PrimeField(u64),
}

fn prime_power(q: u64) -> Option<(u64, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut m, mut k) = (q, 0);
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

impl<'a> P<'a> {
    fn skip_ws(&mut self) {
        while self.i < self.chars.len() && self.chars[self.i].1.is_whitespace() {
            self.i += 1;
        }
    }
    fn pos(&self) -> usize {
        self.chars.get(self.i).map_or(self.s.len(), |c| c.0)
    }
    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.i).map(|c| c.1)
    }
    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }
    fn err(&mut self, expected: &[&str], msg: &str) -> Error {
        self.skip_ws();
        Error::Parse(ParseError::new(self.pos(), expected, msg))
    }
    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&[&c.to_string()], "unexpected input"))
        }
    }
    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.i;
        while self.i < self.chars.len() && self.chars[self.i].1.is_ascii_digit() {
            self.i += 1;
        }
        if start == self.i {
            return Err(self.err(&["integer"], "expected a number"));
        }
        let s: String = self.chars[start..self.i].iter().map(|c| c.1).collect();
        s.parse().map_err(|_| Error::Parse(ParseError::new(self.chars[start].0, &["integer"], "number too large")))
    }
    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.i;
        if self.i < self.chars.len() && self.chars[self.i].1.is_alphabetic() {
            self.i += 1;
            while self.i < self.chars.len() && (self.chars[self.i].1.is_alphanumeric() || self.chars[self.i].1 == '_') {
                self.i += 1;
            }
        }
        if start == self.i {
            return Err(self.err(&["variable name"], "expected a variable"));
        }
        Ok(self.chars[start..self.i].iter().map(|c| c.1).collect())
    }

    fn ring(&mut self) -> Result<RingDescriptor> {
        let mut factors = vec![self.quot()?];
        while self.eat('*') {
            factors.push(self.quot()?);
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { RingDescriptor::Product { factors } })
    }

    fn atom(&mut self) -> Result<Atom> {
        match self.peek() {
            Some('Z') => {
                self.i += 1;
                if self.eat('/') {
                    let n = self.number()?;
                    if n == 0 {
                        return Err(self.err(&["positive integer"], "Z/0 is not finite"));
                    }
                    Ok(Atom::Desc(RingDescriptor::ZMod { n }))
                } else {
                    Ok(Atom::Desc(RingDescriptor::IntegerRing))
                }
            }
            Some('F') => {
                self.i += 1;
                let at = self.pos();
                let q = self.number()?;
                let (p, k) = prime_power(q)
                    .ok_or_else(|| Error::Parse(ParseError::new(at, &["prime power"], format!("{q} is not a prime power"))))?;
                if k == 1 {
                    Ok(Atom::PrimeField(p))
                } else {
                    let f = conway_like_irreducible(p, k);
                    Ok(Atom::Desc(RingDescriptor::PolyQuot {
                        base: Box::new(RingDescriptor::ZMod { n: p }),
                        var: "x".into(),
                        modulus: f.coeffs.iter().map(|&c| c as u32).collect(),
                    }))
                }
            }
            Some('(') => {
                self.i += 1;
                let r = self.ring()?;
                self.expect(')')?;
                Ok(Atom::Desc(r))
            }
            _ => Err(self.err(&["Z", "F", "("], "expected a ring")),
        }
    }

    fn quot(&mut self) -> Result<RingDescriptor> {
        let mut cur = self.atom()?;
        while self.peek() == Some('[') {
            self.i += 1;
            let var = self.ident()?;
            self.expect(']')?;
            if self.peek() != Some('/') {
                if let Atom::PrimeField(p) = cur {
                    return Ok(RingDescriptor::PolyRing { p, var });
                }
                return Err(self.err(&["/"], "polynomial rings are only supported over prime fields"));
            }
            self.i += 1;
            let base = match cur {
                Atom::PrimeField(p) => RingDescriptor::ZMod { n: p },
                Atom::Desc(d) => d,
            };
            if !base.is_finite() {
                return Err(self.err(&["finite base ring"], "quotients of Z[x] are not supported"));
            }
            if base.has_var(&var) {
                return Err(self.err(&["fresh variable"], &format!("variable '{var}' is already bound")));
            }
            self.skip_ws();
            if self.peek() != Some('(') {
                return Err(self.err(&["("], "expected a parenthesised modulus"));
            }
            let open = self.i;
            let mut depth = 0i32;
            let mut close = None;
            for j in open..self.chars.len() {
                match self.chars[j].1 {
                    '(' | '[' => depth += 1,
                    ')' | ']' => {
                        depth -= 1;
                        if depth == 0 {
                            close = Some(j);
                            break;
                        }
                    }
                    _ => {}
                }
            }
            let close = close.ok_or_else(|| Error::Parse(ParseError::new(self.s.len(), &[")"], "unclosed modulus")))?;
            let start = self.chars[open].0 + 1;
            let text = &self.s[start..self.chars[close].0];
            let expr = parse_expr(text, start)?;
            let b = build_finite_for_parse(&base)?;
            let mut modulus = eval(&PolyOver { base: &b, var: &var }, &expr)?;
            while modulus.len() > 1 && modulus.last() == Some(&0) {
                modulus.pop();
            }
            if modulus.len() < 2 {
                return Err(Error::InvalidModulus(format!("'{}' has degree < 1", text.trim())));
            }
            self.i = close + 1;
            cur = Atom::Desc(RingDescriptor::PolyQuot { base: Box::new(base), var, modulus });
        }
        Ok(match cur {
            Atom::PrimeField(p) => RingDescriptor::ZMod { n: p },
            Atom::Desc(d) => d,
        })
    }
}

pub fn parse_ring_expr(text: &str) -> Result<RingDescriptor> {
    let mut p = P { s: text, chars: text.char_indices().collect(), i: 0 };
    let r = p.ring()?;
    if p.peek().is_some() {
        return Err(p.err(&["*", "[", "end of input"], "trailing input"));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_forms() {
        assert_eq!(parse_ring_expr("Z/12").unwrap(), RingDescriptor::ZMod { n: 12 });
        assert_eq!(
            parse_ring_expr("F2[x]/(x^2+x+1)").unwrap(),
            RingDescriptor::PolyQuot { base: Box::new(RingDescriptor::ZMod { n: 2 }), var: "x".into(), modulus: vec![1, 1, 1] }
        );
        assert_eq!(parse_ring_expr("F4").unwrap(), parse_ring_expr("F2[x]/(x^2+x+1)").unwrap());
        assert_eq!(
            parse_ring_expr(" Z/4 *F3 ").unwrap(),
            RingDescriptor::Product { factors: vec![RingDescriptor::ZMod { n: 4 }, RingDescriptor::ZMod { n: 3 }] }
        );
        assert_eq!(parse_ring_expr("Z").unwrap(), RingDescriptor::IntegerRing);
        assert_eq!(parse_ring_expr("F5[t]").unwrap(), RingDescriptor::PolyRing { p: 5, var: "t".into() });
    }

    #[test]
    fn quotient_binds_tighter_than_product() {
        let d = parse_ring_expr("Z/3 * F2[x]/(x^2)").unwrap();
        let RingDescriptor::Product { factors } = d else { panic!() };
        assert!(matches!(factors[1], RingDescriptor::PolyQuot { .. }));
    }

    #[test]
    fn display_round_trip() {
        for t in ["Z/12", "F4", "F2[x]/(x^2)", "Z/4 * F3", "(Z/2 * Z/3)[y]/(y^2+[1, 2])", "F4[y]/(y^2+x)", "(Z/2 * Z/2) * Z/3", "Z", "F3[x]"] {
            let d = parse_ring_expr(t).unwrap();
            assert_eq!(parse_ring_expr(&d.to_string()).unwrap(), d, "{t} -> {d}");
        }
    }

    #[test]
    fn errors() {
        let e = parse_ring_expr("Z/").unwrap_err();
        let Error::Parse(pe) = e else { panic!() };
        assert_eq!(pe.pos, 2);
        assert!(pe.expected.contains(&"integer".to_string()));
        assert!(matches!(parse_ring_expr("F6"), Err(Error::Parse(_))));
        assert!(matches!(parse_ring_expr("Q"), Err(Error::Parse(_))));
        assert!(matches!(parse_ring_expr("F2[x]/(1)"), Err(Error::InvalidModulus(_))));
        assert!(matches!(parse_ring_expr("F4[x]/(x^2)"), Err(Error::Parse(_))));
    }
}
