//! Computable commutative rings: finite rings built from `Z/n`, polynomial
//! quotients and products, plus the Euclidean domains `Z` and `F_p[x]`.

pub mod euclid;
pub mod factor;
pub mod finite;
pub mod grammar;
pub mod parse;
pub mod poly;

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{guard, Error, Result};
use crate::limits::Limits;
pub use finite::FiniteRing;
use finite::Node;
use parse::{eval, unknown_var, Algebra, Expr};
pub use poly::FpPoly;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RingDescriptor {
    ZMod { n: u64 },
    /// `base[var]/(modulus)`, modulus coefficients as base element indices, low degree first.
    PolyQuot { base: Box<RingDescriptor>, var: String, modulus: Vec<u32> },
    Product { factors: Vec<RingDescriptor> },
    IntegerRing,
    PolyRing { p: u64, var: String },
    /// `base/(ideal)`; only produced internally (factor rings, R/A).
    Quotient { base: Box<RingDescriptor>, ideal: Vec<u32> },
}

impl RingDescriptor {
    pub fn is_finite(&self) -> bool {
        match self {
            RingDescriptor::ZMod { .. } => true,
            RingDescriptor::PolyQuot { base, .. } | RingDescriptor::Quotient { base, .. } => base.is_finite(),
            RingDescriptor::Product { factors } => factors.iter().all(|f| f.is_finite()),
            _ => false,
        }
    }

    /// Upper bound on the cardinality (exact except for `Quotient`).
    pub fn cardinality(&self) -> Option<BigUint> {
        Some(match self {
            RingDescriptor::ZMod { n } => BigUint::from(*n),
            RingDescriptor::PolyQuot { base, modulus, .. } => {
                base.cardinality()?.pow(modulus.len().saturating_sub(1) as u32)
            }
            RingDescriptor::Product { factors } => {
                let mut acc = BigUint::one();
                for f in factors {
                    acc *= f.cardinality()?;
                }
                acc
            }
            RingDescriptor::Quotient { base, .. } => base.cardinality()?,
            _ => return None,
        })
    }

    pub fn poly_depth(&self) -> usize {
        match self {
            RingDescriptor::PolyQuot { base, .. } => 1 + base.poly_depth(),
            RingDescriptor::Quotient { base, .. } => base.poly_depth(),
            RingDescriptor::Product { factors } => factors.iter().map(|f| f.poly_depth()).max().unwrap_or(0),
            _ => 0,
        }
    }

    fn vars(&self, out: &mut Vec<String>) {
        match self {
            RingDescriptor::PolyQuot { base, var, .. } => {
                base.vars(out);
                out.push(var.clone());
            }
            RingDescriptor::Quotient { base, .. } => base.vars(out),
            RingDescriptor::Product { factors } => factors.iter().for_each(|f| f.vars(out)),
            RingDescriptor::PolyRing { var, .. } => out.push(var.clone()),
            _ => {}
        }
    }

    pub(crate) fn has_var(&self, v: &str) -> bool {
        let mut vs = Vec::new();
        self.vars(&mut vs);
        vs.iter().any(|x| x == v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Element {
    Fin(u32),
    Int(BigInt),
    Poly(FpPoly),
}

impl Element {
    pub fn fin(&self) -> u32 {
        match self {
            Element::Fin(x) => *x,
            _ => panic!("not a finite-ring element"),
        }
    }
}

#[derive(Debug)]
pub(crate) enum Kind {
    Finite(Arc<FiniteRing>),
    Integers,
    FpPolys { p: u64, var: String },
}

#[derive(Debug)]
pub struct RingInner {
    desc: RingDescriptor,
    limits: Limits,
    kind: Kind,
}

/// Shared, immutable ring context.
#[derive(Debug, Clone)]
pub struct Ring(Arc<RingInner>);

impl PartialEq for Ring {
    fn eq(&self, o: &Ring) -> bool {
        Arc::ptr_eq(&self.0, &o.0) || self.0.desc == o.0.desc
    }
}
impl Eq for Ring {}

/// Which Euclidean domain an infinite ring is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PidKind {
    Integers,
    FpPolys(u64),
}

fn is_prime_u64(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn check(desc: &RingDescriptor, limits: &Limits) -> Result<()> {
    if desc.poly_depth() > 2 {
        return Err(Error::DepthExceeded(desc.poly_depth()));
    }
    match desc {
        RingDescriptor::ZMod { n } if *n == 0 => {
            return Err(Error::InvalidDescriptor("Z/n requires n ≥ 1".into()))
        }
        RingDescriptor::Product { factors } => {
            if factors.len() < 2 {
                return Err(Error::InvalidDescriptor("a product needs at least two factors".into()));
            }
            if !factors.iter().all(|f| f.is_finite()) {
                return Err(Error::InvalidDescriptor("products of infinite rings are not supported".into()));
            }
        }
        RingDescriptor::PolyQuot { base, modulus, .. } => {
            if !base.is_finite() {
                return Err(Error::InvalidDescriptor("polynomial quotients need a finite base".into()));
            }
            if modulus.len() < 2 {
                return Err(Error::InvalidModulus("modulus must have degree ≥ 1".into()));
            }
        }
        RingDescriptor::PolyRing { p, .. } if !is_prime_u64(*p) => {
            return Err(Error::InvalidDescriptor(format!("F{p}[x] needs a prime p")))
        }
        _ => {}
    }
    if let Some(c) = desc.cardinality() {
        if c > BigUint::from(limits.ring_size) {
            return Err(guard("ring cardinality", c, limits.ring_size));
        }
    }
    Ok(())
}

fn build_finite(desc: &RingDescriptor, limits: &Limits) -> Result<Arc<FiniteRing>> {
    check(desc, limits)?;
    Ok(Arc::new(match desc {
        RingDescriptor::ZMod { n } => FiniteRing::zmod(*n),
        RingDescriptor::PolyQuot { base, var, modulus } => {
            let b = build_finite(base, limits)?;
            if modulus.iter().any(|&c| c as u64 >= b.size()) {
                return Err(Error::InvalidModulus("coefficient out of range".into()));
            }
            let lead = *modulus.last().unwrap();
            let inv = b
                .inverse(lead)
                .ok_or_else(|| Error::InvalidModulus("leading coefficient is not a unit".into()))?;
            let monic: Vec<u32> = modulus.iter().map(|&c| b.mul(c, inv)).collect();
            FiniteRing::poly_quot(b, var.clone(), monic)
        }
        RingDescriptor::Product { factors } => {
            let fs = factors.iter().map(|f| build_finite(f, limits)).collect::<Result<Vec<_>>>()?;
            FiniteRing::product(fs)
        }
        RingDescriptor::Quotient { base, ideal } => {
            let b = build_finite(base, limits)?;
            if ideal.iter().any(|&c| c as u64 >= b.size()) {
                return Err(Error::InvalidDescriptor("ideal generator out of range".into()));
            }
            FiniteRing::quotient(b, ideal)
        }
        _ => return Err(Error::NotFinite(format!("{desc}"))),
    }))
}

impl Ring {
    pub fn new(desc: RingDescriptor) -> Result<Ring> {
        Ring::with_limits(desc, Limits::default())
    }

    pub fn with_limits(desc: RingDescriptor, limits: Limits) -> Result<Ring> {
        check(&desc, &limits)?;
        let kind = match &desc {
            RingDescriptor::IntegerRing => Kind::Integers,
            RingDescriptor::PolyRing { p, var } => Kind::FpPolys { p: *p, var: var.clone() },
            _ => Kind::Finite(build_finite(&desc, &limits)?),
        };
        Ok(Ring(Arc::new(RingInner { desc, limits, kind })))
    }

    /// Parse a ring expression such as `Z/4 * F3` or `F2[x]/(x^2)`.
    pub fn parse(text: &str) -> Result<Ring> {
        Ring::new(grammar::parse_ring_expr(text)?)
    }

    pub fn parse_with(text: &str, limits: Limits) -> Result<Ring> {
        Ring::with_limits(grammar::parse_ring_expr(text)?, limits)
    }

    pub fn descriptor(&self) -> &RingDescriptor {
        &self.0.desc
    }
    pub fn limits(&self) -> &Limits {
        &self.0.limits
    }
    pub fn is_finite(&self) -> bool {
        matches!(self.0.kind, Kind::Finite(_))
    }
    pub fn fin(&self) -> Option<&FiniteRing> {
        match &self.0.kind {
            Kind::Finite(f) => Some(f),
            _ => None,
        }
    }
    /// The finite ring, or `NotFinite`.
    pub fn finite(&self) -> Result<&FiniteRing> {
        self.fin().ok_or_else(|| Error::NotFinite(self.to_string()))
    }
    pub fn pid_kind(&self) -> Option<PidKind> {
        match &self.0.kind {
            Kind::Integers => Some(PidKind::Integers),
            Kind::FpPolys { p, .. } => Some(PidKind::FpPolys(*p)),
            _ => None,
        }
    }
    pub fn size(&self) -> Option<u64> {
        self.fin().map(|f| f.size())
    }

    pub fn zero(&self) -> Element {
        match &self.0.kind {
            Kind::Finite(_) => Element::Fin(0),
            Kind::Integers => Element::Int(BigInt::zero()),
            Kind::FpPolys { .. } => Element::Poly(FpPoly::zero()),
        }
    }
    pub fn one(&self) -> Element {
        match &self.0.kind {
            Kind::Finite(f) => Element::Fin(f.one()),
            Kind::Integers => Element::Int(BigInt::one()),
            Kind::FpPolys { p, .. } => Element::Poly(FpPoly::constant(1, *p)),
        }
    }
    pub fn from_int(&self, n: i64) -> Element {
        match &self.0.kind {
            Kind::Finite(f) => Element::Fin(f.from_int(n)),
            Kind::Integers => Element::Int(BigInt::from(n)),
            Kind::FpPolys { p, .. } => Element::Poly(FpPoly::constant(n.rem_euclid(*p as i64) as u64, *p)),
        }
    }
    pub fn is_zero(&self, a: &Element) -> bool {
        *a == self.zero()
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        match (&self.0.kind, a, b) {
            (Kind::Finite(f), Element::Fin(x), Element::Fin(y)) => Element::Fin(f.add(*x, *y)),
            (Kind::Integers, Element::Int(x), Element::Int(y)) => Element::Int(x + y),
            (Kind::FpPolys { p, .. }, Element::Poly(x), Element::Poly(y)) => Element::Poly(x.add(y, *p)),
            _ => panic!("element does not belong to {self}"),
        }
    }
    pub fn neg(&self, a: &Element) -> Element {
        match (&self.0.kind, a) {
            (Kind::Finite(f), Element::Fin(x)) => Element::Fin(f.neg(*x)),
            (Kind::Integers, Element::Int(x)) => Element::Int(-x),
            (Kind::FpPolys { p, .. }, Element::Poly(x)) => Element::Poly(x.neg(*p)),
            _ => panic!("element does not belong to {self}"),
        }
    }
    pub fn sub(&self, a: &Element, b: &Element) -> Element {
        self.add(a, &self.neg(b))
    }
    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        match (&self.0.kind, a, b) {
            (Kind::Finite(f), Element::Fin(x), Element::Fin(y)) => Element::Fin(f.mul(*x, *y)),
            (Kind::Integers, Element::Int(x), Element::Int(y)) => Element::Int(x * y),
            (Kind::FpPolys { p, .. }, Element::Poly(x), Element::Poly(y)) => Element::Poly(x.mul(y, *p)),
            _ => panic!("element does not belong to {self}"),
        }
    }

    pub fn elements(&self) -> Result<Vec<Element>> {
        Ok(self.finite()?.elements().map(Element::Fin).collect())
    }

    pub fn contains(&self, a: &Element) -> bool {
        match (&self.0.kind, a) {
            (Kind::Finite(f), Element::Fin(x)) => (*x as u64) < f.size(),
            (Kind::Integers, Element::Int(_)) => true,
            (Kind::FpPolys { p, .. }, Element::Poly(x)) => x.coeffs.iter().all(|c| c < p) && x.coeffs.last() != Some(&0),
            _ => false,
        }
    }

    pub fn is_unit(&self, a: &Element) -> bool {
        match (&self.0.kind, a) {
            (Kind::Finite(f), Element::Fin(x)) => f.is_unit(*x),
            (Kind::Integers, Element::Int(x)) => x.magnitude().is_one(),
            (Kind::FpPolys { .. }, Element::Poly(x)) => x.degree() == Some(0),
            _ => false,
        }
    }

    /// Canonical textual form; `parse_element(format(x)) == x`.
    pub fn format(&self, a: &Element) -> String {
        match (&self.0.kind, a) {
            (Kind::Finite(f), Element::Fin(x)) => fmt_fin(f, *x),
            (Kind::Integers, Element::Int(x)) => x.to_string(),
            (Kind::FpPolys { var, .. }, Element::Poly(x)) => x.format(var),
            _ => panic!("element does not belong to {self}"),
        }
    }

    pub fn parse_element(&self, text: &str) -> Result<Element> {
        self.parse_element_at(text, 0)
    }

    pub(crate) fn parse_element_at(&self, text: &str, offset: usize) -> Result<Element> {
        let e = parse::parse_expr(text, offset)?;
        self.eval_expr(&e)
    }

    pub(crate) fn eval_expr(&self, e: &Expr) -> Result<Element> {
        Ok(match &self.0.kind {
            Kind::Finite(f) => Element::Fin(eval(&FinAlg(f), e)?),
            Kind::Integers => Element::Int(eval(&IntAlg, e)?),
            Kind::FpPolys { p, var } => Element::Poly(eval(&FpAlg { p: *p, var }, e)?),
        })
    }

    /// Elements `e` with `e·e = e`, in index order.
    pub fn idempotents(&self) -> Result<Vec<Element>> {
        let f = self.finite()?;
        Ok(f.elements().filter(|&e| f.mul(e, e) == e).map(Element::Fin).collect())
    }

    /// Complete orthogonal set of primitive idempotents with the factor rings `Re_i ≅ R/R(1−e_i)`.
    pub fn local_factors(&self) -> Result<Vec<(Element, Ring)>> {
        let f = self.finite()?;
        let idem: Vec<u32> = f.elements().filter(|&e| f.mul(e, e) == e).collect();
        let mut parts = vec![f.one()];
        if f.size() == 1 {
            parts.clear();
        }
        loop {
            let mut split = None;
            'search: for (i, &p) in parts.iter().enumerate() {
                for &e in &idem {
                    let ep = f.mul(e, p);
                    if ep != 0 && ep != p {
                        split = Some((i, ep, f.sub(p, ep)));
                        break 'search;
                    }
                }
            }
            match split {
                Some((i, a, b)) => {
                    parts[i] = a;
                    parts.push(b);
                }
                None => break,
            }
        }
        parts.sort_unstable();
        parts
            .into_iter()
            .map(|e| {
                let r = self.quotient_ring(&[f.sub(f.one(), e)])?;
                Ok((Element::Fin(e), r))
            })
            .collect()
    }

    /// `R/(gens)` as a new finite ring context.
    pub fn quotient_ring(&self, gens: &[u32]) -> Result<Ring> {
        self.finite()?;
        Ring::with_limits(
            RingDescriptor::Quotient { base: Box::new(self.0.desc.clone()), ideal: gens.to_vec() },
            self.0.limits,
        )
    }

    /// For a quotient ring: the projection from the parent (indexed by parent elements).
    pub fn projection_from_parent(&self) -> Option<&[u32]> {
        match &self.fin()?.node {
            Node::Quotient { proj, .. } => Some(proj),
            _ => None,
        }
    }

    /// For a quotient ring: canonical lifts to the parent.
    pub fn lift_to_parent(&self) -> Option<&[u32]> {
        match &self.fin()?.node {
            Node::Quotient { lift, .. } => Some(lift),
            _ => None,
        }
    }

    /// Elements as integers when the ring is `Z`, for PID code paths.
    pub fn int_value(&self, a: &Element) -> Option<BigInt> {
        match a {
            Element::Int(x) => Some(x.clone()),
            _ => None,
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.desc)
    }
}

fn fmt_fin(f: &FiniteRing, x: u32) -> String {
    match &f.node {
        Node::ZMod(_) => x.to_string(),
        Node::PolyQuot { base, var, .. } => fmt_poly(base, &f.poly_coeffs(x), var),
        Node::Product { .. } => {
            let parts: Vec<String> = f
                .components(x)
                .into_iter()
                .zip(match &f.node {
                    Node::Product { factors } => factors.iter(),
                    _ => unreachable!(),
                })
                .map(|(c, fac)| fmt_fin(fac, c))
                .collect();
            format!("[{}]", parts.join(", "))
        }
        Node::Quotient { parent, lift, .. } => fmt_fin(parent, lift[x as usize]),
    }
}

pub(crate) fn fmt_poly(base: &FiniteRing, coeffs: &[u32], var: &str) -> String {
    let mut parts = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let s = fmt_fin(base, c);
        let s = if s.contains('+') { format!("({s})") } else { s };
        parts.push(if i == 0 {
            s
        } else if c == base.one() {
            mono
        } else if s.chars().all(|ch| ch.is_ascii_digit()) {
            format!("{s}{mono}")
        } else {
            format!("{s}*{mono}")
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::ZMod { n } => write!(f, "Z/{n}"),
            RingDescriptor::IntegerRing => write!(f, "Z"),
            RingDescriptor::PolyRing { p, var } => write!(f, "F{p}[{var}]"),
            RingDescriptor::Product { factors } => {
                let parts: Vec<String> = factors
                    .iter()
                    .map(|x| match x {
                        RingDescriptor::Product { .. } | RingDescriptor::Quotient { .. } => format!("({x})"),
                        _ => x.to_string(),
                    })
                    .collect();
                write!(f, "{}", parts.join(" * "))
            }
            RingDescriptor::PolyQuot { base, var, modulus } => {
                let b = match **base {
                    RingDescriptor::Product { .. } | RingDescriptor::Quotient { .. } => format!("({base})"),
                    _ => base.to_string(),
                };
                let poly = match build_finite(base, &Limits { ring_size: u64::MAX, ..Limits::default() }) {
                    Ok(br) => fmt_poly(&br, modulus, var),
                    Err(_) => format!("{modulus:?}"),
                };
                write!(f, "{b}[{var}]/({poly})")
            }
            RingDescriptor::Quotient { base, ideal } => {
                let gens = match build_finite(base, &Limits { ring_size: u64::MAX, ..Limits::default() }) {
                    Ok(br) => ideal.iter().map(|&g| fmt_fin(&br, g)).collect::<Vec<_>>().join(", "),
                    Err(_) => format!("{ideal:?}"),
                };
                write!(f, "({base})/({gens})")
            }
        }
    }
}

struct FinAlg<'a>(&'a FiniteRing);

impl Algebra for FinAlg<'_> {
    type V = u32;
    fn from_int(&self, n: &BigInt, _pos: usize) -> Result<u32> {
        let e = BigInt::from(self.0.exponent().max(1));
        Ok(self.0.from_int(n.mod_floor(&e).to_i64().unwrap()))
    }
    fn var(&self, name: &str, pos: usize) -> Result<u32> {
        let f = self.0;
        match &f.node {
            Node::PolyQuot { base, var, .. } => {
                if name == var {
                    Ok(f.reduce_poly(vec![0, base.one()]))
                } else {
                    FinAlg(base).var(name, pos)
                }
            }
            Node::Quotient { parent, proj, .. } => Ok(proj[FinAlg(parent).var(name, pos)? as usize]),
            _ => Err(unknown_var(name, pos, &["integer", "["])),
        }
    }
    fn tuple(&self, items: &[Expr], pos: usize) -> Result<u32> {
        let f = self.0;
        match &f.node {
            Node::Product { factors } => {
                if items.len() != factors.len() {
                    return Err(Error::Parse(crate::error::ParseError::new(
                        pos,
                        &["tuple with one entry per factor"],
                        format!("expected {} components", factors.len()),
                    )));
                }
                let c = items
                    .iter()
                    .zip(factors)
                    .map(|(e, fac)| eval(&FinAlg(fac), e))
                    .collect::<Result<Vec<u32>>>()?;
                Ok(f.from_components(&c))
            }
            Node::Quotient { parent, proj, .. } => Ok(proj[FinAlg(parent).tuple(items, pos)? as usize]),
            // a constant polynomial whose coefficient is a product element
            Node::PolyQuot { base, .. } => FinAlg(base).tuple(items, pos),
            Node::ZMod(_) => Err(Error::Parse(crate::error::ParseError::new(pos, &["integer"], "tuples need a product ring"))),
        }
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        self.0.add(*a, *b)
    }
    fn neg(&self, a: &u32) -> u32 {
        self.0.neg(*a)
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.0.mul(*a, *b)
    }
}

/// Polynomials over a finite base in one new variable (used for moduli).
pub(crate) struct PolyOver<'a> {
    pub base: &'a FiniteRing,
    pub var: &'a str,
}

impl Algebra for PolyOver<'_> {
    type V = Vec<u32>;
    fn from_int(&self, n: &BigInt, pos: usize) -> Result<Vec<u32>> {
        Ok(vec![FinAlg(self.base).from_int(n, pos)?])
    }
    fn var(&self, name: &str, pos: usize) -> Result<Vec<u32>> {
        if name == self.var {
            Ok(vec![0, self.base.one()])
        } else {
            Ok(vec![FinAlg(self.base).var(name, pos)?])
        }
    }
    fn tuple(&self, items: &[Expr], pos: usize) -> Result<Vec<u32>> {
        Ok(vec![FinAlg(self.base).tuple(items, pos)?])
    }
    fn add(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        let n = a.len().max(b.len());
        let mut v: Vec<u32> = (0..n)
            .map(|i| self.base.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        while v.len() > 1 && v.last() == Some(&0) {
            v.pop();
        }
        v
    }
    fn neg(&self, a: &Vec<u32>) -> Vec<u32> {
        a.iter().map(|&x| self.base.neg(x)).collect()
    }
    fn mul(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        let mut v = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                v[i + j] = self.base.add(v[i + j], self.base.mul(x, y));
            }
        }
        while v.len() > 1 && v.last() == Some(&0) {
            v.pop();
        }
        v
    }
}

struct IntAlg;

impl Algebra for IntAlg {
    type V = BigInt;
    fn from_int(&self, n: &BigInt, _: usize) -> Result<BigInt> {
        Ok(n.clone())
    }
    fn var(&self, name: &str, pos: usize) -> Result<BigInt> {
        Err(unknown_var(name, pos, &["integer"]))
    }
    fn tuple(&self, _: &[Expr], pos: usize) -> Result<BigInt> {
        Err(Error::Parse(crate::error::ParseError::new(pos, &["integer"], "tuples need a product ring")))
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
}

struct FpAlg<'a> {
    p: u64,
    var: &'a str,
}

impl Algebra for FpAlg<'_> {
    type V = FpPoly;
    fn from_int(&self, n: &BigInt, _: usize) -> Result<FpPoly> {
        let r = n.mod_floor(&BigInt::from(self.p)).to_u64().unwrap();
        Ok(FpPoly::constant(r, self.p))
    }
    fn var(&self, name: &str, pos: usize) -> Result<FpPoly> {
        if name == self.var {
            Ok(FpPoly::x())
        } else {
            Err(unknown_var(name, pos, &[self.var]))
        }
    }
    fn tuple(&self, _: &[Expr], pos: usize) -> Result<FpPoly> {
        Err(Error::Parse(crate::error::ParseError::new(pos, &[self.var], "tuples need a product ring")))
    }
    fn add(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        a.add(b, self.p)
    }
    fn neg(&self, a: &FpPoly) -> FpPoly {
        a.neg(self.p)
    }
    fn mul(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        a.mul(b, self.p)
    }
}

pub(crate) fn build_finite_for_parse(desc: &RingDescriptor) -> Result<Arc<FiniteRing>> {
    build_finite(desc, &Limits::from_env())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> Ring {
        Ring::new(RingDescriptor::ZMod { n }).unwrap()
    }

    #[test]
    fn idempotents_of_z12() {
        let r = z(12);
        let e: Vec<u32> = r.idempotents().unwrap().iter().map(|x| x.fin()).collect();
        assert_eq!(e, vec![0, 1, 4, 9]);
        let e8: Vec<u32> = z(8).idempotents().unwrap().iter().map(|x| x.fin()).collect();
        assert_eq!(e8, vec![0, 1]);
    }

    #[test]
    fn local_factors_of_z12() {
        let lf = z(12).local_factors().unwrap();
        let v: Vec<(u32, u64)> = lf.iter().map(|(e, r)| (e.fin(), r.size().unwrap())).collect();
        assert_eq!(v, vec![(4, 3), (9, 4)]);
    }

    #[test]
    fn local_factors_of_field_and_product() {
        let f4 = Ring::parse("F4").unwrap();
        let lf = f4.local_factors().unwrap();
        assert_eq!(lf.len(), 1);
        assert_eq!(lf[0].1.size(), Some(4));
        let p = Ring::parse("Z/2 * Z/2").unwrap();
        let lf = p.local_factors().unwrap();
        assert_eq!(lf.iter().map(|x| x.1.size().unwrap()).collect::<Vec<_>>(), vec![2, 2]);
    }

    #[test]
    fn guard_and_modulus_errors() {
        let big = Ring::new(RingDescriptor::ZMod { n: 5000 });
        assert!(matches!(big, Err(Error::GuardExceeded { .. })));
        let bad = Ring::new(RingDescriptor::PolyQuot {
            base: Box::new(RingDescriptor::ZMod { n: 4 }),
            var: "y".into(),
            modulus: vec![1, 2],
        });
        assert!(matches!(bad, Err(Error::InvalidModulus(_))));
        let deep = Ring::parse("F2[x]/(x^2)[y]/(y^2)[z]/(z^2)");
        assert!(matches!(deep, Err(Error::DepthExceeded(3))));
    }

    #[test]
    fn format_parse_round_trip() {
        for text in ["Z/12", "F4", "F2[x]/(x^2)", "Z/4 * F3", "F4[y]/(y^2+x)", "Z/4[y]/(y^2)"] {
            let r = Ring::parse(text).unwrap();
            for e in r.elements().unwrap() {
                let s = r.format(&e);
                assert_eq!(r.parse_element(&s).unwrap(), e, "{text}: {s}");
            }
        }
    }
}
