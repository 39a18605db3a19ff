//! Prime factorization in Z and F_p[x] by trial division.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::euclid::{Euclidean, FpPolys};
use super::poly::FpPoly;
use super::{Element, PidKind, Ring};

/// Normalized prime factors with multiplicities; empty for units, `None` for zero.
pub fn factor(ring: &Ring, a: &Element) -> Option<Vec<(Element, u32)>> {
    match (ring.pid_kind()?, a) {
        (PidKind::Integers, Element::Int(n)) => {
            if n.is_zero() {
                return None;
            }
            let mut m = n.abs();
            let mut out = Vec::new();
            let mut d = BigInt::from(2);
            while &d * &d <= m {
                let mut k = 0;
                while (&m % &d).is_zero() {
                    m /= &d;
                    k += 1;
                }
                if k > 0 {
                    out.push((Element::Int(d.clone()), k));
                }
                d += 1;
            }
            if !m.is_one() {
                out.push((Element::Int(m), 1));
            }
            Some(out)
        }
        (PidKind::FpPolys(p), Element::Poly(f)) => {
            if f.is_zero() {
                return None;
            }
            let dom = FpPolys { p };
            let mut m = f.monic(p);
            let mut out = Vec::new();
            let mut deg = 1;
            while m.degree().unwrap_or(0) >= 2 * deg {
                for g in FpPoly::monics(deg, p) {
                    let mut k = 0;
                    loop {
                        let (q, r) = dom.div_rem(&m, &g);
                        if !r.is_zero() {
                            break;
                        }
                        m = q;
                        k += 1;
                    }
                    if k > 0 {
                        out.push((Element::Poly(g), k));
                    }
                }
                deg += 1;
            }
            if m.degree().unwrap_or(0) > 0 {
                out.push((Element::Poly(m), 1));
            }
            out.sort();
            Some(out)
        }
        _ => None,
    }
}

pub fn is_prime_element(ring: &Ring, a: &Element) -> bool {
    match factor(ring, a) {
        Some(f) => f.len() == 1 && f[0].1 == 1,
        None => false,
    }
}

/// gcd in the PID, normalized.
pub fn pid_gcd(ring: &Ring, a: &Element, b: &Element) -> Element {
    match (ring.pid_kind(), a, b) {
        (Some(PidKind::Integers), Element::Int(x), Element::Int(y)) => Element::Int(x.gcd(y)),
        (Some(PidKind::FpPolys(p)), Element::Poly(x), Element::Poly(y)) => Element::Poly(FpPolys { p }.gcd(x, y)),
        _ => panic!("gcd needs a PID"),
    }
}

pub fn pid_lcm(ring: &Ring, a: &Element, b: &Element) -> Element {
    match (ring.pid_kind(), a, b) {
        (Some(PidKind::Integers), Element::Int(x), Element::Int(y)) => Element::Int(x.lcm(y)),
        (Some(PidKind::FpPolys(p)), Element::Poly(x), Element::Poly(y)) => Element::Poly(FpPolys { p }.lcm(x, y)),
        _ => panic!("lcm needs a PID"),
    }
}

/// Exact quotient `a / b` in the PID (b must divide a).
pub fn pid_div(ring: &Ring, a: &Element, b: &Element) -> Element {
    match (ring.pid_kind(), a, b) {
        (Some(PidKind::Integers), Element::Int(x), Element::Int(y)) => Element::Int(x / y),
        (Some(PidKind::FpPolys(p)), Element::Poly(x), Element::Poly(y)) => Element::Poly(FpPolys { p }.div_rem(x, y).0),
        _ => panic!("division needs a PID"),
    }
}

pub fn pid_divides(ring: &Ring, d: &Element, a: &Element) -> bool {
    match (ring.pid_kind(), d, a) {
        (Some(PidKind::Integers), Element::Int(x), Element::Int(y)) => {
            if x.is_zero() { y.is_zero() } else { (y % x).is_zero() }
        }
        (Some(PidKind::FpPolys(p)), Element::Poly(x), Element::Poly(y)) => FpPolys { p }.divides(x, y),
        _ => false,
    }
}

/// Canonical associate: non-negative integer or monic polynomial.
pub fn pid_normalize(ring: &Ring, a: &Element) -> Element {
    match (ring.pid_kind(), a) {
        (Some(PidKind::Integers), Element::Int(x)) => Element::Int(x.abs()),
        (Some(PidKind::FpPolys(p)), Element::Poly(x)) => Element::Poly(x.monic(p)),
        _ => a.clone(),
    }
}

/// Small integer value, when it fits.
pub fn as_i64(a: &Element) -> Option<i64> {
    match a {
        Element::Int(x) => x.to_i64(),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingDescriptor;

    #[test]
    fn factor_integers() {
        let z = Ring::new(RingDescriptor::IntegerRing).unwrap();
        let f = factor(&z, &Element::Int(BigInt::from(-360))).unwrap();
        let v: Vec<(i64, u32)> = f.iter().map(|(p, k)| (as_i64(p).unwrap(), *k)).collect();
        assert_eq!(v, vec![(2, 3), (3, 2), (5, 1)]);
        assert!(factor(&z, &Element::Int(BigInt::from(1))).unwrap().is_empty());
    }

    #[test]
    fn factor_polys() {
        let r = Ring::parse("F2[x]").unwrap();
        let a = r.parse_element("x^3+x").unwrap(); // x (x+1)^2
        let f = factor(&r, &a).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.iter().map(|x| x.1).sum::<u32>(), 3);
        assert!(is_prime_element(&r, &r.parse_element("x^2+x+1").unwrap()));
    }
}
