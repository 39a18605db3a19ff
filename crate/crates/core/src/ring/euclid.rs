//! The two Euclidean domains handled symbolically: Z and F_p[x].

use std::fmt::Debug;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{inv_mod, FpPoly};

pub trait Euclidean: Sync + Send {
    type E: Clone + PartialEq + Eq + Debug + Send + Sync;

    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn div_rem(&self, a: &Self::E, b: &Self::E) -> (Self::E, Self::E);
    /// Euclidean size; strictly drops from divisor to nonzero remainder.
    fn size(&self, a: &Self::E) -> BigUint;
    /// Canonical associate `c` and the unit `u` with `c = u·a`.
    fn normalize(&self, a: &Self::E) -> (Self::E, Self::E);

    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E {
        self.add(a, &self.neg(b))
    }
    fn is_unit(&self, a: &Self::E) -> bool {
        !self.is_zero(a) && self.size(a) == self.size(&self.one())
    }
    fn divides(&self, d: &Self::E, a: &Self::E) -> bool {
        if self.is_zero(d) {
            return self.is_zero(a);
        }
        self.is_zero(&self.div_rem(a, d).1)
    }
    fn gcd(&self, a: &Self::E, b: &Self::E) -> Self::E {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !self.is_zero(&y) {
            let r = self.div_rem(&x, &y).1;
            x = y;
            y = r;
        }
        self.normalize(&x).0
    }
    /// (g, s, t) with s·a + t·b = g, g normalized.
    fn ext_gcd(&self, a: &Self::E, b: &Self::E) -> (Self::E, Self::E, Self::E) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), self.zero());
        let (mut t0, mut t1) = (self.zero(), self.one());
        while !self.is_zero(&r1) {
            let (q, r) = self.div_rem(&r0, &r1);
            r0 = std::mem::replace(&mut r1, r);
            let ns = self.sub(&s0, &self.mul(&q, &s1));
            s0 = std::mem::replace(&mut s1, ns);
            let nt = self.sub(&t0, &self.mul(&q, &t1));
            t0 = std::mem::replace(&mut t1, nt);
        }
        let (g, u) = self.normalize(&r0);
        (g, self.mul(&u, &s0), self.mul(&u, &t0))
    }
    fn lcm(&self, a: &Self::E, b: &Self::E) -> Self::E {
        if self.is_zero(a) || self.is_zero(b) {
            return self.zero();
        }
        let g = self.gcd(a, b);
        let q = self.div_rem(a, &g).0;
        self.normalize(&self.mul(&q, b)).0
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Integers;

impl Euclidean for Integers {
    type E = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
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
    fn div_rem(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        a.div_mod_floor(b)
    }
    fn size(&self, a: &BigInt) -> BigUint {
        a.magnitude().clone()
    }
    fn normalize(&self, a: &BigInt) -> (BigInt, BigInt) {
        if a.sign() == Sign::Minus {
            (a.abs(), -BigInt::one())
        } else {
            (a.clone(), BigInt::one())
        }
    }
}

/// F_p[x].
#[derive(Debug, Clone, Copy)]
pub struct FpPolys {
    pub p: u64,
}

impl Euclidean for FpPolys {
    type E = FpPoly;
    fn zero(&self) -> FpPoly {
        FpPoly::zero()
    }
    fn one(&self) -> FpPoly {
        FpPoly::constant(1, self.p)
    }
    fn is_zero(&self, a: &FpPoly) -> bool {
        a.is_zero()
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
    fn div_rem(&self, a: &FpPoly, b: &FpPoly) -> (FpPoly, FpPoly) {
        a.div_rem(b, self.p)
    }
    fn size(&self, a: &FpPoly) -> BigUint {
        BigUint::from(a.coeffs.len())
    }
    fn normalize(&self, a: &FpPoly) -> (FpPoly, FpPoly) {
        if a.is_zero() {
            return (a.clone(), self.one());
        }
        let u = inv_mod(a.lead(), self.p).unwrap();
        (a.scale(u, self.p), FpPoly::constant(u, self.p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bezout_over_z() {
        let z = Integers;
        let (g, s, t) = z.ext_gcd(&BigInt::from(-84), &BigInt::from(30));
        assert_eq!(g, BigInt::from(6));
        assert_eq!(s * BigInt::from(-84) + t * BigInt::from(30), g);
        assert_eq!(z.lcm(&BigInt::from(4), &BigInt::from(6)), BigInt::from(12));
    }

    #[test]
    fn bezout_over_fp_x() {
        let r = FpPolys { p: 3 };
        let a = FpPoly::new(vec![2, 0, 1], 3); // x^2 - 1
        let b = FpPoly::new(vec![1, 1], 3); // x + 1
        let (g, s, t) = r.ext_gcd(&a, &b);
        assert_eq!(g, FpPoly::new(vec![1, 1], 3));
        assert_eq!(r.add(&r.mul(&s, &a), &r.mul(&t, &b)), g);
    }
}
