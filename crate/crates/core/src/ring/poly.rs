//! Dense polynomials over F_p, coefficients low degree first, no trailing zeros.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FpPoly {
    pub coeffs: Vec<u64>,
}

pub(crate) fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let (mut t, mut nt, mut r, mut nr) = (0i128, 1i128, p as i128, (a % p) as i128);
    while nr != 0 {
        let q = r / nr;
        (t, nt) = (nt, t - q * nt);
        (r, nr) = (nr, r - q * nr);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(p as i128) as u64)
}

impl FpPoly {
    pub fn new(mut coeffs: Vec<u64>, p: u64) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { coeffs }
    }
    pub fn zero() -> Self {
        FpPoly { coeffs: vec![] }
    }
    pub fn constant(c: u64, p: u64) -> Self {
        FpPoly::new(vec![c], p)
    }
    pub fn x() -> Self {
        FpPoly { coeffs: vec![0, 1] }
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
    pub fn lead(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }
    pub fn add(&self, o: &Self, p: u64) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&0) + o.coeffs.get(i).unwrap_or(&0))
            .collect();
        FpPoly::new(v, p)
    }
    pub fn neg(&self, p: u64) -> Self {
        FpPoly::new(self.coeffs.iter().map(|c| (p - c) % p).collect(), p)
    }
    pub fn sub(&self, o: &Self, p: u64) -> Self {
        self.add(&o.neg(p), p)
    }
    pub fn mul(&self, o: &Self, p: u64) -> Self {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero();
        }
        let mut v = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = (v[i + j] + a * b) % p;
            }
        }
        FpPoly::new(v, p)
    }
    pub fn scale(&self, c: u64, p: u64) -> Self {
        FpPoly::new(self.coeffs.iter().map(|a| a * c % p).collect(), p)
    }
    pub fn div_rem(&self, d: &Self, p: u64) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let inv = inv_mod(d.lead(), p).expect("leading coefficient invertible mod p");
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (FpPoly::zero(), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = r[i] * inv % p;
            if c == 0 {
                continue;
            }
            q[i - dd] = c;
            for (j, dc) in d.coeffs.iter().enumerate() {
                let k = i - dd + j;
                r[k] = (r[k] + p - c * dc % p) % p;
            }
        }
        (FpPoly::new(q, p), FpPoly::new(r, p))
    }
    pub fn monic(&self, p: u64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.lead(), p).unwrap(), p)
    }
    pub fn eval(&self, x: u64, p: u64) -> u64 {
        self.coeffs.iter().rev().fold(0, |acc, c| (acc * x + c) % p)
    }

    /// Monic polynomials of the given degree in increasing order of their
    /// coefficient vector read from the top down.
    pub fn monics(deg: usize, p: u64) -> impl Iterator<Item = FpPoly> {
        let count = p.pow(deg as u32);
        (0..count).map(move |mut idx| {
            let mut c = Vec::with_capacity(deg + 1);
            for _ in 0..deg {
                c.push(idx % p);
                idx /= p;
            }
            c.push(1);
            FpPoly { coeffs: c }
        })
    }

    /// Irreducibility by trial division with every monic of degree ≤ deg/2.
    pub fn is_irreducible(&self, p: u64) -> bool {
        let Some(d) = self.degree() else { return false };
        if d == 0 {
            return false;
        }
        for k in 1..=d / 2 {
            for f in FpPoly::monics(k, p) {
                if self.div_rem(&f, p).1.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn format(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            parts.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}{mono}"),
            });
        }
        parts.join("+")
    }
}

/// Least monic irreducible of degree `k` over F_p, ordered by coefficients
/// from the top down (so x^2+x+1 over F_2, x^3+x+1 over F_2, x^2+1 over F_3).
pub fn conway_like_irreducible(p: u64, k: usize) -> FpPoly {
    FpPoly::monics(k, p)
        .find(|f| f.is_irreducible(p))
        .expect("irreducibles exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_identity() {
        let p = 5;
        let a = FpPoly::new(vec![3, 0, 2, 4, 1], p);
        let b = FpPoly::new(vec![1, 2, 3], p);
        let (q, r) = a.div_rem(&b, p);
        assert_eq!(q.mul(&b, p).add(&r, p), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn chosen_irreducibles() {
        assert_eq!(conway_like_irreducible(2, 2).coeffs, vec![1, 1, 1]);
        assert_eq!(conway_like_irreducible(2, 3).coeffs, vec![1, 1, 0, 1]);
        assert_eq!(conway_like_irreducible(3, 2).coeffs, vec![1, 0, 1]);
    }

    #[test]
    fn irreducible_means_no_roots_in_low_degree() {
        for f in FpPoly::monics(3, 3) {
            let has_root = (0..3).any(|x| f.eval(x, 3) == 0);
            assert_eq!(f.is_irreducible(3), !has_root, "{f:?}");
        }
    }
}
