//! Finitely generated modules over Z and F_p[x] in invariant-factor form.

use crate::filter::PrimeSet;
use crate::ring::euclid::{Euclidean, FpPolys, Integers};
use crate::ring::factor::{factor, pid_div, pid_gcd, pid_normalize};
use crate::ring::{Element, PidKind, Ring};
use crate::snf::{smith_normal_form, Smith};

/// Smith normal form of a matrix of ring elements over a PID.
pub fn snf(ring: &Ring, a: &[Vec<Element>], m: usize, n: usize) -> Smith<Element> {
    fn run<D: Euclidean>(
        d: &D,
        a: &[Vec<Element>],
        m: usize,
        n: usize,
        un: impl Fn(&Element) -> D::E,
        wrap: impl Fn(D::E) -> Element,
    ) -> Smith<Element> {
        let mat: Vec<Vec<D::E>> = a.iter().map(|r| r.iter().map(&un).collect()).collect();
        let s = smith_normal_form(d, &mat, m, n);
        let conv = |x: Vec<Vec<D::E>>| -> Vec<Vec<Element>> {
            x.into_iter().map(|r| r.into_iter().map(&wrap).collect()).collect()
        };
        Smith { u: conv(s.u), s: conv(s.s), v: conv(s.v) }
    }
    match ring.pid_kind().expect("PID ring") {
        PidKind::Integers => run(
            &Integers,
            a,
            m,
            n,
            |e| match e {
                Element::Int(x) => x.clone(),
                _ => panic!("integer expected"),
            },
            Element::Int,
        ),
        PidKind::FpPolys(p) => run(
            &FpPolys { p },
            a,
            m,
            n,
            |e| match e {
                Element::Poly(x) => x.clone(),
                _ => panic!("polynomial expected"),
            },
            Element::Poly,
        ),
    }
}

/// `⊕ R/(d_i) ⊕ R^rank` with `d_1 | d_2 | …`, each `d_i` a normalized non-unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PidModule {
    pub factors: Vec<Element>,
    pub rank: usize,
}

impl PidModule {
    /// Cokernel of a `g × r` relation matrix (columns are relators).
    pub fn from_presentation(ring: &Ring, g: usize, relations: &[Vec<Element>]) -> PidModule {
        let r = relations.len();
        let a: Vec<Vec<Element>> = (0..g).map(|i| relations.iter().map(|c| c[i].clone()).collect()).collect();
        let s = snf(ring, &a, g, r);
        let diag = s.diagonal();
        let mut factors = Vec::new();
        let mut rank = g - diag.len().min(g);
        for d in diag {
            if ring.is_zero(&d) {
                rank += 1;
            } else if !ring.is_unit(&d) {
                factors.push(pid_normalize(ring, &d));
            }
        }
        PidModule { factors, rank }
    }

    pub fn cyclic(ring: &Ring, g: &Element) -> PidModule {
        PidModule::from_presentation(ring, 1, &[vec![g.clone()]])
    }

    pub fn is_zero(&self) -> bool {
        self.factors.is_empty() && self.rank == 0
    }

    /// Multiplication by `g` is onto.
    pub fn is_divisible_by(&self, ring: &Ring, g: &Element) -> bool {
        if ring.is_unit(g) {
            return true;
        }
        self.rank == 0 && self.factors.iter().all(|d| ring.is_unit(&pid_gcd(ring, g, d)))
    }

    /// Torsion submodule for the filter given by `(contains_zero, primes)`.
    pub fn torsion_part(&self, ring: &Ring, contains_zero: bool, primes: &PrimeSet) -> PidModule {
        if contains_zero {
            return self.clone();
        }
        let mut factors = Vec::new();
        for d in &self.factors {
            let mut part = ring.one();
            for (p, k) in factor(ring, d).unwrap_or_default() {
                if primes.contains(&p) {
                    for _ in 0..k {
                        part = ring.mul(&part, &p);
                    }
                }
            }
            if !ring.is_unit(&part) {
                factors.push(part);
            }
        }
        // re-establish the divisibility chain
        PidModule::from_presentation(
            ring,
            factors.len(),
            &(0..factors.len())
                .map(|i| (0..factors.len()).map(|j| if i == j { factors[i].clone() } else { ring.zero() }).collect())
                .collect::<Vec<_>>(),
        )
    }

    /// `M / t(M)`, with `t` as in [`PidModule::torsion_part`].
    pub fn torsionfree_quotient(&self, ring: &Ring, contains_zero: bool, primes: &PrimeSet) -> PidModule {
        if contains_zero {
            return PidModule { factors: vec![], rank: 0 };
        }
        let mut rest = Vec::new();
        for d in &self.factors {
            let mut q = d.clone();
            for (p, _) in factor(ring, d).unwrap_or_default() {
                if primes.contains(&p) {
                    while crate::ring::factor::pid_divides(ring, &p, &q) {
                        q = pid_div(ring, &q, &p);
                    }
                }
            }
            if !ring.is_unit(&q) {
                rest.push(q);
            }
        }
        let n = rest.len() + self.rank;
        let rels: Vec<Vec<Element>> = (0..rest.len())
            .map(|i| (0..n).map(|j| if i == j { rest[i].clone() } else { ring.zero() }).collect())
            .collect();
        PidModule::from_presentation(ring, n, &rels)
    }

    pub fn format(&self, ring: &Ring) -> String {
        let r = ring.to_string();
        let mut parts: Vec<String> = self.factors.iter().map(|d| format!("{r}/({})", ring.format(d))).collect();
        if self.rank > 0 {
            parts.push(if self.rank == 1 { r.clone() } else { format!("{r}^{}", self.rank) });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" (+) ")
        }
    }
}

/// Whether `σ^T : C^b → C^a` is onto for `C = R/(d)` (`d = 0` meaning `R`).
pub(crate) fn transpose_onto_cyclic(ring: &Ring, sigma: &[Vec<Element>], a: usize, b: usize, d: &Element) -> bool {
    if !ring.is_zero(d) && ring.is_unit(d) {
        return true;
    }
    // σ is b×a; its transpose is a×b
    let t: Vec<Vec<Element>> = (0..a).map(|i| (0..b).map(|j| sigma[j][i].clone()).collect()).collect();
    let s = snf(ring, &t, a, b);
    let diag = s.diagonal();
    (0..a).all(|i| diag.get(i).is_some_and(|s| unit_mod(ring, s, d)))
}

/// Whether `σ : C^a → C^b` is injective for `C = R/(d)`.
pub(crate) fn injective_on_cyclic(ring: &Ring, sigma: &[Vec<Element>], a: usize, b: usize, d: &Element) -> bool {
    if !ring.is_zero(d) && ring.is_unit(d) {
        return true;
    }
    let s = snf(ring, sigma, b, a);
    let diag = s.diagonal();
    (0..a).all(|i| {
        diag.get(i).is_some_and(|s| {
            if ring.is_zero(d) {
                !ring.is_zero(s)
            } else {
                ring.is_unit(&pid_gcd(ring, s, d))
            }
        })
    })
}

fn unit_mod(ring: &Ring, s: &Element, d: &Element) -> bool {
    if ring.is_zero(d) {
        ring.is_unit(s)
    } else {
        ring.is_unit(&pid_gcd(ring, s, d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn z(n: i64) -> Element {
        Element::Int(BigInt::from(n))
    }

    #[test]
    fn invariant_factors_over_z() {
        let r = Ring::parse("Z").unwrap();
        let m = PidModule::from_presentation(&r, 2, &[vec![z(2), z(0)], vec![z(0), z(3)]]);
        assert_eq!(m.factors, vec![z(6)]);
        assert_eq!(m.rank, 0);
        let c = PidModule::cyclic(&r, &z(6));
        assert_eq!(c.factors, vec![z(6)]);
        let free = PidModule::from_presentation(&r, 2, &[vec![z(2), z(0)]]);
        assert_eq!((free.factors.clone(), free.rank), (vec![z(2)], 1));
        assert_eq!(free.format(&r), "Z/(2) (+) Z");
    }

    #[test]
    fn torsion_of_z_plus_z2() {
        let r = Ring::parse("Z").unwrap();
        let m = PidModule { factors: vec![z(2)], rank: 1 };
        let t = m.torsion_part(&r, false, &PrimeSet::Finite(vec![z(2)]));
        assert_eq!(t, PidModule { factors: vec![z(2)], rank: 0 });
        let q = m.torsionfree_quotient(&r, false, &PrimeSet::Finite(vec![z(2)]));
        assert_eq!(q, PidModule { factors: vec![], rank: 1 });
        assert!(!m.is_divisible_by(&r, &z(3)));
        assert!(PidModule::cyclic(&r, &z(4)).is_divisible_by(&r, &z(3)));
    }
}
