//! Finite commutative rings with elements encoded as mixed-radix indices
//! over additive coordinates (least significant coordinate first).

use std::sync::Arc;

use crate::abelian;

pub(crate) const TABLE_LIMIT: u64 = 1024;

#[derive(Debug)]
pub(crate) enum Node {
    ZMod(u64),
    PolyQuot { base: Arc<FiniteRing>, var: String, modulus: Vec<u32>, deg: usize },
    Product { factors: Vec<Arc<FiniteRing>> },
    Quotient { parent: Arc<FiniteRing>, proj: Vec<u32>, lift: Vec<u32> },
}

#[derive(Debug)]
pub struct FiniteRing {
    pub(crate) orders: Vec<u64>,
    pub(crate) radix: Vec<u64>,
    pub(crate) size: u64,
    pub(crate) one: u32,
    pub(crate) node: Node,
    table: Option<Vec<u32>>,
}

fn radix_of(orders: &[u64]) -> (Vec<u64>, u64) {
    let mut r = Vec::with_capacity(orders.len());
    let mut acc = 1u64;
    for &o in orders {
        r.push(acc);
        acc *= o;
    }
    (r, acc)
}

impl FiniteRing {
    fn assemble(orders: Vec<u64>, node: Node) -> FiniteRing {
        let (radix, size) = radix_of(&orders);
        let mut r = FiniteRing { orders, radix, size, one: 0, node, table: None };
        r.one = r.compute_one();
        if size <= TABLE_LIMIT {
            let n = size as u32;
            let mut t = vec![0u32; (size * size) as usize];
            for a in 0..n {
                for b in a..n {
                    let v = r.mul_raw(a, b);
                    t[(a * n + b) as usize] = v;
                    t[(b * n + a) as usize] = v;
                }
            }
            r.table = Some(t);
        }
        r
    }

    pub(crate) fn zmod(n: u64) -> FiniteRing {
        FiniteRing::assemble(vec![n], Node::ZMod(n))
    }

    /// `modulus` must be monic of degree ≥ 1 (coefficients are base indices).
    pub(crate) fn poly_quot(base: Arc<FiniteRing>, var: String, modulus: Vec<u32>) -> FiniteRing {
        let deg = modulus.len() - 1;
        let mut orders = Vec::new();
        for _ in 0..deg {
            orders.extend_from_slice(&base.orders);
        }
        FiniteRing::assemble(orders, Node::PolyQuot { base, var, modulus, deg })
    }

    pub(crate) fn product(factors: Vec<Arc<FiniteRing>>) -> FiniteRing {
        let orders = factors.iter().flat_map(|f| f.orders.clone()).collect();
        FiniteRing::assemble(orders, Node::Product { factors })
    }

    /// Quotient by the ideal whose members are `ideal` (indices of `parent`).
    pub(crate) fn quotient(parent: Arc<FiniteRing>, ideal_gens: &[u32]) -> FiniteRing {
        let mut cols = Vec::new();
        for &g in ideal_gens {
            for k in 0..parent.orders.len() {
                let b = parent.radix[k] as u32;
                cols.push(parent.coords(parent.mul(b, g)).iter().map(|&x| x as i64).collect());
            }
        }
        let q = abelian::quotient(&parent.orders, &cols);
        let (qradix, qsize) = radix_of(&q.orders);
        let mut proj = vec![0u32; parent.size as usize];
        let mut lift = vec![u32::MAX; qsize as usize];
        for x in 0..parent.size as u32 {
            let c = q.project(&parent.coords(x));
            let idx: u64 = c.iter().zip(&qradix).map(|(a, r)| a * r).sum();
            proj[x as usize] = idx as u32;
            if lift[idx as usize] == u32::MAX {
                lift[idx as usize] = x;
            }
        }
        FiniteRing::assemble(q.orders.clone(), Node::Quotient { parent, proj, lift })
    }

    fn compute_one(&self) -> u32 {
        match &self.node {
            Node::ZMod(n) => (1 % n) as u32,
            Node::PolyQuot { base, .. } => base.one,
            Node::Product { factors } => {
                let mut idx = 0u64;
                let mut mult = 1u64;
                for f in factors {
                    idx += f.one as u64 * mult;
                    mult *= f.size;
                }
                idx as u32
            }
            Node::Quotient { parent, proj, .. } => proj[parent.one as usize],
        }
    }

    pub fn size(&self) -> u64 {
        self.size
    }
    pub fn one(&self) -> u32 {
        self.one
    }
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }
    /// Index of the k-th additive basis element.
    pub fn basis(&self, k: usize) -> u32 {
        self.radix[k] as u32
    }
    pub fn exponent(&self) -> u64 {
        use num_integer::Integer;
        self.orders.iter().fold(1u64, |a, &o| a.lcm(&o))
    }

    pub fn coords(&self, x: u32) -> Vec<u64> {
        let mut x = x as u64;
        self.orders
            .iter()
            .map(|&o| {
                let d = x % o;
                x /= o;
                d
            })
            .collect()
    }

    pub fn from_coords(&self, c: &[u64]) -> u32 {
        c.iter()
            .zip(&self.orders)
            .zip(&self.radix)
            .map(|((a, o), r)| (a % o) * r)
            .sum::<u64>() as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if let [o] = self.orders[..] {
            return ((a as u64 + b as u64) % o) as u32;
        }
        let (mut x, mut y, mut out) = (a as u64, b as u64, 0u64);
        for (&o, &r) in self.orders.iter().zip(&self.radix) {
            out += ((x % o + y % o) % o) * r;
            x /= o;
            y /= o;
        }
        out as u32
    }

    pub fn neg(&self, a: u32) -> u32 {
        let (mut x, mut out) = (a as u64, 0u64);
        for (&o, &r) in self.orders.iter().zip(&self.radix) {
            out += ((o - x % o) % o) * r;
            x /= o;
        }
        out as u32
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    /// n·1 for an integer n.
    pub fn from_int(&self, n: i64) -> u32 {
        let e = self.exponent() as i64;
        let k = n.rem_euclid(e.max(1)) as u64;
        self.scale_int(self.one, k)
    }

    /// k·a by repeated doubling.
    pub fn scale_int(&self, a: u32, mut k: u64) -> u32 {
        let (mut acc, mut base) = (0u32, a);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.table {
            Some(t) => t[(a as u64 * self.size + b as u64) as usize],
            None => self.mul_raw(a, b),
        }
    }

    fn mul_raw(&self, a: u32, b: u32) -> u32 {
        match &self.node {
            Node::ZMod(n) => ((a as u64 * b as u64) % n) as u32,
            Node::PolyQuot { base, deg, .. } => {
                let pa = self.poly_coeffs(a);
                let pb = self.poly_coeffs(b);
                let mut prod = vec![0u32; 2 * deg - 1];
                for (i, &x) in pa.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    for (j, &y) in pb.iter().enumerate() {
                        prod[i + j] = base.add(prod[i + j], base.mul(x, y));
                    }
                }
                self.reduce_poly(prod)
            }
            Node::Product { factors } => {
                let (mut x, mut y) = (a as u64, b as u64);
                let (mut out, mut mult) = (0u64, 1u64);
                for f in factors {
                    let (xa, ya) = ((x % f.size) as u32, (y % f.size) as u32);
                    out += f.mul(xa, ya) as u64 * mult;
                    mult *= f.size;
                    x /= f.size;
                    y /= f.size;
                }
                out as u32
            }
            Node::Quotient { parent, proj, lift } => {
                proj[parent.mul(lift[a as usize], lift[b as usize]) as usize]
            }
        }
    }

    /// Reduce a coefficient list of any length modulo the (monic) modulus.
    pub(crate) fn reduce_poly(&self, mut prod: Vec<u32>) -> u32 {
        let Node::PolyQuot { base, modulus, deg, .. } = &self.node else {
            panic!("not a polynomial quotient")
        };
        for i in (*deg..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for (j, &m) in modulus.iter().enumerate() {
                let k = i - deg + j;
                prod[k] = base.sub(prod[k], base.mul(c, m));
            }
        }
        prod.resize(*deg, 0);
        self.from_poly_coeffs(&prod)
    }

    /// Coefficients (base indices, low degree first) of a PolyQuot element.
    pub(crate) fn poly_coeffs(&self, a: u32) -> Vec<u32> {
        let Node::PolyQuot { base, deg, .. } = &self.node else {
            panic!("not a polynomial quotient")
        };
        let mut x = a as u64;
        (0..*deg)
            .map(|_| {
                let c = x % base.size;
                x /= base.size;
                c as u32
            })
            .collect()
    }

    pub(crate) fn from_poly_coeffs(&self, c: &[u32]) -> u32 {
        let Node::PolyQuot { base, .. } = &self.node else {
            panic!("not a polynomial quotient")
        };
        let mut out = 0u64;
        for &x in c.iter().rev() {
            out = out * base.size + x as u64;
        }
        out as u32
    }

    /// Component indices of a Product element.
    pub(crate) fn components(&self, a: u32) -> Vec<u32> {
        let Node::Product { factors } = &self.node else { panic!("not a product") };
        let mut x = a as u64;
        factors
            .iter()
            .map(|f| {
                let c = x % f.size;
                x /= f.size;
                c as u32
            })
            .collect()
    }

    pub(crate) fn from_components(&self, c: &[u32]) -> u32 {
        let Node::Product { factors } = &self.node else { panic!("not a product") };
        let (mut out, mut mult) = (0u64, 1u64);
        for (f, &x) in factors.iter().zip(c) {
            out += x as u64 * mult;
            mult *= f.size;
        }
        out as u32
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.size as u32
    }

    pub fn pow(&self, a: u32, mut k: u32) -> u32 {
        let (mut acc, mut base) = (self.one, a);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn is_unit(&self, a: u32) -> bool {
        self.elements().any(|b| self.mul(a, b) == self.one)
    }

    pub fn inverse(&self, a: u32) -> Option<u32> {
        self.elements().find(|&b| self.mul(a, b) == self.one)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zmod_arith() {
        let r = FiniteRing::zmod(12);
        assert_eq!(r.mul(5, 7), 11);
        assert_eq!(r.add(5, 9), 2);
        assert_eq!(r.neg(5), 7);
        assert_eq!(r.from_int(-1), 11);
    }

    #[test]
    fn f4_is_a_field() {
        let f4 = FiniteRing::poly_quot(Arc::new(FiniteRing::zmod(2)), "x".into(), vec![1, 1, 1]);
        assert_eq!(f4.size(), 4);
        for a in 1..4 {
            for b in 1..4 {
                assert_ne!(f4.mul(a, b), 0);
            }
        }
    }

    #[test]
    fn quotient_of_z12_by_3() {
        let z12 = Arc::new(FiniteRing::zmod(12));
        let q = FiniteRing::quotient(z12, &[3]);
        assert_eq!(q.size(), 3);
        assert_eq!(q.mul(q.one(), q.one()), q.one());
    }
}
