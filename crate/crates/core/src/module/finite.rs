//! Finite modules as `⊕ Z/d_i` with the action of each additive generator of
//! the ring stored as an integer matrix. Elements of enumerable modules are
//! mixed-radix indices over the coordinates, least significant first.

use std::sync::{Arc, OnceLock};

use num_integer::Integer;

use crate::abelian::{self, GroupQuotient};
use crate::error::{guard, Error, Result};
use crate::ring::{FiniteRing, Ring};

const TABLE_CELLS: u64 = 1 << 22;

#[derive(Debug, Default)]
struct Caches {
    scalar: OnceLock<Option<Vec<u32>>>,
    gens: OnceLock<Vec<u32>>,
}

#[derive(Debug, Clone)]
pub struct FiniteModule {
    ring: Ring,
    orders: Vec<u64>,
    radix: Vec<u64>,
    size: Option<u64>,
    /// `action[k][t]`: coordinates of `b_k · u_t`.
    action: Arc<Vec<Vec<Vec<u64>>>>,
    /// Elements to prefer as generators (e.g. presentation generators).
    preferred: Arc<Vec<Vec<u64>>>,
    caches: Arc<Caches>,
}

/// A submodule together with its embedding.
#[derive(Debug, Clone)]
pub struct Submodule {
    pub module: FiniteModule,
    /// Submodule index ↦ parent index.
    pub incl: Vec<u32>,
    /// Parent index ↦ submodule index, `u32::MAX` outside.
    pub index_of: Vec<u32>,
}

/// A quotient module together with the projection on coordinates.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub module: FiniteModule,
    pub map: GroupQuotient,
}

impl FiniteModule {
    pub(crate) fn from_parts(ring: &Ring, orders: Vec<u64>, action: Vec<Vec<Vec<u64>>>, preferred: Vec<Vec<u64>>) -> FiniteModule {
        let mut radix = Vec::with_capacity(orders.len());
        let mut acc: Option<u64> = Some(1);
        for &o in &orders {
            radix.push(acc.unwrap_or(0));
            acc = acc.and_then(|a| a.checked_mul(o)).filter(|&a| a <= u32::MAX as u64);
        }
        FiniteModule {
            ring: ring.clone(),
            orders,
            radix,
            size: acc,
            action: Arc::new(action),
            preferred: Arc::new(preferred),
            caches: Arc::default(),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }
    pub(crate) fn fr(&self) -> &FiniteRing {
        self.ring.fin().expect("finite module over a finite ring")
    }

    pub fn zero(ring: &Ring) -> FiniteModule {
        let k = ring.fin().map_or(0, |f| f.orders().len());
        FiniteModule::from_parts(ring, vec![], vec![vec![]; k], vec![])
    }

    /// `R^g` (possibly too large to enumerate; coordinates still work).
    pub fn free(ring: &Ring, g: usize) -> FiniteModule {
        let f = ring.fin().expect("finite ring");
        let kk = f.orders().len();
        let mut orders = Vec::new();
        for _ in 0..g {
            orders.extend_from_slice(f.orders());
        }
        let d = orders.len();
        let mut action = vec![vec![vec![0u64; d]; d]; kk];
        for (k, act) in action.iter_mut().enumerate() {
            for j in 0..g {
                for k2 in 0..kk {
                    let prod = f.coords(f.mul(f.basis(k), f.basis(k2)));
                    let col = &mut act[j * kk + k2];
                    for (k3, &c) in prod.iter().enumerate() {
                        col[j * kk + k3] = c;
                    }
                }
            }
        }
        let preferred = (0..g)
            .map(|j| {
                let mut v = vec![0u64; d];
                for (k3, &c) in f.coords(f.one()).iter().enumerate() {
                    v[j * kk + k3] = c;
                }
                v
            })
            .collect();
        FiniteModule::from_parts(ring, orders, action, preferred)
    }

    /// Coordinates of a tuple of ring elements in `R^g`.
    pub fn free_coords(ring: &Ring, tuple: &[u32]) -> Vec<u64> {
        let f = ring.fin().unwrap();
        tuple.iter().flat_map(|&x| f.coords(x)).collect()
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1u64, |a, &o| a.lcm(&o))
    }
    /// Cardinality, when it fits in 32 bits.
    pub fn size(&self) -> Option<u64> {
        self.size
    }
    pub fn size_big(&self) -> num_bigint::BigUint {
        self.orders.iter().fold(num_bigint::BigUint::from(1u32), |a, &o| a * o)
    }
    /// Cardinality, failing unless the module may be enumerated.
    pub fn enum_size(&self) -> Result<u64> {
        let limit = self.ring.limits().module_size;
        match self.size {
            Some(s) if s <= limit => Ok(s),
            _ => Err(guard("module enumeration", self.size_big(), limit)),
        }
    }
    pub fn is_zero(&self) -> bool {
        self.orders.is_empty()
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

    pub fn index(&self, c: &[u64]) -> u32 {
        c.iter().zip(&self.orders).zip(&self.radix).map(|((a, o), r)| (a % o) * r).sum::<u64>() as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
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

    pub fn mul_int(&self, a: u32, k: u64) -> u32 {
        let c: Vec<u64> = self.coords(a).iter().zip(&self.orders).map(|(x, o)| (x * (k % o)) % o).collect();
        self.index(&c)
    }

    /// Action of the k-th additive ring generator on coordinates.
    pub fn act_coords(&self, k: usize, c: &[u64]) -> Vec<u64> {
        let mut out = vec![0u128; self.orders.len()];
        for (t, &ct) in c.iter().enumerate() {
            if ct == 0 {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                *o += ct as u128 * self.action[k][t][i] as u128;
            }
        }
        out.iter().zip(&self.orders).map(|(v, &o)| (v % o as u128) as u64).collect()
    }

    /// `r · c` for a ring element `r` on coordinates.
    pub fn scale_coords(&self, r: u32, c: &[u64]) -> Vec<u64> {
        let f = self.fr();
        let rc = f.coords(r);
        let mut out = vec![0u64; self.orders.len()];
        for (k, &rk) in rc.iter().enumerate() {
            if rk == 0 {
                continue;
            }
            let v = self.act_coords(k, c);
            for i in 0..out.len() {
                out[i] = (out[i] + rk * v[i]) % self.orders[i];
            }
        }
        out
    }

    fn scalar_table(&self) -> Option<&Vec<u32>> {
        self.caches
            .scalar
            .get_or_init(|| {
                let n = self.size?;
                let rs = self.fr().size();
                if n * rs > TABLE_CELLS {
                    return None;
                }
                let mut t = vec![0u32; (n * rs) as usize];
                for m in 0..n as u32 {
                    let c = self.coords(m);
                    let bk: Vec<Vec<u64>> = (0..self.fr().orders().len()).map(|k| self.act_coords(k, &c)).collect();
                    for r in 0..rs as u32 {
                        let rc = self.fr().coords(r);
                        let mut out = vec![0u64; self.orders.len()];
                        for (k, &rk) in rc.iter().enumerate() {
                            for i in 0..out.len() {
                                out[i] = (out[i] + rk * bk[k][i]) % self.orders[i];
                            }
                        }
                        t[(r as u64 * n + m as u64) as usize] = self.index(&out);
                    }
                }
                Some(t)
            })
            .as_ref()
    }

    pub fn scale(&self, r: u32, m: u32) -> u32 {
        match self.scalar_table() {
            Some(t) => t[(r as u64 * self.size.unwrap() + m as u64) as usize],
            None => self.index(&self.scale_coords(r, &self.coords(m))),
        }
    }

    /// `{r·m : r ∈ R}` indexed by r.
    pub fn orbit(&self, m: u32) -> Vec<u32> {
        self.fr().elements().map(|r| self.scale(r, m)).collect()
    }

    /// Additive generators of the R-span of `gens`: `b_k · g`.
    pub fn additive_gens(&self, gens: &[u32]) -> Vec<u32> {
        let mut out = Vec::new();
        for &g in gens {
            for k in 0..self.fr().orders().len() {
                let s = self.index(&self.act_coords(k, &self.coords(g)));
                if s != 0 && !out.contains(&s) {
                    out.push(s);
                }
            }
        }
        out
    }

    /// Membership mask of the submodule generated by `gens`.
    pub fn span_mask(&self, gens: &[u32]) -> Result<Vec<bool>> {
        let n = self.enum_size()? as usize;
        let steps = self.additive_gens(gens);
        let mut mask = vec![false; n];
        mask[0] = true;
        let mut stack = vec![0u32];
        while let Some(x) = stack.pop() {
            for &s in &steps {
                let y = self.add(x, s);
                if !mask[y as usize] {
                    mask[y as usize] = true;
                    stack.push(y);
                }
            }
        }
        Ok(mask)
    }

    /// A small R-generating set; preferred elements first, then greedy by orbit size.
    pub fn generators(&self) -> &[u32] {
        self.caches.gens.get_or_init(|| {
            let n = match self.size {
                Some(n) => n,
                None => return self.preferred.iter().map(|c| self.index(c)).collect(),
            };
            let mut chosen: Vec<u32> = Vec::new();
            let mut mask = self.span_mask(&[]).unwrap_or_else(|_| vec![true]);
            let mut count = 1u64;
            let try_add = |x: u32, chosen: &mut Vec<u32>, mask: &mut Vec<bool>, count: &mut u64| {
                if mask[x as usize] {
                    return;
                }
                chosen.push(x);
                *mask = self.span_mask(chosen).unwrap();
                *count = mask.iter().filter(|&&b| b).count() as u64;
            };
            for c in self.preferred.iter() {
                if count == n {
                    break;
                }
                try_add(self.index(c), &mut chosen, &mut mask, &mut count);
            }
            if count < n {
                let mut by_orbit: Vec<(usize, u32)> = (1..n as u32)
                    .map(|m| {
                        let mut o = self.orbit(m);
                        o.sort_unstable();
                        o.dedup();
                        (o.len(), m)
                    })
                    .collect();
                by_orbit.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
                for (_, m) in by_orbit {
                    if count == n {
                        break;
                    }
                    try_add(m, &mut chosen, &mut mask, &mut count);
                }
            }
            chosen
        })
    }

    /// Quotient by the R-submodule generated by the given coordinate vectors.
    pub fn quotient_coords(&self, rels: &[Vec<u64>]) -> Quotient {
        let kk = self.fr().orders().len();
        let mut cols: Vec<Vec<i64>> = Vec::new();
        for c in rels {
            for k in 0..kk {
                cols.push(self.act_coords(k, c).iter().map(|&x| x as i64).collect());
            }
        }
        let q = abelian::quotient(&self.orders, &cols);
        let mut action = vec![Vec::new(); kk];
        for (k, act) in action.iter_mut().enumerate() {
            for t in 0..q.orders.len() {
                act.push(q.project(&self.act_coords(k, &q.lift[t])));
            }
        }
        let preferred = self.preferred.iter().map(|c| q.project(c)).collect();
        let module = FiniteModule::from_parts(&self.ring, q.orders.clone(), action, preferred);
        Quotient { module, map: q }
    }

    /// Quotient by the submodule generated by elements.
    pub fn quotient(&self, gens: &[u32]) -> Quotient {
        let rels: Vec<Vec<u64>> = gens.iter().map(|&g| self.coords(g)).collect();
        self.quotient_coords(&rels)
    }

    /// Submodule generated by `gens`, with its own coordinates.
    pub fn submodule(&self, gens: &[u32]) -> Result<Submodule> {
        let n = self.enum_size()? as usize;
        let steps = self.additive_gens(gens);
        let t = steps.len();
        // breadth-first spanning tree; words[x] expresses x in the steps
        let mut words: Vec<Option<Vec<i64>>> = vec![None; n];
        words[0] = Some(vec![0; t]);
        let mut order = vec![0u32];
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            head += 1;
            for (i, &s) in steps.iter().enumerate() {
                let y = self.add(x, s);
                if words[y as usize].is_none() {
                    let mut w = words[x as usize].clone().unwrap();
                    w[i] += 1;
                    words[y as usize] = Some(w);
                    order.push(y);
                }
            }
        }
        let e = self.exponent().max(1);
        let mut cycles: Vec<Vec<i64>> = Vec::new();
        for &x in &order {
            let wx = words[x as usize].as_ref().unwrap();
            for (i, &s) in steps.iter().enumerate() {
                let y = self.add(x, s);
                let wy = words[y as usize].as_ref().unwrap();
                let c: Vec<i64> = (0..t).map(|j| wx[j] + (i == j) as i64 - wy[j]).collect();
                if c.iter().any(|&v| v.rem_euclid(e as i64) != 0) {
                    cycles.push(c);
                }
            }
        }
        let q = abelian::quotient(&vec![e; t], &cycles);
        let sub_orders = q.orders.clone();
        let (mut radix, mut acc) = (Vec::new(), 1u64);
        for &o in &sub_orders {
            radix.push(acc);
            acc *= o;
        }
        let to_sub = |w: &[i64]| -> u32 {
            let wc: Vec<u64> = w.iter().map(|&v| v.rem_euclid(e as i64) as u64).collect();
            q.project(&wc).iter().zip(&radix).map(|(a, r)| a * r).sum::<u64>() as u32
        };
        let mut index_of = vec![u32::MAX; n];
        let mut incl = vec![0u32; acc as usize];
        for &x in &order {
            let s = to_sub(words[x as usize].as_ref().unwrap());
            index_of[x as usize] = s;
            incl[s as usize] = x;
        }
        if order.len() as u64 != acc {
            return Err(Error::Inconsistent(format!("submodule size {} vs structure {}", order.len(), acc)));
        }
        let kk = self.fr().orders().len();
        let element_of = |lift: &[u64]| -> u32 {
            let mut x = 0u32;
            for (i, &c) in lift.iter().enumerate() {
                x = self.add(x, self.mul_int(steps[i], c));
            }
            x
        };
        let mut action = vec![Vec::new(); kk];
        for (k, act) in action.iter_mut().enumerate() {
            for tt in 0..sub_orders.len() {
                let x = element_of(&q.lift[tt]);
                let y = self.index(&self.act_coords(k, &self.coords(x)));
                let wy = words[y as usize].as_ref().ok_or_else(|| Error::Inconsistent("span not closed".into()))?;
                let wc: Vec<u64> = wy.iter().map(|&v| v.rem_euclid(e as i64) as u64).collect();
                act.push(q.project(&wc));
            }
        }
        let preferred: Vec<Vec<u64>> = gens
            .iter()
            .map(|&g| {
                let w = words[g as usize].as_ref().unwrap();
                let wc: Vec<u64> = w.iter().map(|&v| v.rem_euclid(e as i64) as u64).collect();
                q.project(&wc)
            })
            .collect();
        let module = FiniteModule::from_parts(&self.ring, sub_orders, action, preferred);
        Ok(Submodule { module, incl, index_of })
    }

    /// Direct sum; element index is `x_0 + |M_0|·x_1 + …`.
    pub fn direct_sum(ring: &Ring, mods: &[&FiniteModule]) -> FiniteModule {
        let kk = ring.fin().unwrap().orders().len();
        let orders: Vec<u64> = mods.iter().flat_map(|m| m.orders.clone()).collect();
        let d = orders.len();
        let mut action = vec![Vec::with_capacity(d); kk];
        let mut off = 0;
        for m in mods {
            for (k, act) in action.iter_mut().enumerate() {
                for t in 0..m.orders.len() {
                    let mut col = vec![0u64; d];
                    col[off..off + m.orders.len()].copy_from_slice(&m.action[k][t]);
                    act.push(col);
                }
            }
            off += m.orders.len();
        }
        let mut preferred = Vec::new();
        let mut off = 0;
        for m in mods {
            for g in m.generators() {
                let mut v = vec![0u64; d];
                v[off..off + m.orders.len()].copy_from_slice(&m.coords(*g));
                preferred.push(v);
            }
            off += m.orders.len();
        }
        FiniteModule::from_parts(ring, orders, action, preferred)
    }

    /// Module from a presentation: `g` generators, relation columns in `R^g`.
    pub fn from_presentation(ring: &Ring, g: usize, relations: &[Vec<u32>]) -> Quotient {
        let free = FiniteModule::free(ring, g);
        let rels: Vec<Vec<u64>> = relations.iter().map(|c| FiniteModule::free_coords(ring, c)).collect();
        free.quotient_coords(&rels)
    }

    /// Orders of the cyclic factors in invariant-factor form `d_1 | d_2 | …`.
    pub fn invariant_factors(&self) -> Vec<u64> {
        // primary decomposition of each cyclic factor, then regroup
        let mut powers: std::collections::BTreeMap<u64, Vec<u64>> = Default::default();
        for &o in &self.orders {
            let mut m = o;
            let mut p = 2;
            while m > 1 {
                if m % p == 0 {
                    let mut q = 1;
                    while m % p == 0 {
                        m /= p;
                        q *= p;
                    }
                    powers.entry(p).or_default().push(q);
                }
                p += 1;
            }
        }
        let len = powers.values().map(|v| v.len()).max().unwrap_or(0);
        let mut out = vec![1u64; len];
        for v in powers.values_mut() {
            v.sort_unstable();
            let off = len - v.len();
            for (i, q) in v.iter().enumerate() {
                out[off + i] *= q;
            }
        }
        out
    }

    pub fn elements(&self) -> Result<std::ops::Range<u32>> {
        Ok(0..self.enum_size()? as u32)
    }

    /// Integer action matrices (for inspection and duality).
    pub fn action_matrices(&self) -> &[Vec<Vec<u64>>] {
        &self.action
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingDescriptor;

    fn z(n: u64) -> Ring {
        Ring::new(RingDescriptor::ZMod { n }).unwrap()
    }

    #[test]
    fn cyclic_from_presentation() {
        let r = z(12);
        let q = FiniteModule::from_presentation(&r, 1, &[vec![4]]);
        assert_eq!(q.module.size(), Some(4));
        let m = q.module;
        let g = m.generators()[0];
        assert_eq!(m.orbit(g).iter().collect::<std::collections::BTreeSet<_>>().len(), 4);
    }

    #[test]
    fn submodule_structure_matches_span() {
        let r = z(12);
        let m = FiniteModule::free(&r, 2);
        let x = m.index(&[2, 6]);
        let y = m.index(&[0, 4]);
        let s = m.submodule(&[x, y]).unwrap();
        let mask = m.span_mask(&[x, y]).unwrap();
        assert_eq!(s.module.size().unwrap() as usize, mask.iter().filter(|&&b| b).count());
        for a in 0..s.module.size().unwrap() as u32 {
            for b in 0..s.module.size().unwrap() as u32 {
                assert_eq!(s.incl[s.module.add(a, b) as usize], m.add(s.incl[a as usize], s.incl[b as usize]));
            }
            for rr in 0..12 {
                assert_eq!(s.incl[s.module.scale(rr, a) as usize], m.scale(rr, s.incl[a as usize]));
            }
        }
    }

    #[test]
    fn quotient_and_direct_sum_sizes() {
        let r = z(12);
        let m = FiniteModule::free(&r, 2);
        let q = m.quotient(&[m.index(&[3, 0]), m.index(&[0, 4])]);
        assert_eq!(q.module.size(), Some(12));
        let ds = FiniteModule::direct_sum(&r, &[&q.module, &q.module]);
        assert_eq!(ds.size(), Some(144));
        assert_eq!(q.module.invariant_factors(), vec![12]);
        let m2 = FiniteModule::from_presentation(&r, 2, &[vec![2, 0], vec![0, 6]]).module;
        assert_eq!(m2.invariant_factors(), vec![2, 6]);
    }

    #[test]
    fn over_polynomial_quotient() {
        let r = Ring::parse("F2[x]/(x^2)").unwrap();
        let x = r.parse_element("x").unwrap().fin();
        let q = FiniteModule::from_presentation(&r, 1, &[vec![x]]);
        assert_eq!(q.module.size(), Some(2));
        let m = FiniteModule::free(&r, 1);
        let g = m.generators()[0];
        assert_eq!(m.scale(x, m.scale(x, g)), 0);
    }
}
