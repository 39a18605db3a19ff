//! Homomorphisms between finite modules: assignment of generator images,
//! additive consistency fill, and backtracking enumeration.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{guard, Error, Result};
use crate::ideal::Ideal;
use crate::module::{FiniteModule, Presentation};
use crate::ring::{Element, Ring};
use crate::par;

#[derive(Debug, Clone)]
pub struct ModuleMap {
    pub domain: FiniteModule,
    pub codomain: FiniteModule,
    table: Arc<Vec<u32>>,
}

impl ModuleMap {
    /// Map determined by images of `domain.generators()`.
    pub fn from_images(domain: &FiniteModule, codomain: &FiniteModule, images: &[u32]) -> Result<ModuleMap> {
        let gens = domain.generators().to_vec();
        if gens.len() != images.len() {
            return Err(Error::InvalidMap(format!("{} images for {} generators", images.len(), gens.len())));
        }
        let mut fill = Fill::new(domain, codomain)?;
        for (g, &n) in gens.iter().zip(images) {
            if !fill.push(*g, n) {
                return Err(Error::InvalidMap("images violate the relations".into()));
            }
        }
        Ok(ModuleMap { domain: domain.clone(), codomain: codomain.clone(), table: Arc::new(fill.table) })
    }

    /// Map from a full table, checked for additivity and linearity.
    pub fn from_table(domain: &FiniteModule, codomain: &FiniteModule, table: Vec<u32>) -> Result<ModuleMap> {
        let images: Vec<u32> = domain.generators().iter().map(|&g| table[g as usize]).collect();
        let m = ModuleMap::from_images(domain, codomain, &images)?;
        if *m.table != table {
            return Err(Error::InvalidMap("table is not a homomorphism".into()));
        }
        Ok(m)
    }

    pub(crate) fn from_table_unchecked(domain: &FiniteModule, codomain: &FiniteModule, table: Vec<u32>) -> ModuleMap {
        ModuleMap { domain: domain.clone(), codomain: codomain.clone(), table: Arc::new(table) }
    }

    pub fn zero(domain: &FiniteModule, codomain: &FiniteModule) -> Result<ModuleMap> {
        let n = domain.enum_size()? as usize;
        Ok(ModuleMap::from_table_unchecked(domain, codomain, vec![0; n]))
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.table[x as usize]
    }
    pub fn table(&self) -> &[u32] {
        &self.table
    }
    pub fn images(&self) -> Vec<u32> {
        self.domain.generators().iter().map(|&g| self.apply(g)).collect()
    }
    pub fn is_zero(&self) -> bool {
        self.table.iter().all(|&y| y == 0)
    }
    pub fn kernel(&self) -> Vec<u32> {
        (0..self.table.len() as u32).filter(|&x| self.table[x as usize] == 0).collect()
    }
    pub fn is_injective(&self) -> bool {
        self.table.iter().skip(1).all(|&y| y != 0)
    }
    pub fn image_mask(&self) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.codomain.enum_size()? as usize];
        for &y in self.table.iter() {
            mask[y as usize] = true;
        }
        Ok(mask)
    }
    pub fn is_surjective(&self) -> Result<bool> {
        Ok(self.image_mask()?.iter().all(|&b| b))
    }
    /// `other ∘ self`.
    pub fn then(&self, other: &ModuleMap) -> ModuleMap {
        let t = self.table.iter().map(|&y| other.apply(y)).collect();
        ModuleMap::from_table_unchecked(&self.domain, &other.codomain, t)
    }
}

/// Incremental extension of generator images to a partial additive map.
struct Fill<'a> {
    dom: &'a FiniteModule,
    cod: &'a FiniteModule,
    table: Vec<u32>,
    reached: Vec<u32>,
    steps: Vec<(u32, u32)>,
    marks: Vec<(usize, usize)>,
}

impl<'a> Fill<'a> {
    fn new(dom: &'a FiniteModule, cod: &'a FiniteModule) -> Result<Fill<'a>> {
        let n = dom.enum_size()? as usize;
        cod.enum_size()?;
        let mut table = vec![u32::MAX; n];
        table[0] = 0;
        Ok(Fill { dom, cod, table, reached: vec![0], steps: vec![], marks: vec![] })
    }

    /// Assign `g ↦ n`; false (with state restored) if inconsistent.
    fn push(&mut self, g: u32, n: u32) -> bool {
        let kk = self.dom.fr().orders().len();
        let (gc, nc) = (self.dom.coords(g), self.cod.coords(n));
        self.marks.push((self.reached.len(), self.steps.len()));
        let first_new = self.steps.len();
        for k in 0..kk {
            let s = self.dom.index(&self.dom.act_coords(k, &gc));
            let t = self.cod.index(&self.cod.act_coords(k, &nc));
            if s == 0 {
                if t != 0 {
                    self.pop();
                    return false;
                }
                continue;
            }
            self.steps.push((s, t));
        }
        let old = self.reached.len();
        let mut head = 0;
        while head < self.reached.len() {
            let x = self.reached[head];
            let from = if head < old { first_new } else { 0 };
            head += 1;
            let fx = self.table[x as usize];
            for i in from..self.steps.len() {
                let (s, t) = self.steps[i];
                let y = self.dom.add(x, s);
                let fy = self.cod.add(fx, t);
                let cur = self.table[y as usize];
                if cur == u32::MAX {
                    self.table[y as usize] = fy;
                    self.reached.push(y);
                } else if cur != fy {
                    self.pop();
                    return false;
                }
            }
        }
        true
    }

    fn pop(&mut self) {
        let (r, s) = self.marks.pop().unwrap();
        for &x in &self.reached[r..] {
            self.table[x as usize] = u32::MAX;
        }
        self.reached.truncate(r);
        self.steps.truncate(s);
    }

    fn injective_so_far(&self, seen: &mut [bool]) -> bool {
        let mut ok = true;
        for &x in &self.reached {
            let y = self.table[x as usize] as usize;
            if seen[y] {
                ok = false;
                break;
            }
            seen[y] = true;
        }
        for &x in &self.reached {
            seen[self.table[x as usize] as usize] = false;
        }
        ok
    }
}

fn annihilator_gens(m: &FiniteModule, x: u32) -> Vec<u32> {
    let mask: Vec<bool> = m.orbit(x).iter().map(|&y| y == 0).collect();
    Ideal::from_mask(m.ring(), mask).generators().iter().map(|e| e.fin()).collect()
}

fn ann_mask(m: &FiniteModule, x: u32) -> Vec<bool> {
    m.orbit(x).iter().map(|&y| y == 0).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomKind {
    All,
    Injective,
}

fn candidates(dom: &FiniteModule, cod: &FiniteModule, kind: HomKind) -> Result<Vec<Vec<u32>>> {
    let ncod = cod.enum_size()? as u32;
    let gens = dom.generators();
    let out = gens
        .iter()
        .map(|&g| match kind {
            HomKind::All => {
                let ann = annihilator_gens(dom, g);
                (0..ncod).filter(|&n| ann.iter().all(|&a| cod.scale(a, n) == 0)).collect()
            }
            HomKind::Injective => {
                let am = ann_mask(dom, g);
                (1..ncod).filter(|&n| ann_mask(cod, n) == am).collect()
            }
        })
        .collect::<Vec<Vec<u32>>>();
    let total = out.iter().try_fold(1u64, |a, c| a.checked_mul(c.len() as u64)).unwrap_or(u64::MAX);
    let limit = dom.ring().limits().hom_candidates;
    if total > limit {
        return Err(guard("hom candidates", total, limit));
    }
    Ok(out)
}

fn search(
    fill: &mut Fill,
    gens: &[u32],
    cands: &[Vec<u32>],
    depth: usize,
    kind: HomKind,
    seen: &mut Vec<bool>,
    visit: &mut dyn FnMut(&[u32]) -> bool,
) -> bool {
    if depth == gens.len() {
        return visit(&fill.table);
    }
    for &n in &cands[depth] {
        if !fill.push(gens[depth], n) {
            continue;
        }
        if kind == HomKind::Injective && !fill.injective_so_far(seen) {
            fill.pop();
            continue;
        }
        let go = search(fill, gens, cands, depth + 1, kind, seen, visit);
        fill.pop();
        if !go {
            return false;
        }
    }
    true
}

/// Visit the table of every homomorphism (of the given kind) in a
/// deterministic order; the visitor returns false to stop.
pub fn for_each_hom(
    dom: &FiniteModule,
    cod: &FiniteModule,
    kind: HomKind,
    visit: &mut dyn FnMut(&[u32]) -> bool,
) -> Result<()> {
    let cands = candidates(dom, cod, kind)?;
    let gens = dom.generators().to_vec();
    let mut fill = Fill::new(dom, cod)?;
    let mut seen = vec![false; cod.enum_size()? as usize];
    search(&mut fill, &gens, &cands, 0, kind, &mut seen, visit);
    Ok(())
}

fn collect_tables(dom: &FiniteModule, cod: &FiniteModule, kind: HomKind, limit: Option<usize>) -> Result<Vec<Vec<u32>>> {
    let cands = candidates(dom, cod, kind)?;
    let gens = dom.generators().to_vec();
    if gens.is_empty() {
        return Ok(vec![vec![0; dom.enum_size()? as usize]]);
    }
    let ncod = cod.enum_size()? as usize;
    let parts = par::map(&cands[0], |&n0| -> Result<Vec<Vec<u32>>> {
        let mut fill = Fill::new(dom, cod)?;
        let mut seen = vec![false; ncod];
        let mut out = Vec::new();
        if fill.push(gens[0], n0) && (kind == HomKind::All || fill.injective_so_far(&mut seen)) {
            search(&mut fill, &gens, &cands, 1, kind, &mut seen, &mut |t| {
                out.push(t.to_vec());
                limit.is_none_or(|l| out.len() < l)
            });
        }
        Ok(out)
    });
    let mut all = Vec::new();
    for p in parts {
        all.extend(p?);
        if let Some(l) = limit {
            if all.len() >= l {
                all.truncate(l);
                break;
            }
        }
    }
    Ok(all)
}

/// All homomorphisms `dom → cod`.
/// Additive generators of `Hom(coker, M)` for a presented domain, as tuples of
/// images of the presentation generators. Solved as the kernel of an integer
/// system, so no enumeration of `M^g` takes place.
pub fn hom_group_generators(pres: &Presentation, cod: &FiniteModule) -> Result<Vec<Vec<u32>>> {
    let g = pres.generators;
    let o = cod.orders().to_vec();
    let d = o.len();
    if d == 0 || g == 0 {
        return Ok(vec![]);
    }
    let unit = |t: usize| -> Vec<u64> { (0..d).map(|i| u64::from(i == t)).collect() };
    let nrel = pres.relations.len();
    let rows = nrel * d;
    let cols = g * d + rows;
    let zero = Element::Int(BigInt::zero());
    let mut a = vec![vec![zero; cols]; rows.max(1)];
    for (q, rel) in pres.relations.iter().enumerate() {
        for (j, r) in rel.iter().enumerate() {
            for t in 0..d {
                let img = cod.scale_coords(r.fin(), &unit(t));
                for i in 0..d {
                    a[q * d + i][j * d + t] = Element::Int(BigInt::from(img[i]));
                }
            }
        }
        for i in 0..d {
            a[q * d + i][g * d + q * d + i] = Element::Int(BigInt::from(o[i]));
        }
    }
    let z = Ring::parse("Z").unwrap();
    let s = crate::module::pid::snf(&z, &a, rows.max(1), cols);
    let rank = s.diagonal().iter().filter(|e| !z.is_zero(e)).count();
    let mut out: Vec<Vec<u32>> = Vec::new();
    for c in rank..cols {
        let tuple: Vec<u32> = (0..g)
            .map(|j| {
                let coords: Vec<u64> = (0..d)
                    .map(|t| {
                        let Element::Int(v) = &s.v[j * d + t][c] else { unreachable!() };
                        let n = BigInt::from(o[t]);
                        (((v % &n) + &n) % &n).to_u64().unwrap()
                    })
                    .collect();
                cod.index(&coords)
            })
            .collect();
        if tuple.iter().any(|&x| x != 0) && !out.contains(&tuple) {
            out.push(tuple);
        }
    }
    Ok(out)
}

pub fn hom_set(dom: &FiniteModule, cod: &FiniteModule) -> Result<Vec<ModuleMap>> {
    Ok(collect_tables(dom, cod, HomKind::All, None)?
        .into_iter()
        .map(|t| ModuleMap::from_table_unchecked(dom, cod, t))
        .collect())
}

pub fn hom_count(dom: &FiniteModule, cod: &FiniteModule) -> Result<usize> {
    let mut n = 0;
    for_each_hom(dom, cod, HomKind::All, &mut |_| {
        n += 1;
        true
    })?;
    Ok(n)
}

/// Whether some nonzero homomorphism exists.
pub fn has_nonzero_hom(dom: &FiniteModule, cod: &FiniteModule) -> Result<bool> {
    let mut found = false;
    for_each_hom(dom, cod, HomKind::All, &mut |t| {
        found = t.iter().any(|&y| y != 0);
        !found
    })?;
    Ok(found)
}

pub fn find_injective(dom: &FiniteModule, cod: &FiniteModule) -> Result<Option<ModuleMap>> {
    if dom.size_big() > cod.size_big() {
        return Ok(None);
    }
    let mut found = None;
    for_each_hom(dom, cod, HomKind::Injective, &mut |t| {
        found = Some(t.to_vec());
        false
    })?;
    Ok(found.map(|t| ModuleMap::from_table_unchecked(dom, cod, t)))
}

/// Cheap isomorphism invariants: group invariants and annihilator profile.
pub fn invariant_signature(m: &FiniteModule) -> Result<Vec<u64>> {
    let mut sig = m.invariant_factors();
    sig.push(u64::MAX);
    let n = m.enum_size()? as u32;
    let f = m.fr();
    for r in f.elements() {
        sig.push((0..n).filter(|&x| m.scale(r, x) == 0).count() as u64);
    }
    Ok(sig)
}

pub fn find_isomorphism(a: &FiniteModule, b: &FiniteModule) -> Result<Option<ModuleMap>> {
    if a.size_big() != b.size_big() || invariant_signature(a)? != invariant_signature(b)? {
        return Ok(None);
    }
    find_injective(a, b)
}

pub fn is_isomorphic(a: &FiniteModule, b: &FiniteModule) -> Result<bool> {
    Ok(find_isomorphism(a, b)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Ring, RingDescriptor};

    fn cyc(r: &Ring, g: u32) -> FiniteModule {
        FiniteModule::from_presentation(r, 1, &[vec![g]]).module
    }

    #[test]
    fn small_hom_counts() {
        let r6 = Ring::new(RingDescriptor::ZMod { n: 6 }).unwrap();
        assert_eq!(hom_count(&cyc(&r6, 2), &cyc(&r6, 3)).unwrap(), 1);
        let r12 = Ring::new(RingDescriptor::ZMod { n: 12 }).unwrap();
        assert_eq!(hom_set(&cyc(&r12, 2), &cyc(&r12, 2)).unwrap().len(), 2);
        assert_eq!(hom_count(&cyc(&r12, 0), &FiniteModule::zero(&r12)).unwrap(), 1);
        assert_eq!(hom_count(&cyc(&r12, 0), &cyc(&r12, 0)).unwrap(), 12);
        // Hom(Z/4, Z/12) ≅ Z/4
        assert_eq!(hom_count(&cyc(&r12, 4), &cyc(&r12, 0)).unwrap(), 4);
    }

    #[test]
    fn hom_tables_are_linear() {
        let r = Ring::parse("F2[x]/(x^2)").unwrap();
        let m = FiniteModule::free(&r, 2);
        let n = cyc(&r, r.parse_element("x").unwrap().fin());
        let maps = hom_set(&m, &n).unwrap();
        assert_eq!(maps.len(), 4);
        for f in &maps {
            for a in 0..16 {
                for b in 0..16 {
                    assert_eq!(f.apply(m.add(a, b)), n.add(f.apply(a), f.apply(b)));
                }
                for s in 0..4 {
                    assert_eq!(f.apply(m.scale(s, a)), n.scale(s, f.apply(a)));
                }
            }
        }
    }

    #[test]
    fn isomorphism_detection() {
        let r = Ring::new(RingDescriptor::ZMod { n: 12 }).unwrap();
        let a = FiniteModule::from_presentation(&r, 2, &[vec![2, 0], vec![0, 3]]).module;
        assert!(is_isomorphic(&a, &cyc(&r, 6)).unwrap());
        let b = FiniteModule::from_presentation(&r, 2, &[vec![2, 0], vec![0, 2]]).module;
        assert!(!is_isomorphic(&b, &cyc(&r, 4)).unwrap());
        assert!(find_injective(&cyc(&r, 2), &cyc(&r, 0)).unwrap().is_some());
        assert!(find_injective(&b, &cyc(&r, 0)).unwrap().is_none());
    }
}
