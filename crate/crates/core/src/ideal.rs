//! Finitely generated ideals: finite rings keep a materialized member set,
//! PIDs a single normalized generator.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{guard, Error, Result};
use crate::ring::factor::{is_prime_element, pid_div, pid_gcd, pid_lcm, pid_normalize};
use crate::ring::parse::paren_list;
use crate::ring::{Element, FiniteRing, PidKind, Ring};

#[derive(Debug)]
struct Members {
    sorted: Vec<u32>,
    mask: Vec<bool>,
}

#[derive(Debug, Clone)]
pub struct Ideal {
    ring: Ring,
    raw: Vec<Element>,
    members: Arc<OnceLock<Members>>,
    canon: Arc<OnceLock<Vec<Element>>>,
}

/// Additive closure of the R-span of `gens` in a finite ring.
pub(crate) fn span(f: &FiniteRing, gens: &[u32]) -> Vec<bool> {
    let n = f.size() as usize;
    let mut mask = vec![false; n];
    let steps: Vec<u32> = gens
        .iter()
        .flat_map(|&g| (0..f.orders().len()).map(move |k| (g, k)))
        .map(|(g, k)| f.mul(f.basis(k), g))
        .filter(|&s| s != 0)
        .collect();
    mask[0] = true;
    let mut stack = vec![0u32];
    while let Some(x) = stack.pop() {
        for &s in &steps {
            let y = f.add(x, s);
            if !mask[y as usize] {
                mask[y as usize] = true;
                stack.push(y);
            }
        }
    }
    mask
}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<Element>) -> Result<Ideal> {
        for g in &gens {
            if !ring.contains(g) {
                return Err(Error::RingMismatch);
            }
        }
        let raw = if ring.is_finite() {
            gens
        } else {
            let g = gens.iter().fold(ring.zero(), |acc, x| pid_gcd(ring, &acc, x));
            vec![pid_normalize(ring, &g)]
        };
        Ok(Ideal { ring: ring.clone(), raw, members: Arc::default(), canon: Arc::default() })
    }

    pub fn principal(ring: &Ring, g: Element) -> Result<Ideal> {
        Ideal::new(ring, vec![g])
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal::new(ring, vec![ring.zero()]).unwrap()
    }

    pub fn whole(ring: &Ring) -> Ideal {
        Ideal::new(ring, vec![ring.one()]).unwrap()
    }

    /// Ideal with the given (closed) member set in a finite ring.
    pub fn from_mask(ring: &Ring, mask: Vec<bool>) -> Ideal {
        let sorted: Vec<u32> = (0..mask.len() as u32).filter(|&i| mask[i as usize]).collect();
        let members = OnceLock::new();
        let _ = members.set(Members { sorted: sorted.clone(), mask });
        let id = Ideal { ring: ring.clone(), raw: vec![], members: Arc::new(members), canon: Arc::default() };
        let gens = id.generators().to_vec();
        Ideal { raw: gens, ..id }
    }

    /// Parse `(g1, g2, ...)`.
    pub fn parse(ring: &Ring, text: &str) -> Result<Ideal> {
        let items = paren_list(text, 0)?;
        let gens = items
            .into_iter()
            .map(|(o, s)| ring.parse_element_at(s, o))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, gens)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// The generators as supplied (PIDs: the normalized generator).
    pub fn raw_generators(&self) -> &[Element] {
        &self.raw
    }

    fn members_cell(&self) -> &Members {
        self.members.get_or_init(|| {
            let f = self.ring.fin().expect("member sets exist only over finite rings");
            let gens: Vec<u32> = self.raw.iter().map(|g| g.fin()).collect();
            let mask = span(f, &gens);
            let sorted = (0..mask.len() as u32).filter(|&i| mask[i as usize]).collect();
            Members { sorted, mask }
        })
    }

    /// Sorted member indices (finite rings).
    pub fn members(&self) -> &[u32] {
        &self.members_cell().sorted
    }

    pub fn mask(&self) -> &[bool] {
        &self.members_cell().mask
    }

    pub fn size(&self) -> Option<u64> {
        self.ring.fin().map(|_| self.members().len() as u64)
    }

    /// Canonical generators: greedy from the smallest index (finite), or the
    /// normalized generator (PID).
    pub fn generators(&self) -> &[Element] {
        self.canon.get_or_init(|| {
            let Some(f) = self.ring.fin() else { return self.raw.clone() };
            let target = self.members().len();
            let mut chosen: Vec<u32> = Vec::new();
            let mut cur = span(f, &[]);
            let mut count = 1;
            for &m in self.members() {
                if count == target {
                    break;
                }
                if cur[m as usize] {
                    continue;
                }
                chosen.push(m);
                cur = span(f, &chosen);
                count = cur.iter().filter(|&&b| b).count();
            }
            if chosen.is_empty() {
                vec![Element::Fin(0)]
            } else {
                chosen.into_iter().map(Element::Fin).collect()
            }
        })
    }

    /// Generator of a PID ideal.
    pub fn generator(&self) -> &Element {
        &self.raw[0]
    }

    pub fn contains(&self, x: &Element) -> bool {
        match self.ring.fin() {
            Some(_) => self.mask()[x.fin() as usize],
            None => crate::ring::factor::pid_divides(&self.ring, self.generator(), x),
        }
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        match self.ring.fin() {
            Some(_) => self.members().iter().all(|&m| other.mask()[m as usize]),
            None => other.contains(self.generator()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self.ring.fin() {
            Some(_) => self.members().len() == 1,
            None => self.ring.is_zero(self.generator()),
        }
    }

    pub fn is_whole(&self) -> bool {
        match self.ring.fin() {
            Some(f) => self.members().len() as u64 == f.size(),
            None => self.ring.is_unit(self.generator()),
        }
    }

    fn same_ring(&self, o: &Ideal) -> Result<()> {
        if self.ring == o.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn sum(&self, o: &Ideal) -> Result<Ideal> {
        self.same_ring(o)?;
        let mut g = self.generators().to_vec();
        g.extend_from_slice(o.generators());
        Ideal::new(&self.ring, g)
    }

    pub fn product(&self, o: &Ideal) -> Result<Ideal> {
        self.same_ring(o)?;
        let mut g = Vec::new();
        for a in self.generators() {
            for b in o.generators() {
                g.push(self.ring.mul(a, b));
            }
        }
        Ideal::new(&self.ring, g)
    }

    pub fn intersect(&self, o: &Ideal) -> Result<Ideal> {
        self.same_ring(o)?;
        match self.ring.fin() {
            Some(_) => {
                let mask: Vec<bool> = self.mask().iter().zip(o.mask()).map(|(a, b)| *a && *b).collect();
                Ok(Ideal::from_mask(&self.ring, mask))
            }
            None => Ideal::principal(&self.ring, pid_lcm(&self.ring, self.generator(), o.generator())),
        }
    }

    /// `(I : x) = {r | x·r ∈ I}`.
    pub fn colon(&self, x: &Element) -> Result<Ideal> {
        if !self.ring.contains(x) {
            return Err(Error::RingMismatch);
        }
        match self.ring.fin() {
            Some(f) => {
                let mask = f.elements().map(|r| self.mask()[f.mul(x.fin(), r) as usize]).collect();
                Ok(Ideal::from_mask(&self.ring, mask))
            }
            None => {
                let g = self.generator();
                if self.ring.is_zero(x) {
                    return Ok(Ideal::whole(&self.ring));
                }
                if self.ring.is_zero(g) {
                    return Ok(Ideal::zero(&self.ring));
                }
                let d = pid_gcd(&self.ring, g, x);
                Ideal::principal(&self.ring, pid_div(&self.ring, g, &d))
            }
        }
    }

    /// `(I : J) = {r | r·J ⊆ I}`.
    pub fn colon_ideal(&self, j: &Ideal) -> Result<Ideal> {
        self.same_ring(j)?;
        let mut acc = Ideal::whole(&self.ring);
        for g in j.generators() {
            acc = acc.intersect(&self.colon(g)?)?;
        }
        Ok(acc)
    }

    /// `{r | r·I = 0}`.
    pub fn annihilator(&self) -> Ideal {
        match self.ring.fin() {
            Some(f) => {
                let gens: Vec<u32> = self.generators().iter().map(|g| g.fin()).collect();
                let mask = f.elements().map(|r| gens.iter().all(|&g| f.mul(r, g) == 0)).collect();
                Ideal::from_mask(&self.ring, mask)
            }
            None => {
                if self.is_zero() {
                    Ideal::whole(&self.ring)
                } else {
                    Ideal::zero(&self.ring)
                }
            }
        }
    }

    /// Exhaustive primality (finite) or irreducibility of the generator (PID).
    pub fn is_prime(&self) -> bool {
        match self.ring.fin() {
            Some(f) => {
                if self.is_whole() {
                    return false;
                }
                let m = self.mask();
                for a in f.elements() {
                    if m[a as usize] {
                        continue;
                    }
                    for b in f.elements() {
                        if !m[b as usize] && m[f.mul(a, b) as usize] {
                            return false;
                        }
                    }
                }
                true
            }
            None => self.is_zero() || is_prime_element(&self.ring, self.generator()),
        }
    }

    pub fn format(&self) -> String {
        let g: Vec<String> = self.generators().iter().map(|x| self.ring.format(x)).collect();
        format!("({})", g.join(", "))
    }

    /// Sort key: cardinality, then member set (finite); generator otherwise.
    pub fn cmp_canonical(&self, o: &Ideal) -> Ordering {
        match self.ring.fin() {
            Some(_) => (self.members().len(), self.members()).cmp(&(o.members().len(), o.members())),
            None => self.generator().cmp(o.generator()),
        }
    }
}

impl PartialEq for Ideal {
    fn eq(&self, o: &Ideal) -> bool {
        if self.ring != o.ring {
            return false;
        }
        match self.ring.fin() {
            Some(_) => self.members() == o.members(),
            None => self.generator() == o.generator(),
        }
    }
}
impl Eq for Ideal {}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format())
    }
}

/// All ideals of a finite ring, ordered by cardinality then member set.
pub fn enumerate_ideals(ring: &Ring) -> Result<Vec<Ideal>> {
    let f = ring.finite()?;
    if f.size() > ring.limits().ring_size {
        return Err(guard("ideal enumeration", f.size(), ring.limits().ring_size));
    }
    let mut seen: std::collections::BTreeSet<Vec<u32>> = Default::default();
    let mut found: Vec<Ideal> = Vec::new();
    let principal: Vec<Ideal> = f
        .elements()
        .map(|x| Ideal::principal(ring, Element::Fin(x)).unwrap())
        .filter(|i| seen.insert(i.members().to_vec()))
        .collect();
    found.extend(principal.iter().cloned());
    let mut frontier = found.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for p in &principal {
                if p.is_subset(a) {
                    continue;
                }
                let s = a.sum(p)?;
                if seen.insert(s.members().to_vec()) {
                    next.push(s);
                }
            }
        }
        found.extend(next.iter().cloned());
        frontier = next;
    }
    found.sort_by(|a, b| a.cmp_canonical(b));
    Ok(found)
}

/// Spectrum: explicit for finite rings, described for PIDs.
#[derive(Debug, Clone)]
pub enum Spec {
    Finite(Vec<Ideal>),
    /// `(0)` together with all principal primes.
    Symbolic(PidKind),
}

pub fn spec(ring: &Ring) -> Result<Spec> {
    if let Some(k) = ring.pid_kind() {
        return Ok(Spec::Symbolic(k));
    }
    Ok(Spec::Finite(enumerate_ideals(ring)?.into_iter().filter(|i| i.is_prime()).collect()))
}

/// Primes of a finite ring.
pub fn primes(ring: &Ring) -> Result<Vec<Ideal>> {
    match spec(ring)? {
        Spec::Finite(v) => Ok(v),
        Spec::Symbolic(_) => Err(Error::NotFinite(ring.to_string())),
    }
}

/// Jacobson radical of a finite ring: intersection of the maximal ideals.
pub fn jacobson_radical(ring: &Ring) -> Result<Ideal> {
    let mut acc = Ideal::whole(ring);
    for p in primes(ring)? {
        acc = acc.intersect(&p)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingDescriptor;

    fn z(n: u64) -> Ring {
        Ring::new(RingDescriptor::ZMod { n }).unwrap()
    }
    fn id(r: &Ring, t: &str) -> Ideal {
        Ideal::parse(r, t).unwrap()
    }

    #[test]
    fn z12_operations() {
        let r = z(12);
        assert_eq!(id(&r, "(2)").product(&id(&r, "(3)")).unwrap(), id(&r, "(6)"));
        assert_eq!(id(&r, "(4)").colon(&r.from_int(2)).unwrap(), id(&r, "(2)"));
        assert_eq!(id(&r, "(4)").annihilator(), id(&r, "(3)"));
        assert_eq!(id(&r, "(2)").annihilator(), id(&r, "(6)"));
        assert_eq!(id(&r, "(0)").annihilator(), Ideal::whole(&r));
        assert_eq!(id(&r, "(4)").colon(&r.zero()).unwrap(), Ideal::whole(&r));
        assert_eq!(id(&r, "(4)").colon(&r.one()).unwrap(), id(&r, "(4)"));
        let i = id(&r, "(8, 6)");
        assert_eq!(i.sum(&Ideal::zero(&r)).unwrap(), i);
        assert_eq!(i.format(), "(2)");
        assert!(!id(&r, "(4)").is_prime());
    }

    #[test]
    fn counts() {
        assert_eq!(enumerate_ideals(&z(12)).unwrap().len(), 6);
        assert_eq!(enumerate_ideals(&Ring::parse("F4").unwrap()).unwrap().len(), 2);
        let d = enumerate_ideals(&Ring::parse("F2[x]/(x^2)").unwrap()).unwrap();
        assert_eq!(d.iter().map(|i| i.size().unwrap()).collect::<Vec<_>>(), vec![1, 2, 4]);
        let p: Vec<String> = primes(&z(12)).unwrap().iter().map(|i| i.format()).collect();
        assert_eq!(p, vec!["(3)", "(2)"]);
    }

    #[test]
    fn pid_ideals() {
        let zz = Ring::parse("Z").unwrap();
        let a = id(&zz, "(4)");
        let b = id(&zz, "(-6)");
        assert_eq!(b.format(), "(6)");
        assert_eq!(a.intersect(&b).unwrap(), id(&zz, "(12)"));
        assert_eq!(a.sum(&b).unwrap(), id(&zz, "(2)"));
        assert_eq!(a.colon(&zz.from_int(6)).unwrap(), id(&zz, "(2)"));
        assert!(id(&zz, "(0)").is_prime());
        assert!(id(&zz, "(7)").is_prime());
        assert!(!id(&zz, "(1)").is_prime());
        assert_eq!(a.annihilator(), id(&zz, "(0)"));
    }
}
