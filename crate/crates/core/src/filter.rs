//! Gabriel filters of finite type, stored by basis, and specialization-closed
//! subsets of Spec.

use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{guard, Error, Result};
use crate::ideal::{enumerate_ideals, primes, Ideal};
use crate::ring::factor::{factor, pid_normalize};
use crate::ring::{Element, Ring};

/// A set of nonzero primes of a PID, finite or cofinite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrimeSet {
    Finite(Vec<Element>),
    /// All primes except the listed ones.
    Cofinite(Vec<Element>),
}

impl PrimeSet {
    pub fn contains(&self, p: &Element) -> bool {
        match self {
            PrimeSet::Finite(v) => v.contains(p),
            PrimeSet::Cofinite(v) => !v.contains(p),
        }
    }
    fn normalized(self) -> PrimeSet {
        match self {
            PrimeSet::Finite(mut v) => {
                v.sort();
                v.dedup();
                PrimeSet::Finite(v)
            }
            PrimeSet::Cofinite(mut v) => {
                v.sort();
                v.dedup();
                PrimeSet::Cofinite(v)
            }
        }
    }
}

#[derive(Debug, Clone)]
enum Data {
    /// Explicit member family (finite ring), sorted canonically.
    Finite { members: Vec<Ideal> },
    Pid { contains_zero: bool, primes: PrimeSet },
}

#[derive(Debug, Clone)]
pub struct GabrielFilter {
    ring: Ring,
    basis: Vec<Ideal>,
    data: Data,
}

fn minimal(ideals: &[Ideal]) -> Vec<Ideal> {
    let mut out: Vec<Ideal> = ideals
        .iter()
        .filter(|a| !ideals.iter().any(|b| b != *a && b.is_subset(a)))
        .cloned()
        .collect();
    out.sort_by(|a, b| a.cmp_canonical(b));
    out.dedup();
    out
}

impl GabrielFilter {
    /// Upward closure of `basis` (finite ring), no axiom checks.
    pub fn from_basis(ring: &Ring, basis: Vec<Ideal>) -> Result<GabrielFilter> {
        if ring.is_finite() {
            let all = enumerate_ideals(ring)?;
            let members = all.into_iter().filter(|j| basis.iter().any(|b| b.is_subset(j))).collect();
            Ok(GabrielFilter::from_members(ring, members))
        } else {
            generate_filter(ring, &basis)
        }
    }

    /// An explicit family of ideals of a finite ring (may fail the axioms).
    pub fn from_members(ring: &Ring, mut members: Vec<Ideal>) -> GabrielFilter {
        members.sort_by(|a, b| a.cmp_canonical(b));
        members.dedup();
        let basis = minimal(&members);
        GabrielFilter { ring: ring.clone(), basis, data: Data::Finite { members } }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Minimal members (finite) or the normalized seeds (PID).
    pub fn basis(&self) -> &[Ideal] {
        &self.basis
    }

    /// Explicit member list (finite rings).
    pub fn members(&self) -> Result<&[Ideal]> {
        match &self.data {
            Data::Finite { members } => Ok(members),
            Data::Pid { .. } => Err(Error::NotFinite(self.ring.to_string())),
        }
    }

    pub fn contains(&self, j: &Ideal) -> bool {
        match &self.data {
            Data::Finite { members } => members.contains(j),
            Data::Pid { contains_zero, primes } => {
                if *contains_zero {
                    return true;
                }
                match factor(&self.ring, j.generator()) {
                    None => false,
                    Some(fs) => fs.iter().all(|(p, _)| primes.contains(p)),
                }
            }
        }
    }

    /// PID description: (contains (0), prime set).
    pub fn pid_data(&self) -> Option<(bool, &PrimeSet)> {
        match &self.data {
            Data::Pid { contains_zero, primes } => Some((*contains_zero, primes)),
            _ => None,
        }
    }

    /// Intersection of all members; for a filter of a finite ring, its minimum.
    pub fn min_ideal(&self) -> Result<Ideal> {
        let ms = self.members()?;
        let mut acc = Ideal::whole(&self.ring);
        for m in ms {
            acc = acc.intersect(m)?;
        }
        Ok(acc)
    }

    pub fn is_trivial(&self) -> bool {
        match &self.data {
            Data::Finite { members } => members.len() == 1,
            Data::Pid { contains_zero, primes } => !contains_zero && *primes == PrimeSet::Finite(vec![]),
        }
    }

    pub fn to_json(&self) -> Value {
        let basis: Vec<Vec<String>> = self
            .basis
            .iter()
            .map(|b| b.generators().iter().map(|g| self.ring.format(g)).collect())
            .collect();
        match &self.data {
            Data::Finite { members } => json!({
                "ring": self.ring.to_string(),
                "basis": basis,
                "members": members.iter().map(|m| m.format()).collect::<Vec<_>>(),
            }),
            Data::Pid { contains_zero, primes } => {
                let fmt = |v: &Vec<Element>| v.iter().map(|p| self.ring.format(p)).collect::<Vec<_>>();
                let primes = match primes {
                    PrimeSet::Finite(v) => json!({ "finite": fmt(v) }),
                    PrimeSet::Cofinite(v) => json!({ "cofinite_excluding": fmt(v) }),
                };
                json!({
                    "ring": self.ring.to_string(),
                    "basis": basis,
                    "contains_zero": contains_zero,
                    "primes": primes,
                })
            }
        }
    }
}

impl PartialEq for GabrielFilter {
    fn eq(&self, o: &GabrielFilter) -> bool {
        if self.ring != o.ring {
            return false;
        }
        match (&self.data, &o.data) {
            (Data::Finite { members: a }, Data::Finite { members: b }) => a == b,
            (Data::Pid { contains_zero: a, primes: p }, Data::Pid { contains_zero: b, primes: q }) => {
                (*a && *b) || (a == b && p == q)
            }
            _ => false,
        }
    }
}

impl fmt::Display for GabrielFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b: Vec<String> = self.basis.iter().map(|i| i.format()).collect();
        write!(f, "<{}>", b.join(", "))
    }
}

/// Smallest Gabriel filter of finite type containing the seeds.
pub fn generate_filter(ring: &Ring, seeds: &[Ideal]) -> Result<GabrielFilter> {
    if seeds.iter().any(|s| s.ring() != ring) {
        return Err(Error::RingMismatch);
    }
    if ring.is_finite() {
        let mut closure: Vec<Ideal> = if seeds.is_empty() { vec![Ideal::whole(ring)] } else { seeds.to_vec() };
        loop {
            let mut added = false;
            let snapshot = closure.clone();
            for a in &snapshot {
                for b in &snapshot {
                    let p = a.product(b)?;
                    if !closure.contains(&p) {
                        closure.push(p);
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
        }
        let basis = minimal(&closure);
        return GabrielFilter::from_basis(ring, basis);
    }
    let mut contains_zero = false;
    let mut ps = Vec::new();
    let mut basis = Vec::new();
    let mut total_exp = 0u32;
    for s in seeds {
        let g = s.generator();
        match factor(ring, g) {
            None => contains_zero = true,
            Some(f) => {
                total_exp += f.iter().map(|x| x.1).sum::<u32>();
                ps.extend(f.into_iter().map(|x| x.0));
            }
        }
        basis.push(Ideal::principal(ring, pid_normalize(ring, g))?);
    }
    if total_exp > ring.limits().pid_exponent * seeds.len().max(1) as u32 {
        return Err(guard("seed exponent", total_exp, ring.limits().pid_exponent as u64));
    }
    basis.sort_by(|a, b| a.cmp_canonical(b));
    basis.dedup();
    Ok(GabrielFilter {
        ring: ring.clone(),
        basis,
        data: Data::Pid { contains_zero, primes: PrimeSet::Finite(ps).normalized() },
    })
}

/// Basis products over a PID listed up to the exponent cap (display only).
pub fn pid_basis_listing(g: &GabrielFilter) -> Vec<Element> {
    let ring = g.ring();
    let Some((false, PrimeSet::Finite(ps))) = g.pid_data() else { return vec![] };
    let cap = ring.limits().pid_exponent;
    let mut out = vec![ring.one()];
    for p in ps {
        let mut next = Vec::new();
        for x in &out {
            let mut y = x.clone();
            for _ in 0..=cap {
                next.push(y.clone());
                y = ring.mul(&y, p);
            }
        }
        out = next;
    }
    out.sort();
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NotUpwardClosed { member: String, superset: String },
    MissingWholeRing,
    Colon { ideal: String, x: String, colon: String },
    AxiomTwo { ideal: String, witness: String },
    Product { left: String, right: String, product: String },
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

/// Check upward closure, both Gabriel axioms and product closure of the basis.
pub fn validate_filter(g: &GabrielFilter) -> Result<ValidationReport> {
    let ring = g.ring();
    let mut v = Vec::new();
    match ring.fin() {
        Some(f) => {
            let all = enumerate_ideals(ring)?;
            let members = g.members()?;
            if !members.iter().any(|m| m.is_whole()) {
                v.push(Violation::MissingWholeRing);
            }
            for m in members {
                for j in &all {
                    if m.is_subset(j) && !g.contains(j) {
                        v.push(Violation::NotUpwardClosed { member: m.format(), superset: j.format() });
                    }
                }
                for x in f.elements() {
                    let c = m.colon(&Element::Fin(x))?;
                    if !g.contains(&c) {
                        v.push(Violation::Colon { ideal: m.format(), x: ring.format(&Element::Fin(x)), colon: c.format() });
                    }
                }
            }
            for j in &all {
                if g.contains(j) {
                    continue;
                }
                let colons: Vec<Ideal> = f.elements().map(|x| j.colon(&Element::Fin(x))).collect::<Result<_>>()?;
                for i in members {
                    if i.members().iter().all(|&x| g.contains(&colons[x as usize])) {
                        v.push(Violation::AxiomTwo { ideal: j.format(), witness: i.format() });
                        break;
                    }
                }
            }
            for a in g.basis() {
                for b in g.basis() {
                    let p = a.product(b)?;
                    if !g.contains(&p) {
                        v.push(Violation::Product { left: a.format(), right: b.format(), product: p.format() });
                    }
                }
            }
        }
        None => {
            // closure on generators: products of basis generators stay members,
            // and (I : x) for x a prime power divisor
            for a in g.basis() {
                for b in g.basis() {
                    let p = a.product(b)?;
                    if !g.contains(&p) {
                        v.push(Violation::Product { left: a.format(), right: b.format(), product: p.format() });
                    }
                }
                if let Some(fs) = factor(ring, a.generator()) {
                    for (p, _) in fs {
                        let c = a.colon(&p)?;
                        if !g.contains(&c) {
                            v.push(Violation::Colon { ideal: a.format(), x: ring.format(&p), colon: c.format() });
                        }
                    }
                }
            }
        }
    }
    Ok(ValidationReport { valid: v.is_empty(), violations: v })
}

/// All Gabriel filters of a finite ring: the upward closures ↑B that pass
/// validation, each once, ordered by their minimum.
pub fn enumerate_filters(ring: &Ring) -> Result<Vec<GabrielFilter>> {
    ring.finite()?;
    let all = enumerate_ideals(ring)?;
    let cands: Vec<GabrielFilter> = crate::par::try_map(&all, |b| GabrielFilter::from_basis(ring, vec![b.clone()]))?;
    let checks = crate::par::try_map(&cands, validate_filter)?;
    Ok(cands.into_iter().zip(checks).filter(|(_, r)| r.valid).map(|(g, _)| g).collect())
}

/// Specialization-closed subset of Spec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecSubset {
    Finite { ring_desc: String, primes: Vec<Ideal> },
    Pid { generic: bool, primes: PrimeSet },
}

impl SpecSubset {
    /// A set of primes of a finite ring (every subset is closed: all primes are maximal).
    pub fn finite(ring: &Ring, mut ps: Vec<Ideal>) -> Result<SpecSubset> {
        ring.finite()?;
        for p in &ps {
            if !p.is_prime() {
                return Err(Error::NotSpecializationClosed(format!("{} is not prime", p.format())));
            }
        }
        ps.sort_by(|a, b| a.cmp_canonical(b));
        ps.dedup();
        Ok(SpecSubset::Finite { ring_desc: ring.to_string(), primes: ps })
    }

    /// Subset of Spec of a PID; the generic point forces everything.
    pub fn pid(ring: &Ring, generic: bool, ps: PrimeSet) -> Result<SpecSubset> {
        if ring.pid_kind().is_none() {
            return Err(Error::InvalidDescriptor("expected Z or F_p[x]".into()));
        }
        let ps = match ps {
            PrimeSet::Finite(v) => PrimeSet::Finite(v.iter().map(|p| pid_normalize(ring, p)).collect()),
            PrimeSet::Cofinite(v) => PrimeSet::Cofinite(v.iter().map(|p| pid_normalize(ring, p)).collect()),
        }
        .normalized();
        let all_v = match &ps {
            PrimeSet::Finite(v) | PrimeSet::Cofinite(v) => v.clone(),
        };
        for p in &all_v {
            if !crate::ring::factor::is_prime_element(ring, p) {
                return Err(Error::NotSpecializationClosed(format!("{} is not prime", ring.format(p))));
            }
        }
        if generic && ps != PrimeSet::Cofinite(vec![]) {
            return Err(Error::NotSpecializationClosed(
                "(0) lies below every maximal ideal, so it forces all of Spec".into(),
            ));
        }
        Ok(SpecSubset::Pid { generic, primes: ps })
    }

    pub fn to_json(&self, ring: &Ring) -> Value {
        match self {
            SpecSubset::Finite { primes, .. } => json!({ "primes": primes.iter().map(|p| p.format()).collect::<Vec<_>>() }),
            SpecSubset::Pid { generic, primes } => {
                let fmt = |v: &Vec<Element>| v.iter().map(|p| ring.format(p)).collect::<Vec<_>>();
                match primes {
                    PrimeSet::Finite(v) => json!({ "generic": generic, "primes": fmt(v) }),
                    PrimeSet::Cofinite(v) => json!({ "generic": generic, "all_primes_except": fmt(v) }),
                }
            }
        }
    }
}

/// `I ∈ G` iff every prime containing `I` lies in `P`.
pub fn filter_from_spec(ring: &Ring, p: &SpecSubset) -> Result<GabrielFilter> {
    match p {
        SpecSubset::Finite { primes: ps, .. } => {
            let all_primes = primes(ring)?;
            let members = enumerate_ideals(ring)?
                .into_iter()
                .filter(|i| all_primes.iter().filter(|q| i.is_subset(q)).all(|q| ps.contains(q)))
                .collect();
            Ok(GabrielFilter::from_members(ring, members))
        }
        SpecSubset::Pid { generic, primes } => {
            let basis = match primes {
                PrimeSet::Finite(v) if !generic => v.iter().map(|x| Ideal::principal(ring, x.clone())).collect::<Result<_>>()?,
                _ => vec![],
            };
            Ok(GabrielFilter { ring: ring.clone(), basis, data: Data::Pid { contains_zero: *generic, primes: primes.clone() } })
        }
    }
}

/// Primes `p` with `R/p` torsion, i.e. `p ∈ G`.
pub fn spec_from_filter(g: &GabrielFilter) -> Result<SpecSubset> {
    let ring = g.ring();
    match &g.data {
        Data::Finite { .. } => {
            let ps = primes(ring)?.into_iter().filter(|p| g.contains(p)).collect();
            SpecSubset::finite(ring, ps)
        }
        Data::Pid { contains_zero, primes } => {
            if *contains_zero {
                SpecSubset::pid(ring, true, PrimeSet::Cofinite(vec![]))
            } else {
                SpecSubset::pid(ring, false, primes.clone())
            }
        }
    }
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
    fn fmt_members(g: &GabrielFilter) -> Vec<String> {
        g.members().unwrap().iter().map(|m| m.format()).collect()
    }

    #[test]
    fn validate_examples() {
        let r = z(12);
        let g = GabrielFilter::from_basis(&r, vec![id(&r, "(4)")]).unwrap();
        assert!(validate_filter(&g).unwrap().valid);
        assert_eq!(fmt_members(&g), vec!["(4)", "(2)", "(1)"]);
        let bare = GabrielFilter::from_basis(&r, vec![id(&r, "(2)")]).unwrap();
        let rep = validate_filter(&bare).unwrap();
        assert!(!rep.valid);
        assert!(rep.violations.iter().any(|v| matches!(v, Violation::Product { .. })));
        let gen = generate_filter(&r, &[id(&r, "(2)")]).unwrap();
        assert!(validate_filter(&gen).unwrap().valid);
        assert_eq!(gen.basis()[0], id(&r, "(4)"));
        let triv = generate_filter(&r, &[]).unwrap();
        assert!(triv.is_trivial());
        assert!(validate_filter(&triv).unwrap().valid);
    }

    #[test]
    fn filter_counts() {
        let mins = |r: &Ring| -> Vec<String> {
            enumerate_filters(r).unwrap().iter().map(|g| g.min_ideal().unwrap().format()).collect()
        };
        assert_eq!(mins(&z(12)), vec!["(0)", "(4)", "(3)", "(1)"]);
        assert_eq!(mins(&z(8)).len(), 2);
        assert_eq!(mins(&Ring::parse("F2[x]/(x^2)").unwrap()).len(), 2);
    }

    #[test]
    fn spec_conversions() {
        let r = z(12);
        let p = SpecSubset::finite(&r, vec![id(&r, "(2)")]).unwrap();
        let g = filter_from_spec(&r, &p).unwrap();
        assert_eq!(fmt_members(&g), vec!["(4)", "(2)", "(1)"]);
        assert_eq!(spec_from_filter(&g).unwrap(), p);
        let empty = SpecSubset::finite(&r, vec![]).unwrap();
        assert!(filter_from_spec(&r, &empty).unwrap().is_trivial());
    }

    #[test]
    fn integers() {
        let zz = Ring::parse("Z").unwrap();
        let g = generate_filter(&zz, &[id(&zz, "(2)"), id(&zz, "(3)")]).unwrap();
        assert!(g.contains(&id(&zz, "(12)")));
        assert!(g.contains(&id(&zz, "(1)")));
        assert!(!g.contains(&id(&zz, "(10)")));
        assert!(!g.contains(&id(&zz, "(0)")));
        let p = SpecSubset::pid(&zz, false, PrimeSet::Finite(vec![zz.from_int(3), zz.from_int(2)])).unwrap();
        let h = filter_from_spec(&zz, &p).unwrap();
        assert!(h.contains(&id(&zz, "(18)")) && !h.contains(&id(&zz, "(5)")));
        assert_eq!(spec_from_filter(&h).unwrap(), p);
        assert_eq!(h, g);
        let bad = SpecSubset::pid(&zz, true, PrimeSet::Finite(vec![]));
        assert!(matches!(bad, Err(Error::NotSpecializationClosed(_))));
        assert!(validate_filter(&g).unwrap().valid);
        assert_eq!(pid_basis_listing(&g).len(), 81);
    }
}
