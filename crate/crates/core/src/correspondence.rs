//! Module classes, the maps Θ (filter ↦ divisible class) and Ξ (class ↦
//! ideals dividing every member), and their round-trip verification.

use std::collections::BTreeSet;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::filter::{enumerate_filters, filter_from_spec, spec_from_filter, GabrielFilter, PrimeSet, SpecSubset};
use crate::homological::{dual_module, in_d_sigma, in_t_sigma, ProjectiveMap};
use crate::ideal::{enumerate_ideals, primes, Ideal};
use crate::module::hom::{for_each_hom, hom_group_generators, HomKind};
use crate::module::{is_divisible, is_torsionfree, ModuleUniverse, PresentedModule};
use crate::par;
use crate::report::Verdict;
use crate::ring::factor::factor;
use crate::ring::{Element, PidKind, Ring};

#[derive(Debug, Clone)]
pub enum ClassKind {
    Div(GabrielFilter),
    TorsionFree(GabrielFilter),
    /// `{M : Hom(R/p, M) = 0 for p ∈ P}`.
    SpecTorsionFree(SpecSubset),
    DSigma(ProjectiveMap),
    TSigma(ProjectiveMap),
    Gen(PresentedModule),
    Cogen(PresentedModule),
}

#[derive(Debug, Clone)]
pub struct ModuleClass {
    pub ring: Ring,
    pub kind: ClassKind,
}

impl ModuleClass {
    pub fn contains(&self, m: &PresentedModule) -> Result<bool> {
        match &self.kind {
            ClassKind::Div(g) => in_div(g, m),
            ClassKind::TorsionFree(g) => is_torsionfree(m, g),
            ClassKind::SpecTorsionFree(p) => in_spec_torsionfree(&self.ring, p, m),
            ClassKind::DSigma(s) => in_d_sigma(s, m),
            ClassKind::TSigma(s) => in_t_sigma(s, m),
            ClassKind::Gen(n) => in_gen(n, m),
            ClassKind::Cogen(n) => in_cogen(n, m),
        }
    }

    /// Membership of every universe member, in universe order.
    pub fn membership(&self, u: &ModuleUniverse) -> Result<Vec<bool>> {
        par::try_map(&u.members, |m| self.contains(m))
    }

    pub fn describe(&self) -> String {
        match &self.kind {
            ClassKind::Div(g) => format!("Div{g}"),
            ClassKind::TorsionFree(g) => format!("F{g}"),
            ClassKind::SpecTorsionFree(p) => format!("F({})", p.to_json(&self.ring)),
            ClassKind::DSigma(s) => format!("D_sigma {}", s.to_json()),
            ClassKind::TSigma(s) => format!("T_sigma {}", s.to_json()),
            ClassKind::Gen(n) => format!("Gen({n})"),
            ClassKind::Cogen(n) => format!("Cogen({n})"),
        }
    }
}

/// Θ: the class of `G`-divisible modules.
pub fn theta(g: &GabrielFilter) -> ModuleClass {
    ModuleClass { ring: g.ring().clone(), kind: ClassKind::Div(g.clone()) }
}

pub fn torsionfree_class(ring: &Ring, p: &SpecSubset) -> ModuleClass {
    ModuleClass { ring: ring.clone(), kind: ClassKind::SpecTorsionFree(p.clone()) }
}

/// `M = IM` for every basis ideal (finite) or every ideal of the filter (PID).
pub fn in_div(g: &GabrielFilter, m: &PresentedModule) -> Result<bool> {
    if let Some((zero, primes)) = g.pid_data() {
        let p = m.pid().ok_or(Error::RingMismatch)?;
        if zero {
            return Ok(p.is_zero());
        }
        let ring = g.ring();
        let hit = |d: &Element| factor(ring, d).unwrap_or_default().iter().any(|(q, _)| primes.contains(q));
        let nonempty = match primes {
            PrimeSet::Finite(v) => !v.is_empty(),
            PrimeSet::Cofinite(_) => true,
        };
        return Ok((p.rank == 0 || !nonempty) && !p.factors.iter().any(hit));
    }
    for i in g.basis() {
        if !is_divisible(m, i)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn in_spec_torsionfree(ring: &Ring, p: &SpecSubset, m: &PresentedModule) -> Result<bool> {
    match p {
        SpecSubset::Finite { primes, .. } => {
            let f = m.fin()?;
            for q in primes {
                if crate::module::torsion::killed_by(f, q)?.iter().skip(1).any(|&b| b) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        SpecSubset::Pid { generic, primes } => {
            let pm = m.pid().ok_or(Error::RingMismatch)?;
            if *generic {
                return Ok(pm.is_zero());
            }
            Ok(!pm.factors.iter().any(|d| factor(ring, d).unwrap_or_default().iter().any(|(q, _)| primes.contains(q))))
        }
    }
}

/// `M ∈ Gen(N)`: the trace of `N` in `M` is all of `M`.
pub fn in_gen(n: &PresentedModule, m: &PresentedModule) -> Result<bool> {
    let mf = m.fin()?;
    if mf.is_zero() {
        return Ok(true);
    }
    n.fin()?;
    let imgs: Vec<u32> = hom_group_generators(n.presentation(), mf)?.into_iter().flatten().filter(|&x| x != 0).collect();
    Ok(mf.span_mask(&imgs)?.iter().all(|&b| b))
}

/// Trace by enumerating every map, kept as an oracle for [`in_gen`].
pub fn in_gen_enum(n: &PresentedModule, m: &PresentedModule) -> Result<bool> {
    let (nf, mf) = (n.fin()?, m.fin()?);
    if mf.is_zero() {
        return Ok(true);
    }
    let gens = nf.generators().to_vec();
    let mut images = BTreeSet::new();
    for_each_hom(nf, mf, HomKind::All, &mut |t| {
        for &g in &gens {
            images.insert(t[g as usize]);
        }
        true
    })?;
    images.remove(&0);
    let imgs: Vec<u32> = images.into_iter().collect();
    Ok(mf.span_mask(&imgs)?.iter().all(|&b| b))
}

/// `M ∈ Cogen(N)`: the kernels of all maps `M → N` intersect in 0.
pub fn in_cogen(n: &PresentedModule, m: &PresentedModule) -> Result<bool> {
    let (nf, mf) = (n.fin()?, m.fin()?);
    let mut alive: Vec<u32> = mf.elements()?.skip(1).collect();
    if alive.is_empty() {
        return Ok(true);
    }
    for_each_hom(mf, nf, HomKind::All, &mut |t| {
        alive.retain(|&x| t[x as usize] == 0);
        !alive.is_empty()
    })?;
    Ok(alive.is_empty())
}

#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub ideal: String,
    pub module: String,
    pub module_size: String,
}

#[derive(Debug, Clone)]
pub struct XiResult {
    pub filter: GabrielFilter,
    pub witnesses: Vec<Witness>,
}

/// Ξ on an extensional class: ideals `J` with `M = JM` for every member;
/// each excluded ideal gets the first member it fails to divide.
pub fn xi_from_membership(u: &ModuleUniverse, membership: &[bool]) -> Result<XiResult> {
    let ring = &u.ring;
    let ideals = enumerate_ideals(ring)?;
    let results = par::try_map(&ideals, |j| -> Result<Option<Witness>> {
        for (m, &inside) in u.members.iter().zip(membership) {
            if inside && !is_divisible(m, j)? {
                return Ok(Some(Witness {
                    ideal: j.format(),
                    module: m.describe(),
                    module_size: m.size().map_or("inf".into(), |s| s.to_string()),
                }));
            }
        }
        Ok(None)
    })?;
    let mut members = Vec::new();
    let mut witnesses = Vec::new();
    for (j, w) in ideals.into_iter().zip(results) {
        match w {
            None => members.push(j),
            Some(w) => witnesses.push(w),
        }
    }
    Ok(XiResult { filter: GabrielFilter::from_members(ring, members), witnesses })
}

pub fn xi(d: &ModuleClass, u: &ModuleUniverse) -> Result<XiResult> {
    xi_from_membership(u, &d.membership(u)?)
}

/// The idempotent `e` with `min(G) = Re` and the cyclic module `Re ≅ R/R(1−e)`.
pub fn idempotent_of(g: &GabrielFilter) -> Result<(Element, PresentedModule)> {
    let ring = g.ring();
    let f = ring.finite()?;
    let min = g.min_ideal()?;
    let e = min
        .members()
        .iter()
        .copied()
        .find(|&e| f.mul(e, e) == e && min.members().iter().all(|&x| f.mul(x, e) == x))
        .ok_or_else(|| Error::Inconsistent(format!("{} has no idempotent generator", min.format())))?;
    let comp = Ideal::principal(ring, Element::Fin(f.sub(f.one(), e)))?;
    let m = PresentedModule::cyclic(ring, &comp)?.with_label(format!("R*{}", ring.format(&Element::Fin(e))));
    Ok((Element::Fin(e), m))
}

#[derive(Debug, Clone, Serialize)]
pub struct FilterEntry {
    pub filter: Value,
    pub theta_members: Vec<String>,
    pub xi_basis: Vec<String>,
    pub witnesses: Vec<Witness>,
    pub verdicts: Vec<Verdict>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Counts {
    pub ideals: usize,
    pub spec: usize,
    pub filters: usize,
    pub spec_subsets: usize,
    pub div_classes: usize,
    pub torsionfree_classes: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorrespondenceReport {
    pub ring: String,
    pub universe_size: usize,
    pub counts: Counts,
    pub filters: Vec<FilterEntry>,
    pub verdicts: Vec<Verdict>,
    pub note: String,
}

impl CorrespondenceReport {
    pub fn all_verdicts(&self) -> Vec<&Verdict> {
        self.verdicts.iter().chain(self.filters.iter().flat_map(|f| f.verdicts.iter())).collect()
    }
}

fn subsets<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    (0..1usize << items.len())
        .map(|mask| items.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, x)| x.clone()).collect())
        .collect()
}

fn labels(u: &ModuleUniverse, mask: &[bool]) -> Vec<String> {
    u.members.iter().zip(mask).filter(|(_, &b)| b).map(|(m, _)| m.describe()).collect()
}

/// Spec subsets of a finite ring paired with their filters, checked for round trips.
pub fn spec_round_trips(ring: &Ring) -> Result<(usize, Verdict)> {
    let ps = primes(ring)?;
    let all = subsets(&ps);
    let mut bad = Vec::new();
    for s in &all {
        let p = SpecSubset::finite(ring, s.clone())?;
        let back = spec_from_filter(&filter_from_spec(ring, &p)?)?;
        if back != p {
            bad.push(json!({ "subset": p.to_json(ring), "returned": back.to_json(ring) }));
        }
    }
    let v = if bad.is_empty() { Verdict::pass("spec_round_trip_all_subsets") } else { Verdict::fail("spec_round_trip_all_subsets", json!(bad)) };
    Ok((all.len(), v))
}

pub fn verify_bijections(ring: &Ring, u: &ModuleUniverse) -> Result<CorrespondenceReport> {
    let filters = enumerate_filters(ring)?;
    let duals = par::try_map(&u.members, dual_module)?;
    let entries = par::try_map(&filters, |g| filter_entry(ring, u, &duals, g))?;
    let (n_subsets, subset_verdict) = spec_round_trips(ring)?;
    let div: BTreeSet<Vec<bool>> = entries.iter().map(|e| e.1.clone()).collect();
    let tf: BTreeSet<Vec<bool>> = entries.iter().map(|e| e.2.clone()).collect();
    let counts = Counts {
        ideals: enumerate_ideals(ring)?.len(),
        spec: primes(ring)?.len(),
        filters: filters.len(),
        spec_subsets: n_subsets,
        div_classes: div.len(),
        torsionfree_classes: tf.len(),
    };
    let same = [counts.spec_subsets, counts.div_classes, counts.torsionfree_classes].iter().all(|&c| c == counts.filters);
    let count_verdict = if same { Verdict::pass("four_way_counts") } else { Verdict::fail("four_way_counts", json!(counts)) };
    Ok(CorrespondenceReport {
        ring: ring.to_string(),
        universe_size: u.members.len(),
        counts,
        filters: entries.into_iter().map(|e| e.0).collect(),
        verdicts: vec![subset_verdict, count_verdict],
        note: "Exclusions from Xi are witnessed by the cyclic module Re, e the idempotent generating min(G); \
               this finite-ring argument upgrades universe-level equality to equality of filters."
            .into(),
    })
}

fn filter_entry(
    ring: &Ring,
    u: &ModuleUniverse,
    duals: &[PresentedModule],
    g: &GabrielFilter,
) -> Result<(FilterEntry, Vec<bool>, Vec<bool>)> {
    let th = theta(g);
    let div = th.membership(u)?;
    let tf = ModuleClass { ring: ring.clone(), kind: ClassKind::TorsionFree(g.clone()) }.membership(u)?;
    let x = xi_from_membership(u, &div)?;
    let mut vs = Vec::new();
    vs.push(if x.filter == *g {
        Verdict::pass("xi_theta_identity")
    } else {
        Verdict::fail("xi_theta_identity", json!({ "expected": g.to_json(), "got": x.filter.to_json() }))
    });
    let again = theta(&x.filter).membership(u)?;
    vs.push(if again == div { Verdict::pass("theta_xi_identity") } else { Verdict::fail("theta_xi_identity", json!(labels(u, &again))) });
    // idempotent witness: Re ∈ Div(G) and Re ≠ J·Re for every J ∉ G
    let (e, re) = idempotent_of(g)?;
    let mut bad = Vec::new();
    if !in_div(g, &re)? {
        bad.push(json!({ "witness_not_divisible": re.describe() }));
    }
    for j in enumerate_ideals(ring)? {
        if !g.contains(&j) && is_divisible(&re, &j)? {
            bad.push(json!({ "ideal": j.format() }));
        }
    }
    vs.push(if bad.is_empty() {
        Verdict::pass(format!("idempotent_witness e={}", ring.format(&e)))
    } else {
        Verdict::fail("idempotent_witness", json!(bad))
    });
    let p = spec_from_filter(g)?;
    let back = filter_from_spec(ring, &p)?;
    vs.push(if back == *g { Verdict::pass("filter_spec_round_trip") } else { Verdict::fail("filter_spec_round_trip", back.to_json()) });
    let tfp = torsionfree_class(ring, &p).membership(u)?;
    vs.push(if tfp == tf { Verdict::pass("torsionfree_via_spec") } else { Verdict::fail("torsionfree_via_spec", json!(labels(u, &tfp))) });
    let mut mism = Vec::new();
    for (i, d) in duals.iter().enumerate() {
        if div[i] != is_torsionfree(d, g)? {
            mism.push(u.members[i].describe());
        }
    }
    vs.push(if mism.is_empty() { Verdict::pass("divisible_iff_dual_torsionfree") } else { Verdict::fail("divisible_iff_dual_torsionfree", json!(mism)) });
    let entry = FilterEntry {
        filter: g.to_json(),
        theta_members: labels(u, &div),
        xi_basis: x.filter.basis().iter().map(|i| i.format()).collect(),
        witnesses: x.witnesses,
        verdicts: vs,
    };
    Ok((entry, div, tf))
}

/// Sample elements of a PID: `0..=n` for `Z`, monic polynomials of degree ≤ 2 for `F_p[x]`.
pub fn pid_sample_elements(ring: &Ring, n: i64) -> Vec<Element> {
    match ring.pid_kind() {
        Some(PidKind::Integers) => (0..=n).map(|k| ring.from_int(k)).collect(),
        Some(PidKind::FpPolys(p)) => {
            let mut out = vec![ring.zero()];
            for deg in 0..=2 {
                for f in crate::ring::poly::FpPoly::monics(deg, p) {
                    out.push(Element::Poly(f));
                }
            }
            out
        }
        None => vec![],
    }
}

/// Sample-based checks over `Z` or `F_p[x]` for finite prime sets.
pub fn verify_pid_samples(ring: &Ring, prime_sets: &[Vec<Element>], n: i64) -> Result<Vec<Verdict>> {
    let els = pid_sample_elements(ring, n);
    let ideals: Vec<Ideal> = els.iter().map(|e| Ideal::principal(ring, e.clone())).collect::<Result<_>>()?;
    let mut modules = vec![PresentedModule::free(ring, 1)];
    for e in &els {
        if !ring.is_zero(e) && !ring.is_unit(e) {
            modules.push(PresentedModule::cyclic(ring, &Ideal::principal(ring, e.clone())?)?);
        }
    }
    let mut out = Vec::new();
    for ps in prime_sets {
        let p = SpecSubset::pid(ring, false, PrimeSet::Finite(ps.clone()))?;
        let g = filter_from_spec(ring, &p)?;
        let div: Vec<bool> = modules.iter().map(|m| in_div(&g, m)).collect::<Result<_>>()?;
        let mut bad = Vec::new();
        for j in &ideals {
            let mut in_xi = true;
            for (m, &d) in modules.iter().zip(&div) {
                if d && !is_divisible(m, j)? {
                    in_xi = false;
                    break;
                }
            }
            if in_xi != g.contains(j) {
                bad.push(j.format());
            }
        }
        let name = format!("pid_xi_theta {}", g);
        out.push(if bad.is_empty() { Verdict::pass(name) } else { Verdict::fail(name, json!(bad)) });
        let mut bad = Vec::new();
        let fp = torsionfree_class(ring, &p);
        for m in &modules {
            if fp.contains(m)? != is_torsionfree(m, &g)? {
                bad.push(m.describe());
            }
        }
        let name = format!("pid_torsionfree_agreement {}", g);
        out.push(if bad.is_empty() { Verdict::pass(name) } else { Verdict::fail(name, json!(bad)) });
        let back = spec_from_filter(&g)?;
        let name = format!("pid_spec_round_trip {}", g);
        out.push(if back == p { Verdict::pass(name) } else { Verdict::fail(name, back.to_json(ring)) });
    }
    let generic_only = SpecSubset::pid(ring, true, PrimeSet::Finite(vec![]));
    out.push(match generic_only {
        Err(Error::NotSpecializationClosed(_)) => Verdict::pass("generic_point_alone_rejected"),
        other => Verdict::fail("generic_point_alone_rejected", json!(format!("{other:?}"))),
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filter::generate_filter;
    use crate::module::{build_universe, UniversePolicy};
    use crate::report::all_pass;

    fn id(r: &Ring, s: &str) -> Ideal {
        Ideal::parse(r, s).unwrap()
    }

    #[test]
    fn theta_and_xi_on_z12() {
        let r = Ring::parse("Z/12").unwrap();
        let u = build_universe(&r, UniversePolicy { summands: 1, bound: 512, duals: false }).unwrap();
        let g = generate_filter(&r, &[id(&r, "(4)")]).unwrap();
        let mem = theta(&g).membership(&u).unwrap();
        let sizes: Vec<u64> = u.members.iter().zip(&mem).filter(|x| *x.1).map(|x| x.0.fin().unwrap().size().unwrap()).collect();
        assert_eq!(sizes, vec![1, 3]);
        let x = xi(&theta(&g), &u).unwrap();
        assert_eq!(x.filter, g);
        let members: Vec<String> = x.filter.members().unwrap().iter().map(|i| i.format()).collect();
        assert_eq!(members.len(), 3);
        assert!(x.witnesses.iter().all(|w| w.module_size == "3"));
        let all = vec![true; u.members.len()];
        assert_eq!(xi_from_membership(&u, &all).unwrap().filter.members().unwrap().len(), 1);
        let zero_only: Vec<bool> = (0..u.members.len()).map(|i| i == 0).collect();
        assert_eq!(xi_from_membership(&u, &zero_only).unwrap().filter.members().unwrap().len(), 6);
    }

    #[test]
    fn spec_torsionfree_examples() {
        let r = Ring::parse("Z/12").unwrap();
        let p = SpecSubset::finite(&r, vec![id(&r, "(2)")]).unwrap();
        let c = torsionfree_class(&r, &p);
        assert!(c.contains(&PresentedModule::cyclic(&r, &id(&r, "(3)")).unwrap()).unwrap());
        assert!(!c.contains(&PresentedModule::cyclic(&r, &id(&r, "(2)")).unwrap()).unwrap());
        let z = Ring::parse("Z").unwrap();
        let p = SpecSubset::pid(&z, false, PrimeSet::Finite(vec![z.from_int(2)])).unwrap();
        let c = torsionfree_class(&z, &p);
        assert!(c.contains(&PresentedModule::free(&z, 1)).unwrap());
        assert!(!c.contains(&PresentedModule::parse(&z, "R/(2)").unwrap()).unwrap());
    }

    #[test]
    fn bijections_on_small_rings() {
        for (ring, n) in [("Z/12", 4), ("F4", 2), ("Z/8", 2)] {
            let r = Ring::parse(ring).unwrap();
            let u = build_universe(&r, UniversePolicy::default()).unwrap();
            let rep = verify_bijections(&r, &u).unwrap();
            assert_eq!(rep.counts.filters, n, "{ring}");
            assert!(rep.all_verdicts().iter().all(|v| v.passed()), "{ring}: {:?}", rep.all_verdicts());
        }
    }

    #[test]
    fn gen_and_cogen() {
        let r = Ring::parse("Z/12").unwrap();
        let c3 = PresentedModule::cyclic(&r, &id(&r, "(3)")).unwrap();
        let c6 = PresentedModule::cyclic(&r, &id(&r, "(6)")).unwrap();
        assert!(in_gen(&c6, &c3).unwrap());
        assert!(!in_gen(&c3, &c6).unwrap());
        assert!(in_cogen(&c6, &c3).unwrap());
        assert!(!in_cogen(&c3, &c6).unwrap());
        assert!(in_gen(&PresentedModule::zero(&r), &PresentedModule::zero(&r)).unwrap());
    }

    #[test]
    fn trace_matches_enumeration() {
        for name in ["Z/12", "F2[x]/(x^2)", "Z/4*F3"] {
            let r = Ring::parse(name).unwrap();
            let u = build_universe(&r, UniversePolicy { summands: 2, bound: 48, duals: false }).unwrap();
            for n in &u.members {
                for m in &u.members {
                    assert_eq!(in_gen(n, m).unwrap(), in_gen_enum(n, m).unwrap(), "{name}: {n} -> {m}");
                }
            }
        }
    }

    #[test]
    fn pid_samples() {
        let z = Ring::parse("Z").unwrap();
        let sets = vec![vec![], vec![z.from_int(2)], vec![z.from_int(2), z.from_int(3)]];
        assert!(all_pass(&verify_pid_samples(&z, &sets, 12).unwrap()));
        let f2 = Ring::parse("F2[x]").unwrap();
        let sets = vec![vec![f2.parse_element("x").unwrap()], vec![f2.parse_element("x^2+x+1").unwrap()]];
        assert!(all_pass(&verify_pid_samples(&f2, &sets, 0).unwrap()));
    }
}
