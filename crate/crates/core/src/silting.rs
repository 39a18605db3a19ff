//! Finite stages of the silting construction attached to a Gabriel filter:
//! the ideal `A = Σ Ann(I)`, the modules `S_I`, the truncated free modules on
//! sequences of pairs `(I, k)`, and the checks that can be carried out on them.

use serde::Serialize;
use serde_json::{json, Value};

use crate::correspondence::{idempotent_of, in_div, in_gen, theta, ClassKind, ModuleClass};
use crate::error::{guard, Error, Result};
use crate::filter::GabrielFilter;
use crate::homological::{ext1, ProjectiveMap};
use crate::ideal::Ideal;
use crate::module::hom::is_isomorphic;
use crate::module::{build_universe, is_divisible, ModuleUniverse, PresentedModule, UniversePolicy};
use crate::par;
use crate::report::Verdict;
use crate::ring::{Element, Ring};

/// An ideal with an explicit, ordered generator list.
#[derive(Debug, Clone)]
pub struct GeneratedIdeal {
    pub ideal: Ideal,
    pub gens: Vec<Element>,
}

impl GeneratedIdeal {
    pub fn new(ideal: &Ideal, gens: Vec<Element>) -> Result<GeneratedIdeal> {
        let ring = ideal.ring();
        let span = Ideal::new(ring, gens.clone())?;
        if span != *ideal {
            let g: Vec<String> = gens.iter().map(|x| ring.format(x)).collect();
            return Err(Error::GeneratorsDontGenerate(format!("[{}] for {}", g.join(","), ideal.format())));
        }
        Ok(GeneratedIdeal { ideal: ideal.clone(), gens })
    }

    pub fn canonical(ideal: &Ideal) -> GeneratedIdeal {
        GeneratedIdeal { ideal: ideal.clone(), gens: ideal.generators().to_vec() }
    }

    pub fn format(&self) -> String {
        let r = self.ideal.ring();
        let g: Vec<String> = self.gens.iter().map(|x| r.format(x)).collect();
        format!("{}:[{}]", self.ideal.format(), g.join(","))
    }
}

#[derive(Debug, Clone)]
pub struct FilterPresentationData {
    pub ring: Ring,
    pub filter: GabrielFilter,
    /// Basis ideals with their generators, followed by extra overridden members.
    pub ideals: Vec<GeneratedIdeal>,
    pub a: Ideal,
    pub quotient: Ring,
}

impl FilterPresentationData {
    /// `overrides` replace the generators of basis ideals or add further members of `G`.
    pub fn new(filter: &GabrielFilter, overrides: &[GeneratedIdeal]) -> Result<FilterPresentationData> {
        let ring = filter.ring().clone();
        ring.finite()?;
        let mut ideals: Vec<GeneratedIdeal> = filter
            .basis()
            .iter()
            .map(|b| overrides.iter().find(|o| o.ideal == *b).cloned().unwrap_or_else(|| GeneratedIdeal::canonical(b)))
            .collect();
        for o in overrides {
            if !filter.contains(&o.ideal) {
                return Err(Error::InvalidDescriptor(format!("{} is not a member of {}", o.ideal.format(), filter)));
            }
            if !ideals.iter().any(|i| i.ideal == o.ideal) {
                ideals.push(o.clone());
            }
        }
        let mut a = Ideal::zero(&ring);
        for i in &ideals {
            a = a.sum(&i.ideal.annihilator())?;
        }
        let gens: Vec<u32> = a.generators().iter().map(Element::fin).collect();
        let quotient = ring.quotient_ring(&gens)?;
        Ok(FilterPresentationData { ring, filter: filter.clone(), ideals, a, quotient })
    }

    /// Image of an element in `R/A`.
    pub fn reduce(&self, x: &Element) -> Element {
        Element::Fin(self.quotient.projection_from_parent().unwrap()[x.fin() as usize])
    }

    pub fn to_json(&self) -> Value {
        json!({
            "filter": self.filter.to_json(),
            "ideals": self.ideals.iter().map(GeneratedIdeal::format).collect::<Vec<_>>(),
            "A": self.a.format(),
            "quotient_size": self.quotient.size(),
        })
    }
}

#[derive(Debug, Clone)]
pub struct TransposeModule {
    /// `coker σ_I` over `R`.
    pub tr: PresentedModule,
    /// `coker σ̄_I` over `R/A`.
    pub s: PresentedModule,
    pub sigma: ProjectiveMap,
    pub sigma_bar: ProjectiveMap,
}

pub fn transpose_module(data: &FilterPresentationData, i: &GeneratedIdeal) -> Result<TransposeModule> {
    let sigma = ProjectiveMap::from_generators(&data.ring, &i.gens).labeled(format!("sigma_{}", i.format()));
    let sigma_bar = sigma.reduce_to(&data.quotient)?;
    Ok(TransposeModule { tr: sigma.cokernel()?, s: sigma_bar.cokernel()?, sigma, sigma_bar })
}

/// `rI ⊆ A ⇒ r ∈ A` for every listed ideal, exhaustively.
pub fn check_step1(data: &FilterPresentationData) -> Result<Verdict> {
    let f = data.ring.finite()?;
    let mut bad = Vec::new();
    for i in &data.ideals {
        for r in f.elements() {
            let inside = i.ideal.members().iter().all(|&x| data.a.contains(&Element::Fin(f.mul(r, x))));
            if inside && !data.a.contains(&Element::Fin(r)) {
                bad.push(json!({ "ideal": i.format(), "r": data.ring.format(&Element::Fin(r)) }));
            }
        }
    }
    Ok(if bad.is_empty() { Verdict::pass("step1_faithful_modulo_A") } else { Verdict::fail("step1_faithful_modulo_A", json!(bad)) })
}

/// Both sides of `Ext¹_{R/A}(S_I, M) = 0 ⇔ M = IM` for an `R/A`-module `M`.
pub fn step2_ext_criterion(data: &FilterPresentationData, i: &GeneratedIdeal, m: &PresentedModule) -> Result<(bool, bool)> {
    let t = transpose_module(data, i)?;
    let ext_zero = ext1(&t.sigma_bar, m)?.is_zero();
    let ibar = Ideal::new(&data.quotient, i.gens.iter().map(|x| data.reduce(x)).collect())?;
    let div = is_divisible(m, &ibar)?;
    Ok((ext_zero, div))
}

/// Sequences of pairs `(ideal index, generator index)` of length ≤ n, by length then lexicographically.
#[derive(Debug, Clone)]
pub struct SequenceBasis {
    pub alphabet: Vec<(usize, usize)>,
    pub seqs: Vec<Vec<(usize, usize)>>,
}

impl SequenceBasis {
    pub fn new(data: &FilterPresentationData, n: usize) -> Result<SequenceBasis> {
        let alphabet: Vec<(usize, usize)> =
            data.ideals.iter().enumerate().flat_map(|(i, g)| (0..g.gens.len()).map(move |k| (i, k))).collect();
        let limit = data.ring.limits().sequences;
        let mut total: u64 = 0;
        let mut layer: u64 = 1;
        for _ in 0..=n {
            total = total.saturating_add(layer);
            layer = layer.saturating_mul(alphabet.len() as u64);
        }
        if total > limit {
            return Err(guard("sequence basis", total, limit));
        }
        let mut seqs: Vec<Vec<(usize, usize)>> = vec![vec![]];
        let mut last = vec![vec![]];
        for _ in 0..n {
            let mut next = Vec::new();
            for s in &last {
                for &a in &alphabet {
                    let mut t: Vec<(usize, usize)> = s.clone();
                    t.push(a);
                    next.push(t);
                }
            }
            seqs.extend(next.iter().cloned());
            last = next;
        }
        Ok(SequenceBasis { alphabet, seqs })
    }

    pub fn index(&self, s: &[(usize, usize)]) -> Option<usize> {
        self.seqs.iter().position(|t| t == s)
    }

    pub fn format(&self, data: &FilterPresentationData, s: &[(usize, usize)]) -> String {
        if s.is_empty() {
            return "w".into();
        }
        s.iter().map(|&(i, k)| format!("({},{k})", data.ideals[i].ideal.format())).collect::<Vec<_>>().join("")
    }
}

#[derive(Debug, Clone)]
pub struct TruncatedConstruction {
    pub level: usize,
    pub basis: SequenceBasis,
    /// `φ_n : K_{n-1} → F_n` and `φ'_n : K_{n-1} → F'_n`.
    pub phi: ProjectiveMap,
    pub phi_prime: ProjectiveMap,
    /// `σ_n = φ_n ⊕ φ'_n`.
    pub sigma: ProjectiveMap,
    pub c: PresentedModule,
    pub c_prime: PresentedModule,
}

pub fn build_truncation(data: &FilterPresentationData, n: usize) -> Result<TruncatedConstruction> {
    let limit = data.ring.limits().level;
    if n > limit {
        return Err(guard("truncation level", n, limit as u64));
    }
    let ring = &data.ring;
    let basis = SequenceBasis::new(data, n)?;
    let fdim = basis.seqs.len();
    let shorter: Vec<&Vec<(usize, usize)>> = basis.seqs.iter().filter(|s| s.len() < n).collect();
    // columns of φ, one per (λ, I) with |λ| < n
    let mut cols: Vec<Vec<Element>> = Vec::new();
    for lam in &shorter {
        for (ii, gi) in data.ideals.iter().enumerate() {
            let mut col = vec![ring.zero(); fdim];
            col[basis.index(lam).unwrap()] = ring.one();
            for (k, x) in gi.gens.iter().enumerate() {
                let mut t = (*lam).clone();
                t.push((ii, k));
                let j = basis.index(&t).unwrap();
                col[j] = ring.sub(&col[j], x);
            }
            cols.push(col);
        }
    }
    let kdim = cols.len();
    let to_rows = |cs: &[Vec<Element>], rows: usize| -> Vec<Vec<Element>> {
        (0..rows).map(|i| cs.iter().map(|c| c[i].clone()).collect()).collect()
    };
    let phi = ProjectiveMap::new(ring, kdim, fdim, to_rows(&cols, fdim))?.labeled(format!("phi_{n}"));
    let cols_prime: Vec<Vec<Element>> = cols.iter().map(|c| c[1..].to_vec()).collect();
    let phi_prime = ProjectiveMap::new(ring, kdim, fdim - 1, to_rows(&cols_prime, fdim - 1))?.labeled(format!("phi'_{n}"));
    let mut sig_cols: Vec<Vec<Element>> = Vec::new();
    for c in &cols {
        let mut v = c.clone();
        v.extend(std::iter::repeat_n(ring.zero(), fdim - 1));
        sig_cols.push(v);
    }
    for c in &cols_prime {
        let mut v = vec![ring.zero(); fdim];
        v.extend(c.iter().cloned());
        sig_cols.push(v);
    }
    let sigma = ProjectiveMap::new(ring, 2 * kdim, 2 * fdim - 1, to_rows(&sig_cols, 2 * fdim - 1))?.labeled(format!("sigma_{n}"));
    let with_a = |cs: &[Vec<Element>], dim: usize| -> Result<PresentedModule> {
        let mut rels = cs.to_vec();
        for a in data.a.generators() {
            for i in 0..dim {
                let mut v = vec![ring.zero(); dim];
                v[i] = a.clone();
                rels.push(v);
            }
        }
        PresentedModule::from_presentation(ring, dim, rels)
    };
    let c = with_a(&cols, fdim)?.with_label(format!("C_{n}"));
    let c_prime = with_a(&cols_prime, fdim - 1)?.with_label(format!("C'_{n}"));
    Ok(TruncatedConstruction { level: n, basis, phi, phi_prime, sigma, c, c_prime })
}

/// `C_{n+1}/C_n ≅ ⊕_{|λ| = n} ⊕_I S_I`, and `C_n → C_{n+1}` injective.
pub fn check_step3(data: &FilterPresentationData, lower: &TruncatedConstruction, upper: &TruncatedConstruction) -> Result<Verdict> {
    let ring = &data.ring;
    let n = lower.level;
    let name = format!("step3_filtration_{}_to_{}", n, upper.level);
    let fdim = upper.basis.seqs.len();
    let mut rels: Vec<Vec<Element>> = (0..upper.phi.a).map(|j| upper.phi.column(j)).collect();
    for a in data.a.generators() {
        for i in 0..fdim {
            let mut v = vec![ring.zero(); fdim];
            v[i] = a.clone();
            rels.push(v);
        }
    }
    for (i, s) in upper.basis.seqs.iter().enumerate() {
        if s.len() <= n {
            let mut v = vec![ring.zero(); fdim];
            v[i] = ring.one();
            rels.push(v);
        }
    }
    let quotient = PresentedModule::from_presentation(ring, fdim, rels)?;
    let fresh = lower.basis.seqs.iter().filter(|s| s.len() == n).count();
    let mut parts = Vec::new();
    let ss: Vec<PresentedModule> = data
        .ideals
        .iter()
        .map(|i| {
            let t = transpose_module(data, i)?;
            // S_I viewed over R
            let cols = (0..t.sigma.a).map(|j| t.sigma.column(j)).collect::<Vec<_>>();
            let mut rels = cols;
            for a in data.a.generators() {
                for r in 0..t.sigma.b {
                    let mut v = vec![ring.zero(); t.sigma.b];
                    v[r] = a.clone();
                    rels.push(v);
                }
            }
            PresentedModule::from_presentation(ring, t.sigma.b, rels)
        })
        .collect::<Result<_>>()?;
    for _ in 0..fresh {
        parts.extend(ss.iter());
    }
    let predicted = PresentedModule::direct_sum(ring, &parts)?;
    let sizes_ok = lower.c.size().zip(upper.c.size()).zip(quotient.size()).is_some_and(|((a, b), q)| a * q == b);
    let iso = is_isomorphic(quotient.fin()?, predicted.fin()?)?;
    let witness = json!({
        "quotient": quotient.to_json(),
        "predicted": predicted.to_json(),
        "lower_size": lower.c.size().map(|s| s.to_string()),
        "upper_size": upper.c.size().map(|s| s.to_string()),
    });
    Ok(if iso && sizes_ok { Verdict::pass(name) } else { Verdict::fail(name, witness) })
}

#[derive(Debug, Clone, Serialize)]
pub struct Step6Report {
    pub verdicts: Vec<Verdict>,
    /// Smallest built level from which `D_{σ_n}` agrees with `Div(G)` on the universe.
    pub stabilization_level: Option<usize>,
    pub d_sigma_members: Vec<Vec<String>>,
}

pub fn check_step6(data: &FilterPresentationData, levels: &[TruncatedConstruction], u: &ModuleUniverse) -> Result<Step6Report> {
    let div = theta(&data.filter).membership(u)?;
    let mut verdicts = Vec::new();
    let mut memberships = Vec::new();
    for t in levels {
        let d = ModuleClass { ring: data.ring.clone(), kind: ClassKind::DSigma(t.sigma.clone()) }.membership(u)?;
        let bad: Vec<String> =
            u.members.iter().zip(div.iter().zip(&d)).filter(|(_, (v, w))| **v && !**w).map(|(m, _)| m.describe()).collect();
        let name = format!("step6_divisible_in_d_sigma_{}", t.level);
        verdicts.push(if bad.is_empty() { Verdict::pass(name) } else { Verdict::fail(name, json!(bad)) });
        if t.level == 1 {
            let mut bad = Vec::new();
            for (m, &inside) in u.members.iter().zip(&d) {
                if inside && !killed_by_ideal(m, &data.a)? {
                    bad.push(m.describe());
                }
            }
            let name = "step6_d_sigma_1_annihilated_by_A";
            verdicts.push(if bad.is_empty() { Verdict::pass(name) } else { Verdict::fail(name, json!(bad)) });
        }
        memberships.push(d);
    }
    if let Some(top) = levels.last() {
        let gen = par::try_map(&u.members, |m| -> Result<bool> { Ok(!in_div(&data.filter, m)? || in_gen(&top.c, m)?) })?;
        let bad: Vec<String> = u.members.iter().zip(&gen).filter(|(_, &ok)| !ok).map(|(m, _)| m.describe()).collect();
        let name = format!("step6_divisible_generated_by_C_{}", top.level);
        verdicts.push(if bad.is_empty() { Verdict::pass(name) } else { Verdict::fail(name, json!(bad)) });
    }
    let mut stabilization_level = None;
    for (i, d) in memberships.iter().enumerate().rev() {
        if *d == div {
            stabilization_level = Some(levels[i].level);
        } else {
            break;
        }
    }
    let d_sigma_members = memberships
        .iter()
        .map(|d| u.members.iter().zip(d).filter(|(_, &b)| b).map(|(m, _)| m.describe()).collect())
        .collect();
    Ok(Step6Report { verdicts, stabilization_level, d_sigma_members })
}

fn killed_by_ideal(m: &PresentedModule, a: &Ideal) -> Result<bool> {
    let f = m.fin()?;
    Ok(f.generators().iter().all(|&g| a.generators().iter().all(|x| f.scale(x.fin(), g) == 0)))
}

/// `σ : R → R ⊕ R`, `1 ↦ (e, 0)`, and its class `D_σ = {M : eM = M}`.
pub fn idempotent_silting(ring: &Ring, e: &Element) -> Result<(ProjectiveMap, ModuleClass)> {
    let s = ProjectiveMap::idempotent(ring, e)?;
    let class = ModuleClass { ring: ring.clone(), kind: ClassKind::DSigma(s.clone()) };
    Ok((s, class))
}

/// `D_σ = Gen(Re)` and, for the idempotent of `min(G)`, `D_σ = Θ(G)` on the universe.
pub fn check_idempotent(g: &GabrielFilter, u: &ModuleUniverse) -> Result<Vec<Verdict>> {
    let ring = g.ring();
    let (e, re) = idempotent_of(g)?;
    let (_, class) = idempotent_silting(ring, &e)?;
    let d = class.membership(u)?;
    let gen = ModuleClass { ring: ring.clone(), kind: ClassKind::Gen(re) }.membership(u)?;
    let div = theta(g).membership(u)?;
    let e_s = ring.format(&e);
    Ok(vec![
        if d == gen { Verdict::pass(format!("idempotent_d_sigma_is_gen_Re e={e_s}")) } else { Verdict::fail("idempotent_d_sigma_is_gen_Re", json!(e_s)) },
        if d == div { Verdict::pass(format!("idempotent_d_sigma_is_theta e={e_s}")) } else { Verdict::fail("idempotent_d_sigma_is_theta", json!(e_s)) },
    ])
}

#[derive(Debug, Clone, Serialize)]
pub struct SiltingReport {
    pub data: Value,
    pub transposes: Vec<Value>,
    pub levels: Vec<Value>,
    pub step2_pairs: usize,
    pub step6: Step6Report,
    pub verdicts: Vec<Verdict>,
}

impl SiltingReport {
    pub fn all_verdicts(&self) -> Vec<&Verdict> {
        self.verdicts.iter().chain(self.step6.verdicts.iter()).collect()
    }
}

/// Generator-list variants of an ideal: canonical, and canonical plus the largest nonzero member.
pub fn generator_variants(i: &Ideal) -> Vec<GeneratedIdeal> {
    let canon = GeneratedIdeal::canonical(i);
    let mut extra = canon.clone();
    if let Some(&last) = i.members().iter().rev().find(|&&x| x != 0) {
        extra.gens.push(Element::Fin(last));
    }
    vec![canon, extra]
}

/// Step II over all members of the filter (two generator lists each) and an `R/A` universe.
pub fn step2_sweep(data: &FilterPresentationData, policy: UniversePolicy) -> Result<(usize, Verdict)> {
    let ub = build_universe(&data.quotient, policy)?;
    let mut pairs = Vec::new();
    for i in data.filter.members()? {
        for v in generator_variants(i) {
            for m in &ub.members {
                pairs.push((v.clone(), m.clone()));
            }
        }
    }
    let res = par::try_map(&pairs, |(i, m)| step2_ext_criterion(data, i, m))?;
    let bad: Vec<Value> = pairs
        .iter()
        .zip(&res)
        .filter(|(_, (a, b))| a != b)
        .map(|((i, m), (a, b))| json!({ "ideal": i.format(), "module": m.describe(), "ext_vanishes": a, "divisible": b }))
        .collect();
    let v = if bad.is_empty() { Verdict::pass("step2_ext_iff_divisible") } else { Verdict::fail("step2_ext_iff_divisible", json!(bad)) };
    Ok((pairs.len(), v))
}

/// Everything: data, Steps I–III, Step VI at each level up to `n`, idempotent form.
pub fn run_silting(g: &GabrielFilter, overrides: &[GeneratedIdeal], n: usize, u: &ModuleUniverse) -> Result<SiltingReport> {
    let data = FilterPresentationData::new(g, overrides)?;
    let mut verdicts = vec![check_step1(&data)?];
    let (pairs, v2) = step2_sweep(&data, u.policy)?;
    verdicts.push(v2);
    let transposes = data
        .ideals
        .iter()
        .map(|i| {
            let t = transpose_module(&data, i)?;
            Ok(json!({ "ideal": i.format(), "transpose": t.tr.to_json(), "S": t.s.to_json() }))
        })
        .collect::<Result<Vec<_>>>()?;
    let levels: Vec<TruncatedConstruction> = (0..=n).map(|l| build_truncation(&data, l)).collect::<Result<_>>()?;
    let c0_ok = is_isomorphic(levels[0].c.fin()?, PresentedModule::cyclic(&data.ring, &data.a)?.fin()?)?;
    verdicts.push(if c0_ok { Verdict::pass("step3_c0_is_r_mod_a") } else { Verdict::fail("step3_c0_is_r_mod_a", levels[0].c.to_json()) });
    for w in levels.windows(2) {
        verdicts.push(check_step3(&data, &w[0], &w[1])?);
    }
    let step6 = check_step6(&data, &levels, u)?;
    verdicts.extend(check_idempotent(g, u)?);
    let levels_json = levels
        .iter()
        .map(|t| json!({ "level": t.level, "sequences": t.basis.seqs.len(), "C": t.c.to_json(), "C_prime": t.c_prime.to_json() }))
        .collect();
    Ok(SiltingReport { data: data.to_json(), transposes, levels: levels_json, step2_pairs: pairs, step6, verdicts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filter::generate_filter;
    use crate::report::all_pass;

    fn id(r: &Ring, s: &str) -> Ideal {
        Ideal::parse(r, s).unwrap()
    }
    fn el(r: &Ring, s: &str) -> Element {
        r.parse_element(s).unwrap()
    }

    #[test]
    fn z12_filter_of_4() {
        let r = Ring::parse("Z/12").unwrap();
        let g = generate_filter(&r, &[id(&r, "(4)")]).unwrap();
        let data = FilterPresentationData::new(&g, &[]).unwrap();
        assert_eq!(data.a.format(), "(3)");
        assert!(check_step1(&data).unwrap().passed());
        let t = transpose_module(&data, &data.ideals[0]).unwrap();
        assert!(t.s.is_zero());
        let c0 = build_truncation(&data, 0).unwrap();
        let c1 = build_truncation(&data, 1).unwrap();
        assert_eq!(c0.c.size(), Some(3u32.into()));
        assert_eq!(c1.c.size(), Some(3u32.into()));
        assert!(check_step3(&data, &c0, &c1).unwrap().passed());
    }

    #[test]
    fn redundant_generators() {
        let r = Ring::parse("Z/12").unwrap();
        let g = generate_filter(&r, &[id(&r, "(2)")]).unwrap();
        let two = GeneratedIdeal::new(&id(&r, "(2)"), vec![el(&r, "2"), el(&r, "6")]).unwrap();
        let data = FilterPresentationData::new(&g, std::slice::from_ref(&two)).unwrap();
        assert_eq!(data.a.format(), "(3)");
        let t = transpose_module(&data, &two).unwrap();
        assert_eq!(t.s.size(), Some(3u32.into()));
        let levels: Vec<_> = (0..=2).map(|n| build_truncation(&data, n).unwrap()).collect();
        assert!(check_step3(&data, &levels[0], &levels[1]).unwrap().passed());
        assert!(check_step3(&data, &levels[1], &levels[2]).unwrap().passed());
        let (a, b) = step2_ext_criterion(&data, &two, &PresentedModule::free(&data.quotient, 1)).unwrap();
        assert!(a && b);
        assert!(GeneratedIdeal::new(&id(&r, "(2)"), vec![el(&r, "4")]).is_err());
    }

    #[test]
    fn degenerate_quotients() {
        let r = Ring::parse("Z/8").unwrap();
        let g = generate_filter(&r, &[Ideal::zero(&r)]).unwrap();
        let data = FilterPresentationData::new(&g, &[]).unwrap();
        assert!(data.a.is_whole());
        assert!(check_step1(&data).unwrap().passed());
        let t0 = build_truncation(&data, 0).unwrap();
        let t1 = build_truncation(&data, 1).unwrap();
        assert!(t0.c.is_zero() && t1.c.is_zero());
        assert!(check_step3(&data, &t0, &t1).unwrap().passed());
    }

    #[test]
    fn full_run_and_idempotents() {
        let r = Ring::parse("Z/12").unwrap();
        let u = build_universe(&r, UniversePolicy::default()).unwrap();
        let g = generate_filter(&r, &[id(&r, "(4)")]).unwrap();
        let rep = run_silting(&g, &[], 2, &u).unwrap();
        assert!(rep.all_verdicts().iter().all(|v| v.passed()), "{:?}", rep.all_verdicts());
        assert_eq!(rep.step6.stabilization_level, Some(1));
        for (e, n) in [("1", u.members.len()), ("0", 1)] {
            let (_, c) = idempotent_silting(&r, &el(&r, e)).unwrap();
            assert_eq!(c.membership(&u).unwrap().iter().filter(|&&b| b).count(), n);
        }
        assert!(idempotent_silting(&r, &el(&r, "2")).is_err());
        assert!(all_pass(&check_idempotent(&g, &u).unwrap()));
    }
}
