//! Cosilting side over a finite ring: the injectives `E` (hulls of torsionfree
//! cyclics) and `E₁` (hulls of `R/I`, `I ∈ G`), the torsionfree precover of
//! `E₁`, and the resulting cosilting module `C_G`.
//!
//! All checks run summand by summand, so the direct sums never have to be
//! enumerated.

use serde::Serialize;
use serde_json::{json, Value};

use crate::correspondence::{idempotent_of, ClassKind, ModuleClass};
use crate::error::Result;
use crate::filter::GabrielFilter;
use crate::homological::{character_module, injective_hull, is_injective, InjectiveHull};
use crate::ideal::{enumerate_ideals, Ideal};
use crate::module::hom::{for_each_hom, has_nonzero_hom, HomKind};
use crate::module::torsion::generators_of_mask;
use crate::module::{is_torsionfree, ModuleUniverse, PresentedModule};
use crate::par;
use crate::report::Verdict;
use crate::ring::Element;

#[derive(Debug, Clone)]
pub struct Summand {
    pub source: Ideal,
    pub hull: InjectiveHull,
}

impl Summand {
    fn to_json(&self) -> Value {
        json!({
            "of": format!("R/{}", self.source.format()),
            "hull": self.hull.hull.to_json(),
            "multiplicities": self.hull.multiplicities,
        })
    }
}

/// The largest torsionfree submodule `F = e·E₁` of each `E₁` summand.
#[derive(Debug, Clone)]
pub struct Precover {
    pub idempotent: Element,
    /// Per `E₁` summand: the submodule `e·E_i` and its inclusion table.
    pub parts: Vec<(PresentedModule, Vec<u32>)>,
}

impl Precover {
    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|(p, _)| p.is_zero())
    }
}

#[derive(Debug, Clone)]
pub struct CosiltingAssembly {
    pub filter: GabrielFilter,
    pub e: Vec<Summand>,
    pub e1: Vec<Summand>,
    pub precover: Precover,
    /// Summands of `C_G`; with a zero precover this is just `E`.
    pub c: Vec<PresentedModule>,
}

impl CosiltingAssembly {
    pub fn c_size(&self) -> num_bigint::BigUint {
        self.c.iter().map(|m| m.size().unwrap()).product()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "filter": self.filter.to_json(),
            "E": self.e.iter().map(Summand::to_json).collect::<Vec<_>>(),
            "E1": self.e1.iter().map(Summand::to_json).collect::<Vec<_>>(),
            "precover_zero": self.precover.is_zero(),
            "idempotent": self.filter.ring().format(&self.precover.idempotent),
            "C": self.c.iter().map(|m| m.describe()).collect::<Vec<_>>(),
            "C_size": self.c_size().to_string(),
        })
    }
}

fn hulls(ideals: Vec<Ideal>) -> Result<Vec<Summand>> {
    par::try_map(&ideals, |i| {
        let cyc = PresentedModule::cyclic(i.ring(), i)?;
        Ok(Summand { source: i.clone(), hull: injective_hull(&cyc)? })
    })
}

/// `e·M` as a submodule of a finite module.
fn e_part(m: &PresentedModule, e: &Element) -> Result<(PresentedModule, Vec<u32>)> {
    let f = m.fin()?;
    let mask: Vec<bool> = f.elements()?.map(|x| f.scale(e.fin(), x) == x).collect();
    let gens = generators_of_mask(f, &mask)?;
    let sub = f.submodule(&gens)?;
    Ok((PresentedModule::from_finite(sub.module), sub.incl))
}

pub fn build_precover(g: &GabrielFilter, e1: &[Summand]) -> Result<Precover> {
    let (e, _) = idempotent_of(g)?;
    let parts = e1.iter().map(|s| e_part(&s.hull.hull, &e)).collect::<Result<_>>()?;
    Ok(Precover { idempotent: e, parts })
}

pub fn build_cosilting(g: &GabrielFilter) -> Result<CosiltingAssembly> {
    let ring = g.ring();
    let ideals = enumerate_ideals(ring)?;
    let mut tf = Vec::new();
    for j in ideals.iter().filter(|j| !j.is_whole()) {
        if is_torsionfree(&PresentedModule::cyclic(ring, j)?, g)? {
            tf.push(j.clone());
        }
    }
    let in_g: Vec<Ideal> = ideals.iter().filter(|i| !i.is_whole() && g.contains(i)).cloned().collect();
    let e = hulls(tf)?;
    let e1 = hulls(in_g)?;
    let precover = build_precover(g, &e1)?;
    let mut c: Vec<PresentedModule> = e.iter().map(|s| s.hull.hull.clone()).collect();
    if !precover.is_zero() {
        for (p, _) in &precover.parts {
            if !p.is_zero() {
                c.push(injective_hull(p)?.hull);
            }
        }
    }
    Ok(CosiltingAssembly { filter: g.clone(), e, e1, precover, c })
}

/// `M` embeds in a product of copies of the listed modules.
pub fn cogenerated_by(parts: &[PresentedModule], m: &PresentedModule) -> Result<bool> {
    let mf = m.fin()?;
    let mut alive: Vec<u32> = mf.elements()?.skip(1).collect();
    for p in parts {
        if alive.is_empty() {
            break;
        }
        for_each_hom(mf, p.fin()?, HomKind::All, &mut |t| {
            alive.retain(|&x| t[x as usize] == 0);
            !alive.is_empty()
        })?;
    }
    Ok(alive.is_empty())
}

/// A summand index with a nonzero map `M → E₁`-summand, if any.
pub fn torsion_witness(asm: &CosiltingAssembly, m: &PresentedModule) -> Result<Option<usize>> {
    for (i, s) in asm.e1.iter().enumerate() {
        if has_nonzero_hom(m.fin()?, s.hull.hull.fin()?)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Serialize)]
pub struct CosiltingReport {
    pub assembly: Value,
    pub verdicts: Vec<Verdict>,
}

fn verdict(name: &str, bad: Vec<String>) -> Verdict {
    if bad.is_empty() {
        Verdict::pass(name)
    } else {
        Verdict::fail(name, json!(bad))
    }
}

pub fn verify_cosilting(asm: &CosiltingAssembly, u: &ModuleUniverse) -> Result<CosiltingReport> {
    let g = &asm.filter;
    let ring = g.ring();
    let mut verdicts = Vec::new();

    let mut bad = Vec::new();
    for s in asm.e.iter().chain(&asm.e1) {
        if !is_injective(&s.hull.hull)? {
            bad.push(s.hull.hull.describe());
        }
    }
    verdicts.push(verdict("summands_injective", bad));
    let mut bad = Vec::new();
    for s in &asm.e {
        if !is_torsionfree(&s.hull.hull, g)? {
            bad.push(s.hull.hull.describe());
        }
    }
    verdicts.push(verdict("E_torsionfree", bad));

    let f_g = ModuleClass { ring: ring.clone(), kind: ClassKind::TorsionFree(g.clone()) }.membership(u)?;
    let e_mods: Vec<PresentedModule> = asm.e.iter().map(|s| s.hull.hull.clone()).collect();
    let cogen = par::try_map(&u.members, |m| cogenerated_by(&e_mods, m))?;
    verdicts.push(verdict("cogen_E_is_torsionfree", mismatches(u, &f_g, &cogen)));

    // precover: every map from a torsionfree member into E₁ lands in e·E₁
    let mut bad = Vec::new();
    for (i, s) in asm.e1.iter().enumerate() {
        let (p, incl) = &asm.precover.parts[i];
        if !is_torsionfree(p, g)? {
            bad.push(format!("e*{}", s.hull.hull.describe()));
        }
        let hf = s.hull.hull.fin()?;
        let mut inside = vec![false; hf.enum_size()? as usize];
        for &x in incl {
            inside[x as usize] = true;
        }
        for (m, _) in u.members.iter().zip(&f_g).filter(|(_, &t)| t) {
            let mut ok = true;
            for_each_hom(m.fin()?, hf, HomKind::All, &mut |t| {
                ok = t.iter().all(|&y| inside[y as usize]);
                ok
            })?;
            if !ok {
                bad.push(format!("{} -> {}", m.describe(), s.hull.hull.describe()));
            }
        }
    }
    verdicts.push(verdict("precover_is_largest_torsionfree_submodule", bad));
    verdicts.push(if asm.precover.is_zero() {
        Verdict::pass("precover_vanishes")
    } else {
        Verdict::fail("precover_vanishes", json!(asm.precover.parts.iter().map(|p| p.0.describe()).collect::<Vec<_>>()))
    });

    // C_λ = {M : Hom(M, E₁) = 0} for λ : 0 → E₁, with a witness for each excluded member
    let wit = par::try_map(&u.members, |m| torsion_witness(asm, m))?;
    let c_lambda: Vec<bool> = wit.iter().map(Option::is_none).collect();
    verdicts.push(verdict("cosilting_class_is_torsionfree", mismatches(u, &f_g, &c_lambda)));
    let c_cogen = par::try_map(&u.members, |m| cogenerated_by(&asm.c, m))?;
    verdicts.push(verdict("cogen_C_is_torsionfree", mismatches(u, &f_g, &c_cogen)));

    // duality: M is divisible iff its character dual is cogenerated by E
    let div = ModuleClass { ring: ring.clone(), kind: ClassKind::Div(g.clone()) }.membership(u)?;
    let dual_cogen = par::try_map(&u.members, |m| {
        let d = PresentedModule::from_finite(character_module(m)?.module);
        cogenerated_by(&e_mods, &d)
    })?;
    verdicts.push(verdict("divisible_iff_dual_cogenerated_by_E", mismatches(u, &div, &dual_cogen)));

    Ok(CosiltingReport { assembly: asm.to_json(), verdicts })
}

fn mismatches(u: &ModuleUniverse, a: &[bool], b: &[bool]) -> Vec<String> {
    u.members.iter().zip(a.iter().zip(b)).filter(|(_, (x, y))| x != y).map(|(m, _)| m.describe()).collect()
}

pub fn run_cosilting(g: &GabrielFilter, u: &ModuleUniverse) -> Result<CosiltingReport> {
    verify_cosilting(&build_cosilting(g)?, u)
}
