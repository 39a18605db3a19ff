//! Maps between finitely generated free modules and the membership tests
//! `D_σ` (Hom(σ, X) onto) and `T_σ` (σ ⊗ X injective); Ext¹, socles and
//! injective hulls over finite rings.

use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::abelian;
use crate::error::{Error, Result};
use crate::ideal::{enumerate_ideals, jacobson_radical, primes, Ideal};
use crate::module::hom::{find_injective, for_each_hom, hom_count, HomKind};
use crate::module::pid::{injective_on_cyclic, transpose_onto_cyclic};
use crate::module::torsion::{generators_of_mask, killed_by};
use crate::module::{character_dual, FiniteModule, ModuleMap, PresentedModule};
use crate::ring::{Element, Ring};

pub use crate::module::dual::{double_dual_check, CharacterModule};

/// `σ : R^a → R^b`, stored as a `b × a` matrix whose columns are the images
/// of the basis vectors.
#[derive(Debug, Clone)]
pub struct ProjectiveMap {
    pub ring: Ring,
    pub a: usize,
    pub b: usize,
    pub matrix: Vec<Vec<Element>>,
    pub label: Option<String>,
}

impl ProjectiveMap {
    pub fn new(ring: &Ring, a: usize, b: usize, matrix: Vec<Vec<Element>>) -> Result<ProjectiveMap> {
        if matrix.len() != b || matrix.iter().any(|r| r.len() != a || r.iter().any(|e| !ring.contains(e))) {
            return Err(Error::InvalidMap(format!("expected a {b}×{a} matrix over {ring}")));
        }
        Ok(ProjectiveMap { ring: ring.clone(), a, b, matrix, label: None })
    }

    pub fn labeled(mut self, label: impl Into<String>) -> ProjectiveMap {
        self.label = Some(label.into());
        self
    }

    pub fn identity(ring: &Ring, n: usize) -> ProjectiveMap {
        let m = (0..n).map(|i| (0..n).map(|j| if i == j { ring.one() } else { ring.zero() }).collect()).collect();
        ProjectiveMap::new(ring, n, n, m).unwrap()
    }

    /// `R → R`, `1 ↦ x`.
    pub fn scalar(ring: &Ring, x: Element) -> ProjectiveMap {
        ProjectiveMap::new(ring, 1, 1, vec![vec![x]]).unwrap()
    }

    /// `σ_I : R → R^n`, `1 ↦ (x_0, …, x_{n-1})`.
    pub fn from_generators(ring: &Ring, gens: &[Element]) -> ProjectiveMap {
        let m = gens.iter().map(|g| vec![g.clone()]).collect();
        ProjectiveMap::new(ring, 1, gens.len(), m).unwrap()
    }

    /// `R → R ⊕ R`, `1 ↦ (e, 0)`; its cokernel is `R(1−e) ⊕ R`.
    pub fn idempotent(ring: &Ring, e: &Element) -> Result<ProjectiveMap> {
        if ring.mul(e, e) != *e {
            return Err(Error::NotIdempotent(ring.format(e)));
        }
        Ok(ProjectiveMap::new(ring, 1, 2, vec![vec![e.clone()], vec![ring.zero()]])?.labeled(format!("idempotent {}", ring.format(e))))
    }

    /// The cokernel `⟨b generators | columns⟩`.
    pub fn cokernel(&self) -> Result<PresentedModule> {
        let cols = (0..self.a).map(|j| (0..self.b).map(|i| self.matrix[i][j].clone()).collect()).collect();
        PresentedModule::from_presentation(&self.ring, self.b, cols)
    }

    pub fn column(&self, j: usize) -> Vec<Element> {
        (0..self.b).map(|i| self.matrix[i][j].clone()).collect()
    }

    /// The same matrix over a quotient ring.
    pub fn reduce_to(&self, q: &Ring) -> Result<ProjectiveMap> {
        let proj = q.projection_from_parent().ok_or_else(|| Error::InvalidDescriptor("not a quotient ring".into()))?;
        let m = self.matrix.iter().map(|r| r.iter().map(|e| Element::Fin(proj[e.fin() as usize])).collect()).collect();
        ProjectiveMap::new(q, self.a, self.b, m)
    }

    pub fn to_json(&self) -> Value {
        let m: Vec<Vec<String>> = self.matrix.iter().map(|r| r.iter().map(|e| self.ring.format(e)).collect()).collect();
        json!({ "domain_rank": self.a, "codomain_rank": self.b, "matrix": m, "label": self.label })
    }
}

fn powers(m: &FiniteModule, k: usize) -> Vec<u64> {
    let mut o = Vec::new();
    for _ in 0..k {
        o.extend_from_slice(m.orders());
    }
    o
}

fn unit_vec(d: usize, t: usize) -> Vec<u64> {
    let mut v = vec![0u64; d];
    v[t] = 1;
    v
}

/// Image of `M^src → M^dst` for the matrix `coef(i_dst, j_src)`, as a quotient of `M^dst`.
fn coker_of_action(m: &FiniteModule, src: usize, dst: usize, coef: impl Fn(usize, usize) -> u32) -> abelian::GroupQuotient {
    let d = m.orders().len();
    let mut cols = Vec::new();
    for j in 0..src {
        for t in 0..d {
            let e = unit_vec(d, t);
            let mut col = Vec::with_capacity(dst * d);
            for i in 0..dst {
                col.extend(m.scale_coords(coef(i, j), &e).iter().map(|&x| x as i64));
            }
            cols.push(col);
        }
    }
    abelian::quotient(&powers(m, dst), &cols)
}

fn check_ring(sigma: &ProjectiveMap, m: &PresentedModule) -> Result<()> {
    if sigma.ring.descriptor() != m.ring().descriptor() {
        return Err(Error::RingMismatch);
    }
    Ok(())
}

/// `M ∈ D_σ`: every `R^a → M` factors through σ, i.e. `M^b → M^a` is onto.
pub fn in_d_sigma(sigma: &ProjectiveMap, m: &PresentedModule) -> Result<bool> {
    check_ring(sigma, m)?;
    if let Some(f) = m.finite() {
        let q = coker_of_action(f, sigma.b, sigma.a, |j, i| sigma.matrix[i][j].fin());
        return Ok(q.orders.is_empty());
    }
    let p = m.pid().ok_or_else(|| Error::NotFinite(m.ring().to_string()))?;
    let ring = m.ring();
    let ok = p.factors.iter().all(|d| transpose_onto_cyclic(ring, &sigma.matrix, sigma.a, sigma.b, d))
        && (p.rank == 0 || transpose_onto_cyclic(ring, &sigma.matrix, sigma.a, sigma.b, &ring.zero()));
    Ok(ok)
}

/// `X ∈ T_σ`: `σ ⊗ X : X^a → X^b` is injective.
pub fn in_t_sigma(sigma: &ProjectiveMap, x: &PresentedModule) -> Result<bool> {
    check_ring(sigma, x)?;
    if let Some(f) = x.finite() {
        let q = coker_of_action(f, sigma.a, sigma.b, |i, j| sigma.matrix[i][j].fin());
        let coker: BigUint = q.orders.iter().fold(BigUint::from(1u32), |acc, &o| acc * o);
        let s = f.size_big();
        return Ok(coker * s.pow(sigma.a as u32) == s.pow(sigma.b as u32));
    }
    let p = x.pid().ok_or_else(|| Error::NotFinite(x.ring().to_string()))?;
    let ring = x.ring();
    let ok = p.factors.iter().all(|d| injective_on_cyclic(ring, &sigma.matrix, sigma.a, sigma.b, d))
        && (p.rank == 0 || injective_on_cyclic(ring, &sigma.matrix, sigma.a, sigma.b, &ring.zero()));
    Ok(ok)
}

fn tuples(n: u32, k: usize) -> impl Iterator<Item = Vec<u32>> {
    let total = (n as u64).pow(k as u32);
    (0..total).map(move |mut t| {
        (0..k)
            .map(|_| {
                let d = (t % n as u64) as u32;
                t /= n as u64;
                d
            })
            .collect()
    })
}

/// Enumerative version of [`in_d_sigma`] for small cases.
pub fn in_d_sigma_enum(sigma: &ProjectiveMap, m: &FiniteModule) -> Result<bool> {
    let n = m.enum_size()? as u32;
    let mut hit = std::collections::HashSet::new();
    for g in tuples(n, sigma.b) {
        let f: Vec<u32> = (0..sigma.a)
            .map(|j| (0..sigma.b).fold(0, |acc, i| m.add(acc, m.scale(sigma.matrix[i][j].fin(), g[i]))))
            .collect();
        hit.insert(f);
    }
    Ok(hit.len() as u64 == (n as u64).pow(sigma.a as u32))
}

/// Enumerative version of [`in_t_sigma`] for small cases.
pub fn in_t_sigma_enum(sigma: &ProjectiveMap, x: &FiniteModule) -> Result<bool> {
    let n = x.enum_size()? as u32;
    for v in tuples(n, sigma.a).skip(1) {
        let img: Vec<u32> = (0..sigma.b)
            .map(|i| (0..sigma.a).fold(0, |acc, j| x.add(acc, x.scale(sigma.matrix[i][j].fin(), v[j]))))
            .collect();
        if img.iter().all(|&y| y == 0) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn character_module(m: &PresentedModule) -> Result<CharacterModule> {
    Ok(character_dual(m.fin()?))
}

/// The dual as a presented module.
pub fn dual_module(m: &PresentedModule) -> Result<PresentedModule> {
    let d = character_dual(m.fin()?).module;
    Ok(PresentedModule::from_finite(d).with_label(format!("({})+", m.describe())))
}

/// The image `Z = σ(R^a) ⊆ R^b` as a module, with the images of the basis
/// (in `Z`'s indexing) and each element of `Z` as a tuple of ring elements.
struct Image {
    module: FiniteModule,
    basis: Vec<u32>,
    tuples: Vec<Vec<u32>>,
}

fn image_submodule(sigma: &ProjectiveMap) -> Result<Image> {
    let fr = sigma.ring.finite()?;
    let k = fr.orders().len();
    let free = FiniteModule::free(&sigma.ring, sigma.b);
    let cols: Vec<u32> = (0..sigma.a)
        .map(|j| {
            let c: Vec<u32> = sigma.column(j).iter().map(Element::fin).collect();
            free.index(&FiniteModule::free_coords(&sigma.ring, &c))
        })
        .collect();
    let sub = free.submodule(&cols)?;
    let basis = cols.iter().map(|&c| sub.index_of[c as usize]).collect();
    let tuples = sub
        .incl
        .iter()
        .map(|&x| {
            let c = free.coords(x);
            (0..sigma.b).map(|i| fr.from_coords(&c[i * k..(i + 1) * k])).collect()
        })
        .collect();
    Ok(Image { module: sub.module, basis, tuples })
}

/// `Ext¹(coker σ, M) = coker(Hom(R^b, M) → Hom(im σ, M))`.
pub fn ext1(sigma: &ProjectiveMap, m: &PresentedModule) -> Result<PresentedModule> {
    check_ring(sigma, m)?;
    let mf = m.fin()?;
    let img = image_submodule(sigma)?;
    let z = &img.module;
    let zgens = z.generators().to_vec();
    let h = zgens.len();
    let mh = FiniteModule::direct_sum(m.ring(), &vec![mf; h]);
    // Hom(Z, M) inside M^h via images of the generators of Z
    let mut mask = vec![false; mh.enum_size()? as usize];
    for_each_hom(z, mf, HomKind::All, &mut |t| {
        let c: Vec<u64> = zgens.iter().flat_map(|&g| mf.coords(t[g as usize])).collect();
        mask[mh.index(&c) as usize] = true;
        true
    })?;
    let hom = mh.submodule(&generators_of_mask(&mh, &mask)?)?;
    // restrictions of R^b → M, basis vector i ↦ u_t
    let zb: Vec<&Vec<u32>> = zgens.iter().map(|&g| &img.tuples[g as usize]).collect();
    let mut rels = Vec::new();
    for i in 0..sigma.b {
        for t in 0..mf.orders().len() {
            let ut = mf.index(&unit_vec(mf.orders().len(), t));
            let c: Vec<u64> = zb.iter().flat_map(|tuple| mf.coords(mf.scale(tuple[i], ut))).collect();
            let x = hom.index_of[mh.index(&c) as usize];
            if x == u32::MAX {
                return Err(Error::Inconsistent("restriction outside Hom".into()));
            }
            rels.push(x);
        }
    }
    let q = hom.module.quotient(&rels);
    Ok(PresentedModule::from_finite(q.module))
}

/// Fast path for `Ext¹(coker σ_I, M)` over a ring where σ_I has faithful
/// image: `M / IM`.
pub fn ext1_fast(gens: &[Element], m: &PresentedModule) -> Result<PresentedModule> {
    let f = m.fin()?;
    let mut rels = Vec::new();
    for &g in f.generators() {
        for x in gens {
            rels.push(f.scale_coords(x.fin(), &f.coords(g)));
        }
    }
    Ok(PresentedModule::from_finite(f.quotient_coords(&rels).module))
}

/// Whether every `R^a → M` factors through the corestriction `σ' : R^a → im σ`.
pub fn in_d_sigma_prime(sigma: &ProjectiveMap, m: &PresentedModule) -> Result<bool> {
    let mf = m.fin()?;
    let img = image_submodule(sigma)?;
    let basis_images = &img.basis;
    let mut hit = std::collections::HashSet::new();
    for_each_hom(&img.module, mf, HomKind::All, &mut |t| {
        hit.insert(basis_images.iter().map(|&c| t[c as usize]).collect::<Vec<u32>>());
        true
    })?;
    Ok(hit.len() as u64 == mf.enum_size()?.pow(sigma.a as u32))
}

/// `{m : J(R)·m = 0}`, with its inclusion.
pub fn socle(m: &PresentedModule) -> Result<(PresentedModule, Vec<u32>)> {
    let f = m.fin()?;
    let j = jacobson_radical(m.ring())?;
    let mask = killed_by(f, &j)?;
    let sub = f.submodule(&generators_of_mask(f, &mask)?)?;
    Ok((PresentedModule::from_finite(sub.module), sub.incl))
}

/// The indecomposable injectives: for each local factor `Re`, the dual of
/// `R/R(1−e)`, paired with the maximal ideal it belongs to.
pub fn indecomposable_injectives(ring: &Ring) -> Result<Vec<(Element, Ideal, PresentedModule)>> {
    let f = ring.finite()?;
    let maxes = primes(ring)?;
    let mut out = Vec::new();
    for (e, _) in ring.local_factors()? {
        let p = maxes
            .iter()
            .find(|p| !p.contains(&e))
            .ok_or_else(|| Error::Inconsistent("local factor without a maximal ideal".into()))?
            .clone();
        let comp = Ideal::principal(ring, Element::Fin(f.sub(f.one(), e.fin())))?;
        let c = PresentedModule::cyclic(ring, &comp)?;
        let dual = PresentedModule::from_finite(character_dual(c.fin()?).module)
            .with_label(format!("E(R/{})", p.format()));
        out.push((e, p, dual));
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct InjectiveHull {
    pub hull: PresentedModule,
    pub embedding: ModuleMap,
    /// Multiplicity of each indecomposable injective, in the order of
    /// [`indecomposable_injectives`].
    pub multiplicities: Vec<usize>,
}

pub fn injective_hull(m: &PresentedModule) -> Result<InjectiveHull> {
    let ring = m.ring();
    let f = m.fin()?;
    let (soc, _) = socle(m)?;
    let sf = soc.fin()?;
    let inj = indecomposable_injectives(ring)?;
    let maxes: Vec<Ideal> = inj.iter().map(|t| t.1.clone()).collect();
    let mut mult = Vec::new();
    let mut parts: Vec<&PresentedModule> = Vec::new();
    for (i, (e, p, ei)) in inj.iter().enumerate() {
        let q = ring.size().unwrap() / p.size().unwrap();
        let ecomp: usize = sf.elements()?.filter(|&x| sf.scale(e.fin(), x) == x).count();
        let mut k = 0;
        let mut s = 1usize;
        while s < ecomp {
            s *= q as usize;
            k += 1;
        }
        if s != ecomp {
            return Err(Error::Inconsistent(format!("socle component at {} is not a vector space", maxes[i].format())));
        }
        mult.push(k);
        for _ in 0..k {
            parts.push(ei);
        }
    }
    let hull = if parts.is_empty() {
        PresentedModule::zero(ring)
    } else {
        PresentedModule::direct_sum(ring, &parts)?
    };
    let hf = hull.fin()?;
    let emb = find_injective(f, hf)?.ok_or_else(|| Error::EmbeddingSearchFailed(m.describe()))?;
    if !is_essential(&emb)? {
        return Err(Error::EmbeddingSearchFailed(format!("{} (not essential)", m.describe())));
    }
    Ok(InjectiveHull { hull, embedding: emb, multiplicities: mult })
}

/// Every nonzero submodule of the codomain meets the image.
pub fn is_essential(map: &ModuleMap) -> Result<bool> {
    let img = map.image_mask()?;
    let e = &map.codomain;
    for x in 1..e.enum_size()? as u32 {
        if !e.orbit(x).iter().any(|&y| y != 0 && img[y as usize]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Baer's criterion: every `J → E` extends to `R → E`.
pub fn is_injective(m: &PresentedModule) -> Result<bool> {
    let ring = m.ring();
    let e = m.fin()?;
    let free = FiniteModule::free(ring, 1);
    for j in enumerate_ideals(ring)? {
        if j.is_zero() || j.is_whole() {
            continue;
        }
        let gens: Vec<u32> = j.generators().iter().map(|g| free.index(&FiniteModule::free_coords(ring, &[g.fin()]))).collect();
        let sub = free.submodule(&gens)?;
        let jm = &sub.module;
        let fr = ring.finite()?;
        let jg: Vec<u32> = jm.generators().iter().map(|&x| fr.from_coords(&free.coords(sub.incl[x as usize]))).collect();
        let mut restrictions = std::collections::HashSet::new();
        for x in e.elements()? {
            restrictions.insert(jg.iter().map(|&r| e.scale(r, x)).collect::<Vec<u32>>());
        }
        if restrictions.len() != hom_count(jm, e)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r12() -> Ring {
        Ring::parse("Z/12").unwrap()
    }
    fn cyc(r: &Ring, s: &str) -> PresentedModule {
        PresentedModule::cyclic(r, &Ideal::parse(r, s).unwrap()).unwrap()
    }
    fn el(r: &Ring, s: &str) -> Element {
        r.parse_element(s).unwrap()
    }

    #[test]
    fn d_and_t_examples() {
        let r = r12();
        let s4 = ProjectiveMap::scalar(&r, el(&r, "4"));
        let m3 = cyc(&r, "(3)");
        let m2 = cyc(&r, "(2)");
        assert!(in_d_sigma(&s4, &m3).unwrap());
        assert!(!in_d_sigma(&s4, &m2).unwrap());
        assert!(in_t_sigma(&s4, &m3).unwrap());
        assert!(!in_t_sigma(&s4, &m2).unwrap());
        let id = ProjectiveMap::identity(&r, 2);
        assert!(in_d_sigma(&id, &m2).unwrap());
        let empty = ProjectiveMap::new(&r, 0, 2, vec![vec![], vec![]]).unwrap();
        assert!(in_t_sigma(&empty, &m2).unwrap());
        for m in [&m2, &m3, &cyc(&r, "(0)")] {
            for s in [&s4, &ProjectiveMap::from_generators(&r, &[el(&r, "2"), el(&r, "6")])] {
                assert_eq!(in_d_sigma(s, m).unwrap(), in_d_sigma_enum(s, m.fin().unwrap()).unwrap());
                assert_eq!(in_t_sigma(s, m).unwrap(), in_t_sigma_enum(s, m.fin().unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn pid_membership() {
        let z = Ring::parse("Z").unwrap();
        let s2 = ProjectiveMap::scalar(&z, el(&z, "2"));
        assert!(in_d_sigma(&s2, &PresentedModule::parse(&z, "R/(9)").unwrap()).unwrap());
        assert!(!in_d_sigma(&s2, &PresentedModule::parse(&z, "R").unwrap()).unwrap());
        assert!(in_t_sigma(&s2, &PresentedModule::parse(&z, "R").unwrap()).unwrap());
        assert!(!in_t_sigma(&s2, &PresentedModule::parse(&z, "R/(4)").unwrap()).unwrap());
    }

    #[test]
    fn ext_examples() {
        let r4 = Ring::parse("Z/4").unwrap();
        let s2 = ProjectiveMap::scalar(&r4, el(&r4, "2"));
        let e = ext1(&s2, &cyc(&r4, "(2)")).unwrap();
        assert_eq!(e.size(), Some(2u32.into()));
        let id = ProjectiveMap::identity(&r4, 1);
        assert!(ext1(&id, &cyc(&r4, "(2)")).unwrap().is_zero());
        // over R/A for Z/12 with A = (3): S for (2) with generators 2, 6
        let q = r12().quotient_ring(&[3]).unwrap();
        let gens = vec![el(&q, "2"), el(&q, "0")];
        let sigma = ProjectiveMap::from_generators(&q, &gens);
        assert_eq!(sigma.cokernel().unwrap().size(), Some(3u32.into()));
        let m = PresentedModule::free(&q, 1);
        assert!(ext1(&sigma, &m).unwrap().is_zero());
        assert!(ext1_fast(&gens, &m).unwrap().is_zero());
    }

    #[test]
    fn socle_and_hulls() {
        let r = r12();
        let (s, _) = socle(&cyc(&r, "(4)")).unwrap();
        assert_eq!(s.size(), Some(2u32.into()));
        let h = injective_hull(&cyc(&r, "(2)")).unwrap();
        assert_eq!(h.hull.size(), Some(4u32.into()));
        assert!(is_injective(&h.hull).unwrap());
        assert!(!is_injective(&cyc(&r, "(2)")).unwrap());
        assert!(injective_hull(&PresentedModule::zero(&r)).unwrap().hull.is_zero());
        let r2 = Ring::parse("F2[x]/(x^2)").unwrap();
        let h2 = injective_hull(&PresentedModule::parse(&r2, "R/(x) (+) R/(x)").unwrap()).unwrap();
        assert_eq!(h2.hull.size(), Some(16u32.into()));
        assert!(is_injective(&h2.hull).unwrap());
    }
}
