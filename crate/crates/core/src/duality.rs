//! The `D_σ`/`T_σ` bridge under character duality and the identity
//! `D_{σ_I} = {M : M = IM}`, checked on a universe.

use serde::Serialize;
use serde_json::json;

use crate::error::Result;
use crate::homological::{dual_module, ext1, in_d_sigma, in_d_sigma_prime, in_t_sigma, ProjectiveMap};
use crate::ideal::{enumerate_ideals, Ideal};
use crate::module::{is_divisible, ModuleUniverse, PresentedModule};
use crate::par;
use crate::report::Verdict;
use crate::ring::Ring;
use crate::silting::generator_variants;

/// `σ_I` for every ideal and both generator lists, then `(e, 0)ᵀ` for every idempotent.
pub fn sigma_family(ring: &Ring) -> Result<Vec<(Option<Ideal>, ProjectiveMap)>> {
    let mut out = Vec::new();
    for i in enumerate_ideals(ring)? {
        for v in generator_variants(&i) {
            let s = ProjectiveMap::from_generators(ring, &v.gens).labeled(format!("sigma_{}", v.format()));
            out.push((Some(i.clone()), s));
        }
    }
    for e in ring.idempotents()? {
        out.push((None, ProjectiveMap::idempotent(ring, &e)?.labeled(format!("idempotent e={}", ring.format(&e)))));
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct BridgeReport {
    pub sigmas: usize,
    pub pairs: usize,
    pub verdicts: Vec<Verdict>,
}

fn check(name: &str, bad: Vec<serde_json::Value>) -> Verdict {
    if bad.is_empty() {
        Verdict::pass(name)
    } else {
        Verdict::fail(name, json!(bad))
    }
}

/// `X ∈ T_σ ⇔ X⁺ ∈ D_σ` for every σ of [`sigma_family`] and every universe member.
pub fn verify_duality(ring: &Ring, u: &ModuleUniverse) -> Result<BridgeReport> {
    let sigmas = sigma_family(ring)?;
    let duals: Vec<PresentedModule> = par::try_map(&u.members, dual_module)?;
    let mut jobs = Vec::new();
    for (si, _) in sigmas.iter().enumerate() {
        for xi in 0..u.members.len() {
            jobs.push((si, xi));
        }
    }
    let res = par::try_map(&jobs, |&(si, xi)| -> Result<(bool, bool)> {
        let s = &sigmas[si].1;
        Ok((in_t_sigma(s, &u.members[xi])?, in_d_sigma(s, &duals[xi])?))
    })?;
    let bad = jobs
        .iter()
        .zip(&res)
        .filter(|(_, (t, d))| t != d)
        .map(|(&(si, xi), (t, d))| json!({ "sigma": sigmas[si].1.label, "module": u.members[xi].describe(), "in_t": t, "dual_in_d": d }))
        .collect();
    Ok(BridgeReport { sigmas: sigmas.len(), pairs: jobs.len(), verdicts: vec![check("t_sigma_iff_dual_in_d_sigma", bad)] })
}

/// `D_{σ_I} = {M : M = IM}` per ideal and generator list, and the split form
/// `D_σ = (Coker σ)^⊥ ∩ D_{σ'}` with `σ'` the corestriction to the image.
pub fn verify_membership(ring: &Ring, u: &ModuleUniverse) -> Result<BridgeReport> {
    let sigmas = sigma_family(ring)?;
    let mut jobs = Vec::new();
    for (si, (i, _)) in sigmas.iter().enumerate() {
        if i.is_some() {
            for xi in 0..u.members.len() {
                jobs.push((si, xi));
            }
        }
    }
    let res = par::try_map(&jobs, |&(si, xi)| -> Result<(bool, bool, bool)> {
        let (i, s) = &sigmas[si];
        let m = &u.members[xi];
        let split = ext1(s, m)?.is_zero() && in_d_sigma_prime(s, m)?;
        Ok((in_d_sigma(s, m)?, is_divisible(m, i.as_ref().unwrap())?, split))
    })?;
    let mut div_bad = Vec::new();
    let mut prime_bad = Vec::new();
    for (&(si, xi), &(d, v, p)) in jobs.iter().zip(&res) {
        let w = || json!({ "sigma": sigmas[si].1.label, "module": u.members[xi].describe(), "in_d": d });
        if d != v {
            div_bad.push(w());
        }
        if d != p {
            prime_bad.push(w());
        }
    }
    Ok(BridgeReport {
        sigmas: sigmas.len(),
        pairs: jobs.len(),
        verdicts: vec![check("d_sigma_I_is_I_divisible", div_bad), check("corestriction_form_agrees", prime_bad)],
    })
}

/// Idempotents `e` with `D_σ = {M : eM = M}` for `σ = (e, 0)ᵀ`.
pub fn idempotent_classes(ring: &Ring, u: &ModuleUniverse) -> Result<Verdict> {
    let mut bad = Vec::new();
    for e in ring.idempotents()? {
        let s = ProjectiveMap::idempotent(ring, &e)?;
        for m in &u.members {
            let f = m.fin()?;
            let image: std::collections::HashSet<u32> = f.elements()?.map(|y| f.scale(e.fin(), y)).collect();
            let em = image.len() as u64 == f.enum_size()?;
            if in_d_sigma(&s, m)? != em {
                bad.push(json!({ "e": ring.format(&e), "module": m.describe() }));
            }
        }
    }
    Ok(check("idempotent_d_sigma_is_eM_equals_M", bad))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{build_universe, UniversePolicy};
    use crate::report::all_pass;

    #[test]
    fn z12_bridge() {
        let r = Ring::parse("Z/12").unwrap();
        let u = build_universe(&r, UniversePolicy::default()).unwrap();
        let d = verify_duality(&r, &u).unwrap();
        assert!(all_pass(&d.verdicts), "{:?}", d.verdicts);
        assert_eq!(d.sigmas, 12 + 4);
        let m = verify_membership(&r, &u).unwrap();
        assert!(all_pass(&m.verdicts), "{:?}", m.verdicts);
        assert!(m.pairs >= 100);
        assert!(idempotent_classes(&r, &u).unwrap().passed());
    }
}
