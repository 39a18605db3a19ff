//! Finite stand-in for "all modules": zero, the cyclics `R/J`, bounded
//! direct sums of them and optionally their character duals, one
//! representative per isomorphism class.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::ideal::{enumerate_ideals, Ideal};
use crate::module::hom::{invariant_signature, is_isomorphic};
use crate::module::{character_dual, PresentedModule};
use crate::ring::Ring;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniversePolicy {
    /// Maximum number of cyclic summands.
    pub summands: usize,
    /// Bound on the cardinality of a member.
    pub bound: u64,
    pub duals: bool,
}

impl Default for UniversePolicy {
    fn default() -> Self {
        UniversePolicy { summands: 2, bound: 512, duals: false }
    }
}

#[derive(Debug, Clone)]
pub struct ModuleUniverse {
    pub ring: Ring,
    pub policy: UniversePolicy,
    pub members: Vec<PresentedModule>,
}

struct Dedup {
    kept: Vec<(u64, Vec<u64>, PresentedModule)>,
}

impl Dedup {
    fn offer(&mut self, m: PresentedModule) -> Result<()> {
        let f = m.fin()?;
        let size = f.enum_size()?;
        let sig = invariant_signature(f)?;
        for (s, g, other) in &self.kept {
            if *s == size && *g == sig && is_isomorphic(f, other.fin()?)? {
                return Ok(());
            }
        }
        self.kept.push((size, sig, m));
        Ok(())
    }
}

fn multisets(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for i in start..n {
        cur.push(i);
        multisets(n, k, i, cur, out);
        cur.pop();
    }
}

pub fn build_universe(ring: &Ring, policy: UniversePolicy) -> Result<ModuleUniverse> {
    ring.finite()?;
    let ideals: Vec<Ideal> = enumerate_ideals(ring)?;
    let mut cyclics: Vec<(u64, PresentedModule)> = Vec::new();
    let mut dd = Dedup { kept: vec![] };
    dd.offer(PresentedModule::zero(ring))?;
    for i in &ideals {
        if i.is_whole() {
            continue;
        }
        let c = PresentedModule::cyclic(ring, i)?;
        let n = c.fin()?.enum_size()?;
        if n <= policy.bound {
            dd.offer(c.clone())?;
            cyclics.push((n, c));
        }
    }
    for k in 2..=policy.summands {
        let mut combos = Vec::new();
        multisets(cyclics.len(), k, 0, &mut vec![], &mut combos);
        for combo in combos {
            let size = combo.iter().try_fold(1u64, |a, &i| a.checked_mul(cyclics[i].0));
            if size.is_none_or(|s| s > policy.bound) {
                continue;
            }
            let parts: Vec<&PresentedModule> = combo.iter().map(|&i| &cyclics[i].1).collect();
            dd.offer(PresentedModule::direct_sum(ring, &parts)?)?;
        }
    }
    if policy.duals {
        let current: Vec<PresentedModule> = dd.kept.iter().map(|k| k.2.clone()).collect();
        for m in current {
            let d = character_dual(m.fin()?);
            let label = format!("({})+", m.describe());
            dd.offer(PresentedModule::from_finite(d.module).with_label(label))?;
        }
    }
    let mut kept = dd.kept;
    kept.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    let members = kept.into_iter().filter(|k| k.0 <= policy.bound.max(1)).map(|k| k.2).collect();
    Ok(ModuleUniverse { ring: ring.clone(), policy, members })
}

/// Whether `m` is isomorphic to some member; returns its position.
pub fn position_in(universe: &ModuleUniverse, m: &PresentedModule) -> Result<Option<usize>> {
    let f = m.fin()?;
    for (i, u) in universe.members.iter().enumerate() {
        if u.fin()?.size_big() == f.size_big() && is_isomorphic(u.fin()?, f)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sizes(u: &ModuleUniverse) -> Vec<u64> {
        u.members.iter().map(|m| m.fin().unwrap().size().unwrap()).collect()
    }

    #[test]
    fn cyclic_universe_of_z12() {
        let r = Ring::parse("Z/12").unwrap();
        let u = build_universe(&r, UniversePolicy { summands: 1, bound: 512, duals: false }).unwrap();
        assert_eq!(sizes(&u), vec![1, 2, 3, 4, 6, 12]);
        let u1 = build_universe(&r, UniversePolicy { summands: 2, bound: 1, duals: false }).unwrap();
        assert_eq!(sizes(&u1), vec![1]);
        let full = build_universe(&r, UniversePolicy::default()).unwrap();
        // Z/2+Z/3, Z/3+Z/4 and Z/2+Z/12 ≅ Z/4+Z/6 collapse
        assert_eq!(full.members.len(), 18);
    }

    #[test]
    fn dual_numbers_universe() {
        let r = Ring::parse("F2[x]/(x^2)").unwrap();
        let u = build_universe(&r, UniversePolicy { summands: 2, bound: 16, duals: true }).unwrap();
        assert_eq!(sizes(&u), vec![1, 2, 4, 4, 8, 16]);
    }
}
