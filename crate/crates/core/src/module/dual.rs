//! Character duals `M⁺ = Hom_Z(M, Q/Z)` of finite modules.
//!
//! On `⊕ Z/d_i` with exponent `E`, a character with coordinates `c` sends `m`
//! to `Σ m_i c_i (E/d_i) / E`. The contragredient action `(rχ)(m) = χ(rm)`
//! transposes each action matrix with the rescaling `d_j/d_i`.

use crate::error::{Error, Result};
use crate::module::{FiniteModule, ModuleMap};

#[derive(Debug, Clone)]
pub struct CharacterModule {
    pub module: FiniteModule,
    pub of: FiniteModule,
}

impl CharacterModule {
    /// `χ(m)` as a residue modulo the exponent.
    pub fn pair(&self, m: u32, chi: u32) -> u64 {
        pairing(&self.of, m, &self.module, chi)
    }
}

fn pairing(m_mod: &FiniteModule, m: u32, c_mod: &FiniteModule, chi: u32) -> u64 {
    let e = m_mod.exponent();
    let (mc, cc) = (m_mod.coords(m), c_mod.coords(chi));
    let mut s: u128 = 0;
    for (i, &d) in m_mod.orders().iter().enumerate() {
        s += mc[i] as u128 * cc[i] as u128 * (e / d) as u128;
    }
    (s % e as u128) as u64
}

pub fn character_dual(m: &FiniteModule) -> CharacterModule {
    let d = m.orders();
    let act = m.action_matrices();
    let dual: Vec<Vec<Vec<u64>>> = act
        .iter()
        .map(|a| {
            (0..d.len())
                .map(|i| (0..d.len()).map(|j| scaled(a[j][i], d[i], d[j]) % d[j]).collect())
                .collect()
        })
        .collect();
    let module = FiniteModule::from_parts(m.ring(), d.to_vec(), dual, vec![]);
    CharacterModule { module, of: m.clone() }
}

/// `x·d_j/d_i`, exact because `d_i | d_j·x` for action entries.
fn scaled(x: u64, di: u64, dj: u64) -> u64 {
    ((x as u128 * dj as u128) / di as u128) as u64
}

/// The evaluation map `M → M⁺⁺`, checked to be an isomorphism of modules.
pub fn double_dual_check(m: &FiniteModule) -> Result<ModuleMap> {
    let d1 = character_dual(m);
    let d2 = character_dual(&d1.module);
    let n = m.enum_size()? as u32;
    // additive basis of M⁺; characters are determined by their values there
    let basis: Vec<u32> = (0..m.orders().len())
        .map(|i| {
            let mut c = vec![0u64; m.orders().len()];
            c[i] = 1;
            d1.module.index(&c)
        })
        .collect();
    let table: Vec<u32> = (0..n)
        .map(|x| {
            let y = d2.module.index(&m.coords(x));
            let ok = basis.iter().all(|&chi| pairing(&d1.module, chi, &d2.module, y) == d1.pair(x, chi));
            if ok {
                y
            } else {
                u32::MAX
            }
        })
        .collect();
    if table.contains(&u32::MAX) {
        return Err(Error::Inconsistent("evaluation is not a character".into()));
    }
    let map = ModuleMap::from_table(m, &d2.module, table)?;
    if !map.is_injective() {
        return Err(Error::Inconsistent("evaluation is not injective".into()));
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::hom::is_isomorphic;
    use crate::ring::Ring;

    #[test]
    fn duals_of_small_modules() {
        let r = Ring::parse("Z/12").unwrap();
        let m = FiniteModule::from_presentation(&r, 1, &[vec![4]]).module;
        let d = character_dual(&m);
        assert_eq!(d.module.size(), Some(4));
        assert!(is_isomorphic(&d.module, &m).unwrap());
        assert!(character_dual(&FiniteModule::zero(&r)).module.is_zero());
        double_dual_check(&m).unwrap();
    }

    #[test]
    fn dual_action_is_contragredient() {
        let r = Ring::parse("F2[x]/(x^2)").unwrap();
        let m = FiniteModule::from_presentation(&r, 2, &[vec![r.parse_element("x").unwrap().fin(), 0]]).module;
        let d = character_dual(&m);
        let n = m.size().unwrap() as u32;
        for rr in 0..4 {
            for chi in 0..n {
                for x in 0..n {
                    assert_eq!(d.pair(x, d.module.scale(rr, chi)), d.pair(m.scale(rr, x), chi));
                }
            }
        }
        // perfect pairing
        for chi in 1..n {
            assert!((0..n).any(|x| d.pair(x, chi) != 0));
        }
        double_dual_check(&m).unwrap();
    }
}
