//! Divisibility `M = IM`, torsionfreeness and torsion parts.

use crate::error::{Error, Result};
use crate::filter::GabrielFilter;
use crate::ideal::Ideal;
use crate::module::{FiniteModule, PresentedModule};

/// Whether `M = IM`.
pub fn is_divisible(m: &PresentedModule, i: &Ideal) -> Result<bool> {
    if let Some(f) = m.finite() {
        return Ok(finite_divisible(f, i));
    }
    let p = m.pid().ok_or_else(|| Error::NotFinite(m.ring().to_string()))?;
    Ok(p.is_divisible_by(m.ring(), i.generator()))
}

pub(crate) fn finite_divisible(f: &FiniteModule, i: &Ideal) -> bool {
    let gens: Vec<u32> = f.generators().to_vec();
    let mut rels = Vec::new();
    for x in i.generators() {
        for &g in &gens {
            rels.push(f.scale_coords(x.fin(), &f.coords(g)));
        }
    }
    f.quotient_coords(&rels).module.is_zero()
}

/// `{m : I·m = 0}` as a mask.
pub fn killed_by(f: &FiniteModule, i: &Ideal) -> Result<Vec<bool>> {
    let gens: Vec<u32> = i.generators().iter().map(|e| e.fin()).collect();
    Ok(f.elements()?.map(|m| gens.iter().all(|&x| f.scale(x, m) == 0)).collect())
}

/// Whether `Hom(R/I, M) = 0` for every `I ∈ G`.
pub fn is_torsionfree(m: &PresentedModule, g: &GabrielFilter) -> Result<bool> {
    if let Some(f) = m.finite() {
        for i in g.basis() {
            if killed_by(f, i)?.iter().skip(1).any(|&b| b) {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    let p = m.pid().ok_or_else(|| Error::NotFinite(m.ring().to_string()))?;
    let (zero, primes) = g.pid_data().ok_or(Error::RingMismatch)?;
    Ok(p.torsion_part(m.ring(), zero, primes).is_zero() && (!zero || p.is_zero()))
}

/// The torsion submodule, its embedding (finite case) and the quotient.
#[derive(Debug, Clone)]
pub struct TorsionPart {
    pub torsion: PresentedModule,
    /// Torsion index ↦ ambient index.
    pub inclusion: Option<Vec<u32>>,
    pub quotient: PresentedModule,
}

/// Greedy generators of a submodule given by a membership mask.
pub fn generators_of_mask(f: &FiniteModule, mask: &[bool]) -> Result<Vec<u32>> {
    let mut gens = Vec::new();
    let mut span = f.span_mask(&[])?;
    for x in 0..mask.len() as u32 {
        if mask[x as usize] && !span[x as usize] {
            gens.push(x);
            span = f.span_mask(&gens)?;
        }
    }
    Ok(gens)
}

/// Stable power of the product of the basis ideals.
fn stable_product(g: &GabrielFilter) -> Result<Ideal> {
    let mut p = Ideal::whole(g.ring());
    for i in g.basis() {
        p = p.product(i)?;
    }
    let base = p.clone();
    loop {
        let q = p.product(&base)?;
        if q == p {
            return Ok(p);
        }
        p = q;
    }
}

pub fn torsion_part(m: &PresentedModule, g: &GabrielFilter) -> Result<TorsionPart> {
    let ring = m.ring();
    if let Some(f) = m.finite() {
        let by_min = killed_by(f, &g.min_ideal()?)?;
        let by_products = killed_by(f, &stable_product(g)?)?;
        if by_min != by_products {
            return Err(Error::Inconsistent("torsion part differs between the two computations".into()));
        }
        let gens = generators_of_mask(f, &by_min)?;
        let sub = f.submodule(&gens)?;
        let q = f.quotient(&gens);
        return Ok(TorsionPart {
            torsion: PresentedModule::from_finite(sub.module),
            inclusion: Some(sub.incl),
            quotient: PresentedModule::from_finite(q.module),
        });
    }
    let p = m.pid().ok_or_else(|| Error::NotFinite(ring.to_string()))?;
    let (zero, primes) = g.pid_data().ok_or(Error::RingMismatch)?;
    Ok(TorsionPart {
        torsion: PresentedModule::from_pid(ring, p.torsion_part(ring, zero, primes)),
        inclusion: None,
        quotient: PresentedModule::from_pid(ring, p.torsionfree_quotient(ring, zero, primes)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filter::generate_filter;
    use crate::ring::Ring;

    fn id(r: &Ring, s: &str) -> Ideal {
        Ideal::parse(r, s).unwrap()
    }

    #[test]
    fn divisibility_examples() {
        let r = Ring::parse("Z/12").unwrap();
        let m3 = PresentedModule::cyclic(&r, &id(&r, "(3)")).unwrap();
        let m2 = PresentedModule::cyclic(&r, &id(&r, "(2)")).unwrap();
        assert!(is_divisible(&m3, &id(&r, "(4)")).unwrap());
        assert!(!is_divisible(&m2, &id(&r, "(4)")).unwrap());
        assert!(is_divisible(&m2, &Ideal::whole(&r)).unwrap());
        let z = Ring::parse("Z").unwrap();
        let c = PresentedModule::parse(&z, "R/(4)").unwrap();
        assert!(is_divisible(&c, &id(&z, "(3)")).unwrap());
        assert!(!is_divisible(&c, &id(&z, "(2)")).unwrap());
    }

    #[test]
    fn torsion_examples() {
        let r = Ring::parse("Z/12").unwrap();
        let g = generate_filter(&r, &[id(&r, "(4)")]).unwrap();
        let m = PresentedModule::cyclic(&r, &id(&r, "(6)")).unwrap();
        let t = torsion_part(&m, &g).unwrap();
        assert_eq!(t.torsion.size(), Some(2u32.into()));
        assert!(!is_torsionfree(&m, &g).unwrap());
        let again = torsion_part(&t.quotient, &g).unwrap();
        assert!(again.torsion.is_zero());
        let triv = generate_filter(&r, &[Ideal::whole(&r)]).unwrap();
        assert!(is_torsionfree(&m, &triv).unwrap());
        assert!(torsion_part(&m, &triv).unwrap().torsion.is_zero());

        let z = Ring::parse("Z").unwrap();
        let g2 = generate_filter(&z, &[id(&z, "(2)")]).unwrap();
        let m = PresentedModule::parse(&z, "R (+) R/(2)").unwrap();
        assert!(!is_torsionfree(&m, &g2).unwrap());
        let t = torsion_part(&m, &g2).unwrap();
        assert_eq!(t.torsion.invariant_factors(), vec!["2"]);
        assert_eq!(t.torsion.size(), Some(2u32.into()));
    }
}
