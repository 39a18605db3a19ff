//! Randomized properties over small rings and integer matrices.

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use torsionlab::correspondence::in_div;
use torsionlab::filter::generate_filter;
use torsionlab::ideal::{enumerate_ideals, Ideal};
use torsionlab::module::hom::{hom_set, is_isomorphic};
use torsionlab::module::{character_dual, is_torsionfree, torsion_part, PresentedModule};
use torsionlab::ring::euclid::Integers;
use torsionlab::snf::{mat_mul, smith_normal_form};
use torsionlab::Ring;

fn zmod(n: u32) -> Ring {
    Ring::parse(&format!("Z/{n}")).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_reassembles(rows in 1usize..4, cols in 1usize..4, seed in proptest::collection::vec(-20i64..20, 16)) {
        let a: Vec<Vec<BigInt>> = (0..rows).map(|i| (0..cols).map(|j| BigInt::from(seed[i * 4 + j])).collect()).collect();
        let d = Integers;
        let s = smith_normal_form(&d, &a, rows, cols);
        prop_assert_eq!(mat_mul(&d, &mat_mul(&d, &s.u, &a, rows), &s.v, cols), s.s.clone());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            let chained = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            prop_assert!(chained);
        }
    }

    #[test]
    fn ideal_colon_contains_ideal(n in 2u32..40, gi in 0usize..100, x in 0i64..40) {
        let r = zmod(n);
        let all = enumerate_ideals(&r).unwrap();
        let i = &all[gi % all.len()];
        let c = i.colon(&r.from_int(x)).unwrap();
        prop_assert!(i.is_subset(&c));
        // (0 : I) computed as annihilator agrees with the ideal colon
        prop_assert_eq!(Ideal::zero(&r).colon_ideal(i).unwrap(), i.annihilator());
    }

    #[test]
    fn torsion_part_sizes(n in 2u32..40, si in 0usize..100, a in 1u32..40, b in 1u32..40) {
        let r = zmod(n);
        let all = enumerate_ideals(&r).unwrap();
        let g = generate_filter(&r, &[all[si % all.len()].clone()]).unwrap();
        let m = PresentedModule::parse(&r, &format!("R/({}) (+) R/({})", a % n, b % n)).unwrap();
        let t = torsion_part(&m, &g).unwrap();
        prop_assert_eq!(t.torsion.size().unwrap() * t.quotient.size().unwrap(), m.size().unwrap());
        prop_assert!(is_torsionfree(&t.quotient, &g).unwrap());
        let d = PresentedModule::from_finite(character_dual(m.fin().unwrap()).module);
        prop_assert_eq!(in_div(&g, &m).unwrap(), is_torsionfree(&d, &g).unwrap());
    }

    #[test]
    fn homs_are_linear_and_duals_reflexive(n in 2u32..16, a in 0u32..16, b in 0u32..16) {
        let r = zmod(n);
        let m = PresentedModule::parse(&r, &format!("R/({})", a % n)).unwrap();
        let k = PresentedModule::parse(&r, &format!("R/({})", b % n)).unwrap();
        let (mf, kf) = (m.fin().unwrap(), k.fin().unwrap());
        for f in hom_set(mf, kf).unwrap() {
            for x in mf.elements().unwrap() {
                for y in mf.elements().unwrap() {
                    prop_assert_eq!(f.apply(mf.add(x, y)), kf.add(f.apply(x), f.apply(y)));
                }
            }
        }
        let dd = character_dual(&character_dual(mf).module).module;
        prop_assert!(is_isomorphic(mf, &dd).unwrap());
    }
}
