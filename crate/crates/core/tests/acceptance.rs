//! One pass/fail line per acceptance criterion over the default catalogue.

use std::collections::HashSet;
use std::process::ExitCode;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use torsionlab::closure::closure_suite;
use torsionlab::correspondence::verify_bijections;
use torsionlab::cosilting::{build_cosilting, verify_cosilting};
use torsionlab::duality::{verify_duality, verify_membership};
use torsionlab::filter::{enumerate_filters, generate_filter};
use torsionlab::ideal::{enumerate_ideals, primes, Ideal};
use torsionlab::module::{build_universe, ModuleUniverse, UniversePolicy};
use torsionlab::report::Verdict;
use torsionlab::ring::euclid::Integers;
use torsionlab::silting::{
    build_truncation, check_step1, check_step3, step2_sweep, transpose_module, FilterPresentationData, GeneratedIdeal,
};
use torsionlab::snf::{mat_mul, smith_normal_form};
use torsionlab::Ring;

const CATALOGUE: [&str; 6] = ["Z/6", "Z/8", "Z/12", "F4", "F2[x]/(x^2)", "Z/4*F3"];

struct Line {
    ok: bool,
    detail: String,
}

fn failures(vs: &[&Verdict]) -> Vec<String> {
    vs.iter().filter(|v| !v.passed()).map(|v| v.check.clone()).collect()
}

fn line(ok: bool, detail: String) -> Line {
    Line { ok, detail }
}

fn rings() -> Vec<(Ring, ModuleUniverse)> {
    CATALOGUE
        .iter()
        .map(|t| {
            let r = Ring::parse(t).unwrap();
            let u = build_universe(&r, UniversePolicy::default()).unwrap();
            (r, u)
        })
        .collect()
}

fn criterion1() -> Line {
    let expected: [(&str, usize, usize, usize); 6] =
        [("Z/12", 6, 2, 4), ("Z/8", 4, 1, 2), ("Z/6", 4, 2, 4), ("F2[x]/(x^2)", 3, 1, 2), ("F4", 2, 1, 2), ("Z/4*F3", 6, 2, 4)];
    let mut bad = Vec::new();
    for (t, i, s, f) in expected {
        let r = Ring::parse(t).unwrap();
        // brute-force oracle: ideals as additive subgroups closed under multiplication
        let fr = r.finite().unwrap();
        let els: Vec<u32> = fr.elements().collect();
        let mut brute: HashSet<Vec<bool>> = HashSet::new();
        for &a in &els {
            for &b in &els {
                let mut mask = vec![false; els.len()];
                mask[0] = true;
                let mut frontier = vec![a, b];
                while let Some(x) = frontier.pop() {
                    if mask[x as usize] {
                        continue;
                    }
                    mask[x as usize] = true;
                    for y in 0..els.len() as u32 {
                        if mask[y as usize] {
                            frontier.push(fr.add(x, y));
                        }
                    }
                    for &s in &els {
                        frontier.push(fr.mul(s, x));
                    }
                }
                brute.insert(mask);
            }
        }
        let got = (enumerate_ideals(&r).unwrap().len(), primes(&r).unwrap().len(), enumerate_filters(&r).unwrap().len());
        if got != (i, s, f) || brute.len() != i {
            bad.push(format!("{t}: got {got:?}, brute ideals {}", brute.len()));
        }
    }
    line(bad.is_empty(), if bad.is_empty() { "ideal/spec/filter counts exact for 6 rings".into() } else { bad.join("; ") })
}

fn criterion2(rs: &[(Ring, ModuleUniverse)]) -> Line {
    let mut bad = Vec::new();
    let mut filters = 0;
    let mut witnesses = 0;
    for (r, u) in rs {
        let rep = verify_bijections(r, u).unwrap();
        bad.extend(failures(&rep.all_verdicts()).into_iter().map(|c| format!("{r} {c}")));
        let n_ideals = enumerate_ideals(r).unwrap().len();
        for (f, g) in rep.filters.iter().zip(enumerate_filters(r).unwrap()) {
            let outside = n_ideals - g.members().unwrap().len();
            if f.witnesses.len() != outside {
                bad.push(format!("{r} {g}: {} witnesses for {outside} excluded ideals", f.witnesses.len()));
            }
            witnesses += f.witnesses.len();
        }
        filters += rep.counts.filters;
        if rep.counts.spec_subsets != 1 << rep.counts.spec {
            bad.push(format!("{r}: {} spec subsets", rep.counts.spec_subsets));
        }
    }
    line(bad.is_empty(), format!("{filters} filters, {witnesses} exclusion witnesses; failures {bad:?}"))
}

fn criterion3(rs: &[(Ring, ModuleUniverse)]) -> Line {
    let mut bad = Vec::new();
    let mut pairs = 0;
    for (r, u) in rs {
        let d = verify_duality(r, u).unwrap();
        pairs += d.pairs;
        bad.extend(failures(&d.verdicts.iter().collect::<Vec<_>>()).into_iter().map(|c| format!("{r} {c}")));
        let b = verify_bijections(r, u).unwrap();
        let dual: Vec<&Verdict> = b.all_verdicts().into_iter().filter(|v| v.check.starts_with("divisible_iff_dual")).collect();
        if dual.len() != b.counts.filters {
            bad.push(format!("{r}: duality verdict missing"));
        }
        bad.extend(failures(&dual).into_iter().map(|c| format!("{r} {c}")));
    }
    line(bad.is_empty(), format!("{pairs} (sigma, X) pairs; failures {bad:?}"))
}

fn criterion4(rs: &[(Ring, ModuleUniverse)]) -> Line {
    let mut bad = Vec::new();
    let mut pairs = 0;
    let mut instances = 0;
    let mut run = |g: &torsionlab::filter::GabrielFilter, overrides: &[GeneratedIdeal], u: &ModuleUniverse, bad: &mut Vec<String>| {
        let data = FilterPresentationData::new(g, overrides).unwrap();
        if !check_step1(&data).unwrap().passed() {
            bad.push(format!("step1 {g}"));
        }
        let (n, v) = step2_sweep(&data, u.policy).unwrap();
        pairs += n;
        if !v.passed() {
            bad.push(format!("step2 {g}"));
        }
        let levels: Vec<_> = (0..=2).map(|n| build_truncation(&data, n).unwrap()).collect();
        for w in levels.windows(2) {
            if !check_step3(&data, &w[0], &w[1]).unwrap().passed() {
                bad.push(format!("step3 {g} level {}", w[0].level));
            }
        }
        instances += 1;
        data
    };
    for (r, u) in rs {
        for g in enumerate_filters(r).unwrap() {
            run(&g, &[], u, &mut bad);
        }
    }
    // redundant generators: Z/12, I = (2) with {2, 6}
    let (r, u) = &rs[2];
    let two = GeneratedIdeal::new(&Ideal::parse(r, "(2)").unwrap(), vec![r.from_int(2), r.from_int(6)]).unwrap();
    let g = generate_filter(r, std::slice::from_ref(&two.ideal)).unwrap();
    let data = run(&g, std::slice::from_ref(&two), u, &mut bad);
    let s = transpose_module(&data, &two).unwrap().s;
    let c0 = build_truncation(&data, 0).unwrap().c.size().unwrap();
    let c1 = build_truncation(&data, 1).unwrap().c.size().unwrap();
    if s.size() != Some(3u32.into()) || c1 != c0 * 3u32 {
        bad.push(format!("redundant instance: S size {:?}", s.size()));
    }
    let ok = bad.is_empty() && pairs >= 200;
    line(ok, format!("{instances} instances, {pairs} step II pairs, redundant S_(2) size 3; failures {bad:?}"))
}

fn criterion5(rs: &[(Ring, ModuleUniverse)]) -> Line {
    let mut bad = Vec::new();
    let mut samples = 0;
    for (r, u) in rs {
        let m = verify_membership(r, u).unwrap();
        samples += m.pairs;
        bad.extend(failures(&m.verdicts.iter().collect::<Vec<_>>()).into_iter().map(|c| format!("{r} {c}")));
    }
    line(bad.is_empty() && samples >= 100, format!("{samples} (sigma_I, M) samples; failures {bad:?}"))
}

fn criterion6(rs: &[(Ring, ModuleUniverse)]) -> Line {
    let mut bad = Vec::new();
    let mut n = 0;
    for (r, u) in rs {
        for g in enumerate_filters(r).unwrap() {
            let asm = build_cosilting(&g).unwrap();
            let rep = verify_cosilting(&asm, u).unwrap();
            bad.extend(failures(&rep.verdicts.iter().collect::<Vec<_>>()).into_iter().map(|c| format!("{r} {g} {c}")));
            n += 1;
        }
    }
    let r = &rs[2].0;
    let g = generate_filter(r, &[Ideal::parse(r, "(4)").unwrap()]).unwrap();
    let asm = build_cosilting(&g).unwrap();
    if asm.c_size() != 3u32.into() || !asm.precover.is_zero() {
        bad.push(format!("Z/12 <(4)>: C_G size {}", asm.c_size()));
    }
    line(bad.is_empty(), format!("{n} (ring, filter) assemblies, Z/12 <(4)> gives |C_G| = 3, K = 0; failures {bad:?}"))
}

fn criterion7(rs: &[(Ring, ModuleUniverse)]) -> Line {
    let mut bad = Vec::new();
    let mut suites = 0;
    for (r, u) in rs {
        for g in enumerate_filters(r).unwrap() {
            let v = closure_suite(&g, u, 512).unwrap();
            suites += v.len();
            bad.extend(failures(&v.iter().collect::<Vec<_>>()).into_iter().map(|c| format!("{r} {c}")));
        }
    }
    line(bad.is_empty(), format!("{suites} closure checks; failures {bad:?}"))
}

fn det(m: &[Vec<BigInt>]) -> BigInt {
    if m.len() == 1 {
        return m[0][0].clone();
    }
    let mut acc = BigInt::zero();
    for j in 0..m.len() {
        let minor: Vec<Vec<BigInt>> = m[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect()).collect();
        let t = &m[0][j] * det(&minor);
        if j % 2 == 0 {
            acc += t;
        } else {
            acc -= t;
        }
    }
    acc
}

fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..n {
        for rest in combos(n, k - 1) {
            if rest.iter().all(|&x| x > first) {
                let mut v = vec![first];
                v.extend(rest);
                out.push(v);
            }
        }
    }
    out
}

/// gcd of all k×k minors.
fn determinantal_divisor(a: &[Vec<BigInt>], k: usize) -> BigInt {
    let (m, n) = (a.len(), a[0].len());
    let mut g = BigInt::zero();
    for rows in combos(m, k) {
        for cols in combos(n, k) {
            let sub: Vec<Vec<BigInt>> = rows.iter().map(|&i| cols.iter().map(|&j| a[i][j].clone()).collect()).collect();
            g = g.gcd(&det(&sub));
        }
    }
    g
}

/// |(Z/N)^m / column span| by closing the span element by element.
fn brute_cokernel(a: &[Vec<BigInt>], n_mod: u64) -> Option<u64> {
    let m = a.len();
    let total = n_mod.checked_pow(m as u32)?;
    if total > 2_000_000 {
        return None;
    }
    let cols: Vec<Vec<u64>> = (0..a[0].len())
        .map(|j| (0..m).map(|i| a[i][j].mod_floor(&BigInt::from(n_mod)).to_u64().unwrap()).collect())
        .collect();
    let enc = |v: &[u64]| v.iter().fold(0u64, |acc, &x| acc * n_mod + x);
    let mut seen = vec![false; total as usize];
    seen[0] = true;
    let mut stack = vec![vec![0u64; m]];
    let mut count = 1u64;
    while let Some(v) = stack.pop() {
        for c in &cols {
            let w: Vec<u64> = v.iter().zip(c).map(|(x, y)| (x + y) % n_mod).collect();
            let k = enc(&w) as usize;
            if !seen[k] {
                seen[k] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    Some(total / count)
}

fn criterion8() -> Line {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let d = Integers;
    let mut bad = Vec::new();
    let mut brute = 0;
    for trial in 0..500 {
        let (m, n) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let a: Vec<Vec<BigInt>> = (0..m).map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-9..=9))).collect()).collect();
        let s = smith_normal_form(&d, &a, m, n);
        let uav = mat_mul(&d, &mat_mul(&d, &s.u, &a, m), &s.v, n);
        if uav != s.s {
            bad.push(format!("#{trial} UAV != S"));
            continue;
        }
        if det(&s.u).abs() != BigInt::from(1) || det(&s.v).abs() != BigInt::from(1) {
            bad.push(format!("#{trial} U or V not unimodular"));
        }
        let diag = s.diagonal();
        for i in 0..m {
            for j in 0..n {
                if i != j && !s.s[i][j].is_zero() {
                    bad.push(format!("#{trial} off-diagonal entry"));
                }
            }
        }
        for w in diag.windows(2) {
            let ok = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            if !ok || w[0].is_negative() {
                bad.push(format!("#{trial} divisibility chain {diag:?}"));
            }
        }
        // invariant factors from determinantal divisors d_k / d_{k-1}
        let mut prev = BigInt::from(1);
        for (k, x) in diag.iter().enumerate() {
            let dk = determinantal_divisor(&a, k + 1);
            let want = if dk.is_zero() { BigInt::zero() } else { &dk / &prev };
            if *x != want {
                bad.push(format!("#{trial} factor {k}: {x} vs minors {want}"));
            }
            if !dk.is_zero() {
                prev = dk;
            }
        }
        // cokernel Z^m / A Z^n is finite iff rank = m; its order is the gcd of maximal minors
        if m <= n {
            let dm = determinantal_divisor(&a, m);
            if !dm.is_zero() {
                let order: BigInt = diag.iter().product();
                if order.abs() != dm {
                    bad.push(format!("#{trial} |coker| {order} vs {dm}"));
                }
                if let Some(c) = brute_cokernel(&a, dm.to_u64().unwrap()) {
                    brute += 1;
                    if BigInt::from(c) != dm {
                        bad.push(format!("#{trial} brute coker {c} vs {dm}"));
                    }
                }
            }
        }
    }
    line(bad.is_empty() && brute > 0, format!("500 matrices, {brute} cokernels counted over Z/N; failures {:?}", &bad[..bad.len().min(5)]))
}

fn main() -> ExitCode {
    let rs = rings();
    let lines = [
        ("1 counts", criterion1()),
        ("2 classification round trips", criterion2(&rs)),
        ("3 duality bridge", criterion3(&rs)),
        ("4 construction obligations", criterion4(&rs)),
        ("5 membership equalities", criterion5(&rs)),
        ("6 cosilting assembly", criterion6(&rs)),
        ("7 torsion-pair closure", criterion7(&rs)),
        ("8 smith normal form", criterion8()),
    ];
    let mut all = true;
    for (name, l) in &lines {
        println!("criterion {name}: {} -- {}", if l.ok { "PASS" } else { "FAIL" }, l.detail);
        all &= l.ok;
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
