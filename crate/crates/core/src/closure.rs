//! Closure suites for the torsion pair `(Div(G), F_G)` over a finite ring,
//! checked member by member on a module universe.

use std::collections::HashSet;

use serde_json::json;

use crate::correspondence::{idempotent_of, in_div, in_gen};
use crate::error::Result;
use crate::filter::GabrielFilter;
use crate::homological::injective_hull;
use crate::module::hom::has_nonzero_hom;
use crate::module::{is_torsionfree, torsion_part, FiniteModule, ModuleUniverse, PresentedModule};
use crate::par;
use crate::report::Verdict;

/// Distinct cyclic submodules, as generator lists `[x]`.
fn cyclic_submodules(f: &FiniteModule) -> Result<Vec<u32>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for x in f.elements()?.skip(1) {
        let mask = f.span_mask(&[x])?;
        if seen.insert(mask) {
            out.push(x);
        }
    }
    Ok(out)
}

struct Tally {
    name: &'static str,
    checked: usize,
    bad: Vec<String>,
}

impl Tally {
    fn new(name: &'static str) -> Tally {
        Tally { name, checked: 0, bad: Vec::new() }
    }
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.bad.push(what());
        }
    }
    fn verdict(self, prefix: &str) -> Verdict {
        let name = format!("{prefix}{} ({} cases)", self.name, self.checked);
        if self.bad.is_empty() {
            Verdict::pass(name)
        } else {
            Verdict::fail(name, json!(self.bad))
        }
    }
}

/// Checks attached to one universe member; pairwise sums are handled separately.
fn member_checks(g: &GabrielFilter, m: &PresentedModule, re: &PresentedModule) -> Result<Vec<Tally>> {
    let f = m.fin()?;
    let div_m = in_div(g, m)?;
    let tf_m = is_torsionfree(m, g)?;
    let mut div_q = Tally::new("div_closed_under_quotients");
    let mut div_ext = Tally::new("div_closed_under_extensions");
    let mut tf_sub = Tally::new("torsionfree_closed_under_submodules");
    let mut tf_ext = Tally::new("torsionfree_closed_under_extensions");
    let mut tf_hull = Tally::new("torsionfree_closed_under_injective_hulls");
    let mut exact = Tally::new("torsion_part_exact");
    let mut trace = Tally::new("divisible_part_is_trace");
    for x in cyclic_submodules(f)? {
        let sub = PresentedModule::from_finite(f.submodule(&[x])?.module);
        let quo = PresentedModule::from_finite(f.quotient(&[x]).module);
        let (div_s, div_quo) = (in_div(g, &sub)?, in_div(g, &quo)?);
        let (tf_s, tf_quo) = (is_torsionfree(&sub, g)?, is_torsionfree(&quo, g)?);
        let label = || format!("{} / <{x}>", m.describe());
        if div_m {
            div_q.record(div_quo, label);
        }
        if div_s && div_quo {
            div_ext.record(div_m, label);
        }
        if tf_m {
            tf_sub.record(tf_s, label);
        }
        if tf_s && tf_quo {
            tf_ext.record(tf_m, label);
        }
    }
    if tf_m && !m.is_zero() {
        let h = injective_hull(m)?;
        tf_hull.record(is_torsionfree(&h.hull, g)?, || m.describe());
    }
    let tp = torsion_part(m, g)?;
    let sizes = tp.torsion.size().zip(tp.quotient.size()).is_some_and(|(a, b)| Some(a * b) == m.size());
    let torsion_is_torsion = torsion_part(&tp.torsion, g)?.quotient.is_zero();
    exact.record(sizes && torsion_is_torsion && is_torsionfree(&tp.quotient, g)?, || m.describe());
    // the trace of Re is the largest divisible submodule and the quotient receives no map from Re
    let e = idempotent_of(g)?.0;
    let mask: Vec<bool> = f.elements()?.map(|y| f.scale(e.fin(), y) == y).collect();
    let gens = crate::module::torsion::generators_of_mask(f, &mask)?;
    let d = PresentedModule::from_finite(f.submodule(&gens)?.module);
    let rest = PresentedModule::from_finite(f.quotient(&gens).module);
    let d_ok = in_div(g, &d)? && in_gen(re, &d)? && !has_nonzero_hom(re.fin()?, rest.fin()?)?;
    trace.record(d_ok, || m.describe());
    Ok(vec![div_q, div_ext, tf_sub, tf_ext, tf_hull, exact, trace])
}

/// The full suite for one filter; `pair_bound` caps `|M|·|N|` for the sum checks.
pub fn closure_suite(g: &GabrielFilter, u: &ModuleUniverse, pair_bound: u64) -> Result<Vec<Verdict>> {
    let ring = g.ring();
    let (_, re) = idempotent_of(g)?;
    let per = par::try_map(&u.members, |m| member_checks(g, m, &re))?;
    let mut totals: Vec<Tally> = per.first().map(|v| v.iter().map(|t| Tally::new(t.name)).collect()).unwrap_or_default();
    for v in per {
        for (acc, t) in totals.iter_mut().zip(v) {
            acc.checked += t.checked;
            acc.bad.extend(t.bad);
        }
    }
    let div: Vec<bool> = par::try_map(&u.members, |m| in_div(g, m))?;
    let tf: Vec<bool> = par::try_map(&u.members, |m| is_torsionfree(m, g))?;
    let size = |m: &PresentedModule| m.finite().and_then(|f| f.size()).unwrap_or(u64::MAX);
    let mut pairs = Vec::new();
    for i in 0..u.members.len() {
        for j in i..u.members.len() {
            if size(&u.members[i]).saturating_mul(size(&u.members[j])) <= pair_bound {
                pairs.push((i, j));
            }
        }
    }
    let sums = par::try_map(&pairs, |&(i, j)| -> Result<(bool, bool)> {
        let s = PresentedModule::direct_sum(ring, &[&u.members[i], &u.members[j]])?;
        Ok((in_div(g, &s)?, is_torsionfree(&s, g)?))
    })?;
    let mut div_sum = Tally::new("div_closed_under_sums");
    let mut tf_sum = Tally::new("torsionfree_closed_under_sums");
    for (&(i, j), &(d, t)) in pairs.iter().zip(&sums) {
        let label = || format!("{} (+) {}", u.members[i].describe(), u.members[j].describe());
        if div[i] && div[j] {
            div_sum.record(d, label);
        }
        if tf[i] && tf[j] {
            tf_sum.record(t, label);
        }
    }
    totals.push(div_sum);
    totals.push(tf_sum);
    let mut orth = Tally::new("hom_torsion_to_torsionfree_vanishes");
    for (i, a) in u.members.iter().enumerate() {
        if !tf[i] && torsion_part(a, g)?.quotient.is_zero() {
            for (j, b) in u.members.iter().enumerate() {
                if tf[j] {
                    orth.record(!has_nonzero_hom(a.fin()?, b.fin()?)?, || format!("{} -> {}", a.describe(), b.describe()));
                }
            }
        }
    }
    totals.push(orth);
    let prefix = format!("{g} ");
    Ok(totals.into_iter().map(|t| t.verdict(&prefix)).collect())
}
