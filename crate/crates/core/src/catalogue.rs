//! Batch runs: one line per ring, `ring | seeds=...; level=...; gens=I:[..];...`.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::closure::closure_suite;
use crate::correspondence::{pid_sample_elements, verify_bijections, verify_pid_samples, Counts};
use crate::cosilting::run_cosilting;
use crate::duality::{idempotent_classes, verify_duality, verify_membership};
use crate::error::{Error, Result};
use crate::filter::{enumerate_filters, generate_filter};
use crate::limits::Limits;
use crate::ideal::Ideal;
use crate::module::{build_universe, UniversePolicy};
use crate::report::{Verdict, SCHEMA_VERSION};
use crate::ring::factor::{factor, is_prime_element};
use crate::ring::Ring;
use crate::silting::{run_silting, GeneratedIdeal};

pub const DEFAULT_LEVEL: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogueEntry {
    pub ring: String,
    pub seeds: Vec<String>,
    pub level: Option<usize>,
    /// `(ideal, generators)` overrides for the silting run.
    pub gens: Vec<(String, Vec<String>)>,
}

impl CatalogueEntry {
    pub fn plain(ring: &str) -> CatalogueEntry {
        CatalogueEntry { ring: ring.into(), seeds: vec![], level: None, gens: vec![] }
    }

    pub fn parse(line: &str) -> Result<CatalogueEntry> {
        let (ring, rest) = match line.split_once('|') {
            Some((r, s)) => (r.trim(), s),
            None => (line.trim(), ""),
        };
        let mut e = CatalogueEntry::plain(ring);
        let mut key = String::new();
        for tok in rest.split(';').map(str::trim).filter(|t| !t.is_empty()) {
            let val = match tok.split_once('=') {
                Some((k, v)) => {
                    key = k.trim().to_string();
                    v.trim()
                }
                None => tok,
            };
            match key.as_str() {
                "seeds" => e.seeds.push(val.to_string()),
                "level" => e.level = Some(val.parse().map_err(|_| Error::InvalidDescriptor(format!("level {val}")))?),
                "gens" => e.gens.push(parse_gens(val)?),
                _ => return Err(Error::InvalidDescriptor(format!("unknown catalogue option in {tok:?}"))),
            }
        }
        Ok(e)
    }

    pub fn format(&self) -> String {
        let mut parts = Vec::new();
        if !self.seeds.is_empty() {
            parts.push(format!("seeds={}", self.seeds.join(";")));
        }
        if let Some(l) = self.level {
            parts.push(format!("level={l}"));
        }
        if !self.gens.is_empty() {
            let g: Vec<String> = self.gens.iter().map(|(i, xs)| format!("{i}:[{}]", xs.join(","))).collect();
            parts.push(format!("gens={}", g.join(";")));
        }
        if parts.is_empty() {
            self.ring.clone()
        } else {
            format!("{} | {}", self.ring, parts.join("; "))
        }
    }
}

/// `(2):[2,6]` into the ideal text and its generator texts.
pub fn parse_gens(text: &str) -> Result<(String, Vec<String>)> {
    let bad = || Error::InvalidDescriptor(format!("generator list {text:?}, expected I:[a,b,..]"));
    let (i, rest) = text.rsplit_once(':').ok_or_else(bad)?;
    let inner = rest.trim().strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?;
    let xs: Vec<String> = inner.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect();
    if xs.is_empty() {
        return Err(bad());
    }
    Ok((i.trim().to_string(), xs))
}

pub fn resolve_gens(ring: &Ring, gens: &[(String, Vec<String>)]) -> Result<Vec<GeneratedIdeal>> {
    gens.iter()
        .map(|(i, xs)| {
            let ideal = Ideal::parse(ring, i)?;
            let els = xs.iter().map(|x| ring.parse_element(x)).collect::<Result<_>>()?;
            GeneratedIdeal::new(&ideal, els)
        })
        .collect()
}

pub fn parse_seeds(ring: &Ring, seeds: &[String]) -> Result<Vec<Ideal>> {
    seeds.iter().flat_map(|s| s.split(';')).map(str::trim).filter(|s| !s.is_empty()).map(|s| Ideal::parse(ring, s)).collect()
}

pub fn parse_catalogue(text: &str) -> Result<Vec<CatalogueEntry>> {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).map(CatalogueEntry::parse).collect()
}

pub fn default_catalogue() -> Vec<CatalogueEntry> {
    let mut v: Vec<CatalogueEntry> = ["Z/6", "Z/8", "Z/12", "F4", "F2[x]/(x^2)", "Z/4*F3"].iter().map(|r| CatalogueEntry::plain(r)).collect();
    v.push(CatalogueEntry::parse("Z/12 | seeds=(2); gens=(2):[2,6]").unwrap());
    v
}

#[derive(Debug, Clone, Serialize)]
pub struct Section {
    pub name: String,
    pub payload: Value,
    pub verdicts: Vec<Verdict>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RingReport {
    pub entry: String,
    pub ring: String,
    pub counts: Option<Counts>,
    pub sections: Vec<Section>,
}

impl RingReport {
    pub fn verdicts(&self) -> impl Iterator<Item = &Verdict> {
        self.sections.iter().flat_map(|s| s.verdicts.iter())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogueReport {
    pub schema_version: u32,
    pub rings: Vec<RingReport>,
    pub passed: usize,
    pub failed: usize,
}

impl CatalogueReport {
    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }

    /// Plain-text counts table and failures, derived from the report itself.
    pub fn table(&self) -> String {
        let mut s = format!("{:<28} {:>6} {:>5} {:>7} {:>5} {:>5} {:>6} {:>6}\n", "ring", "ideals", "spec", "filters", "div", "tf", "pass", "fail");
        for r in &self.rings {
            let (p, f) = r.verdicts().fold((0, 0), |(p, f), v| if v.passed() { (p + 1, f) } else { (p, f + 1) });
            let c = |x: fn(&Counts) -> usize| r.counts.as_ref().map_or("-".into(), |c| x(c).to_string());
            s += &format!(
                "{:<28} {:>6} {:>5} {:>7} {:>5} {:>5} {:>6} {:>6}\n",
                r.entry,
                c(|c| c.ideals),
                c(|c| c.spec),
                c(|c| c.filters),
                c(|c| c.div_classes),
                c(|c| c.torsionfree_classes),
                p,
                f
            );
            for v in r.verdicts().filter(|v| !v.passed()) {
                s += &format!("  FAIL {}\n", v.check);
            }
        }
        s
    }
}

fn section(name: &str, payload: Value, verdicts: Vec<Verdict>) -> Section {
    Section { name: name.into(), payload, verdicts }
}

fn run_finite(e: &CatalogueEntry, ring: &Ring, policy: UniversePolicy, out: &mut RingReport) -> Result<()> {
    let u = build_universe(ring, policy)?;
    let level = e.level.unwrap_or(DEFAULT_LEVEL);
    let bij = verify_bijections(ring, &u)?;
    out.counts = Some(bij.counts.clone());
    let bv = bij.all_verdicts().into_iter().cloned().collect();
    out.sections.push(section("bijection", json!({ "universe_size": u.members.len(), "filters": bij.filters }), bv));
    let d = verify_duality(ring, &u)?;
    let m = verify_membership(ring, &u)?;
    let mut dv = d.verdicts.clone();
    dv.extend(m.verdicts.clone());
    dv.push(idempotent_classes(ring, &u)?);
    out.sections.push(section("duality", json!({ "sigmas": d.sigmas, "bridge_pairs": d.pairs, "membership_pairs": m.pairs }), dv));
    let filters = if e.seeds.is_empty() && e.gens.is_empty() {
        enumerate_filters(ring)?
    } else {
        vec![generate_filter(ring, &parse_seeds(ring, &e.seeds)?)?]
    };
    let overrides = resolve_gens(ring, &e.gens)?;
    let mut payload = Vec::new();
    let mut verdicts = Vec::new();
    for g in &filters {
        let s = run_silting(g, &overrides, level, &u)?;
        let c = run_cosilting(g, &u)?;
        let cl = closure_suite(g, &u, policy.bound)?;
        let prefix = |v: &Verdict| Verdict { check: format!("{g} {}", v.check), ..v.clone() };
        verdicts.extend(s.all_verdicts().into_iter().map(prefix));
        verdicts.extend(c.verdicts.iter().map(prefix));
        verdicts.extend(cl);
        payload.push(json!({
            "filter": g.to_json(),
            "silting": { "data": s.data, "transposes": s.transposes, "levels": s.levels, "step2_pairs": s.step2_pairs,
                         "stabilization_level": s.step6.stabilization_level },
            "cosilting": c.assembly,
        }));
    }
    out.sections.push(section("construction", json!(payload), verdicts));
    Ok(())
}

fn run_pid(e: &CatalogueEntry, ring: &Ring, out: &mut RingReport) -> Result<()> {
    let mut primes = Vec::new();
    for i in parse_seeds(ring, &e.seeds)? {
        for (p, _) in factor(ring, i.generator()).unwrap_or_default() {
            if !primes.contains(&p) {
                primes.push(p);
            }
        }
    }
    if primes.is_empty() {
        primes = pid_sample_elements(ring, 5).into_iter().filter(|x| is_prime_element(ring, x)).take(2).collect();
    }
    let sets = vec![vec![], primes[..1.min(primes.len())].to_vec(), primes.clone()];
    let v = verify_pid_samples(ring, &sets, 30)?;
    let p: Vec<String> = primes.iter().map(|x| ring.format(x)).collect();
    out.sections.push(section("bijection", json!({ "primes": p }), v));
    Ok(())
}

pub fn run_entry(e: &CatalogueEntry, policy: UniversePolicy, limits: Limits) -> RingReport {
    let mut out = RingReport { entry: e.format(), ring: e.ring.clone(), counts: None, sections: vec![] };
    let res = Ring::parse_with(&e.ring, limits).and_then(|ring| {
        out.ring = ring.to_string();
        if ring.is_finite() {
            run_finite(e, &ring, policy, &mut out)
        } else {
            run_pid(e, &ring, &mut out)
        }
    });
    if let Err(err) = res {
        out.sections.push(section("error", Value::Null, vec![Verdict::fail("entry_completed", json!(err.to_string()))]));
    }
    out
}

pub fn run_catalogue(entries: &[CatalogueEntry], policy: UniversePolicy, limits: Limits) -> CatalogueReport {
    let rings: Vec<RingReport> = crate::par::map(entries, |e| run_entry(e, policy, limits));
    let (passed, failed) = rings.iter().flat_map(|r| r.verdicts()).fold((0, 0), |(p, f), v| if v.passed() { (p + 1, f) } else { (p, f + 1) });
    CatalogueReport { schema_version: SCHEMA_VERSION, rings, passed, failed }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entry_round_trip() {
        let e = CatalogueEntry::parse("Z/12 | seeds=(2);(3); level=1; gens=(2):[2,6];(4):[4,8]").unwrap();
        assert_eq!(e.seeds, vec!["(2)", "(3)"]);
        assert_eq!(e.level, Some(1));
        assert_eq!(e.gens.len(), 2);
        assert_eq!(CatalogueEntry::parse(&e.format()).unwrap(), e);
        assert!(CatalogueEntry::parse("Z/12 | colour=red").is_err());
        assert!(parse_catalogue("# nothing\n\n").unwrap().is_empty());
    }

    #[test]
    fn empty_and_broken() {
        let r = run_catalogue(&[], UniversePolicy::default(), Limits::default());
        assert!(r.all_pass() && r.rings.is_empty());
        let r = run_catalogue(&[CatalogueEntry::plain("Z/0x")], UniversePolicy::default(), Limits::default());
        assert!(!r.all_pass());
    }

    #[test]
    fn small_entries() {
        let es = [CatalogueEntry::plain("Z/6"), CatalogueEntry::parse("Z | seeds=(6)").unwrap()];
        let r = run_catalogue(&es, UniversePolicy::default(), Limits::default());
        assert!(r.all_pass(), "{}", r.table());
        assert_eq!(r.rings[0].counts.as_ref().unwrap().filters, 4);
    }
}
