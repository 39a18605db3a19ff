//! User-facing module values: a presentation plus a computational body
//! (coordinates over a finite ring, or invariant factors over a PID).

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, ParseError, Result};
use crate::ideal::Ideal;
use crate::module::{FiniteModule, PidModule};
use crate::ring::{Element, Ring};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: usize,
    /// Relators as columns of length `generators`.
    pub relations: Vec<Vec<Element>>,
}

#[derive(Debug)]
enum Body {
    Finite(FiniteModule),
    Pid(PidModule),
}

#[derive(Debug)]
struct Inner {
    ring: Ring,
    body: Body,
    pres: OnceLock<Presentation>,
    label: Option<String>,
}

#[derive(Debug, Clone)]
pub struct PresentedModule(Arc<Inner>);

impl PresentedModule {
    fn make(ring: &Ring, body: Body, pres: Option<Presentation>, label: Option<String>) -> PresentedModule {
        let cell = OnceLock::new();
        if let Some(p) = pres {
            let _ = cell.set(p);
        }
        PresentedModule(Arc::new(Inner { ring: ring.clone(), body, pres: cell, label }))
    }

    pub fn from_presentation(ring: &Ring, g: usize, relations: Vec<Vec<Element>>) -> Result<PresentedModule> {
        for c in &relations {
            if c.len() != g || c.iter().any(|e| !ring.contains(e)) {
                return Err(Error::InvalidDescriptor("relation column has the wrong shape or ring".into()));
            }
        }
        let body = if ring.is_finite() {
            let rels: Vec<Vec<u32>> = relations.iter().map(|c| c.iter().map(Element::fin).collect()).collect();
            Body::Finite(FiniteModule::from_presentation(ring, g, &rels).module)
        } else {
            Body::Pid(PidModule::from_presentation(ring, g, &relations))
        };
        Ok(PresentedModule::make(ring, body, Some(Presentation { generators: g, relations }), None))
    }

    pub fn from_finite(m: FiniteModule) -> PresentedModule {
        let ring = m.ring().clone();
        PresentedModule::make(&ring, Body::Finite(m), None, None)
    }

    pub fn from_pid(ring: &Ring, m: PidModule) -> PresentedModule {
        let n = m.factors.len() + m.rank;
        let rels = (0..m.factors.len())
            .map(|i| (0..n).map(|j| if i == j { m.factors[i].clone() } else { ring.zero() }).collect())
            .collect();
        let pres = Presentation { generators: n, relations: rels };
        PresentedModule::make(ring, Body::Pid(m), Some(pres), None)
    }

    /// `R/I`.
    pub fn cyclic(ring: &Ring, ideal: &Ideal) -> Result<PresentedModule> {
        let gens: Vec<Vec<Element>> = if ring.is_finite() {
            ideal.generators().iter().map(|g| vec![g.clone()]).collect()
        } else {
            vec![vec![ideal.generator().clone()]]
        };
        let m = PresentedModule::from_presentation(ring, 1, gens)?;
        Ok(m.with_label(format!("R/{}", ideal.format())))
    }

    pub fn zero(ring: &Ring) -> PresentedModule {
        PresentedModule::from_presentation(ring, 0, vec![]).unwrap().with_label("0".into())
    }

    pub fn free(ring: &Ring, k: usize) -> PresentedModule {
        let label = match k {
            0 => "0".to_string(),
            1 => "R".to_string(),
            _ => format!("R^{k}"),
        };
        PresentedModule::from_presentation(ring, k, vec![]).unwrap().with_label(label)
    }

    pub fn with_label(&self, label: String) -> PresentedModule {
        let pres = self.0.pres.get().cloned();
        let body = match &self.0.body {
            Body::Finite(m) => Body::Finite(m.clone()),
            Body::Pid(m) => Body::Pid(m.clone()),
        };
        PresentedModule::make(&self.0.ring, body, pres, Some(label))
    }

    pub fn label(&self) -> Option<&str> {
        self.0.label.as_deref()
    }

    pub fn ring(&self) -> &Ring {
        &self.0.ring
    }

    pub fn finite(&self) -> Option<&FiniteModule> {
        match &self.0.body {
            Body::Finite(m) => Some(m),
            _ => None,
        }
    }

    pub fn fin(&self) -> Result<&FiniteModule> {
        self.finite().ok_or_else(|| Error::NotFinite(self.0.ring.to_string()))
    }

    pub fn pid(&self) -> Option<&PidModule> {
        match &self.0.body {
            Body::Pid(m) => Some(m),
            _ => None,
        }
    }

    /// Cardinality; `None` for infinite modules.
    pub fn size(&self) -> Option<BigUint> {
        match &self.0.body {
            Body::Finite(m) => Some(m.size_big()),
            Body::Pid(m) => {
                if m.rank > 0 {
                    return None;
                }
                let p = match self.0.ring.pid_kind()? {
                    crate::ring::PidKind::Integers => None,
                    crate::ring::PidKind::FpPolys(p) => Some(p),
                };
                let mut n = BigUint::from(1u32);
                for d in &m.factors {
                    n *= match (d, p) {
                        (Element::Int(x), _) => x.magnitude().clone(),
                        (Element::Poly(f), Some(p)) => BigUint::from(p).pow(f.degree().unwrap_or(0) as u32),
                        _ => return None,
                    };
                }
                Some(n)
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0.body {
            Body::Finite(m) => m.is_zero(),
            Body::Pid(m) => m.is_zero(),
        }
    }

    pub fn presentation(&self) -> &Presentation {
        self.0.pres.get_or_init(|| match &self.0.body {
            Body::Finite(m) => derive_presentation(m),
            Body::Pid(_) => unreachable!("PID modules carry a presentation"),
        })
    }

    /// Invariant factors of the underlying abelian group (finite) or the SNF (PID).
    pub fn invariant_factors(&self) -> Vec<String> {
        match &self.0.body {
            Body::Finite(m) => m.invariant_factors().iter().map(u64::to_string).collect(),
            Body::Pid(m) => m.factors.iter().map(|d| self.0.ring.format(d)).collect(),
        }
    }

    /// Short description used in reports.
    pub fn describe(&self) -> String {
        if let Some(l) = &self.0.label {
            return l.clone();
        }
        match &self.0.body {
            Body::Finite(m) => format!("module of size {} ({})", m.size_big(), fmt_orders(&m.invariant_factors())),
            Body::Pid(m) => m.format(&self.0.ring),
        }
    }

    pub fn to_json(&self) -> Value {
        let p = self.presentation();
        let rels: Vec<Vec<String>> =
            p.relations.iter().map(|c| c.iter().map(|e| self.0.ring.format(e)).collect()).collect();
        let mut v = json!({
            "ring": self.0.ring.to_string(),
            "label": self.describe(),
            "generators": p.generators,
            "relations": rels,
            "invariant_factors": self.invariant_factors(),
        });
        match &self.0.body {
            Body::Finite(m) => v["size"] = json!(m.size_big().to_string()),
            Body::Pid(m) => v["rank"] = json!(m.rank),
        }
        v
    }

    /// Parse `R/(g1,...) (+) R/(h1,...) (+) R^k`; `0` is the zero module.
    pub fn parse(ring: &Ring, text: &str) -> Result<PresentedModule> {
        let mut parts: Vec<(usize, &str)> = Vec::new();
        let mut start = 0;
        while let Some(i) = text[start..].find("(+)") {
            parts.push((start, &text[start..start + i]));
            start += i + 3;
        }
        parts.push((start, &text[start..]));
        let mut gens = 0usize;
        let mut blocks: Vec<(usize, Vec<Element>)> = Vec::new(); // (free count, or relators of a cyclic)
        for (off, raw) in parts {
            let lead = raw.len() - raw.trim_start().len();
            let t = raw.trim();
            let pos = off + lead;
            if t == "0" {
                continue;
            }
            if let Some(rest) = t.strip_prefix('R') {
                let rest_trim = rest.trim_start();
                if rest_trim.is_empty() {
                    blocks.push((1, vec![]));
                    gens += 1;
                } else if let Some(exp) = rest_trim.strip_prefix('^') {
                    let k: usize = exp
                        .trim()
                        .parse()
                        .map_err(|_| ParseError::new(pos + t.len() - exp.len(), &["integer"], "bad exponent"))?;
                    blocks.push((k, vec![]));
                    gens += k;
                } else if let Some(id) = rest_trim.strip_prefix('/') {
                    let ipos = pos + t.len() - id.len();
                    let items = crate::ring::parse::paren_list(id, ipos)?;
                    let els = items
                        .into_iter()
                        .map(|(o, s)| ring.parse_element_at(s, o))
                        .collect::<Result<Vec<_>>>()?;
                    blocks.push((0, els));
                    gens += 1;
                } else {
                    return Err(ParseError::new(pos + 1, &["/", "^", "(+)"], "unexpected text after R").into());
                }
            } else {
                return Err(ParseError::new(pos, &["R", "0"], "expected a summand").into());
            }
        }
        let mut rels = Vec::new();
        let mut at = 0;
        for (free, els) in &blocks {
            if *free > 0 {
                at += free;
                continue;
            }
            let els = if ring.is_finite() {
                els.clone()
            } else {
                vec![Ideal::new(ring, els.clone())?.generator().clone()]
            };
            for e in els {
                let mut col = vec![ring.zero(); gens];
                col[at] = e;
                rels.push(col);
            }
            at += 1;
        }
        let label = text.split_whitespace().collect::<Vec<_>>().join(" ");
        Ok(PresentedModule::from_presentation(ring, gens, rels)?.with_label(label))
    }

    pub fn direct_sum(ring: &Ring, mods: &[&PresentedModule]) -> Result<PresentedModule> {
        if ring.is_finite() {
            let fins = mods.iter().map(|m| m.fin()).collect::<Result<Vec<_>>>()?;
            let m = FiniteModule::direct_sum(ring, &fins);
            let labels: Vec<String> = mods.iter().filter(|m| !m.is_zero()).map(|m| m.describe()).collect();
            let out = PresentedModule::from_finite(m);
            Ok(if labels.is_empty() { out.with_label("0".into()) } else { out.with_label(labels.join(" (+) ")) })
        } else {
            let mut g = 0;
            for m in mods {
                g += m.presentation().generators;
            }
            let mut rels = Vec::new();
            let mut off = 0;
            for m in mods {
                let p = m.presentation();
                for c in &p.relations {
                    let mut col = vec![ring.zero(); g];
                    col[off..off + p.generators].clone_from_slice(c);
                    rels.push(col);
                }
                off += p.generators;
            }
            PresentedModule::from_presentation(ring, g, rels)
        }
    }
}

impl fmt::Display for PresentedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

fn fmt_orders(o: &[u64]) -> String {
    if o.is_empty() {
        return "0".into();
    }
    o.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join("+")
}

/// Presentation of a finite module on its generators: the relation lattice
/// is the kernel of `Z^{gK} → M`, read off an integer Smith form and then
/// pruned while the cokernel keeps the right size.
fn derive_presentation(m: &FiniteModule) -> Presentation {
    let ring = m.ring().clone();
    let f = m.fr();
    let gens = m.generators().to_vec();
    let g = gens.len();
    let kk = f.orders().len();
    let d = m.orders().len();
    let cols = g * kk + d;
    let mut a: Vec<Vec<Element>> = vec![vec![Element::Int(BigInt::zero()); cols]; d];
    for (j, &gen) in gens.iter().enumerate() {
        let gc = m.coords(gen);
        for k in 0..kk {
            let img = m.act_coords(k, &gc);
            for i in 0..d {
                a[i][j * kk + k] = Element::Int(BigInt::from(img[i]));
            }
        }
    }
    for i in 0..d {
        a[i][g * kk + i] = Element::Int(BigInt::from(m.orders()[i]));
    }
    let z = Ring::parse("Z").unwrap();
    let s = crate::module::pid::snf(&z, &a, d, cols);
    let r = s.diagonal().iter().filter(|e| !z.is_zero(e)).count();
    let mut rels: Vec<Vec<u32>> = Vec::new();
    for c in r..cols {
        let mut tuple = Vec::with_capacity(g);
        for j in 0..g {
            let coords: Vec<u64> = (0..kk)
                .map(|k| {
                    let Element::Int(v) = &s.v[j * kk + k][c] else { unreachable!() };
                    let n = f.orders()[k] as i64;
                    (v % BigInt::from(n)).to_i64().unwrap().rem_euclid(n) as u64
                })
                .collect();
            tuple.push(f.from_coords(&coords));
        }
        if tuple.iter().any(|&x| x != 0) && !rels.contains(&tuple) {
            rels.push(tuple);
        }
    }
    let target = m.size_big();
    let mut i = 0;
    while i < rels.len() {
        let mut trial = rels.clone();
        trial.remove(i);
        if FiniteModule::from_presentation(&ring, g, &trial).module.size_big() == target {
            rels = trial;
        } else {
            i += 1;
        }
    }
    Presentation {
        generators: g,
        relations: rels.into_iter().map(|c| c.into_iter().map(Element::Fin).collect()).collect(),
    }
}
