use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use torsionlab::catalogue::{self, default_catalogue, parse_catalogue, parse_gens, parse_seeds, resolve_gens};
use torsionlab::closure::closure_suite;
use torsionlab::correspondence::{in_div, pid_sample_elements, spec_round_trips, theta, verify_bijections, verify_pid_samples};
use torsionlab::cosilting::run_cosilting;
use torsionlab::duality::{idempotent_classes, verify_duality, verify_membership};
use torsionlab::filter::{enumerate_filters, filter_from_spec, generate_filter, spec_from_filter, validate_filter, GabrielFilter, PrimeSet, SpecSubset};
use torsionlab::ideal::{enumerate_ideals, jacobson_radical, primes, spec, Ideal, Spec};
use torsionlab::limits::Limits;
use torsionlab::module::{build_universe, is_torsionfree, torsion_part, ModuleUniverse, PresentedModule, UniversePolicy};
use torsionlab::report::{Verdict, SCHEMA_VERSION};
use torsionlab::ring::factor::is_prime_element;
use torsionlab::silting::run_silting;
use torsionlab::Ring;

#[derive(Parser)]
#[command(name = "torsionlab", version, about = "Gabriel filters, divisible and torsionfree classes, silting and cosilting checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Emit the JSON report instead of plain text.
    #[arg(long)]
    json: bool,
    /// Write the report to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Add wall-clock timing to the report (kept apart from the payload).
    #[arg(long)]
    timing: bool,
}

#[derive(Args, Clone)]
struct RingArg {
    /// Ring expression, e.g. `Z/12`, `Z/4 * F3`, `F2[x]/(x^2)`, `Z`.
    #[arg(long)]
    ring: String,
}

#[derive(Args, Clone)]
struct UniverseArgs {
    /// Largest module size in the universe.
    #[arg(long = "universe-size", default_value_t = 512)]
    universe_size: u64,
    /// Largest number of cyclic summands per universe member.
    #[arg(long, default_value_t = 2)]
    summands: usize,
    /// Also add character duals of the members.
    #[arg(long)]
    duals: bool,
}

impl UniverseArgs {
    fn policy(&self) -> UniversePolicy {
        UniversePolicy { summands: self.summands, bound: self.universe_size, duals: self.duals }
    }
}

#[derive(Args, Clone)]
struct FilterArgs {
    /// Seed ideals of the filter, `;`-separated, e.g. `(2);(3)`.
    #[arg(long, default_value = "")]
    seeds: String,
}

#[derive(Subcommand)]
enum Command {
    /// Ring structure.
    Ring {
        #[command(subcommand)]
        cmd: RingCmd,
    },
    /// Ideals and ideal arithmetic.
    Ideal {
        #[command(subcommand)]
        cmd: IdealCmd,
    },
    /// Gabriel filters.
    Filter {
        #[command(subcommand)]
        cmd: FilterCmd,
    },
    /// Every filter with its Spec subset and classes, or one module against every filter.
    Classify {
        #[command(flatten)]
        ring: RingArg,
        /// Module literal such as `R/(2) (+) R`.
        #[arg(long)]
        module: Option<String>,
        #[command(flatten)]
        universe: UniverseArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Verification suites.
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
    /// Run a construction for one filter.
    Construct {
        #[command(subcommand)]
        cmd: ConstructCmd,
    },
    /// Batch runs.
    Catalogue {
        #[command(subcommand)]
        cmd: CatalogueCmd,
    },
}

#[derive(Subcommand)]
enum RingCmd {
    Info {
        #[command(flatten)]
        ring: RingArg,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum IdealOp {
    Sum,
    Product,
    Intersect,
    Colon,
    Annihilator,
    IsPrime,
}

#[derive(Subcommand)]
enum IdealCmd {
    List {
        #[command(flatten)]
        ring: RingArg,
        #[command(flatten)]
        common: Common,
    },
    Op {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long, value_enum)]
        op: IdealOp,
        /// First ideal, e.g. `(4)`.
        #[arg(long)]
        left: String,
        /// Second ideal for sum, product, intersect and ideal colon.
        #[arg(long)]
        right: Option<String>,
        /// Element for the colon `(I : x)`.
        #[arg(long)]
        element: Option<String>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum FilterCmd {
    List {
        #[command(flatten)]
        ring: RingArg,
        #[command(flatten)]
        common: Common,
    },
    Generate {
        #[command(flatten)]
        ring: RingArg,
        #[command(flatten)]
        filter: FilterArgs,
        #[command(flatten)]
        common: Common,
    },
    FromSpec {
        #[command(flatten)]
        ring: RingArg,
        /// Primes, `;`-separated, e.g. `(2);(3)`.
        #[arg(long, default_value = "")]
        primes: String,
        /// Include the generic point `(0)` (PID only; forces all of Spec).
        #[arg(long)]
        generic: bool,
        #[command(flatten)]
        common: Common,
    },
    ToSpec {
        #[command(flatten)]
        ring: RingArg,
        #[command(flatten)]
        filter: FilterArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Check the axioms for the upward closure of a basis, without closing it first.
    Validate {
        #[command(flatten)]
        ring: RingArg,
        /// Basis ideals, `;`-separated.
        #[arg(long)]
        basis: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    Bijection {
        #[command(flatten)]
        ring: RingArg,
        #[command(flatten)]
        filter: FilterArgs,
        #[command(flatten)]
        universe: UniverseArgs,
        #[command(flatten)]
        common: Common,
    },
    Duality {
        #[command(flatten)]
        ring: RingArg,
        #[command(flatten)]
        universe: UniverseArgs,
        #[command(flatten)]
        common: Common,
    },
    Construction {
        #[command(flatten)]
        ring: RingArg,
        #[command(flatten)]
        filter: FilterArgs,
        #[command(flatten)]
        silting: SiltingArgs,
        #[command(flatten)]
        universe: UniverseArgs,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Clone)]
struct SiltingArgs {
    /// Truncation level.
    #[arg(long, default_value_t = catalogue::DEFAULT_LEVEL)]
    level: usize,
    /// Generator lists, e.g. `(2):[2,6];(4):[4]`.
    #[arg(long, default_value = "")]
    gens: String,
}

#[derive(Subcommand)]
enum ConstructCmd {
    Silting {
        #[command(flatten)]
        ring: RingArg,
        #[command(flatten)]
        filter: FilterArgs,
        #[command(flatten)]
        silting: SiltingArgs,
        #[command(flatten)]
        universe: UniverseArgs,
        #[command(flatten)]
        common: Common,
    },
    Cosilting {
        #[command(flatten)]
        ring: RingArg,
        #[command(flatten)]
        filter: FilterArgs,
        #[command(flatten)]
        universe: UniverseArgs,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum CatalogueCmd {
    Run {
        /// Catalogue file, one `ring | seeds=...; level=...; gens=...` line per entry.
        /// Without it the built-in catalogue runs.
        #[arg(long)]
        file: Option<PathBuf>,
        #[command(flatten)]
        universe: UniverseArgs,
        #[command(flatten)]
        common: Common,
    },
}

struct Outcome {
    command: String,
    ring: Option<String>,
    payload: Value,
    verdicts: Vec<Verdict>,
    plain: Option<String>,
}

impl Outcome {
    fn new(command: &str, ring: Option<&Ring>, payload: Value) -> Outcome {
        Outcome { command: command.into(), ring: ring.map(|r| r.to_string()), payload, verdicts: vec![], plain: None }
    }
    fn with_verdicts(mut self, v: Vec<Verdict>) -> Outcome {
        self.verdicts = v;
        self
    }
}

fn limits() -> Limits {
    Limits::from_env()
}

fn ring_of(a: &RingArg) -> Result<Ring> {
    Ring::parse_with(&a.ring, limits()).with_context(|| format!("ring {:?}", a.ring))
}

fn split_list(text: &str) -> Vec<String> {
    text.split(';').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

fn filter_of(ring: &Ring, f: &FilterArgs) -> Result<GabrielFilter> {
    let seeds = parse_seeds(ring, &split_list(&f.seeds))?;
    Ok(generate_filter(ring, &seeds)?)
}

fn universe_of(ring: &Ring, u: &UniverseArgs) -> Result<ModuleUniverse> {
    Ok(build_universe(ring, u.policy())?)
}

fn ideal_list(v: &[Ideal]) -> Vec<String> {
    v.iter().map(Ideal::format).collect()
}

fn ring_info(ring: &Ring) -> Result<Value> {
    if !ring.is_finite() {
        return Ok(json!({ "descriptor": ring.to_string(), "finite": false, "spec": "(0) and all principal primes" }));
    }
    let f = ring.finite()?;
    let ideals = enumerate_ideals(ring)?;
    let units = f.elements().filter(|&x| ring.is_unit(&torsionlab::Element::Fin(x))).count();
    let factors: Vec<Value> = ring
        .local_factors()?
        .iter()
        .map(|(e, r)| json!({ "idempotent": ring.format(e), "factor_size": r.size() }))
        .collect();
    Ok(json!({
        "descriptor": ring.to_string(),
        "finite": true,
        "size": ring.size(),
        "units": units,
        "ideals": ideals.len(),
        "spec": ideal_list(&primes(ring)?),
        "jacobson_radical": jacobson_radical(ring)?.format(),
        "idempotents": ring.idempotents()?.iter().map(|e| ring.format(e)).collect::<Vec<_>>(),
        "local_factors": factors,
    }))
}

fn ideal_op(ring: &Ring, op: IdealOp, left: &str, right: Option<&str>, element: Option<&str>) -> Result<Value> {
    let a = Ideal::parse(ring, left)?;
    let b = || -> Result<Ideal> {
        let t = right.context("--right is required for this operation")?;
        Ok(Ideal::parse(ring, t)?)
    };
    let out = match op {
        IdealOp::Sum => json!(a.sum(&b()?)?.format()),
        IdealOp::Product => json!(a.product(&b()?)?.format()),
        IdealOp::Intersect => json!(a.intersect(&b()?)?.format()),
        IdealOp::Colon => match (element, right) {
            (Some(x), _) => json!(a.colon(&ring.parse_element(x)?)?.format()),
            (None, Some(_)) => json!(a.colon_ideal(&b()?)?.format()),
            (None, None) => bail!("colon needs --element or --right"),
        },
        IdealOp::Annihilator => json!(a.annihilator().format()),
        IdealOp::IsPrime => json!(a.is_prime()),
    };
    Ok(json!({ "left": a.format(), "result": out }))
}

fn spec_subset(ring: &Ring, primes_text: &str, generic: bool) -> Result<SpecSubset> {
    let ps = parse_seeds(ring, &split_list(primes_text))?;
    if ring.is_finite() {
        if generic {
            bail!("--generic only applies to Z and F_p[x]");
        }
        Ok(SpecSubset::finite(ring, ps)?)
    } else {
        let gens = ps.iter().map(|p| p.generator().clone()).collect();
        let set = if generic { PrimeSet::Cofinite(vec![]) } else { PrimeSet::Finite(gens) };
        Ok(SpecSubset::pid(ring, generic, set)?)
    }
}

fn members(u: &ModuleUniverse, mask: &[bool]) -> Vec<String> {
    u.members.iter().zip(mask).filter(|(_, &b)| b).map(|(m, _)| m.describe()).collect()
}

fn classify(ring: &Ring, module: Option<&str>, ua: &UniverseArgs) -> Result<Outcome> {
    let filters = enumerate_filters(ring)?;
    let u = universe_of(ring, ua)?;
    let m = module.map(|t| PresentedModule::parse(ring, t)).transpose()?;
    let mut rows = Vec::new();
    for g in &filters {
        let div = theta(g).membership(&u)?;
        let tf: Vec<bool> = u.members.iter().map(|x| is_torsionfree(x, g)).collect::<std::result::Result<_, _>>()?;
        let mut row = json!({
            "filter": g.to_json(),
            "spec": spec_from_filter(g)?.to_json(ring),
            "divisible": members(&u, &div),
            "torsionfree": members(&u, &tf),
        });
        if let Some(m) = &m {
            let tp = torsion_part(m, g)?;
            row["module"] = json!({
                "divisible": in_div(g, m)?,
                "torsionfree": is_torsionfree(m, g)?,
                "torsion_part": tp.torsion.describe(),
                "torsionfree_quotient": tp.quotient.describe(),
            });
        }
        rows.push(row);
    }
    let payload = json!({
        "universe_size": u.members.len(),
        "module": m.as_ref().map(|m| m.to_json()),
        "filters": rows,
    });
    Ok(Outcome::new("classify", Some(ring), payload))
}

fn pid_bijection(ring: &Ring, f: &FilterArgs) -> Result<Outcome> {
    let mut ps: Vec<torsionlab::Element> = Vec::new();
    for i in parse_seeds(ring, &split_list(&f.seeds))? {
        for (p, _) in torsionlab::ring::factor::factor(ring, i.generator()).unwrap_or_default() {
            if !ps.contains(&p) {
                ps.push(p);
            }
        }
    }
    if ps.is_empty() {
        ps = pid_sample_elements(ring, 5).into_iter().filter(|x| is_prime_element(ring, x)).take(2).collect();
    }
    let sets = vec![vec![], ps[..1.min(ps.len())].to_vec(), ps.clone()];
    let v = verify_pid_samples(ring, &sets, 30)?;
    let p: Vec<String> = ps.iter().map(|x| ring.format(x)).collect();
    Ok(Outcome::new("verify bijection", Some(ring), json!({ "primes": p, "sample_bound": 30 })).with_verdicts(v))
}

fn verify_construction(ring: &Ring, f: &FilterArgs, s: &SiltingArgs, ua: &UniverseArgs) -> Result<Outcome> {
    let u = universe_of(ring, ua)?;
    let gens = split_list(&s.gens).iter().map(|t| parse_gens(t)).collect::<std::result::Result<Vec<_>, _>>()?;
    let overrides = resolve_gens(ring, &gens)?;
    let filters = if f.seeds.trim().is_empty() && gens.is_empty() { enumerate_filters(ring)? } else { vec![filter_of(ring, f)?] };
    let mut verdicts = Vec::new();
    let mut rows = Vec::new();
    for g in &filters {
        let sr = run_silting(g, &overrides, s.level, &u)?;
        let cr = run_cosilting(g, &u)?;
        let prefix = |v: &Verdict| Verdict { check: format!("{g} {}", v.check), ..v.clone() };
        verdicts.extend(sr.all_verdicts().into_iter().map(prefix));
        verdicts.extend(cr.verdicts.iter().map(prefix));
        verdicts.extend(closure_suite(g, &u, ua.universe_size)?);
        rows.push(json!({ "filter": g.to_json(), "step2_pairs": sr.step2_pairs, "stabilization_level": sr.step6.stabilization_level }));
    }
    let payload = json!({ "universe_size": u.members.len(), "level": s.level, "filters": rows });
    Ok(Outcome::new("verify construction", Some(ring), payload).with_verdicts(verdicts))
}

fn run(cmd: Command) -> Result<(Outcome, Common)> {
    Ok(match cmd {
        Command::Ring { cmd: RingCmd::Info { ring, common } } => {
            let r = ring_of(&ring)?;
            (Outcome::new("ring info", Some(&r), ring_info(&r)?), common)
        }
        Command::Ideal { cmd: IdealCmd::List { ring, common } } => {
            let r = ring_of(&ring)?;
            let payload = match spec(&r)? {
                Spec::Finite(_) => {
                    let all = enumerate_ideals(&r)?;
                    let rows: Vec<Value> = all
                        .iter()
                        .map(|i| json!({ "ideal": i.format(), "size": i.size(), "prime": i.is_prime(), "annihilator": i.annihilator().format() }))
                        .collect();
                    json!({ "count": all.len(), "ideals": rows })
                }
                Spec::Symbolic(_) => bail!("{r} has infinitely many ideals; every ideal is principal"),
            };
            (Outcome::new("ideal list", Some(&r), payload), common)
        }
        Command::Ideal { cmd: IdealCmd::Op { ring, op, left, right, element, common } } => {
            let r = ring_of(&ring)?;
            let payload = ideal_op(&r, op, &left, right.as_deref(), element.as_deref())?;
            (Outcome::new("ideal op", Some(&r), payload), common)
        }
        Command::Filter { cmd: FilterCmd::List { ring, common } } => {
            let r = ring_of(&ring)?;
            let fs = enumerate_filters(&r)?;
            let rows: Vec<Value> = fs.iter().map(|g| Ok(json!({ "filter": g.to_json(), "spec": spec_from_filter(g)?.to_json(&r) }))).collect::<Result<_>>()?;
            (Outcome::new("filter list", Some(&r), json!({ "count": fs.len(), "filters": rows })), common)
        }
        Command::Filter { cmd: FilterCmd::Generate { ring, filter, common } } => {
            let r = ring_of(&ring)?;
            let g = filter_of(&r, &filter)?;
            (Outcome::new("filter generate", Some(&r), g.to_json()), common)
        }
        Command::Filter { cmd: FilterCmd::FromSpec { ring, primes, generic, common } } => {
            let r = ring_of(&ring)?;
            let p = spec_subset(&r, &primes, generic)?;
            let g = filter_from_spec(&r, &p)?;
            let back = spec_from_filter(&g)?;
            let v = if back == p { Verdict::pass("spec_round_trip") } else { Verdict::fail("spec_round_trip", back.to_json(&r)) };
            (Outcome::new("filter from-spec", Some(&r), json!({ "spec": p.to_json(&r), "filter": g.to_json() })).with_verdicts(vec![v]), common)
        }
        Command::Filter { cmd: FilterCmd::ToSpec { ring, filter, common } } => {
            let r = ring_of(&ring)?;
            let g = filter_of(&r, &filter)?;
            let p = spec_from_filter(&g)?;
            let back = filter_from_spec(&r, &p)?;
            let v = if back == g { Verdict::pass("filter_round_trip") } else { Verdict::fail("filter_round_trip", back.to_json()) };
            (Outcome::new("filter to-spec", Some(&r), json!({ "filter": g.to_json(), "spec": p.to_json(&r) })).with_verdicts(vec![v]), common)
        }
        Command::Filter { cmd: FilterCmd::Validate { ring, basis, common } } => {
            let r = ring_of(&ring)?;
            let b = parse_seeds(&r, &split_list(&basis))?;
            let g = GabrielFilter::from_basis(&r, b)?;
            let rep = validate_filter(&g)?;
            let v = if rep.valid { Verdict::pass("gabriel_axioms") } else { Verdict::fail("gabriel_axioms", serde_json::to_value(&rep.violations)?) };
            (Outcome::new("filter validate", Some(&r), json!({ "filter": g.to_json(), "report": rep })).with_verdicts(vec![v]), common)
        }
        Command::Classify { ring, module, universe, common } => {
            let r = ring_of(&ring)?;
            (classify(&r, module.as_deref(), &universe)?, common)
        }
        Command::Verify { cmd: VerifyCmd::Bijection { ring, filter, universe, common } } => {
            let r = ring_of(&ring)?;
            if !r.is_finite() {
                return Ok((pid_bijection(&r, &filter)?, common));
            }
            let u = universe_of(&r, &universe)?;
            let rep = verify_bijections(&r, &u)?;
            let (n, v) = spec_round_trips(&r)?;
            let mut verdicts: Vec<Verdict> = rep.all_verdicts().into_iter().cloned().collect();
            verdicts.push(v);
            let mut payload = serde_json::to_value(&rep)?;
            payload["spec_subsets_checked"] = json!(n);
            (Outcome::new("verify bijection", Some(&r), payload).with_verdicts(verdicts), common)
        }
        Command::Verify { cmd: VerifyCmd::Duality { ring, universe, common } } => {
            let r = ring_of(&ring)?;
            let u = universe_of(&r, &universe)?;
            let d = verify_duality(&r, &u)?;
            let m = verify_membership(&r, &u)?;
            let mut verdicts = d.verdicts.clone();
            verdicts.extend(m.verdicts.clone());
            verdicts.push(idempotent_classes(&r, &u)?);
            let payload = json!({ "universe_size": u.members.len(), "sigmas": d.sigmas, "bridge_pairs": d.pairs, "membership_pairs": m.pairs });
            (Outcome::new("verify duality", Some(&r), payload).with_verdicts(verdicts), common)
        }
        Command::Verify { cmd: VerifyCmd::Construction { ring, filter, silting, universe, common } } => {
            let r = ring_of(&ring)?;
            (verify_construction(&r, &filter, &silting, &universe)?, common)
        }
        Command::Construct { cmd: ConstructCmd::Silting { ring, filter, silting, universe, common } } => {
            let r = ring_of(&ring)?;
            let g = filter_of(&r, &filter)?;
            let gens = split_list(&silting.gens).iter().map(|t| parse_gens(t)).collect::<std::result::Result<Vec<_>, _>>()?;
            let overrides = resolve_gens(&r, &gens)?;
            let u = universe_of(&r, &universe)?;
            let rep = run_silting(&g, &overrides, silting.level, &u)?;
            let verdicts = rep.all_verdicts().into_iter().cloned().collect();
            let payload = json!({
                "data": rep.data,
                "transposes": rep.transposes,
                "levels": rep.levels,
                "step2_pairs": rep.step2_pairs,
                "stabilization_level": rep.step6.stabilization_level,
                "d_sigma_members": rep.step6.d_sigma_members,
            });
            (Outcome::new("construct silting", Some(&r), payload).with_verdicts(verdicts), common)
        }
        Command::Construct { cmd: ConstructCmd::Cosilting { ring, filter, universe, common } } => {
            let r = ring_of(&ring)?;
            let g = filter_of(&r, &filter)?;
            let u = universe_of(&r, &universe)?;
            let rep = run_cosilting(&g, &u)?;
            (Outcome::new("construct cosilting", Some(&r), rep.assembly).with_verdicts(rep.verdicts), common)
        }
        Command::Catalogue { cmd: CatalogueCmd::Run { file, universe, common } } => {
            let entries = match &file {
                Some(p) => parse_catalogue(&std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?)?,
                None => default_catalogue(),
            };
            let rep = catalogue::run_catalogue(&entries, universe.policy(), limits());
            let verdicts = rep.rings.iter().flat_map(|r| r.verdicts().map(move |v| Verdict { check: format!("{} {}", r.entry, v.check), ..v.clone() })).collect();
            let mut o = Outcome::new("catalogue run", None, serde_json::to_value(&rep)?).with_verdicts(verdicts);
            o.plain = Some(rep.table());
            (o, common)
        }
    })
}

fn render_plain(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    Value::Object(_) | Value::Array(_) if !is_flat(x) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_plain(x, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", flat(x))),
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                if is_flat(x) {
                    out.push_str(&format!("{pad}- {}\n", flat(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render_plain(x, indent + 1, out);
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", flat(v))),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(|x| !x.is_object() && !x.is_array()),
        Value::Object(_) => false,
        _ => true,
    }
}

fn flat(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(flat).collect::<Vec<_>>().join(", ")),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let (outcome, common) = match run(cli.command) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let failed = outcome.verdicts.iter().filter(|v| !v.passed()).count();
    let text = if common.json {
        let mut report = json!({
            "schema_version": SCHEMA_VERSION,
            "command": outcome.command,
            "ring": outcome.ring,
            "payload": outcome.payload,
            "verdicts": outcome.verdicts,
        });
        if common.timing {
            report["timing"] = json!({ "seconds": start.elapsed().as_secs_f64() });
        }
        serde_json::to_string_pretty(&report).unwrap() + "\n"
    } else {
        let mut s = String::new();
        if let Some(r) = &outcome.ring {
            s.push_str(&format!("ring: {r}\n"));
        }
        match &outcome.plain {
            Some(p) => s.push_str(p),
            None => render_plain(&outcome.payload, 0, &mut s),
        }
        for v in &outcome.verdicts {
            if !v.passed() {
                s.push_str(&format!("FAIL {} {}\n", v.check, v.witness.as_ref().map(flat).unwrap_or_default()));
            }
        }
        if !outcome.verdicts.is_empty() {
            s.push_str(&format!("verdicts: {} pass, {} fail\n", outcome.verdicts.len() - failed, failed));
        }
        if common.timing {
            s.push_str(&format!("time: {:.3}s\n", start.elapsed().as_secs_f64()));
        }
        s
    };
    if let Some(p) = &common.out {
        if let Err(e) = std::fs::write(p, &text) {
            eprintln!("error: writing {}: {e}", p.display());
            return ExitCode::from(2);
        }
    } else {
        print!("{text}");
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
