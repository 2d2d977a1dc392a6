//! Running one domain file through a chosen set of invariants.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde_json::{json, Map, Value};

use super::file::{DomainFile, Expected};
use super::report;
use crate::engine::{jet_oracle, line_type, multitype, q_types, regular_type, variety_type, LatticePreset, OracleConfig};
use crate::error::{Error, Result};
use crate::geometry::{check_axis_monotone, check_tail_inequality, check_log_convex, AxisVerdict, DomainSpec, LocalGerm};
use crate::germ::Model;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NOT_CONVEX: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, clap::ValueEnum)]
pub enum Invariant {
    Check,
    Line,
    Regular,
    Variety,
    Qtypes,
    Multitype,
    Oracle,
}

impl Invariant {
    pub const ALL: [Invariant; 7] = [
        Invariant::Check,
        Invariant::Line,
        Invariant::Regular,
        Invariant::Variety,
        Invariant::Qtypes,
        Invariant::Multitype,
        Invariant::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Invariant::Check => "check",
            Invariant::Line => "line",
            Invariant::Regular => "regular",
            Invariant::Variety => "variety",
            Invariant::Qtypes => "qtypes",
            Invariant::Multitype => "multitype",
            Invariant::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Invariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Invariant::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| Error::NotApplicable(format!("unknown invariant `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobSpec {
    pub domain: DomainFile,
    pub invariants: Vec<Invariant>,
    pub max_order: u32,
    pub seed: u64,
    pub oracle: OracleConfig,
    pub lattice: LatticePreset,
    pub samples: usize,
    /// Record wall-clock milliseconds per invariant (makes reports nondeterministic).
    pub timings: bool,
}

impl JobSpec {
    /// Takes tunables from the file's `[params]`; `RTYPE_SEED` overrides the seed.
    pub fn new(domain: DomainFile, invariants: &[Invariant]) -> Result<Self> {
        let p = domain.params.clone();
        let lattice: LatticePreset = p.oracle_lattice.parse()?;
        let mut invariants = invariants.to_vec();
        invariants.sort();
        invariants.dedup();
        let seed = std::env::var("RTYPE_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(p.seed);
        Ok(JobSpec {
            domain,
            invariants,
            max_order: p.max_order,
            seed,
            oracle: OracleConfig::new(p.oracle_max_deg, lattice, p.oracle_budget),
            lattice,
            samples: p.samples,
            timings: false,
        })
    }
}

/// What an invariant produced, in the shape used for comparisons.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Got {
    Scalar(String),
    Tuple(Vec<String>),
    Failed(String),
}

impl Got {
    pub fn matches(&self, e: &Expected) -> bool {
        match (self, e) {
            (Got::Scalar(a), Expected::Scalar(b)) => a == b,
            (Got::Tuple(a), Expected::Tuple(b)) => a == b,
            _ => false,
        }
    }
}

impl fmt::Display for Got {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Got::Scalar(s) => f.write_str(s),
            Got::Tuple(v) => write!(f, "({})", v.join(", ")),
            Got::Failed(m) => write!(f, "error: {m}"),
        }
    }
}

impl fmt::Display for Expected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expected::Scalar(s) => f.write_str(s),
            Expected::Tuple(v) => write!(f, "({})", v.join(", ")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub json: Value,
    pub text: String,
    pub exit: i32,
    pub got: BTreeMap<Invariant, Got>,
}

struct Setup {
    spec: DomainSpec,
    local: LocalGerm,
}

fn setup(job: &JobSpec) -> Result<Setup> {
    Ok(Setup { spec: job.domain.spec()?, local: job.domain.local_germ(job.max_order + 1)? })
}

fn check(job: &JobSpec, s: &Setup) -> Result<(Value, String, bool)> {
    let conv = check_log_convex(&s.spec, job.samples, job.seed);
    let mut ok = conv.is_convex();
    let mut obj = Map::new();
    obj.insert("convexity".into(), report::convexity(&conv));
    let mut lines = vec![format!("log-convexity: {}", if conv.is_convex() { "ok" } else { "violated" })];
    if s.spec.model() == Model::Mod {
        let mut axes = Vec::new();
        for j in 0..s.spec.n {
            let a = check_axis_monotone(&s.spec, j, job.samples, job.seed)?;
            if let AxisVerdict::Violated { .. } = a {
                ok = false;
                lines.push(format!("monotonicity in |z{}|: violated", j + 1));
            }
            axes.push(report::axis(&a));
        }
        obj.insert("axes".into(), Value::Array(axes));
    }
    let ineq = check_tail_inequality(&s.local, job.samples, job.seed);
    if ineq.is_some() {
        ok = false;
        lines.push("local inequality h(u, t) >= h(u, 0): violated".into());
    }
    obj.insert("local_inequality".into(), ineq.map(|v| json!({ "violated_at": v.iter().map(report::scalar).collect::<Vec<_>>() })).unwrap_or(json!("ok")));
    let flags = s.local.flags;
    obj.insert(
        "local_flags".into(),
        json!({ "first_order": flags.first_order, "normal_only": flags.normal_only, "convex": flags.convex }),
    );
    let verdict = if ok { "pseudoconvex" } else { "not_convex" };
    obj.insert("value".into(), json!(verdict));
    obj.insert("method".into(), json!("sampled"));
    obj.insert("seed".into(), json!(job.seed));
    lines.insert(0, verdict.to_string());
    Ok((Value::Object(obj), lines.join("; "), ok))
}

fn run_one(inv: Invariant, job: &JobSpec, s: &Setup) -> Result<(Value, Got, String)> {
    let k = job.max_order;
    Ok(match inv {
        Invariant::Check => {
            let (v, text, ok) = check(job, s)?;
            (v, Got::Scalar(if ok { "pseudoconvex" } else { "not_convex" }.into()), text)
        }
        Invariant::Line | Invariant::Regular => {
            let t = if inv == Invariant::Line { line_type(&s.local, k)? } else { regular_type(&s.local, k)? };
            let text = match &t.witness {
                Some(w) => format!("{} via {} [{}]", t.kind, w, t.method.tag()),
                None => format!("{} [{}]", t.kind, t.method.tag()),
            };
            (report::type_value(&t, job.seed), Got::Scalar(t.kind.to_string()), text)
        }
        Invariant::Variety => {
            let (t, o) = variety_type(&s.local, k, &job.oracle)?;
            let mut v = report::type_value(&t, job.seed);
            v["oracle"] = report::oracle(&o);
            let best = o.best.as_ref().map(|b| b.to_string()).unwrap_or_else(|| "none".into());
            let text = format!("{} [{}], oracle lower bound {} over {} discs", t.kind, t.method.tag(), best, o.evaluated);
            (v, Got::Scalar(t.kind.to_string()), text)
        }
        Invariant::Qtypes => {
            let q = q_types(&s.local, k, job.seed, &job.oracle)?;
            let vals: Vec<String> = q.values.iter().map(|t| t.kind.to_string()).collect();
            (report::q_types(&q), Got::Tuple(vals), format!("{q} (seed {})", q.seed))
        }
        Invariant::Multitype => {
            let m = multitype(&s.local)?;
            let vals: Vec<String> = m.entries.iter().map(|e| e.as_ref().map(crate::exact::scalar::fmt_scalar).unwrap_or_else(|| "inf".into())).collect();
            (report::multitype(&m), Got::Tuple(vals), m.to_string())
        }
        Invariant::Oracle => {
            let o = jet_oracle(&s.local.domain, &s.local.domain_point, &job.oracle)?;
            let best = o.best.as_ref().map(|b| b.to_string()).unwrap_or_else(|| "none".into());
            let text = match &o.witness {
                Some(w) => format!("{best} via {w} ({} discs{})", o.evaluated, if o.exhausted { ", budget exhausted" } else { "" }),
                None => format!("{best} ({} discs)", o.evaluated),
            };
            (report::oracle(&o), Got::Scalar(best), text)
        }
    })
}

/// Runs every requested invariant. Setup failures (bad point, degenerate
/// boundary) are returned as errors; per-invariant failures are recorded in
/// the report and reflected in its exit code.
pub fn run_job(job: &JobSpec) -> Result<Report> {
    let s = setup(job)?;
    let f = &job.domain;
    let mut results = Map::new();
    let mut got = BTreeMap::new();
    let mut text = Vec::new();
    let mut exit = EXIT_OK;
    for &inv in &job.invariants {
        let start = Instant::now();
        let (mut v, g, line) = match run_one(inv, job, &s) {
            Ok(r) => r,
            Err(e) => {
                let code = if matches!(e, Error::Inconsistency { .. }) { EXIT_INCONSISTENT } else { EXIT_ERROR };
                exit = exit.max(code);
                (json!({ "error": e.to_string() }), Got::Failed(e.to_string()), format!("error: {e}"))
            }
        };
        if g == Got::Scalar("not_convex".into()) {
            exit = exit.max(EXIT_NOT_CONVEX);
        }
        if job.timings {
            v["millis"] = json!(start.elapsed().as_millis() as u64);
        }
        results.insert(inv.name().into(), v);
        text.push(format!("{inv}: {line}"));
        got.insert(inv, g);
    }
    let model = match f.model {
        Model::Mod => "modulus",
        Model::Log => "log",
    };
    let json = json!({
        "version": env!("CARGO_PKG_VERSION"),
        "domain": { "name": f.name, "n": f.n, "model": model, "rho": f.rho_text },
        "point": report::point(&f.point),
        "max_order": job.max_order,
        "oracle": { "max_deg": job.oracle.max_deg, "lattice": job.lattice.name(), "budget": job.oracle.budget },
        "results": Value::Object(results),
    });
    Ok(Report { json, text: text.join("\n"), exit, got })
}

#[cfg(test)]
mod tests {
    use super::*;

    const TEXT: &str = r#"
[domain]
n = 3
model = modulus
rho = "|z1|^2 + |z2|^6 + |z3|^6 + |z2*z3|^2 - 1"
[point]
p = ("1", "0", "0")
[params]
oracle_budget = 500
"#;

    fn job(invs: &[Invariant]) -> JobSpec {
        JobSpec::new(DomainFile::parse("t", TEXT).unwrap(), invs).unwrap()
    }

    #[test]
    fn types_and_json() {
        let r = run_job(&job(&[Invariant::Line, Invariant::Qtypes, Invariant::Multitype])).unwrap();
        assert_eq!(r.exit, EXIT_OK);
        assert_eq!(r.got[&Invariant::Line], Got::Scalar("6".into()));
        assert_eq!(r.got[&Invariant::Qtypes], Got::Tuple(vec!["1".into(), "4".into(), "6".into()]));
        assert_eq!(r.json["results"]["line"]["value"], json!("6"));
        assert_eq!(r.json["results"]["multitype"]["value"], json!(["1", "4", "4"]));
        assert!(r.json["results"]["line"].get("millis").is_none());
    }

    #[test]
    fn deterministic() {
        let j = job(&[Invariant::Regular, Invariant::Qtypes]);
        let a = serde_json::to_string(&run_job(&j).unwrap().json).unwrap();
        let b = serde_json::to_string(&run_job(&j).unwrap().json).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn check_passes() {
        let r = run_job(&job(&[Invariant::Check])).unwrap();
        assert_eq!(r.got[&Invariant::Check], Got::Scalar("pseudoconvex".into()));
    }

    #[test]
    fn invariant_names() {
        assert_eq!("qtypes".parse::<Invariant>().unwrap(), Invariant::Qtypes);
        assert!("bogus".parse::<Invariant>().is_err());
    }
}
