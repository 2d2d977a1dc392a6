//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rtype::cli::{run_corpus, run_job, DomainFile, Invariant, JobSpec};
use rtype::engine::{
    compose_order, jet_oracle, line_type, multitype, newton_order, q_types, reduce_disc, regular_type, variety_type, Disc,
    LatticePreset, NewtonModel, OracleConfig, Score, TypeKind,
};
use rtype::exact::scalar::*;
use rtype::exact::{ExactComplex, TruncSeries, Vanishing};
use rtype::geometry::{check_tail_inequality, check_log_convex, normalize_coords, BoundaryPoint, ConvexityVerdict, DomainSpec, LocalGerm};
use rtype::germ::model::hessian;
use rtype::germ::{parse_expr, to_germ, Germ};
use rtype::Error;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn load(name: &str) -> DomainFile {
    DomainFile::load(&corpus_dir().join(name)).expect("bundled corpus file")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {:.1}s, limit {}s", t.as_secs_f64(), limit.as_secs()))
}

fn exact(kind: &TypeKind, v: u32, what: &str) -> Result<(), String> {
    ensure(*kind == TypeKind::exact(v), || format!("{what} = {kind}, expected {v}"))
}

fn log_model_gap() -> Outcome {
    let start = Instant::now();
    let l = load("remark5_1.dom").local_germ(13).map_err(|e| e.to_string())?;
    let line = line_type(&l, 12).map_err(|e| e.to_string())?;
    let reg = regular_type(&l, 12).map_err(|e| e.to_string())?;
    let (var, _) = variety_type(&l, 12, &OracleConfig::new(3, LatticePreset::Default, 5000)).map_err(|e| e.to_string())?;
    exact(&line.kind, 2, "line")?;
    exact(&reg.kind, 4, "regular")?;
    exact(&var.kind, 4, "variety")?;
    within(start, Duration::from_secs(10))?;
    Ok("line 2, regular 4, variety 4".into())
}

fn modulus_slices() -> Outcome {
    let start = Instant::now();
    let l = load("remark5_2.dom").local_germ(13).map_err(|e| e.to_string())?;
    let cfg = OracleConfig::new(3, LatticePreset::Default, 5000);
    let q = q_types(&l, 12, 0, &cfg).map_err(|e| e.to_string())?;
    let m = multitype(&l).map_err(|e| e.to_string())?;
    let (var, _) = variety_type(&l, 12, &cfg).map_err(|e| e.to_string())?;
    ensure(q.to_string() == "(1, 4, 6)", || format!("qtypes {q}"))?;
    ensure(m.to_string() == "(1, 4, 4)", || format!("multitype {m}"))?;
    exact(&var.kind, 6, "variety")?;
    within(start, Duration::from_secs(30))?;
    Ok("qtypes (1, 4, 6), multitype (1, 4, 4), variety 6".into())
}

/// `t1 + Σ c·t^e - 1` at `(1, 0, …)` with positive coefficients and pure
/// powers in every tangential variable.
fn generated_germ(rng: &mut ChaCha8Rng) -> (String, usize) {
    let n = rng.gen_range(2..=3);
    let mut terms = vec!["|z1|^2".to_string()];
    for i in 2..=n {
        let d = rng.gen_range(1..=4);
        terms.push(format!("{}*|z{i}|^{}", rng.gen_range(1..=5), 2 * d));
    }
    for _ in 0..rng.gen_range(0..=3) {
        let mut e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
        if e[1..].iter().all(|&k| k == 0) {
            e[1] = 1;
        }
        while e.iter().sum::<u32>() > 4 {
            let i = e.iter().position(|&k| k > 0).unwrap();
            e[i] -= 1;
        }
        if e[1..].iter().all(|&k| k == 0) {
            continue;
        }
        let mono: Vec<String> = e.iter().enumerate().filter(|(_, &k)| k > 0).map(|(i, k)| format!("|z{}|^{}", i + 1, 2 * k)).collect();
        terms.push(format!("{}*{}", rng.gen_range(1..=5), mono.join("*")));
    }
    (format!("{} - 1", terms.join(" + ")), n)
}

fn local_for(text: &str, p: Vec<ExactComplex>) -> Result<LocalGerm, String> {
    let g = to_germ(&parse_expr(text, p.len()).map_err(|e| e.to_string())?, p.clone()).map_err(|e| e.to_string())?;
    let d = DomainSpec::new(g, None).map_err(|e| e.to_string())?;
    let bp = BoundaryPoint::new(&d, p).map_err(|e| e.to_string())?;
    rtype::geometry::local_germ_at(&d, &bp, 13).map_err(|e| e.to_string())
}

fn generated_property() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let oracle = OracleConfig::new(4, LatticePreset::Default, 20_000);
    let cases = 20;
    let mut seen = std::collections::BTreeSet::new();
    for _ in 0..cases {
        let (text, n) = generated_germ(&mut rng);
        let mut p = vec![czero(); n];
        p[0] = cone();
        let l = local_for(&text, p.clone())?;
        let d = DomainSpec::new(l.domain.clone(), None).map_err(|e| e.to_string())?;
        ensure(check_log_convex(&d, 200, 0).is_convex(), || format!("{text}: not convex"))?;
        let reg = regular_type(&l, 12).map_err(|e| format!("{text}: {e}"))?;
        let (var, _) = variety_type(&l, 12, &OracleConfig::new(1, LatticePreset::Binary, 10)).map_err(|e| format!("{text}: {e}"))?;
        ensure(reg.kind == var.kind, || format!("{text}: regular {} vs variety {}", reg.kind, var.kind))?;
        let o = jet_oracle(&l.domain, &p, &oracle).map_err(|e| e.to_string())?;
        let want = reg.kind.as_exact().cloned().ok_or_else(|| format!("{text}: regular type {} not exact", reg.kind))?;
        ensure(o.best == Some(Score::Ratio(want.clone())), || format!("{text}: oracle {:?} vs regular {}", o.best, reg.kind))?;
        seen.insert(want.to_integer());
    }
    within(start, Duration::from_secs(300))?;
    let seen: Vec<String> = seen.iter().map(|v| v.to_string()).collect();
    Ok(format!("{cases} generated germs, oracle (max_deg 4) matches regular = variety; types seen {{{}}}", seen.join(", ")))
}

fn newton_vs_series() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let lattice = LatticePreset::Default.values();
    let pairs = 100;
    for _ in 0..pairs {
        let n = rng.gen_range(1..=3);
        let mut terms = Vec::new();
        for _ in 0..rng.gen_range(1..=4) {
            let total = rng.gen_range(1..=6);
            let mut e = vec![0u32; n];
            for _ in 0..total {
                e[rng.gen_range(0..n)] += 1;
            }
            let mono: Vec<String> = e.iter().enumerate().filter(|(_, &k)| k > 0).map(|(i, k)| format!("|z{}|^{}", i + 1, 2 * k)).collect();
            terms.push(format!("{}*{}", rng.gen_range(1..=5), mono.join("*")));
        }
        let text = terms.join(" + ");
        let g: Germ = to_germ(&parse_expr(&text, n).map_err(|e| e.to_string())?, vec![czero(); n]).map_err(|e| e.to_string())?;
        let coeffs: Vec<Vec<ExactComplex>> = (0..n)
            .map(|_| {
                let b = rng.gen_range(0..=5usize);
                let mut c = vec![czero(); 5];
                if b > 0 {
                    c[b - 1] = lattice[rng.gen_range(1..lattice.len())].clone();
                }
                c
            })
            .collect();
        let disc = Disc::polynomial(&vec![czero(); n], &coeffs, 64).map_err(|e| e.to_string())?;
        let newton = newton_order(g.support(), &disc.beta, NewtonModel::Mod).map_err(|e| e.to_string())?;
        let series = compose_order(&g, &disc).map_err(|e| e.to_string())?;
        let agree = match (newton, series) {
            (Some(w), Vanishing::Order(k)) => w as usize == k,
            (None, Vanishing::ZeroUpTo(_)) => true,
            _ => false,
        };
        ensure(agree, || format!("{text} along {disc}: newton {newton:?}, series {series:?}"))?;
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!("{pairs} random pairs agree"))
}

const PSEUDOCONVEX: [&str; 7] =
    ["decoupled.dom", "mixed3.dom", "remark5_1.dom", "remark5_2.dom", "rotated.dom", "sphere2.dom", "sphere3_infinite.dom"];

fn geometry() -> Outcome {
    let start = Instant::now();
    for name in PSEUDOCONVEX {
        let d = load(name).spec().map_err(|e| e.to_string())?;
        let v = check_log_convex(&d, 200, 0);
        ensure(v.is_convex(), || format!("{name}: {v:?}"))?;
    }
    let planted = load("not_convex.dom");
    let d = planted.spec().map_err(|e| e.to_string())?;
    match check_log_convex(&d, 200, 0) {
        ConvexityVerdict::NotConvex { point, minor, value } => {
            let h = hessian(d.rho.support(), &point);
            let sub: Vec<Vec<_>> = minor.iter().map(|&i| minor.iter().map(|&j| h[i][j].clone()).collect()).collect();
            let det = rtype::geometry::convex::determinant(&sub);
            ensure(det == value && value < int(0), || format!("minor {minor:?} recomputed as {det}, reported {value}"))?;
        }
        other => return Err(format!("planted germ not rejected: {other:?}")),
    }
    let l = load("mixed3.dom").local_germ(13).map_err(|e| e.to_string())?;
    if let Some(w) = check_tail_inequality(&l, 50, 0) {
        return Err(format!("local inequality violated at {w:?}"));
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("{} corpus germs convex, planted germ rejected, mixed-case inequality holds", PSEUDOCONVEX.len()))
}

/// Discs through the point whose first-order normal term cancels, plus
/// random higher-order terms.
fn precondition_disc(l: &LocalGerm, rng: &mut ChaCha8Rng) -> Disc {
    let lattice = LatticePreset::Default.values();
    let pick = |rng: &mut ChaCha8Rng| lattice[rng.gen_range(0..lattice.len())].clone();
    let n = l.n();
    let mut a: Vec<ExactComplex> = (0..n).map(|_| pick(rng)).collect();
    let mut dot = czero();
    for i in l.log_vars() {
        if i != l.normal {
            dot += cmul_scalar(&a[i], &l.ell[i]);
        }
    }
    a[l.normal] = cmul_scalar(&dot, &(-(int(1) / &l.normal_coeff)));
    let base = Disc::exponential(l.base_point(), &a, 13).expect("dimensions");
    let comps = base
        .components
        .iter()
        .map(|c| {
            let mut extra = vec![czero(); 5];
            for e in extra.iter_mut().skip(2) {
                if rng.gen_bool(0.4) {
                    *e = pick(rng);
                }
            }
            c.add(&TruncSeries::new(extra, 13))
        })
        .collect();
    Disc::new(comps).expect("nonempty")
}

fn reductions() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let per_germ = 50;
    for name in PSEUDOCONVEX {
        let raw = load(name).local_germ(13).map_err(|e| e.to_string())?;
        let (_, l) = normalize_coords(&raw).map_err(|e| e.to_string())?;
        let mut done = 0;
        let mut tries = 0;
        while done < per_germ {
            tries += 1;
            ensure(tries < 20 * per_germ, || format!("{name}: too few discs satisfy the precondition"))?;
            let phi = precondition_disc(&l, &mut rng);
            let r = match reduce_disc(&l, &phi) {
                Ok(r) => r,
                Err(Error::Precondition { .. }) => continue,
                Err(e) => return Err(format!("{name}: {e} on {phi}")),
            };
            let before = compose_order(&l.germ, &phi).map_err(|e| e.to_string())?;
            let after = compose_order(&l.germ, &r.disc).map_err(|e| e.to_string())?;
            ensure(r.disc.v() == phi.v(), || format!("{name}: v changed on {phi}"))?;
            let kept = match (before, after) {
                (_, Vanishing::ZeroUpTo(_)) => true,
                (Vanishing::Order(x), Vanishing::Order(y)) => y >= x,
                (Vanishing::ZeroUpTo(_), Vanishing::Order(_)) => false,
            };
            ensure(kept, || format!("{name}: order dropped from {before:?} to {after:?} on {phi}"))?;
            done += 1;
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("{per_germ} discs on each of {} germs", PSEUDOCONVEX.len()))
}

fn degenerate() -> Outcome {
    let f = load("sphere3_infinite.dom");
    let l = f.local_germ(13).map_err(|e| e.to_string())?;
    let a = regular_type(&l, 12).map_err(|e| e.to_string())?;
    let b = regular_type(&l, 12).map_err(|e| e.to_string())?;
    ensure(a == b, || "nondeterministic".into())?;
    ensure(a.kind == TypeKind::Infinite, || format!("type {}", a.kind))?;
    let w = a.witness.as_ref().map(|w| w.to_string()).unwrap_or_default();
    ensure(w == "(1, 0, ζ)", || format!("witness {w}"))?;
    let d = f.spec().map_err(|e| e.to_string())?;
    for _ in 0..2 {
        let r = BoundaryPoint::new(&d, vec![czero(); 3]);
        ensure(r == Err(Error::OriginPoint), || format!("origin gave {r:?}"))?;
    }
    let text = std::fs::read_to_string(corpus_dir().join("sphere3_infinite.dom")).unwrap().replace(r#"("1", "0", "0")"#, r#"("0", "0", "0")"#);
    let file = DomainFile::parse("origin", &text).map_err(|e| e.to_string())?;
    let job = JobSpec::new(file, &[Invariant::Regular]).map_err(|e| e.to_string())?;
    ensure(run_job(&job) == Err(Error::OriginPoint), || "job at the origin was not rejected".into())?;
    Ok("infinite with witness (1, 0, ζ); origin rejected".into())
}

fn determinism() -> Outcome {
    let a = run_corpus(&corpus_dir(), None).map_err(|e| e.to_string())?;
    let b = run_corpus(&corpus_dir(), None).map_err(|e| e.to_string())?;
    ensure(a.exit == 0, || format!("corpus mismatches:\n{}", a.table()))?;
    let (ja, jb) = (serde_json::to_string(&a.json).unwrap(), serde_json::to_string(&b.json).unwrap());
    ensure(ja == jb, || "corpus JSON differs between runs".into())?;
    Ok(format!("{} corpus checks pass, {} identical JSON bytes", a.rows.len(), ja.len()))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("log-model line/regular gap", log_model_gap),
        ("modulus-model q-types and multitype", modulus_slices),
        ("generated corpus: regular = variety = oracle", generated_property),
        ("newton order vs series composition", newton_vs_series),
        ("convexity and local inequality", geometry),
        ("normal-component reduction", reductions),
        ("degenerate inputs", degenerate),
        ("corpus determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let r = f();
        let secs = start.elapsed().as_secs_f64();
        match r {
            Ok(msg) => println!("criterion {}: PASS  {name}: {msg} ({secs:.1}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {msg} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
