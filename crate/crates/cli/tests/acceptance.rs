//! Acceptance suite: nine criteria, one PASS/FAIL line each, with wall-clock
//! limits. Runs the `siltkit` binary where a criterion names a command and
//! the library otherwise.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use serde_json::Value;
use siltkit::algebra::{AlgebraTable, Quiver};
use siltkit::fz::{is_mutation_dynkin, DynkinType, DynkinVerdict, ExchangeMatrix};
use siltkit::homotopy::is_isomorphic;
use siltkit::silting::{initial_silting, two_silt_interval};
use siltkit::tau_tilt::{
    enumerate_stt, is_stt_pair, pair_from_silting, silting_from_pair, tau_tilting_finite,
    torsion_classes_bruteforce, verify_simple_tilt, TauFiniteness,
};

use common::{check_antisymmetry, check_cohomology, check_minimize, check_object, check_torsion, load, setup, walk};

type Check = Result<String, String>;

/// Title, time limit in seconds, check.
type Criterion = (&'static str, u64, fn() -> Check);

fn siltkit(args: &[&str]) -> Result<(Value, i32), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_siltkit"))
        .arg("--format")
        .arg("json")
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    let code = out.status.code().unwrap_or(-1);
    let v = serde_json::from_slice(&out.stdout)
        .map_err(|e| format!("siltkit {args:?}: {e}; stderr: {}", String::from_utf8_lossy(&out.stderr)))?;
    Ok((v, code))
}

fn algebra(name: &str) -> String {
    common::corpus_path(name).to_string_lossy().into_owned()
}

fn matrix(name: &str) -> String {
    let p = common::corpus_path("x").parent().unwrap().join("../matrices").join(format!("{name}.json"));
    p.to_string_lossy().into_owned()
}

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn silt2(alg: &str, cap: usize) -> Result<(Value, i32), String> {
    siltkit(&["silt2", "--cap", &cap.to_string(), &algebra(alg)])
}

fn c1() -> Check {
    let (s, code) = siltkit(&["silt2", &algebra("a2")])?;
    ensure(code == 0 && s["count"] == 5 && s["complete"] == true, format!("silt2: {} objects, exit {code}", s["count"]))?;
    let arrows = s["hasse"]["arrows"].as_array().map_or(0, Vec::len);
    ensure(arrows == 5 && s["hasse"]["matches_mutation"] == true, format!("{arrows} Hasse arrows"))?;
    let (v, code) = siltkit(&["verify", &algebra("a2")])?;
    ensure(code == 0 && v["status"] == "verified", format!("verify: {}", v["status"]))?;
    ensure(v["tors_count"] == 5, format!("{} torsion classes", v["tors_count"]))?;
    Ok("5 objects, 5 Hasse arrows, 5 torsion classes, bijection verified".into())
}

fn c2() -> Check {
    let (v, code) = siltkit(&["verify", &algebra("a3")])?;
    ensure(code == 0 && v["status"] == "verified", format!("verify: {}", v["status"]))?;
    ensure(v["silt2_count"] == 14 && v["tors_count"] == 14, format!("{} objects, {} classes", v["silt2_count"], v["tors_count"]))?;
    Ok("14 objects = 14 torsion classes, bijection verified".into())
}

fn c3() -> Check {
    let (v, code) = siltkit(&["verify", &algebra("preproj_a2")])?;
    ensure(code == 0 && v["status"] == "verified", format!("A2 verify: {}", v["status"]))?;
    ensure(v["stt_count"] == 6 && v["tors_count"] == 6, format!("A2: {} pairs", v["stt_count"]))?;

    let alg = load("preproj_a3");
    ensure(alg.dim() == 10, format!("A3 dimension {}", alg.dim()))?;
    let iv = two_silt_interval(&alg, &initial_silting(&alg), 100).map_err(err)?;
    ensure(iv.complete && iv.objects.len() == 24, format!("A3 interval: {} objects", iv.objects.len()))?;
    let (pairs, complete) = enumerate_stt(&alg, 100).map_err(err)?;
    ensure(complete && pairs.len() == 24, format!("A3: {} pairs", pairs.len()))?;
    for n in &iv.objects {
        let p = pair_from_silting(&alg, n).map_err(err)?;
        ensure(is_stt_pair(&alg, &p).map_err(err)?, "A3: pair fails the stt test")?;
        let back = silting_from_pair(&alg, &p).map_err(err)?;
        ensure(is_isomorphic(&alg, &back, n.complex()).map_err(err)?, "A3: round trip changed an object")?;
    }
    Ok("A2: 6 pairs, bijection verified; A3: 24 pairs, round trip on all 24".into())
}

fn c4() -> Check {
    let (s, code) = siltkit(&["silt2", &algebra("dual_numbers")])?;
    ensure(code == 0 && s["count"] == 2 && s["complete"] == true, format!("silt2: {} objects", s["count"]))?;
    let (p, code) = siltkit(&["probe", "--depth", "3", &algebra("dual_numbers")])?;
    ensure(code == 0 && p["verdict"] == "evidence", format!("probe: {}", p["verdict"]))?;
    Ok("2 objects, probe depth 3 gives evidence".into())
}

fn c5() -> Check {
    let (s, code) = silt2("kronecker", 50)?;
    ensure(code == 2 && s["complete"] == false && s["count"] == 50, format!("silt2: {} objects, complete {}", s["count"], s["complete"]))?;
    let (p, code) = siltkit(&["probe", "--depth", "1", "--cap", "20", &algebra("kronecker")])?;
    ensure(code == 2 && p["verdict"] == "inconclusive", format!("probe: {}", p["verdict"]))?;
    Ok("BFS stops at cap 50 incomplete; probe inconclusive".into())
}

fn c6() -> Check {
    let (a, _) = siltkit(&["algebra-check", &algebra("jacobian_3cycle")])?;
    ensure(a["dimension"] == 6, format!("dimension {}", a["dimension"]))?;
    let alg = load("jacobian_3cycle");
    let fin = tau_tilting_finite(&alg, 100).map_err(err)?;
    ensure(fin == TauFiniteness::Finite(14), format!("{fin:?}"))?;
    let b = ExchangeMatrix::from_quiver(alg.quiver());
    let r = is_mutation_dynkin(&b, 10_000).map_err(err)?;
    ensure(r.verdict == DynkinVerdict::Dynkin(vec![DynkinType::A(3)]), format!("{:?}", r.verdict))?;
    let (m, _) = siltkit(&["mutation-dynkin", &matrix("cycle3")])?;
    ensure(m["verdict"] == "Dynkin" && m["type"] == "A3", format!("cli: {} {}", m["verdict"], m["type"]))?;
    Ok("dimension 6, 14 pairs, mutation class A3".into())
}

fn subsets(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    out.extend((0..n).flat_map(|i| (i + 1..n).map(move |j| vec![i, j])));
    out
}

fn c7() -> Check {
    let mut total = 0;
    for name in ["a2", "a3", "preproj_a2"] {
        let s = setup(name);
        for sub in subsets(s.alg.num_vertices()) {
            let r = verify_simple_tilt(&s.alg, &sub, &s.indecs, &s.closures).map_err(err)?;
            ensure(r.equal, format!("{name}: subset {sub:?} differs"))?;
            total += 1;
        }
    }
    Ok(format!("{total} vertex subsets agree"))
}

const CASES: u32 = 200;

/// Runs `CASES` generated inputs through `f` with a fresh runner and returns
/// the number of inputs checked.
fn run_cases<S: Strategy>(strategy: S, f: impl Fn(S::Value) -> Result<(), String>) -> Result<usize, String> {
    let mut runner = TestRunner::new(Config { cases: CASES, failure_persistence: None, ..Config::default() });
    let count = std::cell::Cell::new(0);
    runner
        .run(&strategy, |v| {
            count.set(count.get() + 1);
            f(v).map_err(TestCaseError::fail)
        })
        .map_err(|e| e.to_string())?;
    Ok(count.get())
}

fn steps() -> impl Strategy<Value = Vec<(usize, bool)>> {
    prop::collection::vec((0usize..6, any::<bool>()), 0..5)
}

fn object_properties(name: &str) -> Result<usize, String> {
    let alg: AlgebraTable = load(name);
    let alg = &alg;
    let a = run_cases((steps(), steps(), 0usize..6), |(p, q, i)| {
        let m = walk(alg, &p);
        check_object(alg, &m, i)?;
        check_antisymmetry(alg, &m, &walk(alg, &q))?;
        check_cohomology(alg, m.complex())
    })
    .map_err(|e| format!("{name}: {e}"))?;
    let b = run_cases((steps(), 0usize..6, 0usize..6, prop::collection::vec(0u32..101, 0..8)), |(p, a, b, c)| {
        let m = walk(alg, &p);
        let s = m.summands();
        check_minimize(alg, &s[a % s.len()], &s[b % s.len()], &c)
    })
    .map_err(|e| format!("{name}: {e}"))?;
    Ok(a.min(b))
}

fn torsion_properties(name: &str) -> Result<usize, String> {
    let s = setup(name);
    let tors = torsion_classes_bruteforce(&s.closures).map_err(err)?;
    run_cases(prop::collection::vec((0usize..6, Just(true)), 0..6), |p| {
        check_torsion(&s, &walk(&s.alg, &p), &tors)
    })
    .map_err(|e| format!("{name}: {e}"))
}

fn c8() -> Check {
    let objects = ["a2", "a3", "dual_numbers", "preproj_a2", "jacobian_3cycle", "kronecker"];
    let torsion = ["a2", "a3", "preproj_a2", "jacobian_3cycle"];
    let mut fewest = usize::MAX;
    for name in objects {
        fewest = fewest.min(object_properties(name)?);
    }
    for name in torsion {
        fewest = fewest.min(torsion_properties(name)?);
    }
    ensure(fewest >= CASES as usize, format!("only {fewest} cases ran for some property"))?;
    Ok(format!(
        "at least {fewest} cases per property on {} algebras, torsion closure on {}",
        objects.len(),
        torsion.len()
    ))
}

fn orientations(n: usize) -> Vec<Quiver> {
    (0..1u32 << (n - 1))
        .map(|mask| {
            let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
            let arrows = (0..n - 1)
                .map(|i| {
                    let (s, t) = if mask >> i & 1 == 0 { (i, i + 1) } else { (i + 1, i) };
                    (format!("a{i}"), names[s].clone(), names[t].clone())
                })
                .collect();
            Quiver::from_named(names, arrows).unwrap()
        })
        .collect()
}

fn c9() -> Result<String, String> {
    let limit = Duration::from_secs(1);
    let timed = |file: &str| -> Result<(Value, Duration), String> {
        let t = Instant::now();
        let (v, code) = siltkit(&["mutation-dynkin", &matrix(file)])?;
        ensure(code == 0, format!("{file}: exit {code}"))?;
        Ok((v, t.elapsed()))
    };
    for (file, verdict, ty) in [
        ("cycle3", "Dynkin", Some("A3")),
        ("a4_linear", "Dynkin", Some("A4")),
        ("a4_alternating", "Dynkin", Some("A4")),
        ("markov", "NotDynkin", None),
        ("kronecker", "NotDynkin", None),
    ] {
        let (v, dt) = timed(file)?;
        ensure(v["verdict"] == verdict && v["type"].as_str() == ty, format!("{file}: {} {}", v["verdict"], v["type"]))?;
        ensure(dt < limit, format!("{file}: {dt:?}"))?;
    }
    for q in orientations(4) {
        let t = Instant::now();
        let r = is_mutation_dynkin(&ExchangeMatrix::from_quiver(&q), 10_000).map_err(err)?;
        ensure(r.verdict == DynkinVerdict::Dynkin(vec![DynkinType::A(4)]), format!("A4 orientation: {:?}", r.verdict))?;
        ensure(t.elapsed() < limit, format!("A4 orientation: {:?}", t.elapsed()))?;
    }
    Ok("3-cycle A3, all 8 orientations of A4, Markov and Kronecker not Dynkin".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("kA2 two-term silting, Hasse quiver, torsion classes", 1, c1),
        ("kA3 bijection with torsion classes", 5, c2),
        ("preprojective A2 and A3 support tau-tilting counts", 30, c3),
        ("dual numbers and discreteness evidence", 1, c4),
        ("Kronecker search stays inconclusive", 10, c5),
        ("Jacobian of the 3-cycle: tau-finite and mutation-Dynkin", 30, c6),
        ("simple tilts for singletons and pairs", 10, c7),
        ("randomized property suites", 60, c8),
        ("mutation-Dynkin decisions", 5, c9),
    ];
    let mut failed = 0;
    for (k, (title, secs, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = f();
        let dt = t.elapsed();
        let r = r.and_then(|msg| {
            if dt.as_secs_f64() < *secs as f64 {
                Ok(msg)
            } else {
                Err(format!("{msg}, but took longer than {secs} s"))
            }
        });
        match r {
            Ok(msg) => println!("PASS {}: {title}: {msg} [{:.2} s]", k + 1, dt.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("FAIL {}: {title}: {msg} [{:.2} s]", k + 1, dt.as_secs_f64());
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
