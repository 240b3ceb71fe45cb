use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use siltkit::algebra::{build_algebra, dynkin_quiver, preprojective_presentation, AlgebraPresentation, AlgebraTable};
use siltkit::fz::{is_mutation_dynkin, type_name, DynkinVerdict};
use siltkit::homotopy::ProjComplex;
use siltkit::io::{algebra_to_json, parse_algebra, parse_exchange_matrix};
use siltkit::rep::indecomposables;
use siltkit::silting::{
    discreteness_probe, g_matrix, hasse, hasse_dot, initial_silting, two_silt_interval, Direction, ProbeVerdict,
    SiltingObject,
};
use siltkit::tau_tilt::{verify_simple_tilt, verify_two_silt_bijection, Closures, Verification};

const EXIT_INCONCLUSIVE: u8 = 2;

#[derive(Parser)]
#[command(name = "siltkit", version, about = "Two-term silting, τ-tilting and quiver mutation at desk scale")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads (default: available parallelism)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Override the field characteristic of the input algebra
    #[arg(long = "char", global = true)]
    field_char: Option<u32>,
    /// Write DOT output to this file
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Build an algebra and print its dimension, basis and Cartan matrix
    AlgebraCheck { path: PathBuf },
    /// Enumerate the 2-term silting objects of the regular module
    Silt2 {
        path: PathBuf,
        #[arg(long, default_value_t = 50, value_parser = positive)]
        cap: usize,
    },
    /// Cross-check silting objects against torsion classes and simple tilts
    Verify {
        path: PathBuf,
        #[arg(long, default_value_t = 50, value_parser = positive)]
        cap: usize,
        #[arg(long = "dim-cap", default_value_t = 30, value_parser = positive)]
        dim_cap: usize,
    },
    /// Explore 2-term intervals around the regular module
    Probe {
        path: PathBuf,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, default_value_t = 50, value_parser = positive)]
        cap: usize,
    },
    /// Decide whether an exchange matrix is mutation equivalent to a Dynkin quiver
    MutationDynkin {
        path: PathBuf,
        #[arg(long, default_value_t = 10_000, value_parser = positive)]
        cap: usize,
    },
    /// Print the preprojective algebra of a Dynkin diagram, e.g. `A 3`
    Preprojective { family: char, n: usize },
}

fn positive(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

/// Report plus exit status.
struct Outcome {
    json: Value,
    text: String,
    dot: Option<String>,
    /// Preformatted JSON that keeps its field order.
    raw_json: Option<String>,
    inconclusive: bool,
    failed: bool,
}

impl Outcome {
    fn ok(json: Value, text: String) -> Self {
        Outcome { json, text, dot: None, raw_json: None, inconclusive: false, failed: false }
    }
}

fn main() -> ExitCode {
    // usage errors exit with 1: 2 is reserved for inconclusive results
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::FAILURE } else { ExitCode::SUCCESS };
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    }
    match run(&cli) {
        Ok(out) => match emit(&cli, &out) {
            Ok(()) if out.failed => ExitCode::FAILURE,
            Ok(()) if out.inconclusive => ExitCode::from(EXIT_INCONCLUSIVE),
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::FAILURE
            }
        },
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn emit(cli: &Cli, out: &Outcome) -> Result<()> {
    if let (Some(path), Some(dot)) = (&cli.out, &out.dot) {
        fs::write(path, dot).with_context(|| format!("writing {}", path.display()))?;
    }
    match cli.format {
        Format::Json => match &out.raw_json {
            Some(raw) => println!("{raw}"),
            None => println!("{}", serde_json::to_string_pretty(&out.json)?),
        },
        Format::Text => print!("{}", out.text),
        Format::Dot => match &out.dot {
            Some(d) if cli.out.is_none() => print!("{d}"),
            Some(_) => {}
            None => bail!("DOT output is only available for silt2 with a complete interval"),
        },
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::AlgebraCheck { path } => algebra_check(cli, path),
        Command::Silt2 { path, cap } => silt2(cli, path, *cap),
        Command::Verify { path, cap, dim_cap } => verify(cli, path, *cap, *dim_cap),
        Command::Probe { path, depth, cap } => probe(cli, path, *depth, *cap),
        Command::MutationDynkin { path, cap } => mutation_dynkin(path, *cap),
        Command::Preprojective { family, n } => {
            let p = preprojective_presentation(&dynkin_quiver(*family, *n)?)?;
            let text = algebra_to_json(&p);
            let mut out = Outcome::ok(serde_json::from_str(&text)?, format!("{text}\n"));
            out.raw_json = Some(text);
            Ok(out)
        }
    }
}

fn load(cli: &Cli, path: &Path) -> Result<(AlgebraPresentation, AlgebraTable)> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut p = parse_algebra(&text).with_context(|| format!("parsing {}", path.display()))?;
    if let Some(c) = cli.field_char {
        p.field_char = c;
    }
    let alg = build_algebra(&p).with_context(|| format!("building the algebra of {}", path.display()))?;
    Ok((p, alg))
}

fn algebra_name(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

fn meta(command: &str, path: &Path, p: Option<&AlgebraPresentation>, caps: Value) -> Value {
    json!({
        "tool": "siltkit",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "input": path.display().to_string(),
        "field_char": p.map(|p| p.field_char),
        "truncation": p.map(|p| p.truncation),
        "caps": caps,
    })
}

fn algebra_check(cli: &Cli, path: &Path) -> Result<Outcome> {
    let (p, alg) = load(cli, path)?;
    let basis: Vec<String> = (0..alg.dim()).map(|b| alg.basis_label(b)).collect();
    let cartan = alg.cartan();
    let json = json!({
        "meta": meta("algebra-check", path, Some(&p), json!({})),
        "algebra": algebra_name(path),
        "vertices": p.quiver.vertices,
        "dimension": alg.dim(),
        "loewy_length": alg.loewy_length(),
        "basis": basis,
        "cartan": cartan,
    });
    let mut text = format!("{}: dimension {}, Loewy length {}\n", algebra_name(path), alg.dim(), alg.loewy_length());
    text += &format!("basis: {}\n", basis.join(" "));
    for row in &cartan {
        text += &format!("{}\n", row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
    }
    Ok(Outcome::ok(json, text))
}

fn provenance_json(o: &SiltingObject) -> Value {
    Value::Array(
        o.provenance()
            .iter()
            .map(|(idx, dir)| {
                json!({"summands": idx, "direction": match dir { Direction::Left => "left", Direction::Right => "right" }})
            })
            .collect(),
    )
}

fn complex_json(alg: &AlgebraTable, x: &ProjComplex) -> Value {
    let names = &alg.quiver().vertices;
    let terms: Vec<Vec<&str>> = x.terms().iter().map(|t| t.iter().map(|&v| names[v].as_str()).collect()).collect();
    json!({"lo": x.lo(), "terms": terms})
}

fn object_json(alg: &AlgebraTable, o: &SiltingObject) -> Value {
    json!({
        "g_vectors": g_matrix(alg, o),
        "summands": o.summands().iter().map(|s| complex_json(alg, s)).collect::<Vec<_>>(),
        "provenance": provenance_json(o),
    })
}

fn silt2(cli: &Cli, path: &Path, cap: usize) -> Result<Outcome> {
    let (p, alg) = load(cli, path)?;
    let iv = two_silt_interval(&alg, &initial_silting(&alg), cap)?;
    let h = if iv.complete { Some(hasse(&alg, &iv.objects)?) } else { None };
    let json = json!({
        "meta": meta("silt2", path, Some(&p), json!({"cap": cap})),
        "algebra": algebra_name(path),
        "count": iv.objects.len(),
        "complete": iv.complete,
        "objects": iv.objects.iter().map(|o| object_json(&alg, o)).collect::<Vec<_>>(),
        "hasse": h.as_ref().map(|h| json!({"arrows": h.arrows, "matches_mutation": h.matches_mutation})),
    });
    let mut text = format!(
        "{}: {} two-term silting objects ({})\n",
        algebra_name(path),
        iv.objects.len(),
        if iv.complete { "complete".to_string() } else { format!("cap {cap} reached") }
    );
    for (i, o) in iv.objects.iter().enumerate() {
        text += &format!("  {i}: {:?}\n", g_matrix(&alg, o));
    }
    if let Some(h) = &h {
        text += &format!("Hasse arrows: {} (match mutation: {})\n", h.arrows.len(), h.matches_mutation);
    }
    Ok(Outcome {
        json,
        text,
        dot: h.as_ref().map(|h| hasse_dot(&alg, h)),
        raw_json: None,
        inconclusive: !iv.complete,
        failed: h.as_ref().is_some_and(|h| !h.matches_mutation),
    })
}

fn verify(cli: &Cli, path: &Path, cap: usize, dim_cap: usize) -> Result<Outcome> {
    let (p, alg) = load(cli, path)?;
    let r = verify_two_silt_bijection(&alg, cap, dim_cap)?;
    let mut tilts = Vec::new();
    if r.status == Verification::Verified {
        let indecs = indecomposables(&alg, dim_cap)?.modules;
        let closures = Closures::new(&alg, &indecs)?;
        for v in 0..alg.num_vertices() {
            tilts.push(verify_simple_tilt(&alg, &[v], &indecs, &closures)?);
        }
    }
    let tilts_ok = tilts.iter().all(|t| t.equal);
    let (status, reason) = match &r.status {
        Verification::Verified if tilts_ok => ("verified", String::new()),
        Verification::Verified => ("failed", "simple tilt mismatch".to_string()),
        Verification::Failed => ("failed", "bijection check failed".to_string()),
        Verification::Inconclusive(why) => ("inconclusive", why.clone()),
    };
    let names = &alg.quiver().vertices;
    let json = json!({
        "meta": meta("verify", path, Some(&p), json!({"cap": cap, "dim_cap": dim_cap})),
        "algebra": algebra_name(path),
        "silt2_count": r.silt2_count,
        "stt_count": r.stt_count,
        "tors_count": r.tors_count,
        "bijection_verified": r.status == Verification::Verified,
        "witnesses": r.witnesses,
        "simple_tilts": tilts.iter().map(|t| json!({
            "vertices": t.subset.iter().map(|&v| names[v].as_str()).collect::<Vec<_>>(),
            "equal": t.equal,
            "torsion_class": t.from_mutation.members,
        })).collect::<Vec<_>>(),
        "status": status,
        "reason": reason,
    });
    let show = |c: Option<usize>| c.map_or("?".to_string(), |c| c.to_string());
    let mut text = format!(
        "{}: silt2 {} / stt {} / tors {}: {status}{}\n",
        algebra_name(path),
        r.silt2_count,
        show(r.stt_count),
        show(r.tors_count),
        if reason.is_empty() { String::new() } else { format!(" ({reason})") }
    );
    for t in &tilts {
        text += &format!("  simple tilt at {}: {}\n", names[t.subset[0]], if t.equal { "equal" } else { "different" });
    }
    Ok(Outcome { json, text, dot: None, raw_json: None, inconclusive: status == "inconclusive", failed: status == "failed" })
}

fn probe(cli: &Cli, path: &Path, depth: usize, cap: usize) -> Result<Outcome> {
    let (p, alg) = load(cli, path)?;
    let r = discreteness_probe(&alg, depth, cap)?;
    let dir = |d: &Direction| match d {
        Direction::Left => "left",
        Direction::Right => "right",
    };
    let prov = |pv: &[(Vec<usize>, Direction)]| -> Value {
        pv.iter().map(|(i, d)| json!({"summands": i, "direction": dir(d)})).collect()
    };
    let evidence = r.verdict == ProbeVerdict::Evidence;
    let json = json!({
        "meta": meta("probe", path, Some(&p), json!({"cap": cap, "depth": depth})),
        "algebra": algebra_name(path),
        "verdict": if evidence { "evidence" } else { "inconclusive" },
        "objects": r.objects.iter().map(|(pv, size, complete)| json!({
            "provenance": prov(pv), "interval_size": size, "complete": complete,
        })).collect::<Vec<_>>(),
    });
    let text = format!(
        "{}: {} objects within {depth} mutations, {} with a complete interval: {}\n",
        algebra_name(path),
        r.objects.len(),
        r.objects.iter().filter(|o| o.2).count(),
        if evidence { "evidence of discreteness" } else { "inconclusive" }
    );
    Ok(Outcome { json, text, dot: None, raw_json: None, inconclusive: !evidence, failed: false })
}

fn mutation_dynkin(path: &Path, cap: usize) -> Result<Outcome> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let b = parse_exchange_matrix(&text).with_context(|| format!("parsing {}", path.display()))?;
    let r = is_mutation_dynkin(&b, cap)?;
    let (verdict, ty) = match &r.verdict {
        DynkinVerdict::Dynkin(t) => ("Dynkin", Some(type_name(t))),
        DynkinVerdict::NotDynkin => ("NotDynkin", None),
        DynkinVerdict::Inconclusive => ("Inconclusive", None),
    };
    let json = json!({
        "meta": meta("mutation-dynkin", path, None, json!({"cap": cap})),
        "verdict": verdict,
        "type": ty,
        "class_size": r.class_size,
        "witness_path": r.witness_path,
    });
    let text = format!(
        "{verdict}{} (class size {}, witness path {:?})\n",
        ty.as_ref().map(|t| format!(" {t}")).unwrap_or_default(),
        r.class_size,
        r.witness_path
    );
    let inconclusive = r.verdict == DynkinVerdict::Inconclusive;
    Ok(Outcome { json, text, dot: None, raw_json: None, inconclusive, failed: false })
}
