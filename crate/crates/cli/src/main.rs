use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde_json::{json, Value};

use gbtk::bounds::{bound_report, BoundEntry};
use gbtk::codes::{CodeSpec, GbCode};
use gbtk::distance::{estimate_distance, exact_distance_with, DistanceResult, EstimatorConfig, ExactOptions};
use gbtk::field::Field;
use gbtk::maps::{build_qhp, embed_code, qhp_to_gb, rotated_from_gb};
use gbtk::poly::Poly;
use gbtk::search::{enumerate_canonical, run_search_with, verify_gv_existence, write_csv, SearchJob};
use gbtk::text::parse_terms;
use gbtk::Error;

#[derive(Parser)]
#[command(name = "gbtk", version, about = "Generalized bicycle quantum code toolkit")]
struct Cli {
    /// Worker threads (output does not depend on this).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct DistArgs {
    /// Exact enumeration (refused with exit code 3 when over budget).
    #[arg(long, conflicts_with = "trials")]
    exact: bool,
    /// Estimator trials.
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print [[n,k]], h and g of a code.
    Params {
        /// Code spec: a JSON file or an inline JSON object.
        code: String,
    },
    /// Exact or estimated minimum distance.
    Distance {
        code: String,
        #[command(flatten)]
        d: DistArgs,
    },
    /// Canonical exponent sets of weight WEIGHT in length ELL.
    Enumerate {
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        weight: usize,
    },
    /// Evaluate the distance bounds of a code.
    Bound {
        code: String,
        #[command(flatten)]
        d: DistArgs,
    },
    /// Hypergraph-product and rotated maps.
    Map(MapArgs),
    /// Locality embedding of a code.
    Embed {
        code: String,
        /// Apply x -> x^m first when l is prime.
        #[arg(long)]
        prime_reduce: bool,
        /// Write an SVG drawing of the union embedding.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Run a search job (JSON file) and write CSV.
    Search {
        job: String,
        /// Output CSV path; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Overrides the job's seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Search f with QC((1+x) f, 1+x) reaching min(d[g], d_GV).
    GvVerify {
        #[arg(long)]
        ell: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random samples when the f-space is too large to exhaust.
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
    },
}

#[derive(Args)]
#[command(group = ArgGroup::new("direction").required(true).args(["qhp_to_gb", "gb_to_rqhp"]))]
struct MapArgs {
    /// QHP code from (h1, n1, h2, n2) to its GB form.
    #[arg(long)]
    qhp_to_gb: bool,
    /// GB code (positional CODE) back to rotated-QHP polynomials.
    #[arg(long)]
    gb_to_rqhp: bool,
    #[arg(long, default_value_t = 2)]
    q: u32,
    #[arg(long, allow_hyphen_values = true)]
    h1: Option<String>,
    #[arg(long)]
    n1: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    h2: Option<String>,
    #[arg(long)]
    n2: Option<usize>,
    code: Option<String>,
}

struct Out {
    text: String,
    json: Value,
}

fn param<T>(msg: impl Into<String>) -> Result<T, Error> {
    Err(Error::Parameter(msg.into()))
}

fn read_input(arg: &str) -> Result<String, Error> {
    if arg.trim_start().starts_with('{') {
        Ok(arg.to_string())
    } else {
        std::fs::read_to_string(arg).map_err(|e| Error::Parameter(format!("{arg}: {e}")))
    }
}

fn load_code(arg: &str) -> Result<(CodeSpec, GbCode), Error> {
    let spec = CodeSpec::from_json(&read_input(arg)?)?;
    let code = spec.build()?;
    Ok((spec, code))
}

fn budget() -> Result<u128, Error> {
    match std::env::var("GBTK_BUDGET") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Parameter(format!("GBTK_BUDGET must be a positive integer, got {s:?}"))),
        Err(_) => Ok(gbtk::distance::DEFAULT_BUDGET),
    }
}

fn exact_opts() -> Result<ExactOptions, Error> {
    Ok(ExactOptions {
        budget: budget()?,
        stop_at: None,
    })
}

fn parse_poly(q: u32, s: &str) -> Result<Poly, Error> {
    Ok(Poly::from_terms(Field::new(q)?, &parse_terms(s)?))
}

fn dist_argv(d: &DistArgs) -> Vec<String> {
    if d.exact {
        vec!["--exact".into()]
    } else {
        let trials = d.trials.unwrap_or(EstimatorConfig::default().trials);
        vec!["--trials".into(), trials.to_string(), "--seed".into(), d.seed.to_string()]
    }
}

fn compute_distance(code: &GbCode, d: &DistArgs) -> Result<DistanceResult, Error> {
    if d.exact {
        exact_distance_with(code, &exact_opts()?)
    } else {
        let trials = d.trials.unwrap_or(EstimatorConfig::default().trials);
        estimate_distance(code, &EstimatorConfig::new(trials, d.seed)?)
    }
}

fn argv(parts: &[&str], rest: Vec<String>) -> Vec<String> {
    let mut v: Vec<String> = std::iter::once("gbtk").chain(parts.iter().copied()).map(String::from).collect();
    v.extend(rest);
    v.push("--json".into());
    v
}

fn entry_line(name: &str, e: &BoundEntry) -> String {
    let v = e.value.map_or("-".to_string(), |v| v.to_string());
    let status = serde_json::to_value(e.status).ok().and_then(|s| s.as_str().map(String::from)).unwrap_or_default();
    format!("{name:<16} {v:>6}  {status:<14} {}", e.note)
}

fn run(cli: &Cli) -> Result<Out, Error> {
    match &cli.cmd {
        Cmd::Params { code } => {
            let (spec, code) = load_code(code)?;
            let mut text = format!("[[{},{}]]", code.n(), code.k());
            if code.is_empty() {
                text.push_str(" (empty)");
            } else {
                text.push_str(&format!(" h=deg-{}\nh = {}\ng = {}", code.deg_h(), code.h(), code.g()));
            }
            let json = json!({
                "invocation": argv(&["params", &spec.to_json()], vec![]),
                "code": spec,
                "n": code.n(),
                "k": code.k(),
                "rank": code.rank(),
                "deg_h": code.deg_h(),
                "h": code.h().to_string(),
                "g": code.g().to_string(),
                "row_weight": code.row_weight(),
            });
            Ok(Out { text, json })
        }
        Cmd::Distance { code, d } => {
            let (spec, code) = load_code(code)?;
            let r = compute_distance(&code, d)?;
            let text = format!(
                "[[{},{},{}]] {}",
                code.n(),
                code.k(),
                r.d,
                if r.exact { "exact".to_string() } else { format!("upper bound, {} trials, seed {}", r.trials_used, r.seed) }
            );
            let mut json = serde_json::to_value(&r)?;
            json["invocation"] = json!(argv(&["distance", &spec.to_json()], dist_argv(d)));
            json["code"] = serde_json::to_value(&spec)?;
            Ok(Out { text, json })
        }
        Cmd::Enumerate { ell, weight } => {
            let sets: Vec<Vec<usize>> = enumerate_canonical(*ell, *weight)?.collect();
            let text = sets
                .iter()
                .map(|s| s.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" "))
                .collect::<Vec<_>>()
                .join("\n");
            let json = json!({
                "invocation": argv(&["enumerate"], vec!["--ell".into(), ell.to_string(), "--weight".into(), weight.to_string()]),
                "ell": ell,
                "weight": weight,
                "count": sets.len(),
                "exponents": sets,
            });
            Ok(Out { text, json })
        }
        Cmd::Bound { code, d } => {
            let (spec, code) = load_code(code)?;
            let opts = exact_opts()?;
            let r = if code.is_empty() { None } else { Some(compute_distance(&code, d)?) };
            let report = bound_report(&code, r.as_ref(), &opts);
            let d_str = report.d.map_or("-".to_string(), |x| x.to_string());
            let text = [
                format!("[[{},{},{}]]{}", report.n, report.k, d_str, if report.d_exact { "" } else { " (d is an upper bound)" }),
                entry_line("d_g", &report.d_g),
                entry_line("d_classical", &report.d_classical),
                entry_line("trivial_upper", &report.trivial_upper),
                entry_line("d_gv", &report.d_gv),
                entry_line("qc_special", &report.qc_special),
                entry_line("weight4_length", &report.weight4_length),
                entry_line("locality_D", &report.locality_dimension),
            ]
            .join("\n");
            let mut json = serde_json::to_value(&report)?;
            json["invocation"] = json!(argv(&["bound", &spec.to_json()], dist_argv(d)));
            Ok(Out { text, json })
        }
        Cmd::Map(m) => run_map(m),
        Cmd::Embed { code, prime_reduce, svg } => {
            let (spec, code) = load_code(code)?;
            let e = embed_code(&code, *prime_reduce)?;
            if let Some(path) = svg {
                std::fs::write(path, e.union.to_svg())?;
            }
            let text = format!(
                "a: dims {:?} D={} box_radius={}\nunion: dims {:?} D={} box_radius={}",
                e.a.dims, e.a.dimension, e.a.box_radius, e.union.dims, e.union.dimension, e.union.box_radius
            );
            let mut rest = Vec::new();
            if *prime_reduce {
                rest.push("--prime-reduce".to_string());
            }
            let mut json = serde_json::to_value(&e)?;
            json["invocation"] = json!(argv(&["embed", &spec.to_json()], rest));
            Ok(Out { text, json })
        }
        Cmd::Search { job, out, seed } => {
            let mut job = SearchJob::from_json(&read_input(job)?)?;
            if let Some(s) = seed {
                job.seed = *s;
            }
            let records = run_search_with(&job, |r| {
                eprintln!("l={} w={} d={} a={:?}", r.ell, r.w, r.d, r.a_exponents);
            })?;
            let mut buf = Vec::new();
            write_csv(&records, &mut buf)?;
            let csv = String::from_utf8(buf).expect("CSV is UTF-8");
            if let Some(path) = out {
                std::fs::write(path, &csv)?;
            }
            let text = if out.is_some() { format!("{} records", records.len()) } else { csv.trim_end().to_string() };
            let json = json!({
                "invocation": argv(&["search", &job.to_json()], vec![]),
                "records": records,
            });
            Ok(Out { text, json })
        }
        Cmd::GvVerify { ell, seed, samples } => {
            let w = verify_gv_existence(*ell, *seed, *samples)?;
            let text = match &w.f {
                Some(f) => format!(
                    "l={} target={} (d_GV={}, d[g]={}): f={} gives d={}",
                    w.ell,
                    w.target,
                    w.d_gv,
                    w.d_g,
                    Poly::from_exponents(Field::BINARY, f),
                    w.d.expect("witness has a distance")
                ),
                None => format!("l={} target={}: not found after {} candidates", w.ell, w.target, w.tried),
            };
            let mut json = serde_json::to_value(&w)?;
            json["invocation"] = json!(argv(
                &["gv-verify"],
                vec![
                    "--ell".into(),
                    ell.to_string(),
                    "--seed".into(),
                    seed.to_string(),
                    "--samples".into(),
                    samples.to_string()
                ]
            ));
            Ok(Out { text, json })
        }
    }
}

fn run_map(m: &MapArgs) -> Result<Out, Error> {
    if m.qhp_to_gb {
        let (Some(h1), Some(n1), Some(h2), Some(n2)) = (&m.h1, m.n1, &m.h2, m.n2) else {
            return param("--qhp-to-gb needs --h1, --n1, --h2 and --n2");
        };
        let p1 = parse_poly(m.q, h1)?;
        let p2 = parse_poly(m.q, h2)?;
        let qhp = build_qhp(m.q, &p1, n1, &p2, n2)?;
        let gb = qhp_to_gb(&qhp)?;
        let spec = gb.spec();
        let text = format!(
            "QHP [[{},{}]] -> GB l={} a={} b={}\n{}",
            qhp.n(),
            qhp.k(),
            gb.ell(),
            gb.a(),
            gb.b(),
            spec.to_json()
        );
        let json = json!({
            "invocation": argv(
                &["map", "--qhp-to-gb"],
                vec![
                    "--q".into(), m.q.to_string(),
                    "--h1".into(), p1.to_string(),
                    "--n1".into(), n1.to_string(),
                    "--h2".into(), p2.to_string(),
                    "--n2".into(), n2.to_string(),
                ]
            ),
            "qhp": {"n": qhp.n(), "k": qhp.k(), "predicted_d": qhp.predicted_d()},
            "gb": spec,
        });
        Ok(Out { text, json })
    } else {
        let (Some(code), Some(n1)) = (&m.code, m.n1) else {
            return param("--gb-to-rqhp needs a code spec and --n1");
        };
        let (spec, code) = load_code(code)?;
        let (h1, h2) = rotated_from_gb(&code, n1)?;
        let text = format!("h1 = {h1}\nh2 = {h2}");
        let json = json!({
            "invocation": argv(&["map", "--gb-to-rqhp", &spec.to_json()], vec!["--n1".into(), n1.to_string()]),
            "ell": code.ell(),
            "n1": n1,
            "h1": h1.to_string(),
            "h2": h2.to_string(),
        });
        Ok(Out { text, json })
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Budget { .. } => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            eprintln!("gbtk: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string(&out.json).expect("output serializes"));
            } else {
                println!("{}", out.text);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("gbtk: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
