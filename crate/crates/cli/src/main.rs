//! `moy`: evaluate sl_N webs, list their colorings, and check the skein relations.

use std::io::{self, Read, Write};
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use moy_core::coloring::{coloring_degree, for_each_coloring, ColorSet, HalfInt};
use moy_core::eval::{evaluate_open_all, verify_relation, RelationReport};
use moy_core::reduction::verify_reduction;
use moy_core::web::{ladder, random_corpus, Params, Relation};
use moy_core::{evaluate_closed, evaluate_dp, Error, Evaluation, WebDiagram};
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(
    name = "moy",
    version,
    about = "Exact evaluation of sl_N webs and MOY graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a web: one polynomial if closed, one per boundary coloring if open.
    Eval {
        /// Path to a `.web` file, inline web text, or `-` for stdin.
        input: String,
        /// Override the rank N of the web.
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, value_enum, default_value_t = Engine::Naive)]
        engine: Engine,
        #[arg(long)]
        json: bool,
    },
    /// Stream every coloring as one JSON line.
    Colorings {
        input: String,
        #[arg(long)]
        n: Option<u32>,
    },
    /// Print the writhe of a web.
    Writhe {
        input: String,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Check relations over their parameter grids, or the rank reduction of a web.
    Verify {
        /// A web whose rank reduction is checked for every N up to `--max-N`.
        input: Option<String>,
        /// Relation `1..=7` or its name; all relations when omitted.
        #[arg(long)]
        relation: Option<Relation>,
        #[arg(long = "max-N", default_value_t = 4)]
        max_n: u32,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Print the expansion of a closed MOY web over cycle collections.
    Reduce {
        input: String,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Time both engines on ladders and on seeded random webs.
    Bench {
        /// Rank of the ladders.
        #[arg(long, default_value_t = 4)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Engine {
    Naive,
    Dp,
}

/// Failures carry the exit status: 1 for bad input, 2 for a failed verification.
enum Failure {
    Input(String),
    Verification(String),
    /// The reader of stdout went away; not an error.
    Closed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            Failure::Closed
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    // Usage errors exit 1 like any other bad input; 2 is reserved for failed checks.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let mut out = io::stdout().lock();
    let result = match cli.command {
        Command::Eval {
            input,
            n,
            engine,
            json,
        } => eval(&mut out, &input, n, engine, json),
        Command::Colorings { input, n } => colorings(&mut out, &input, n),
        Command::Writhe { input, n, json } => writhe(&mut out, &input, n, json),
        Command::Verify {
            input,
            relation,
            max_n,
            json,
            threads,
        } => verify(&mut out, input.as_deref(), relation, max_n, json, threads),
        Command::Reduce { input, n, json } => reduce(&mut out, &input, n, json),
        Command::Bench { n, seed, json } => bench(&mut out, n, seed, json),
    };
    match result {
        Ok(()) | Err(Failure::Closed) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Reads a web from a file, from stdin (`-`), or from the argument itself.
fn load(input: &str, n: Option<u32>) -> Result<WebDiagram, Failure> {
    let text = if input == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else if Path::new(input).exists() {
        std::fs::read_to_string(input)?
    } else if input.trim_start().starts_with("web") {
        input.to_string()
    } else {
        return Err(Failure::Input(format!("no such file: {input}")));
    };
    let w = moy_core::parse(&text)?;
    match n {
        Some(n) => {
            let w = w.with_rank(n);
            w.ensure_valid()?;
            Ok(w)
        }
        None => Ok(w),
    }
}

fn half_json(h: HalfInt) -> Value {
    match h.to_integer() {
        Some(k) => json!(k),
        None => json!(h.to_f64()),
    }
}

fn colors_json(s: ColorSet) -> Value {
    json!(s.colors().collect::<Vec<_>>())
}

fn word_json(word: &[ColorSet]) -> Value {
    Value::Array(word.iter().map(|&s| colors_json(s)).collect())
}

fn eval(out: &mut impl Write, input: &str, n: Option<u32>, engine: Engine, json: bool) -> Outcome {
    let w = load(input, n)?;
    if !w.is_closed() {
        if engine == Engine::Dp {
            return Err(Failure::Input(
                "the dp engine evaluates closed webs only".into(),
            ));
        }
        let values = evaluate_open_all(&w)?;
        if json {
            let rows: Vec<Value> = values
                .iter()
                .map(|(b, v)| json!({"bottom": word_json(&b.bottom), "top": word_json(&b.top), "value": v.to_string()}))
                .collect();
            writeln!(
                out,
                "{}",
                json!({"web": w.to_string(), "N": w.n(), "boundaries": rows})
            )?;
        } else {
            for (b, v) in &values {
                writeln!(out, "{} -> {}: {v}", set_list(&b.bottom), set_list(&b.top))?;
            }
        }
        return Ok(());
    }
    let Evaluation {
        value,
        coloring_count,
    } = match engine {
        Engine::Naive => evaluate_closed(&w)?,
        Engine::Dp => evaluate_dp(&w)?,
    };
    if json {
        let v = json!({"web": w.to_string(), "N": w.n(), "value": value.to_string(), "count": coloring_count});
        writeln!(out, "{v}")?;
    } else {
        writeln!(out, "value: {value}")?;
        writeln!(out, "count: {coloring_count}")?;
    }
    Ok(())
}

fn set_list(sets: &[ColorSet]) -> String {
    let parts: Vec<String> = sets.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(" "))
}

fn colorings(out: &mut impl Write, input: &str, n: Option<u32>) -> Outcome {
    let w = load(input, n)?;
    let topo = w.topology();
    let mut result = Ok(());
    for_each_coloring(&w, &topo, |c| {
        if result.is_err() {
            return;
        }
        let edges: Map<String, Value> = c
            .edges()
            .map(|(e, s)| (e.to_string(), colors_json(s)))
            .collect();
        let line = json!({"edges": edges, "degree": half_json(coloring_degree(&w, &topo, c))});
        result = writeln!(out, "{line}");
    });
    Ok(result?)
}

fn writhe(out: &mut impl Write, input: &str, n: Option<u32>, json: bool) -> Outcome {
    let w = load(input, n)?;
    let k = w.writhe()?;
    if json {
        writeln!(out, "{}", json!({"web": w.to_string(), "writhe": k}))?;
    } else {
        writeln!(out, "{k}")?;
    }
    Ok(())
}

fn params_json(p: &Params) -> Value {
    Value::Object(p.iter().map(|(k, v)| (k.clone(), json!(v))).collect())
}

fn report_json(r: &RelationReport) -> Value {
    let failures: Vec<Value> = r
        .failures
        .iter()
        .map(|m| {
            json!({
                "bottom": word_json(&m.boundary.bottom),
                "top": word_json(&m.boundary.top),
                "lhs": m.lhs.to_string(),
                "rhs": m.rhs.to_string(),
            })
        })
        .collect();
    json!({
        "relation": r.relation.number(),
        "params": params_json(&r.params),
        "N": r.n,
        "coefficients": r.coefficients.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "boundaries": r.boundaries_checked,
        "passed": r.passed(),
        "failures": failures,
    })
}

/// Runs `check` over `jobs` on up to `threads` threads, keeping the input order.
fn run_parallel<J: Sync, T: Send>(
    jobs: &[J],
    threads: usize,
    check: impl Fn(&J) -> T + Sync,
) -> Vec<T> {
    let threads = threads.clamp(1, jobs.len().max(1));
    if threads == 1 {
        return jobs.iter().map(check).collect();
    }
    let chunk = jobs.len().div_ceil(threads);
    std::thread::scope(|s| {
        let handles: Vec<_> = jobs
            .chunks(chunk)
            .map(|part| s.spawn(|| part.iter().map(&check).collect::<Vec<T>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("verification thread panicked"))
            .collect()
    })
}

fn verify(
    out: &mut impl Write,
    input: Option<&str>,
    relation: Option<Relation>,
    max_n: u32,
    json: bool,
    threads: usize,
) -> Outcome {
    if let Some(input) = input {
        return verify_web(out, &load(input, None)?, max_n, json);
    }
    let relations = relation.map_or_else(|| Relation::ALL.to_vec(), |r| vec![r]);
    let jobs: Vec<(Relation, Params, u32)> = relations
        .iter()
        .flat_map(|&rel| {
            (1..=max_n).flat_map(move |n| rel.grid(n).into_iter().map(move |p| (rel, p, n)))
        })
        .collect();
    let reports = run_parallel(&jobs, threads, |(rel, p, n)| verify_relation(*rel, p, *n));
    let mut failed = Vec::new();
    for r in reports {
        let r = r?;
        if json {
            writeln!(out, "{}", report_json(&r))?;
        }
        if !r.passed() {
            failed.push(format!("relation {} {:?} N={}", r.relation, r.params, r.n));
        }
    }
    if !json {
        let plural = if relations.len() == 1 { "" } else { "s" };
        writeln!(
            out,
            "{} tuple{} of {} relation{plural} checked up to N={max_n}: {} failed",
            jobs.len(),
            if jobs.len() == 1 { "" } else { "s" },
            relations.len(),
            failed.len()
        )?;
        for f in &failed {
            writeln!(out, "FAIL {f}")?;
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(failed.join("; ")))
    }
}

/// Checks the rank reduction of `w` at every rank from its largest label (at least 2) to `max_n`.
fn verify_web(out: &mut impl Write, w: &WebDiagram, max_n: u32, json: bool) -> Outcome {
    let top = w
        .topology()
        .edges
        .iter()
        .map(|e| e.label)
        .max()
        .unwrap_or(0)
        .max(2) as u32;
    let mut failed = Vec::new();
    for n in top..=max_n {
        let r = verify_reduction(w, n)?;
        if json {
            writeln!(
                out,
                "{}",
                json!({"N": n, "collections": r.terms.len(), "passed": r.passed()})
            )?;
        } else {
            let status = if r.passed() { "ok" } else { "FAIL" };
            writeln!(out, "N={n}: {} collections, {status}", r.terms.len())?;
        }
        if !r.passed() {
            failed.push(format!("reduction at N={n}"));
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(failed.join("; ")))
    }
}

fn reduce(out: &mut impl Write, input: &str, n: Option<u32>, json: bool) -> Outcome {
    let w = load(input, n)?;
    let r = verify_reduction(&w, w.n())?;
    if json {
        let terms: Vec<Value> = r
            .terms
            .iter()
            .map(|t| {
                json!({
                    "cycles": t.collection.edges.iter().collect::<Vec<_>>(),
                    "web": t.reduced.to_string(),
                    "writhe": t.writhe,
                    "value": t.value.to_string(),
                })
            })
            .collect();
        let v = json!({
            "web": w.to_string(),
            "N": r.n,
            "value": r.lhs.to_string(),
            "terms": terms,
            "minus_form": r.minus_form.to_string(),
            "plus_form": r.plus_form.to_string(),
            "passed": r.passed(),
        });
        writeln!(out, "{v}")?;
    } else {
        writeln!(out, "N={}: {}", r.n, r.lhs)?;
        for t in &r.terms {
            let edges: Vec<String> = t.collection.edges.iter().map(ToString::to_string).collect();
            writeln!(
                out,
                "\ncycles {{{}}}  writhe {}  value at N={}: {}",
                edges.join(","),
                t.writhe,
                r.n - 1,
                t.value
            )?;
            for line in t.reduced.to_string().lines() {
                writeln!(out, "  {line}")?;
            }
        }
        writeln!(out, "\nsum with q^-writhe: {}", r.minus_form)?;
        writeln!(out, "sum with q^+writhe: {}", r.plus_form)?;
    }
    if r.passed() {
        Ok(())
    } else {
        Err(Failure::Verification(
            "expansion differs from the value".into(),
        ))
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn bench(out: &mut impl Write, n: u32, seed: u64, json: bool) -> Outcome {
    if n < 2 {
        return Err(Failure::Input("bench needs --n >= 2".into()));
    }
    let mut rows: Vec<(String, WebDiagram)> = Vec::new();
    for width in 2..=n.min(3) as usize {
        for height in [2, 4, 6, 8, 10] {
            rows.push((
                format!("ladder w={width} h={height}"),
                ladder(n, width, height),
            ));
        }
    }
    for (i, w) in random_corpus(seed, 5).into_iter().enumerate() {
        rows.push((format!("random seed={seed} #{i}"), w));
    }
    if !json {
        writeln!(
            out,
            "{:<22} {:>4} {:>7} {:>10} {:>12} {:>12}",
            "web", "N", "slices", "colorings", "naive", "dp"
        )?;
    }
    for (name, w) in rows {
        let (naive, t_naive) = timed(|| evaluate_closed(&w));
        let (dp, t_dp) = timed(|| evaluate_dp(&w));
        let (naive, dp) = (naive?, dp?);
        if naive != dp {
            return Err(Failure::Verification(format!("{name}: engines disagree")));
        }
        if json {
            let v = json!({
                "web": name,
                "N": w.n(),
                "slices": w.slices().len(),
                "count": naive.coloring_count,
                "naive_ms": t_naive.as_secs_f64() * 1e3,
                "dp_ms": t_dp.as_secs_f64() * 1e3,
            });
            writeln!(out, "{v}")?;
        } else {
            writeln!(
                out,
                "{name:<22} {:>4} {:>7} {:>10} {:>12.2?} {:>12.2?}",
                w.n(),
                w.slices().len(),
                naive.coloring_count,
                t_naive,
                t_dp
            )?;
        }
    }
    Ok(())
}
