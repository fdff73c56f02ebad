use std::path::{Path, PathBuf};
use std::process::ExitCode;

use charvar_core::pipeline::{
    analyze, examples_table, verify_suite, AnalysisReport, AnalysisRequest, CheckSet, Dimensions, ExampleRow,
    Input, PipelineError, RepSource, VerifyLedger,
};
use charvar_core::presentation::PresentationDoc;
use charvar_core::reps::hyperbolic::DEFAULT_SEED;
use charvar_core::reps::{Embedding, RepresentationDoc};
use charvar_core::RankPolicy;
use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "charvar", version, about = "Local structure of SL(n+1) character varieties of 2-orbifold groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full analysis: dimensions, pairings, checks and the local model.
    Analyze(RunArgs),
    /// Only the dimensions p, d, b (and d_oe, d_tp, f, t when defined).
    Dims(RunArgs),
    /// Run every cross-check and print the pass/fail ledger.
    Verify(RunArgs),
    /// The four worked orbifold examples as one table.
    Examples(ExamplesArgs),
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Orbifold signature such as "S2(3,3,3,3)" or a JSON presentation file.
    input: String,
    /// auto, triangle, polygon, or a JSON representation file.
    #[arg(long, default_value = "auto")]
    rep: String,
    /// Degree of the base representation.
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// standard, orientable or type-preserving.
    #[arg(long)]
    embed: Option<Embedding>,
    /// Relative singular value cut-off for numerical ranks.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    json: bool,
    /// Optimizer seed; CHARVAR_SEED is used when absent.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Debug)]
struct ExamplesArgs {
    #[arg(long)]
    json: bool,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Pipeline(PipelineError),
}

impl From<PipelineError> for CliError {
    fn from(e: PipelineError) -> Self {
        CliError::Pipeline(e)
    }
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var("CHARVAR_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("CHARVAR_SEED must be an unsigned integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path, what: &str) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("reading {what} {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("parsing {what} {}: {e}", path.display())))
}

fn looks_like_file(s: &str) -> bool {
    s.ends_with(".json") || Path::new(s).is_file()
}

fn build_request(args: &RunArgs, checks: CheckSet) -> Result<AnalysisRequest, CliError> {
    if args.n < 2 {
        return Err(CliError::Usage(format!("--n must be at least 2, got {}", args.n)));
    }
    if let Some(t) = args.tol {
        if !(t > 0.0 && t < 1.0) {
            return Err(CliError::Usage(format!("--tol must lie in (0, 1), got {t}")));
        }
    }
    let seed = resolve_seed(args.seed)?;
    let input = if looks_like_file(&args.input) {
        let doc: PresentationDoc = read_json(&PathBuf::from(&args.input), "presentation")?;
        Input::Presentation(Box::new(doc))
    } else {
        Input::Signature(args.input.clone())
    };
    let rep = match args.rep.as_str() {
        "auto" => RepSource::Auto,
        "triangle" => RepSource::Triangle,
        "polygon" => RepSource::Polygon,
        other if looks_like_file(other) => {
            let doc: RepresentationDoc = read_json(&PathBuf::from(other), "representation")?;
            RepSource::File(Box::new(doc))
        }
        other => {
            return Err(CliError::Usage(format!(
                "--rep expects auto, triangle, polygon or a JSON file, got {other:?}"
            )))
        }
    };
    let mut req = AnalysisRequest::new(input).with_rep(rep).with_n(args.n);
    req.embedding = args.embed;
    req.seed = seed;
    req.checks = checks;
    if let Some(t) = args.tol {
        req.policy = RankPolicy::with_relative(t);
    }
    Ok(req)
}

fn opt(v: Option<usize>) -> String {
    v.map(|x| x.to_string()).unwrap_or_else(|| "-".into())
}

fn print_dims(d: &Dimensions) {
    println!("  p        {}", d.p);
    println!("  d        {}", d.d);
    println!("  b        {}", d.b);
    println!("  h1(m_r)  {}", d.h1_m_r);
    println!("  d_oe     {}", opt(d.d_oe));
    println!("  d_tp     {}", opt(d.d_tp));
    println!("  f        {}", opt(d.f));
    println!("  t        {}", opt(d.t));
}

fn print_ledger(entries: &[charvar_core::pipeline::LedgerEntry]) {
    let width = entries.iter().map(|e| e.name.len()).max().unwrap_or(0);
    for e in entries {
        let status = if e.passed { "pass" } else { "FAIL" };
        println!("  {status}  {:width$}  {}", e.name, e.detail);
    }
}

fn print_report(r: &AnalysisReport) {
    println!("input      {}", r.input.description);
    println!(
        "group      {} generators, {} relators, {}, {}",
        r.input.generators.len(),
        r.input.relator_count,
        if r.input.orientable { "orientable" } else { "non-orientable" },
        if r.input.closed { "closed" } else { "with boundary" }
    );
    println!(
        "rep        degree {} in {}, embedding {}, residual {:.2e}",
        r.representation.degree, r.representation.group, r.request.embedding, r.representation.relator_residual
    );
    println!("cohomology");
    println!("  {:8} {:>4} {:>4} {:>4} {:>4} {:>10}", "module", "dim", "h0", "h1", "h2", "min gap");
    for m in &r.cohomology.modules {
        println!(
            "  {:8} {:>4} {:>4} {:>4} {:>4} {:>10.2e}",
            m.module,
            m.dim,
            m.dims.h0,
            m.dims.h1,
            m.dims.h2,
            m.dims.min_gap()
        );
    }
    println!("dimensions");
    print_dims(&r.dims);
    if let Some(p) = &r.pairing {
        println!("pairing    rank {} singular values {:?}", p.rank, p.singular_values);
    }
    if let Some(o) = &r.obstruction {
        println!(
            "c_n        mean {} relative std {}",
            o.mean.map(|m| format!("{m:.6}")).unwrap_or_else(|| "-".into()),
            o.relative_std.map(|s| format!("{s:.2e}")).unwrap_or_else(|| "-".into())
        );
    }
    println!("model      {}", r.model.display);
    println!("verdict    {}", r.model.sentence);
    for f in &r.model.flags {
        println!("flag       {f}");
    }
    println!("checks");
    print_ledger(&r.ledger);
}

fn print_verify(v: &VerifyLedger) {
    print_ledger(&v.entries);
    if let Some(e) = &v.error {
        println!("error: {e}");
    }
    let passed = v.entries.iter().filter(|e| e.passed).count();
    println!("{passed}/{} checks passed", v.entries.len());
}

fn print_examples(rows: &[ExampleRow]) {
    println!(
        "{:5} {:16} {:16} {:>3} {:>3} {:>4} {:>4} {:>3} {:>3}  model",
        "", "input", "embedding", "p", "d", "d_oe", "d_tp", "f", "b"
    );
    for r in rows {
        println!(
            "{:5} {:16} {:16} {:>3} {:>3} {:>4} {:>4} {:>3} {:>3}  {}",
            r.label,
            r.input,
            r.embedding.to_string(),
            r.p,
            r.d,
            opt(r.d_oe),
            opt(r.d_tp),
            opt(r.f),
            r.b,
            r.model
        );
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Analyze(args) => {
            let req = build_request(&args, CheckSet::analyze())?;
            let report = analyze(&req)?;
            if args.json {
                println!("{}", report.to_json());
            } else {
                print_report(&report);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Dims(args) => {
            let checks = CheckSet {
                weil: false,
                cup_pairs: 0,
                obstruction_samples: 0,
                exact_agreement: false,
            };
            let req = build_request(&args, checks)?;
            let report = analyze(&req)?;
            if args.json {
                println!("{}", to_json(&report.dims));
            } else {
                println!("{}", report.input.description);
                print_dims(&report.dims);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(args) => {
            let req = build_request(&args, CheckSet::full())?;
            let ledger = verify_suite(&req);
            if args.json {
                println!("{}", to_json(&ledger));
            } else {
                print_verify(&ledger);
            }
            Ok(if ledger.all_passed { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Command::Examples(args) => {
            let rows = examples_table(resolve_seed(args.seed)?)?;
            if args.json {
                println!("{}", to_json(&rows));
            } else {
                print_examples(&rows);
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Pipeline(e)) => {
            eprintln!("error: {e}");
            if !e.ledger().is_empty() {
                eprintln!("checks before the failure:");
                for entry in e.ledger() {
                    let status = if entry.passed { "pass" } else { "FAIL" };
                    eprintln!("  {status}  {}  {}", entry.name, entry.detail);
                }
            }
            match e {
                PipelineError::Hypothesis { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
