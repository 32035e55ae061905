//! `loopcalc`: loop space decompositions from the command line.

use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use loopcalc_core::verify::{self, Suite};
use loopcalc_core::{decompose, factor_series, json as js, loop_equivalent, normal_form, rational_ranks};
use loopcalc_core::{Error, ManifoldSpec, DEFAULT_CAP};

#[derive(Parser)]
#[command(name = "loopcalc", version, about = "Loop space decompositions of manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose the loop space of a manifold
    Decompose {
        /// Manifold spec as inline JSON or @file
        #[arg(short, long)]
        input: String,
        /// Truncation degree
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        /// Sections to print
        #[arg(long, value_enum, value_delimiter = ',', default_values = ["tree", "factors", "series", "ranks"])]
        emit: Vec<Section>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Decide whether two manifolds of the same class have equivalent loop spaces
    Equivalent {
        /// Two manifold specs (inline JSON or @file)
        #[arg(short, long, num_args = 1, required = true)]
        input: Vec<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run property suites against the independent oracles
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Section {
    Tree,
    Factors,
    Series,
    Ranks,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn read_spec(arg: &str) -> Result<ManifoldSpec, Error> {
    let text = match arg.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| Error::Usage(format!("cannot read {path}: {e}")))?,
        None => arg.to_string(),
    };
    let value: Value =
        serde_json::from_str(&text).map_err(|e| Error::Validation(format!("invalid JSON: {e}")))?;
    ManifoldSpec::from_json(&value)
}

fn cmd_decompose(input: &str, cap: usize, emit: &[Section], format: Format) -> Result<String, Error> {
    if cap < 2 {
        return Err(Error::Usage(format!("--cap must be at least 2, got {cap}")));
    }
    if emit.is_empty() {
        return Err(Error::Usage("--emit needs at least one section".into()));
    }
    let spec = read_spec(input)?;
    let tree = decompose(&spec)?;
    let needs_factors = emit.iter().any(|s| *s != Section::Tree);
    let factors = if needs_factors { Some(normal_form(&tree, cap)?) } else { None };

    let mut out = Map::new();
    let mut text = Vec::new();
    for section in emit {
        match section {
            Section::Tree => {
                out.insert("tree".into(), Value::String(tree.to_string()));
                text.push(format!("tree: {tree}"));
            }
            Section::Factors => {
                let f = factors.as_ref().expect("computed");
                out.insert("factors".into(), f.to_json());
                text.push(format!("factors: {f}"));
            }
            Section::Series => {
                let s = factor_series(factors.as_ref().expect("computed"))?;
                out.insert("series".into(), js::series(&s));
                text.push(format!("series: {s}"));
            }
            Section::Ranks => {
                let r = rational_ranks(factors.as_ref().expect("computed")).to_base();
                out.insert("ranks".into(), r.to_json());
                text.push(format!("ranks: {r}"));
            }
        }
    }
    Ok(match format {
        Format::Json => Value::Object(out).to_string(),
        Format::Text => text.join("\n"),
    })
}

fn cmd_equivalent(inputs: &[String], format: Format) -> Result<String, Error> {
    let [a, b] = inputs else {
        return Err(Error::Usage(format!("equivalent needs exactly two -i arguments, got {}", inputs.len())));
    };
    let eq = loop_equivalent(&read_spec(a)?, &read_spec(b)?)?;
    Ok(match format {
        Format::Json => json!({ "equivalent": eq }).to_string(),
        Format::Text => format!("equivalent: {eq}"),
    })
}

fn cmd_verify(suite: &str, seed: u64, format: Format) -> Result<(String, bool), Error> {
    let suite: Suite = suite.parse()?;
    let reports = verify::run(suite, seed);
    let ok = reports.iter().all(|r| r.passed());
    let failures: u64 = reports.iter().map(|r| r.failures).sum();
    let body = match format {
        Format::Json => json!({
            "seed": seed,
            "failures": failures,
            "checks": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
        })
        .to_string(),
        Format::Text => reports
            .iter()
            .map(|r| {
                let status = if r.passed() { "ok" } else { "FAIL" };
                let mut line = format!("{status:4} {} ({} instances, {} failures)", r.check, r.instances, r.failures);
                if let Some(c) = &r.first_counterexample {
                    line.push_str(&format!("\n     first counterexample: {c}"));
                }
                line
            })
            .collect::<Vec<_>>()
            .join("\n"),
    };
    Ok((body, ok))
}

fn fail(e: &Error) -> ExitCode {
    println!("{}", json!({"error": {"kind": e.kind(), "message": e.to_string()}}));
    ExitCode::from(1)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Decompose { input, cap, emit, format } => cmd_decompose(&input, cap, &emit, format).map(|s| (s, true)),
        Command::Equivalent { input, format } => cmd_equivalent(&input, format).map(|s| (s, true)),
        Command::Verify { suite, seed, format } => cmd_verify(&suite, seed, format),
    };
    match result {
        Ok((body, ok)) => {
            println!("{body}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => fail(&e),
    }
}
