mod oracle;
mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use synergy_core::approx::{self, DenseOracle, WorthOracle};
use synergy_core::axioms::{self, Axiom, GroupValueFn, Verdict};
use synergy_core::corpus::{self, GameFamily};
use synergy_core::gamefile::{self, Encoding, GameFile};
use synergy_core::group_values::{full_table, GroupValue};
use synergy_core::{coalition, Coalition, Execution, PlayerLabeling, SemivalueWeights};

use render::{exact_json, exact_text, Table};

/// `print!` that reports a closed stdout as an error instead of panicking.
macro_rules! out {
    ($($arg:tt)*) => {
        std::io::Write::write_fmt(&mut std::io::stdout(), format_args!($($arg)*))?
    };
}

macro_rules! outln {
    ($($arg:tt)*) => {{
        out!($($arg)*);
        out!("\n");
    }};
}

#[derive(Parser)]
#[command(name = "synergy", version, about = "Exact group values and axiom checks for coalitional games")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one value on one coalition.
    Compute(ComputeArgs),
    /// Tabulate values over every non-empty coalition.
    Table(TableArgs),
    /// Check axioms on a game file or a seeded corpus.
    Axioms(AxiomArgs),
    /// Print a seeded random game file.
    Gen(GenArgs),
    /// Monte Carlo estimate of a Shapley or Union Shapley value.
    Approx(ApproxArgs),
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

#[derive(Args)]
struct ComputeArgs {
    #[arg(long)]
    game: PathBuf,
    #[arg(long)]
    value: String,
    /// Comma-separated player labels, e.g. "A,C".
    #[arg(long)]
    coalition: String,
    /// Triangular p(q,t) weights for the custom values.
    #[arg(long)]
    weights: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    game: PathBuf,
    /// Comma-separated value names, in column order.
    #[arg(long)]
    value: String,
    #[arg(long)]
    weights: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
struct AxiomArgs {
    /// Game file to check; without it a seeded corpus is generated.
    #[arg(long)]
    game: Option<PathBuf>,
    /// Number of corpus games.
    #[arg(long, default_value_t = 50)]
    corpus: usize,
    /// Largest player count in the corpus.
    #[arg(long, default_value_t = 6)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated value names, or "all" for the eight dual-pair values.
    #[arg(long)]
    value: String,
    /// Comma-separated axiom names, or "all".
    #[arg(long, default_value = "all")]
    axioms: String,
    #[arg(long)]
    weights: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    /// positive, uniform or unanimity-mix
    #[arg(long)]
    family: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct ApproxArgs {
    #[arg(long, conflicts_with = "oracle", required_unless_present = "oracle")]
    game: Option<PathBuf>,
    /// Built-in oracle: majority:N:Q, unanimity-pairs:N or additive:N.
    #[arg(long)]
    oracle: Option<String>,
    /// shapley or union-shapley
    #[arg(long)]
    value: String,
    #[arg(long)]
    coalition: String,
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

/// Exit status when an axiom check fails.
const AXIOM_FAILURE: u8 = 2;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let outcome = match cli.command {
        Command::Compute(a) => compute(a),
        Command::Table(a) => table(a),
        Command::Axioms(a) => check_axioms(a),
        Command::Gen(a) => gen(a),
        Command::Approx(a) => estimate(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.downcast_ref::<std::io::Error>().is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
}

fn load_game(path: &Path) -> Result<GameFile> {
    Ok(gamefile::read_game_file(path)?)
}

fn load_weights(path: Option<&Path>) -> Result<Option<SemivalueWeights>> {
    path.map(|p| gamefile::read_weights(p).context("reading weights file")).transpose()
}

fn parse_values(list: &str, weights: Option<&SemivalueWeights>) -> Result<Vec<GroupValue>> {
    if list.trim() == "all" {
        return Ok(GroupValue::DUAL_PAIRS.into_iter().flat_map(|(a, b)| [a, b]).collect());
    }
    let names: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if names.is_empty() {
        bail!("no value names given");
    }
    names
        .into_iter()
        .map(|name| {
            if name.ends_with(":custom") && weights.is_none() {
                bail!("value {name} requires --weights");
            }
            Ok(GroupValue::parse(name, weights)?)
        })
        .collect()
}

fn parse_coalition(labels: &PlayerLabeling, text: &str) -> Result<Coalition> {
    let c = labels.parse_coalition(text)?;
    if c.is_empty() {
        bail!("coalition must name at least one player");
    }
    Ok(c)
}

fn compute(a: ComputeArgs) -> Result<u8> {
    let file = load_game(&a.game)?;
    let weights = load_weights(a.weights.as_deref())?;
    let mut values = parse_values(&a.value, weights.as_ref())?;
    if values.len() != 1 {
        bail!("compute takes exactly one value name");
    }
    let value = values.remove(0);
    let s = parse_coalition(&file.labels, &a.coalition)?;
    let x = value.evaluate(&file.game, s)?;
    let label = file.labels.format_coalition(s);
    match a.format {
        Format::Text => outln!("{}({{{label}}}) = {}", value.name(), exact_text(&x)),
        Format::Csv => {
            outln!("value,coalition,exact,decimal");
            let e = exact_json(&x);
            outln!("{},\"{label}\",{},{}", value.name(), e["exact"].as_str().unwrap(), e["decimal"].as_str().unwrap());
        }
        Format::Json => {
            outln!("{}", json!({"format": 1, "value": value.name(), "coalition": label, "result": exact_json(&x)}))
        }
    }
    Ok(0)
}

fn table(a: TableArgs) -> Result<u8> {
    let file = load_game(&a.game)?;
    let weights = load_weights(a.weights.as_deref())?;
    let values = parse_values(&a.value, weights.as_ref())?;
    let tables = values.iter().map(|v| full_table(&file.game, v)).collect::<Result<Vec<_>, _>>()?;
    let rows = coalition::by_size_then_players(file.game.n());
    match a.format {
        Format::Text => {
            let mut header = vec!["coalition".to_string()];
            header.extend(values.iter().map(|v| v.name().to_string()));
            let mut t = Table::new(header);
            for &c in &rows {
                let mut row = vec![format!("{{{}}}", file.labels.format_coalition(c))];
                row.extend(tables.iter().map(|tab| exact_text(tab.get(c))));
                t.push(row);
            }
            out!("{t}");
        }
        Format::Csv => {
            let mut header = vec!["coalition".to_string()];
            for v in &values {
                header.push(v.name().to_string());
                header.push(format!("{}_decimal", v.name()));
            }
            outln!("{}", header.join(","));
            for &c in &rows {
                let mut row = vec![format!("\"{}\"", file.labels.format_coalition(c))];
                for tab in &tables {
                    let e = exact_json(tab.get(c));
                    row.push(e["exact"].as_str().unwrap().to_string());
                    row.push(e["decimal"].as_str().unwrap().to_string());
                }
                outln!("{}", row.join(","));
            }
        }
        Format::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|&c| {
                    let cells: serde_json::Map<String, serde_json::Value> =
                        values.iter().zip(&tables).map(|(v, t)| (v.name().to_string(), exact_json(t.get(c)))).collect();
                    json!({"coalition": file.labels.format_coalition(c), "values": cells})
                })
                .collect();
            let names: Vec<&str> = values.iter().map(|v| v.name()).collect();
            outln!(
                "{}",
                serde_json::to_string_pretty(
                    &json!({"format": 1, "players": file.labels.labels(), "values": names, "rows": rows})
                )?
            );
        }
    }
    Ok(0)
}

fn check_axioms(a: AxiomArgs) -> Result<u8> {
    let weights = load_weights(a.weights.as_deref())?;
    let values = parse_values(&a.value, weights.as_ref())?;
    let axioms = Axiom::parse_list(&a.axioms)?;
    if axioms.is_empty() {
        bail!("no axiom names given");
    }
    let (games, labels) = match &a.game {
        Some(path) => {
            let file = load_game(path)?;
            (vec![file.game], Some(file.labels))
        }
        None => {
            if !(2..=10).contains(&a.n) {
                bail!("corpus player count must be between 2 and 10");
            }
            (corpus::axiom_corpus(a.corpus, a.n, a.seed)?, None)
        }
    };
    let fns: Vec<&dyn GroupValueFn> = values.iter().map(|v| v as &dyn GroupValueFn).collect();
    let matrix = axioms::axiom_matrix(&fns, &axioms, &games, Execution::default())?;
    let any_fail = matrix.cells.iter().flatten().any(|r| r.verdict == Verdict::Fail);
    match a.format {
        Format::Text => out!("{}", render::matrix_text(&matrix, labels.as_ref())),
        Format::Csv => out!("{}", render::matrix_csv(&matrix, labels.as_ref())),
        Format::Json => {
            let mut doc = serde_json::to_value(&matrix)?;
            doc["format"] = json!(1);
            outln!("{}", serde_json::to_string_pretty(&doc)?);
        }
    }
    Ok(if any_fail { AXIOM_FAILURE } else { 0 })
}

fn gen(a: GenArgs) -> Result<u8> {
    let family: GameFamily = a.family.parse()?;
    let game = corpus::generate(a.n, family, a.seed)?;
    let encoding = match family {
        GameFamily::Uniform => Encoding::Worths,
        GameFamily::Positive => Encoding::Dividends,
        GameFamily::UnanimityMix => Encoding::Unanimity,
    };
    let doc = gamefile::game_file_json(&game, &PlayerLabeling::default_for(a.n), encoding);
    outln!("{}", serde_json::to_string_pretty(&doc)?);
    Ok(0)
}

fn estimate(a: ApproxArgs) -> Result<u8> {
    let (oracle, labels): (Box<dyn WorthOracle>, PlayerLabeling) = match (&a.game, &a.oracle) {
        (Some(path), _) => {
            let file = load_game(path)?;
            (Box::new(DenseOracle::new(&file.game)), file.labels)
        }
        (None, Some(desc)) => oracle::parse(desc)?,
        (None, None) => bail!("either --game or --oracle is required"),
    };
    let s = parse_coalition(&labels, &a.coalition)?;
    let est = match a.value.as_str() {
        "shapley" => {
            if s.len() != 1 {
                bail!("shapley takes a single player");
            }
            approx::approx_shapley(oracle.as_ref(), s.lowest().unwrap(), a.samples, a.seed)?
        }
        "union-shapley" => approx::approx_union_shapley(oracle.as_ref(), s, a.samples, a.seed)?,
        other => bail!("approx supports shapley and union-shapley, not {other:?}"),
    };
    let label = labels.format_coalition(s);
    match a.format {
        Format::Text => outln!(
            "{}({{{label}}}) ~ {} +/- {} (standard error, {} samples, seed {})",
            a.value,
            est.mean,
            est.std_error,
            est.samples,
            a.seed
        ),
        Format::Csv => {
            outln!("value,coalition,estimate,std_error,samples,seed");
            outln!("{},\"{label}\",{},{},{},{}", a.value, est.mean, est.std_error, est.samples, a.seed);
        }
        Format::Json => outln!(
            "{}",
            json!({
                "format": 1,
                "value": a.value,
                "coalition": label,
                "estimate": est.mean,
                "std_error": est.std_error,
                "samples": est.samples,
                "seed": a.seed,
                "generator": est.generator,
            })
        ),
    }
    Ok(0)
}
