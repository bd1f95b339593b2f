//! Command-line front end: decide instances, run the brute-force oracles,
//! verify the minimal-pattern catalog, enumerate canonical orderings, and
//! benchmark the decider.
//!
//! Exit codes: 0 = sortable / success, 1 = not sortable / check failed,
//! 2 = usage, parse, or guard error.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use footsort::classifier::{
    enumerate_canonical, match_minimal_pattern, verify_classification_sharded, PatternMatch,
};
use footsort::gen::{adversarial_chain, random_two_bounded, seeded_rng};
use footsort::oracle::{oracle_by_orders, oracle_by_simulation};
use footsort::ordering::color_label;
use footsort::{decide_with_stats, SockOrdering, Verdict};

#[derive(Parser)]
#[command(
    name = "footsort",
    about = "Decide stack-sortability of sock orderings, with certificates and the catalog of minimal obstructions",
    long_about = None
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleMode {
    Orders,
    Simulate,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Decide foot-sortability; prints a certificate or, for 2-bounded
    /// inputs, a minimal obstruction witness
    Decide {
        /// The ordering: letters (abcab) or whitespace-separated ids
        input: Option<String>,
        /// Read the ordering from a file instead
        #[arg(long, conflicts_with = "input")]
        file: Option<PathBuf>,
        /// Skip the witness search above this input length
        #[arg(long, default_value_t = 512)]
        witness_limit: usize,
    },
    /// Run the brute-force oracles (small instances only)
    Oracle {
        #[arg(long, value_enum, default_value_t = OracleMode::Both)]
        mode: OracleMode,
        input: Option<String>,
        #[arg(long, conflicts_with = "input")]
        file: Option<PathBuf>,
    },
    /// Re-derive the catalog of minimal non-sortable 2-bounded orderings by
    /// exhaustive enumeration and diff it against the built-in table
    Verify {
        #[arg(default_value_t = 11, value_name = "MAX_LENGTH")]
        max_length: usize,
        /// Flag form of the length bound; overrides the positional
        #[arg(long = "max-length", value_name = "MAX_LENGTH")]
        max_length_flag: Option<usize>,
        /// Worker threads for the enumeration
        #[arg(long, default_value_t = 1)]
        shards: usize,
    },
    /// List canonical reduced orderings of one length
    Enumerate {
        #[arg(long)]
        length: usize,
        /// Restrict to orderings where every color appears at most twice
        #[arg(long)]
        two_bounded: bool,
        /// Stop after this many orderings
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Time the decider and report operation counts against N log N
    Bench {
        /// Instance sizes
        #[arg(long, value_delimiter = ',', default_values_t = vec![1_000usize, 10_000, 100_000, 1_000_000])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn read_input(input: Option<String>, file: Option<PathBuf>) -> Result<String, String> {
    match (input, file) {
        (Some(text), None) => Ok(text),
        (None, Some(path)) => {
            std::fs::read_to_string(&path).map_err(|e| format!("cannot read {}: {e}", path.display()))
        }
        (None, None) => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| format!("cannot read stdin: {e}"))?;
            Ok(buf)
        }
        (Some(_), Some(_)) => unreachable!("clap rejects this"),
    }
}

fn parse_ordering(text: &str) -> Result<SockOrdering, String> {
    text.parse::<SockOrdering>().map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct WitnessJson {
    pattern_id: String,
    pattern: String,
    positions: Vec<usize>,
    color_map: Vec<(String, String)>,
}

#[derive(Serialize)]
struct DecideJson {
    input: String,
    length: usize,
    two_bounded: bool,
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness_note: Option<String>,
}

fn witness_json(m: &PatternMatch) -> WitnessJson {
    WitnessJson {
        pattern_id: m.id.to_string(),
        pattern: m.pattern.to_string(),
        positions: m.embedding.positions.clone(),
        color_map: m
            .embedding
            .color_map
            .iter()
            .map(|&(p, h)| (color_label(p), color_label(h)))
            .collect(),
    }
}

fn cmd_decide(
    input: Option<String>,
    file: Option<PathBuf>,
    witness_limit: usize,
    format: Format,
) -> Result<ExitCode, String> {
    let s = parse_ordering(&read_input(input, file)?)?;
    let outcome = decide_with_stats(&s);
    let sortable = outcome.verdict.is_sortable();

    let mut witness = None;
    let mut witness_note = None;
    if !sortable {
        if !s.is_two_bounded() {
            witness_note = Some("input is not 2-bounded; no witness catalog applies".to_string());
        } else if s.len() > witness_limit {
            witness_note = Some(format!(
                "witness search skipped (length {} > --witness-limit {witness_limit})",
                s.len()
            ));
        } else {
            witness = match_minimal_pattern(&s).map_err(|e| e.to_string())?;
            if witness.is_none() {
                return Err("non-sortable 2-bounded input without a catalog witness; this is a defect".into());
            }
        }
    }

    match format {
        Format::Json => {
            let payload = DecideJson {
                input: s.to_string(),
                length: s.len(),
                two_bounded: s.is_two_bounded(),
                verdict: if sortable { "SORTABLE" } else { "NOT-SORTABLE" },
                certificate: outcome.verdict.certificate().map(|c| {
                    c.ascending().iter().map(|&x| color_label(x)).collect()
                }),
                witness: witness.as_ref().map(witness_json),
                witness_note,
            };
            println!("{}", serde_json::to_string_pretty(&payload).unwrap());
        }
        Format::Text => {
            if let Some(cert) = outcome.verdict.certificate() {
                println!("SORTABLE");
                println!("certificate: {cert}");
            } else {
                println!("NOT-SORTABLE");
                if let Some(m) = &witness {
                    println!("witness: {} ({})", m.id, m.pattern);
                    println!("positions: {:?}", m.embedding.positions);
                    let map: Vec<String> = m
                        .embedding
                        .color_map
                        .iter()
                        .map(|&(p, h)| format!("{}->{}", color_label(p), color_label(h)))
                        .collect();
                    println!("colors: {}", map.join(" "));
                }
                if let Some(note) = &witness_note {
                    println!("note: {note}");
                }
            }
        }
    }
    Ok(if sortable {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

#[derive(Serialize)]
struct OracleJson {
    input: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    orders: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    orders_certificate: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    simulate: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    agreement: Option<bool>,
}

fn cmd_oracle(
    mode: OracleMode,
    input: Option<String>,
    file: Option<PathBuf>,
    format: Format,
) -> Result<ExitCode, String> {
    let s = parse_ordering(&read_input(input, file)?)?;
    let run_orders = matches!(mode, OracleMode::Orders | OracleMode::Both);
    let run_sim = matches!(mode, OracleMode::Simulate | OracleMode::Both);

    let orders = if run_orders {
        Some(oracle_by_orders(&s).map_err(|e| e.to_string())?)
    } else {
        None
    };
    let simulate = if run_sim {
        Some(oracle_by_simulation(&s).map_err(|e| e.to_string())?)
    } else {
        None
    };

    let verdict_name = |b: bool| if b { "SORTABLE" } else { "NOT-SORTABLE" };
    let agreement = match (&orders, &simulate) {
        (Some(o), Some(sim)) => Some(o.is_sortable() == *sim),
        _ => None,
    };

    match format {
        Format::Json => {
            let payload = OracleJson {
                input: s.to_string(),
                orders: orders.as_ref().map(|o| verdict_name(o.is_sortable())),
                orders_certificate: orders.as_ref().and_then(|o| {
                    o.certificate()
                        .map(|c| c.ascending().iter().map(|&x| color_label(x)).collect())
                }),
                simulate: simulate.map(verdict_name),
                agreement,
            };
            println!("{}", serde_json::to_string_pretty(&payload).unwrap());
        }
        Format::Text => {
            if let Some(o) = &orders {
                match o {
                    Verdict::Sortable(cert) => println!("orders: SORTABLE certificate: {cert}"),
                    Verdict::NotSortable => println!("orders: NOT-SORTABLE"),
                }
            }
            if let Some(sim) = simulate {
                println!("simulate: {}", verdict_name(sim));
            }
            if let Some(agree) = agreement {
                println!("agreement: {}", if agree { "OK" } else { "DISAGREE" });
            }
        }
    }

    if agreement == Some(false) {
        return Err("oracle disagreement; this is a defect".into());
    }
    let sortable = orders
        .map(|o| o.is_sortable())
        .or(simulate)
        .expect("at least one oracle ran");
    Ok(if sortable {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_verify(max_length: usize, shards: usize, format: Format) -> Result<ExitCode, String> {
    let report =
        verify_classification_sharded(max_length, shards.max(1)).map_err(|e| e.to_string())?;
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report).unwrap()),
        Format::Text => print!("{}", report.render_text()),
    }
    Ok(if report.matches {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_enumerate(
    length: usize,
    two_bounded: bool,
    limit: Option<u64>,
    format: Format,
) -> Result<ExitCode, String> {
    let iter = enumerate_canonical(length, two_bounded).map_err(|e| e.to_string())?;
    let cap = limit.unwrap_or(u64::MAX);
    match format {
        Format::Text => {
            for c in iter.take(cap.min(usize::MAX as u64) as usize) {
                println!("{c}");
            }
        }
        Format::Json => {
            let orderings: Vec<String> = iter.take(cap as usize).map(|c| c.to_string()).collect();
            let payload = serde_json::json!({
                "length": length,
                "two_bounded": two_bounded,
                "count": orderings.len(),
                "orderings": orderings,
            });
            println!("{}", serde_json::to_string_pretty(&payload).unwrap());
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct BenchRow {
    class: &'static str,
    size: usize,
    verdict: &'static str,
    ops_per_nlogn: f64,
    wall_ms: f64,
    /// Full decision instrumentation: op counter, reductions, branch counts.
    stats: footsort::DecideStats,
}

fn bench_instance(class: &'static str, s: &SockOrdering) -> BenchRow {
    let start = Instant::now();
    let outcome = decide_with_stats(s);
    let wall = start.elapsed();
    let n = s.len().max(1) as f64;
    let denom = n * (n + 2.0).log2();
    BenchRow {
        class,
        size: s.len(),
        verdict: if outcome.verdict.is_sortable() {
            "SORTABLE"
        } else {
            "NOT-SORTABLE"
        },
        ops_per_nlogn: outcome.stats.map_ops as f64 / denom,
        wall_ms: wall.as_secs_f64() * 1e3,
        stats: outcome.stats,
    }
}

fn cmd_bench(sizes: Vec<usize>, seed: u64, format: Format) -> Result<ExitCode, String> {
    let mut rng = seeded_rng(seed);
    let mut rows: Vec<BenchRow> = Vec::new();
    for &size in &sizes {
        rows.push(bench_instance("random-2b", &random_two_bounded(&mut rng, size)));
        rows.push(bench_instance("chain", &adversarial_chain(size)));
        if size >= 7 {
            let n = (size - 3) / 2;
            let family = footsort::classifier::Family::A
                .template(n)
                .expect("n >= 2");
            rows.push(bench_instance("family-a", &family));
        }
    }
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&rows).unwrap()),
        Format::Text => {
            println!(
                "{:<10} {:>9} {:>9} {:>13} {:>12} {:>12} {:>10}",
                "class", "size", "live", "verdict", "map_ops", "ops/NlogN", "wall_ms"
            );
            for r in rows {
                println!(
                    "{:<10} {:>9} {:>9} {:>13} {:>12} {:>12.3} {:>10.2}",
                    r.class,
                    r.size,
                    r.stats.reduced_len,
                    r.verdict,
                    r.stats.map_ops,
                    r.ops_per_nlogn,
                    r.wall_ms
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Decide {
            input,
            file,
            witness_limit,
        } => cmd_decide(input, file, witness_limit, cli.format),
        Command::Oracle { mode, input, file } => cmd_oracle(mode, input, file, cli.format),
        Command::Verify {
            max_length,
            max_length_flag,
            shards,
        } => cmd_verify(max_length_flag.unwrap_or(max_length), shards, cli.format),
        Command::Enumerate {
            length,
            two_bounded,
            limit,
        } => cmd_enumerate(length, two_bounded, limit, cli.format),
        Command::Bench { sizes, seed } => cmd_bench(sizes, seed, cli.format),
    };
    match result {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
