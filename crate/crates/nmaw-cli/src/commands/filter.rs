use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::Args;
use genomics_filter::{filter_batch, Verdict};
use workloads_io::{generate_pairs, parse_pairs, write_csv, EditProfile, Field, SequencePairBatch};

use crate::args::{parse_generate, resolve_seed};
use crate::error::CliError;

pub const DECISIONS_FILE: &str = "decisions.csv";
pub const STATS_FILE: &str = "filter_stats.csv";

#[derive(Args, Debug)]
pub struct FilterArgs {
    /// Pair file with one tab-separated reference and query per line.
    #[arg(long, value_name = "PATH", conflicts_with = "generate")]
    pairs: Option<PathBuf>,
    /// Generate a synthetic batch instead: pairs,length,edits[,seed].
    #[arg(long, value_name = "SPEC")]
    generate: Option<String>,
    /// Largest edit count the filter should still accept.
    #[arg(long, default_value_t = 5, value_name = "E")]
    edit_threshold: usize,
    /// Worker threads for the batch run.
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Directory the CSV outputs are written into.
    #[arg(long, default_value = "out", value_name = "DIR")]
    out: PathBuf,
}

pub struct FilterOutcome {
    pub pairs: usize,
    pub accepted: usize,
    pub rejected: usize,
    pub errors: usize,
    pub accept_rate: f64,
    pub wall_ms: f64,
    pub mseq_per_s: f64,
}

pub fn execute(args: &FilterArgs) -> Result<(), CliError> {
    let batch = load_batch(args)?;
    let outcome = run_filter(&batch, args.edit_threshold, args.workers, &args.out)?;
    println!(
        "filtered {} pairs at edit threshold {} with {} workers in {:.1} ms ({:.3} Mseq/s)",
        outcome.pairs, args.edit_threshold, args.workers, outcome.wall_ms, outcome.mseq_per_s
    );
    println!(
        "{} accepted ({:.1}%), {} rejected, {} errors; wrote {} and {}",
        outcome.accepted,
        outcome.accept_rate * 100.0,
        outcome.rejected,
        outcome.errors,
        args.out.join(DECISIONS_FILE).display(),
        args.out.join(STATS_FILE).display(),
    );
    Ok(())
}

fn load_batch(args: &FilterArgs) -> Result<SequencePairBatch, CliError> {
    match (&args.pairs, &args.generate) {
        (Some(path), None) => Ok(parse_pairs(path)?),
        (None, Some(spec)) => {
            let spec = parse_generate(spec)?;
            let seed = resolve_seed(spec.seed)?;
            let profile = EditProfile::mixed(spec.edits);
            Ok(generate_pairs(spec.pairs, spec.length, &profile, seed))
        }
        (None, None) => Err(CliError::Input(
            "no input: pass --pairs or --generate".into(),
        )),
        (Some(_), Some(_)) => unreachable!("conflicting flags are rejected at parse time"),
    }
}

/// Filters `batch` and writes the per-pair decisions and the stats summary
/// into `out`. Wall time and throughput stay out of the CSVs so reruns of
/// the same spec emit identical bytes.
pub fn run_filter(
    batch: &SequencePairBatch,
    edit_threshold: usize,
    workers: usize,
    out: &Path,
) -> Result<FilterOutcome, CliError> {
    if batch.is_empty() {
        return Err(CliError::Input("no pairs in the input batch".into()));
    }
    fs::create_dir_all(out)?;

    let started = Instant::now();
    let (decisions, stats) = filter_batch(batch, edit_threshold, workers);
    let wall_ms = started.elapsed().as_secs_f64() * 1e3;

    let rows: Vec<Vec<Field>> = decisions
        .iter()
        .enumerate()
        .map(|(index, decision)| match decision {
            Ok(d) => vec![
                Field::UInt(index as u64),
                Field::Str(
                    match d.verdict {
                        Verdict::Accept => "accept",
                        Verdict::Reject => "reject",
                    }
                    .into(),
                ),
                Field::UInt(d.obstacle_count as u64),
                Field::Str(d.early_exit.to_string()),
            ],
            Err(_) => vec![
                Field::UInt(index as u64),
                Field::Str("error".into()),
                Field::Empty,
                Field::Empty,
            ],
        })
        .collect();
    write_csv(
        &out.join(DECISIONS_FILE),
        &["pair", "verdict", "obstacle_count", "early_exit"],
        &rows,
    )?;

    for (index, decision) in decisions.iter().enumerate() {
        if let Err(err) = decision {
            eprintln!("pair {index}: {err}");
        }
    }

    write_csv(
        &out.join(STATS_FILE),
        &[
            "pairs",
            "accepted",
            "rejected",
            "errors",
            "accept_rate",
            "edit_threshold",
            "workers",
        ],
        &[vec![
            Field::UInt(stats.total as u64),
            Field::UInt(stats.accepted as u64),
            Field::UInt(stats.rejected as u64),
            Field::UInt(stats.errors as u64),
            Field::Float(stats.accept_rate()),
            Field::UInt(edit_threshold as u64),
            Field::UInt(workers as u64),
        ]],
    )?;

    Ok(FilterOutcome {
        pairs: stats.total,
        accepted: stats.accepted,
        rejected: stats.rejected,
        errors: stats.errors,
        accept_rate: stats.accept_rate(),
        wall_ms,
        mseq_per_s: stats.total as f64 * 1e3 / wall_ms / 1e6,
    })
}
