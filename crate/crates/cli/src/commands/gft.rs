use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use givens_core::{barabasi_albert, gft_experiment, Algorithm, Error, ExperimentRecord, Result};

use crate::io;

#[derive(Clone, Copy)]
pub struct BaSpec {
    n: usize,
    m: usize,
    seed: u64,
}

fn parse_ba(raw: &str) -> std::result::Result<BaSpec, String> {
    let parts: Vec<&str> = raw.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected n,m,seed, got '{raw}'"));
    }
    let parse = |s: &str, what: &str| {
        s.trim()
            .parse::<u64>()
            .map_err(|_| format!("bad {what} '{s}'"))
    };
    Ok(BaSpec {
        n: parse(parts[0], "vertex count")? as usize,
        m: parse(parts[1], "attachment count")? as usize,
        seed: parse(parts[2], "seed")?,
    })
}

#[derive(Args)]
pub struct GftArgs {
    /// Preferential-attachment graph as n,m,seed (n0 = m initial vertices).
    #[arg(long, value_parser = parse_ba, conflicts_with = "edge_list", required_unless_present = "edge_list")]
    ba: Option<BaSpec>,

    /// Edge-list file describing the graph.
    #[arg(long)]
    edge_list: Option<PathBuf>,

    /// Factor budget; defaults to n*log2(n) rounded.
    #[arg(long)]
    budget: Option<usize>,

    #[arg(long, value_delimiter = ',', value_parser = Algorithm::parse, default_value = "l1,greedy,jacobi")]
    algorithms: Vec<Algorithm>,

    /// Repeat with consecutive graph seeds (preferential-attachment only).
    #[arg(long, default_value_t = 1)]
    repeats: usize,

    /// Output CSV.
    #[arg(long)]
    out: PathBuf,

    /// Record wall-clock times (makes outputs non-reproducible).
    #[arg(long)]
    timings: bool,
}

pub fn run(args: GftArgs) -> Result<()> {
    let mut records: Vec<ExperimentRecord> = Vec::new();

    let graphs: Vec<(givens_core::Graph, String, u64)> = match (&args.ba, &args.edge_list) {
        (Some(spec), None) => {
            let mut out = Vec::with_capacity(args.repeats);
            for r in 0..args.repeats.max(1) as u64 {
                let seed = spec.seed + r;
                let g = barabasi_albert(spec.n, spec.m, spec.m, seed)?;
                out.push((g, format!("ba_n{}_m{}", spec.n, spec.m), seed));
            }
            out
        }
        (None, Some(path)) => {
            if args.repeats > 1 {
                return Err(Error::invalid(
                    "--repeats only applies to --ba graphs; an edge list is fixed",
                ));
            }
            let (g, stats) = givens_core::load_edge_list(path)?;
            if stats.self_loops_skipped > 0 || stats.duplicates_skipped > 0 {
                eprintln!(
                    "warning: skipped {} self-loops and {} duplicate edges",
                    stats.self_loops_skipped, stats.duplicates_skipped
                );
            }
            let label = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "graph".to_string());
            vec![(g, label, 0)]
        }
        _ => return Err(Error::invalid("specify exactly one of --ba or --edge-list")),
    };

    for (graph, label, seed) in graphs {
        let n = graph.n();
        let budget = args
            .budget
            .unwrap_or(((n as f64) * (n as f64).log2()).round() as usize);
        let started = Instant::now();
        let mut rows = gft_experiment(&graph, budget, &args.algorithms, seed, &label)?;
        super::stamp_wall_time(&mut rows, started, args.timings);
        for row in &rows {
            println!(
                "gft graph={label} seed={seed} n={n} budget={budget} algorithm={} factors={} error={}",
                row.algorithm, row.n_factors, row.error
            );
        }
        records.extend(rows);
    }

    io::write_records_csv(&args.out, &records)?;
    println!("wrote {} rows to {}", records.len(), args.out.display());
    Ok(())
}
