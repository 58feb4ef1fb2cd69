use std::io::{self, BufWriter, Read, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sicgraph::census::{emit_survivors, reports_to_json, reports_to_table, run_census, CensusConfig, DEFAULT_SHARDS};
use sicgraph::io::{parse_adjacency_text, to_adjacency_text, Graph6Reader};
use sicgraph::search::parallel_search_for;
use sicgraph::Error;
use sicgraph_core::cascade::{Classifier, FilterId};
use sicgraph_core::fracchrom::{format_ratio, frac_chromatic, CertificateLine};
use sicgraph_core::graph6;
use sicgraph_core::orthrep::{Field, SearchBudget};

#[derive(Parser)]
#[command(name = "sicgraph", version, about = "Graph census for state-independent contextuality")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate and classify all graphs of the given orders. Exits 0 iff nothing survives.
    Census {
        /// Orders as `A..B` (inclusive) or a single order.
        #[arg(long, value_parser = parse_orders)]
        orders: RangeInclusive<usize>,
        #[arg(long, default_value_t = DEFAULT_SHARDS)]
        shards: usize,
        /// Run only this shard (repeatable).
        #[arg(long)]
        shard_index: Vec<usize>,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Write the graphs remaining after this stage (`1`, `2.1`, ..., `3.7`).
        #[arg(long, value_parser = parse_stage)]
        emit_survivors: Option<FilterId>,
        /// Survivor file; defaults to `survivors-<stage>.g6`.
        #[arg(long)]
        survivors_out: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Table)]
        report: ReportFormat,
    },
    /// Read graph6 from stdin and print the fractional chromatic number of each graph as `p/q`.
    Chif {
        /// Print `graph6 p/q primal=... dual=...` with the LP certificate instead.
        #[arg(long)]
        certificate: bool,
    },
    /// Read graph6 from stdin and print the cascade verdict and witness for each graph.
    Classify,
    /// Search for a faithful orthogonal representation and print it as text.
    Forsearch {
        #[arg(long)]
        g6: String,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Total gradient iterations over all restarts.
        #[arg(long, default_value_t = SearchBudget::default().total_iterations)]
        budget: u64,
        #[arg(long)]
        real_only: bool,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// graph6 on stdin to adjacency-list text.
    Decode,
    /// Adjacency-list text on stdin to graph6.
    Encode,
}

fn parse_orders(s: &str) -> Result<RangeInclusive<usize>, String> {
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    match s.split_once("..") {
        Some((a, b)) => Ok(parse(a)?..=parse(b.trim_start_matches('='))?),
        None => {
            let n = parse(s)?;
            Ok(n..=n)
        }
    }
}

fn parse_stage(s: &str) -> Result<FilterId, String> {
    FilterId::parse(s).filter(|f| *f != FilterId::Survived).ok_or_else(|| Error::UnknownStage(s.to_string()).to_string())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let stdin = io::stdin();
    let mut out = BufWriter::new(io::stdout().lock());
    match cli.command {
        Command::Census {
            orders,
            shards,
            shard_index,
            checkpoint,
            emit_survivors: stage,
            survivors_out,
            threads,
            report,
        } => {
            let config = CensusConfig {
                orders,
                shards,
                shard_indices: (!shard_index.is_empty()).then_some(shard_index),
                threads,
                checkpoint,
                record_stage: stage,
            };
            let reports = run_census(&config)?;
            match report {
                ReportFormat::Json => writeln!(out, "{}", reports_to_json(&reports))?,
                ReportFormat::Table => write!(out, "{}", reports_to_table(&reports))?,
            }
            if let Some(stage) = stage {
                let path = survivors_out.unwrap_or_else(|| PathBuf::from(format!("survivors-{}.g6", stage.label())));
                let n = emit_survivors(&reports, stage, &path)?;
                eprintln!("wrote {n} graphs remaining after {stage} to {}", path.display());
            }
            out.flush()?;
            let left: u64 = reports.iter().map(|r| r.survivors_of_cascade()).sum();
            Ok(if left == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Chif { certificate } => {
            for g in Graph6Reader::new(stdin.lock()) {
                let g = g?;
                let (x, cert) = frac_chromatic(&g);
                if certificate {
                    writeln!(out, "{}", CertificateLine { graph: &g, cert: &cert })?;
                } else {
                    writeln!(out, "{}", format_ratio(&x))?;
                }
            }
            out.flush()?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify => {
            let c = Classifier::new();
            for g in Graph6Reader::new(stdin.lock()) {
                let g = g?;
                let v = c.classify(&g);
                let chi = v.chi_f.as_ref().map_or("-".to_string(), format_ratio);
                write!(out, "{} {} chi_f={}", graph6::encode(&g), v.filter, chi)?;
                if let Some(w) = &v.witness {
                    write!(out, " {w}")?;
                }
                writeln!(out)?;
            }
            out.flush()?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Forsearch {
            g6,
            dim,
            seed,
            budget,
            real_only,
            threads,
        } => {
            let g = graph6::decode_str(g6.trim()).map_err(|source| Error::Graph6 { line: 1, source })?;
            let budget = SearchBudget {
                total_iterations: budget,
                ..SearchBudget::default()
            };
            let field = if real_only { Field::Real } else { Field::Complex };
            match parallel_search_for(&g, dim, budget, seed, field, threads) {
                Some(found) => {
                    write!(out, "{}", found.rep.to_text(&g))?;
                    out.flush()?;
                    let r = found.report;
                    eprintln!(
                        "faithful: restart {} iterations {} max_edge_violation {:.3e} min_nonedge_overlap {:.3e} field {}",
                        found.restart,
                        found.iterations,
                        r.max_edge_violation,
                        r.min_nonedge_overlap,
                        if found.rep.is_real() { "real" } else { "complex" }
                    );
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    eprintln!("no faithful representation found in dimension {dim} (not a proof of nonexistence)");
                    Ok(ExitCode::FAILURE)
                }
            }
        }
        Command::Decode => {
            let mut first = true;
            for g in Graph6Reader::new(stdin.lock()) {
                if !first {
                    writeln!(out)?;
                }
                first = false;
                write!(out, "{}", to_adjacency_text(&g?))?;
            }
            out.flush()?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Encode => {
            let mut text = String::new();
            stdin.lock().read_to_string(&mut text)?;
            for g in parse_adjacency_text(&text)? {
                writeln!(out, "{}", graph6::encode(&g))?;
            }
            out.flush()?;
            Ok(ExitCode::SUCCESS)
        }
    }
}
