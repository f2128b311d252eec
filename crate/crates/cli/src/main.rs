use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use bondcover::bench::{bench, load_corpus, write_csv, BenchOptions};
use bondcover::generate::{gadget_chain, gnp, planted, GenParams, Model};
use bondcover::io::{ExactNumber, SolveReport};
use bondcover::{
    exact_cover_with, find_theta_model, minimize_model, parse_instance, serialize_instance, solve,
    structure, verify_cover, ExactOptions, SolveConfig, StructureOutcome, StructureParams,
    ThetaModel, VertexId, VertexSet, WeightedMultigraph,
};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

/// Weighted c-bond cover: approximate and exact solvers.
#[derive(Parser)]
#[command(name = "bondc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Order {
    /// Bond order c: a cover must destroy every bond with at least c edges.
    #[arg(short = 'c', value_parser = clap::value_parser!(u32).range(1..))]
    c: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Run the approximation and print a JSON report.
    Solve {
        #[command(flatten)]
        order: Order,
        /// Target contracted minimum edge-degree (default 8c).
        #[arg(long)]
        t: Option<u64>,
        /// High-degree threshold (default t).
        #[arg(long)]
        k: Option<u64>,
        /// Vertices per packed path (default 4k).
        #[arg(long)]
        r: Option<usize>,
        /// Largest model the decomposition may report (default 16c).
        #[arg(long)]
        model_bound: Option<usize>,
        /// Prune the returned cover to an inclusion-minimal one.
        #[arg(long)]
        reverse_delete: bool,
        /// Also compute the optimum and the ratio.
        #[arg(long)]
        oracle: bool,
        /// Node budget for every exact subroutine.
        #[arg(long, default_value_t = ExactOptions::default().budget)]
        budget: u64,
        file: PathBuf,
    },
    /// Compute a minimum-weight cover by branch and bound.
    Exact {
        #[command(flatten)]
        order: Order,
        #[arg(long, default_value_t = ExactOptions::default().budget)]
        budget: u64,
        file: PathBuf,
    },
    /// Check that deleting the given vertices leaves no bond of order c.
    Verify {
        #[command(flatten)]
        order: Order,
        /// Comma-separated vertex ids; may be empty.
        #[arg(long, allow_hyphen_values = true)]
        solution: String,
        file: PathBuf,
    },
    /// Search for a θ_c-model.
    Detect {
        #[command(flatten)]
        order: Order,
        /// Shrink the model to an inclusion-minimal one.
        #[arg(long)]
        minimize: bool,
        file: PathBuf,
    },
    /// Classify the instance as the solver would in its first round.
    Structure {
        #[command(flatten)]
        order: Order,
        file: PathBuf,
    },
    /// Write a random instance.
    Gen {
        /// gnp, planted or gadget-chain.
        #[arg(long)]
        model: Model,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(short = 'c', default_value_t = 2)]
        c: u32,
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        #[arg(long, default_value_t = 2)]
        max_mult: u32,
        #[arg(long, default_value_t = 5)]
        max_weight: u32,
        /// Extra edges (planted) or pieces (gadget-chain).
        #[arg(long, default_value_t = 3)]
        extra: usize,
        /// Planted set size, or the largest piece of a gadget chain.
        #[arg(long, default_value_t = 3)]
        size: usize,
        /// Output file; stdout when absent.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Solve every `*.bond` file in a directory and write a CSV table.
    Bench {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        csv: PathBuf,
        #[arg(short = 'c', default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
        c: u32,
        /// Skip the exact oracle.
        #[arg(long)]
        no_oracle: bool,
        /// Fill the millis column. Output is then no longer reproducible.
        #[arg(long)]
        timing: bool,
    },
}

fn read_instance(path: &Path) -> Result<WeightedMultigraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_instance(&text).with_context(|| format!("parsing {}", path.display()))
}

fn parse_ids(list: &str) -> Result<VertexSet> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<u32>()
                .map(VertexId)
                .with_context(|| format!("bad vertex id {s:?}"))
        })
        .collect()
}

fn ids(set: &VertexSet) -> Vec<u32> {
    set.iter().map(|v| v.0).collect()
}

fn model_json(m: &ThetaModel) -> serde_json::Value {
    json!({ "x": ids(&m.x), "y": ids(&m.y), "order": m.order })
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("values serialize"));
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Solve { order, t, k, r, model_bound, reverse_delete, oracle, budget, file } => {
            let g = read_instance(&file)?;
            let defaults = StructureParams::for_order(order.c);
            let t = t.unwrap_or(defaults.t);
            let k = k.unwrap_or(t);
            let params = StructureParams {
                t,
                k,
                r: r.unwrap_or(4 * k as usize),
                model_bound: model_bound.unwrap_or(defaults.model_bound),
            };
            let cfg = SolveConfig {
                c: order.c,
                params,
                reverse_delete,
                exact: ExactOptions { budget },
            };
            let solution = solve(&g, &cfg)?;
            if !verify_cover(&g, order.c, &solution.cover)? {
                bail!("internal error: returned set is not a cover");
            }
            let opt = if oracle {
                Some(exact_cover_with(&g, order.c, cfg.exact).context("exact oracle")?.1)
            } else {
                None
            };
            println!("{}", SolveReport::new(&solution, opt.as_ref()).to_json());
        }
        Command::Exact { order, budget, file } => {
            let g = read_instance(&file)?;
            let (cover, weight) = exact_cover_with(&g, order.c, ExactOptions { budget })?;
            print_json(&json!({
                "solution": ids(&cover),
                "weight": ExactNumber::from(&weight),
            }));
        }
        Command::Verify { order, solution, file } => {
            let g = read_instance(&file)?;
            let cover = parse_ids(&solution)?;
            if !verify_cover(&g, order.c, &cover)? {
                bail!("not a cover: a bond of order {} survives", order.c);
            }
            println!("valid cover of weight {}", bondcover::io::format_weight(&g.weight_of(&cover)));
        }
        Command::Detect { order, minimize, file } => {
            let g = read_instance(&file)?;
            let value = match find_theta_model(&g, order.c)? {
                None => json!({ "theta_free": true }),
                Some(m) => {
                    let m = if minimize { minimize_model(&g, &m)? } else { m };
                    json!({ "theta_free": false, "model": model_json(&m) })
                }
            };
            print_json(&value);
        }
        Command::Structure { order, file } => {
            let g = read_instance(&file)?;
            let value = match structure(&g, order.c, &StructureParams::for_order(order.c))? {
                StructureOutcome::ThetaFree => json!({ "outcome": "theta_free" }),
                StructureOutcome::LargeOutgrowth(og) => json!({
                    "outcome": "large_outgrowth",
                    "component": ids(&og.component),
                    "anchors": [og.u.0, og.v.0],
                }),
                StructureOutcome::SmallModel(m) => json!({
                    "outcome": "small_model",
                    "model": model_json(&m),
                }),
                StructureOutcome::Clusters(cc) => json!({
                    "outcome": "clusters",
                    "capacity": cc.capacity(),
                    "clusters": cc.iter().map(ids).collect::<Vec<_>>(),
                }),
            };
            print_json(&value);
        }
        Command::Gen { model, seed, n, c, p, max_mult, max_weight, extra, size, out } => {
            let params = GenParams { n, c, p, max_mult, max_weight, extra, size };
            let g = match model {
                Model::Gnp => gnp(&params, seed)?,
                Model::Planted => planted(&params, seed)?.0,
                Model::GadgetChain => gadget_chain(&params, seed)?,
            };
            let (g, _) = bondcover::io::canonicalize(&g);
            let text = serialize_instance(&g)?;
            match out {
                Some(path) => fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
                None => std::io::stdout().write_all(text.as_bytes())?,
            }
        }
        Command::Bench { corpus, csv, c, no_oracle, timing } => {
            let instances = load_corpus(&corpus).with_context(|| format!("loading {}", corpus.display()))?;
            let rows = bench(&instances, &SolveConfig::new(c), BenchOptions { oracle: !no_oracle, timing })?;
            let file = fs::File::create(&csv).with_context(|| format!("creating {}", csv.display()))?;
            write_csv(&rows, file)?;
            let worst = rows.iter().filter(|r| r.ratio().is_some_and(|q| q > r.realized_alpha)).count();
            if worst > 0 {
                bail!("{worst} instances exceed their realized ratio bound");
            }
            eprintln!("{} instances written to {}", rows.len(), csv.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
