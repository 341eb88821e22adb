use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use multiwalk::bounds::{exact_quantities, ExactOptions};
use multiwalk::chain::{distance_profile, transition_matrix, Laziness};
use multiwalk::graph::{build_family, FamilySpec};
use multiwalk::harness::{run_criterion, run_experiment, AcceptanceSettings, ExperimentConfig, ReportBundle, CRITERIA};
use multiwalk::sim::{estimate_cover_time, StartSpec, TrialPlan, DEFAULT_TRIALS};
use multiwalk::{Error, Result};

#[derive(Parser)]
#[command(
    name = "multiwalk",
    version,
    about = "Cover, mixing and hitting times of multiple random walks"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// JSON config (experiment config for `sweep`, acceptance settings for `verify`)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Master seed; overrides the config
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory (or file for `generate`)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads; results do not depend on this
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Suite selection: bound suites for `sweep`, criteria for `verify`
    #[arg(long, global = true)]
    suite: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Write a family graph as an edge list
    Generate {
        /// Family shorthand, e.g. `cycle:64`, `torus:2:32`, `pa:2:1024:7`
        #[arg(long)]
        family: FamilySpec,
    },
    /// Exact dense-matrix quantities of a family graph
    Analyze {
        #[arg(long)]
        family: FamilySpec,
        #[arg(long, default_value = "lazy")]
        laziness: Laziness,
        /// Walk counts for the partial mixing table; every k_tilde < k is included
        #[arg(long, value_delimiter = ',')]
        k: Vec<u64>,
        /// Also write the distance profile up to this time
        #[arg(long)]
        profile: Option<u64>,
    },
    /// Monte-Carlo cover time of k walks
    Estimate {
        #[arg(long)]
        family: FamilySpec,
        #[arg(long)]
        k: usize,
        /// `stationary`, `vertex:V` or `tuple:V1,V2,...`
        #[arg(long, default_value = "stationary")]
        start: String,
        #[arg(long, default_value = "lazy")]
        laziness: Laziness,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        /// Step cap per trial (default 64 n^3 / k)
        #[arg(long)]
        horizon: Option<u64>,
    },
    /// Run an experiment config: estimates, bound suites and slope fits
    Sweep,
    /// Run acceptance criteria (`--suite acceptance`, or ids like `3` or `1,4,c7`)
    Verify,
    /// Merge report bundles
    Report {
        /// `bundle.json` files or directories containing one
        bundles: Vec<PathBuf>,
    },
}

fn parse_criteria(suite: Option<&str>) -> Result<Vec<u8>> {
    let suite = suite.unwrap_or("acceptance");
    if suite == "acceptance" || suite == "all" {
        return Ok(CRITERIA.iter().map(|c| c.0).collect());
    }
    suite
        .split(',')
        .map(|part| {
            let id: u8 = part
                .trim()
                .trim_start_matches('c')
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("unknown criterion `{part}`")))?;
            if CRITERIA.iter().any(|c| c.0 == id) {
                Ok(id)
            } else {
                Err(Error::InvalidParameter(format!("no criterion {id}")))
            }
        })
        .collect()
}

fn write_or_print(out: Option<&Path>, name: &str, body: &str) -> Result<()> {
    match out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            std::fs::write(dir.join(name), body)?;
        }
        None => print!("{body}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    let g = &cli.global;
    if let Some(t) = g.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Error::InvalidParameter(format!("--threads: {e}")))?;
    }
    let out = g.out.as_deref();
    match cli.command {
        Command::Generate { family } => {
            let graph = build_family(&family)?;
            let text = graph.to_edge_list();
            match out {
                Some(path) => std::fs::write(path, text)?,
                None => print!("{text}"),
            }
        }
        Command::Analyze {
            family,
            laziness,
            k,
            profile,
        } => {
            let graph = build_family(&family)?;
            let opts = ExactOptions {
                laziness,
                pairs: k.iter().flat_map(|&k| (1..k).map(move |kt| (kt, k))).collect(),
                ..ExactOptions::default()
            };
            let q = exact_quantities(&graph, Some(&family), &opts)?;
            write_or_print(out, "analysis.json", &(serde_json::to_string_pretty(&q)? + "\n"))?;
            if let Some(t) = profile {
                let p = transition_matrix(&graph, laziness)?;
                write_or_print(out, "profile.csv", &distance_profile(&p, t)?.to_csv())?;
            }
        }
        Command::Estimate {
            family,
            k,
            start,
            laziness,
            trials,
            horizon,
        } => {
            let graph = build_family(&family)?;
            let plan = TrialPlan {
                trials,
                horizon,
                master_seed: g.seed.unwrap_or(0),
            };
            let est = estimate_cover_time(&graph, k, &start.parse::<StartSpec>()?, laziness, &plan)?;
            let record = serde_json::json!({
                "family": family.to_string(),
                "n": graph.vertex_count(),
                "k": k,
                "start": start,
                "laziness": laziness,
                "estimate": est,
            });
            write_or_print(out, "estimate.json", &(serde_json::to_string_pretty(&record)? + "\n"))?;
        }
        Command::Sweep => {
            let path = g
                .config
                .as_deref()
                .ok_or_else(|| Error::InvalidParameter("sweep needs --config".into()))?;
            let mut cfg = ExperimentConfig::load(path)?;
            if let Some(seed) = g.seed {
                cfg.master_seed = seed;
            }
            if let Some(suites) = &g.suite {
                cfg.suites = suites.split(',').map(|s| s.trim().parse()).collect::<Result<_>>()?;
            }
            if let Some(dir) = out {
                cfg.output = dir.to_path_buf();
            }
            let bundle = run_experiment(&cfg)?;
            bundle.write(&cfg.output)?;
            let failures = bundle.hard_failures();
            eprintln!(
                "{} estimates, {} bound reports, {} skipped stages, {failures} hard failures -> {}",
                bundle.estimates.len(),
                bundle.bounds.len(),
                bundle.skipped.len(),
                cfg.output.display()
            );
            if failures > 0 {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Verify => {
            let mut settings = match g.config.as_deref() {
                Some(path) => serde_json::from_str(&std::fs::read_to_string(path)?)?,
                None => AcceptanceSettings::default(),
            };
            if let Some(seed) = g.seed {
                settings.master_seed = seed;
            }
            let mut outcomes = Vec::new();
            for id in parse_criteria(g.suite.as_deref())? {
                let outcome = run_criterion(id, &settings)?;
                println!("{}", outcome.line());
                for d in &outcome.details {
                    println!("    {d}");
                }
                outcomes.push(outcome);
            }
            if let Some(dir) = out {
                std::fs::create_dir_all(dir)?;
                let body = serde_json::json!({ "settings": settings, "criteria": outcomes });
                std::fs::write(dir.join("verify.json"), serde_json::to_string_pretty(&body)?)?;
            }
            if outcomes.iter().any(|o| !o.pass) {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Report { bundles } => {
            let loaded = bundles
                .iter()
                .map(|p| {
                    let file = if p.is_dir() { p.join("bundle.json") } else { p.clone() };
                    ReportBundle::load(&file)
                })
                .collect::<Result<Vec<_>>>()?;
            let merged = ReportBundle::merge(loaded)
                .ok_or_else(|| Error::InvalidParameter("report needs at least one bundle".into()))?;
            let dir = out
                .map(Path::to_path_buf)
                .unwrap_or_else(|| merged.config.output.clone());
            merged.write(&dir)?;
            eprintln!("merged report -> {}", dir.display());
            if merged.hard_failures() > 0 {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
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
