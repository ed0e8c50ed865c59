//! Command-line surface: generate, validate, run, certify and plot.

use crate::analysis::{certify, check_rates, Verdict};
use crate::counterexamples::{
    gen_ce1, gen_ce2, gen_ce3, gen_ce4, gen_demo_a, gen_demo_b, reference_trajectory,
    Instance, StrategyKind, DEMO_A_DEFAULT_HORIZON,
};
use crate::error::{Error, Result};
use crate::fw::{StepStrategy, Trajectory};
use crate::io::{reference_rows, InstanceDoc};
use crate::plot::{gap_bound_csv, render_svg};
use crate::runner::run_instance;
use crate::sketch::validate_sketch;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fs;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(name = "fwlab", version, about = "Projection-free convex optimization lab")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CeArg {
    #[value(name = "1")]
    Ce1,
    #[value(name = "2")]
    Ce2,
    #[value(name = "3")]
    Ce3,
    #[value(name = "4")]
    Ce4,
    #[value(name = "misA", alias = "misa")]
    MisA,
    #[value(name = "misB", alias = "misb")]
    MisB,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Open1,
    Open2,
    Closed,
    Linesearch,
}

#[derive(Args, Clone)]
struct InstanceArgs {
    /// Which instance to generate.
    #[arg(long)]
    ce: CeArg,
    /// Sketch depth (number of nested levels). Defaults to
    /// FWLAB_DEPTH_DEFAULT or 40.
    #[arg(long)]
    depth: Option<usize>,
    /// Height exponent of the closed-loop instance's box.
    #[arg(short = 'K', long = "K", default_value_t = 2)]
    k: u32,
    /// Open-loop variant for --ce 4 (default open2) and strategy override
    /// for the other instances.
    #[arg(long, value_enum)]
    strategy: Option<StrategyArg>,
    /// Accept a strategy that is not the instance's intended one.
    #[arg(long)]
    force: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance, run the solver, write the trajectory and the
    /// certificate. Exit 0 when the certificate verdict is oscillating and
    /// the rate checks pass.
    Run {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Iteration count.
        #[arg(long, default_value_t = 2000)]
        iters: usize,
        /// Closed-loop constant: "auto" for 2 x sampled estimate.
        #[arg(short = 'L', long = "L", default_value = "auto")]
        l: String,
        /// Rounding-radius scale override.
        #[arg(long)]
        r_scale: Option<f64>,
        /// Sampling seed (Lipschitz probes).
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Output directory.
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// With --ce all: run instances on this many threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Emit the exact reference trajectory as JSON lines (rationals plus
    /// float mirrors).
    Reference {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, default_value_t = 100)]
        iters: usize,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate the sketch hypotheses of a generated instance.
    Validate {
        #[command(flatten)]
        instance: InstanceArgs,
    },
    /// Re-run the worst-case rate check on a stored trajectory.
    Rates {
        /// Directory holding traj.jsonl and cert.json from a run.
        #[arg(long)]
        dir: PathBuf,
    },
    /// Render the figure and the gap-versus-bound table for a stored run.
    Report {
        /// Directory holding instance.json, traj.jsonl and cert.json.
        #[arg(long)]
        dir: PathBuf,
        /// Output directory; defaults to the input directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn depth_default() -> usize {
    std::env::var("FWLAB_DEPTH_DEFAULT")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(40)
}

fn build_instance(args: &InstanceArgs, horizon: usize) -> Result<Instance> {
    let depth = args.depth.unwrap_or_else(depth_default);
    let mut inst = match args.ce {
        CeArg::Ce1 => gen_ce1(depth)?,
        CeArg::Ce2 => gen_ce2(depth)?,
        CeArg::Ce3 => gen_ce3(args.k, depth)?,
        CeArg::Ce4 => gen_ce4(
            !matches!(args.strategy, Some(StrategyArg::Open1)),
            depth,
        )?,
        CeArg::MisA => gen_demo_a(horizon.max(DEMO_A_DEFAULT_HORIZON)),
        CeArg::MisB => gen_demo_b(horizon.max(500)),
        CeArg::All => return Err(Error::Other("--ce all handled by the caller".into())),
    };
    if let Some(s) = args.strategy {
        let requested = match s {
            StrategyArg::Open1 => StrategyKind::Open1,
            StrategyArg::Open2 => StrategyKind::Open2,
            StrategyArg::Closed => StrategyKind::Closed(None),
            StrategyArg::Linesearch => StrategyKind::LineSearch(1e-12),
        };
        if !inst.strategy_compatible(&requested) && !args.force {
            return Err(Error::StrategyMismatch {
                strategy: requested.name().into(),
                instance: inst.id.name().into(),
            });
        }
        inst.strategy = requested;
    }
    Ok(inst)
}

fn cmd_run_one(
    args: &InstanceArgs,
    iters: usize,
    l: &str,
    r_scale: Option<f64>,
    seed: u64,
    out: &Path,
) -> Result<bool> {
    let mut inst = build_instance(args, iters)?;
    if let Some(r) = r_scale {
        inst.build.r_scale = r;
    }
    let strategy = match (l, inst.strategy) {
        ("auto", s) => s,
        (value, StrategyKind::Closed(_)) => {
            let parsed: f64 = value
                .parse()
                .map_err(|_| Error::Other(format!("bad --l value: {value}")))?;
            StrategyKind::Closed(Some(parsed))
        }
        (_, s) => s,
    };
    let run = run_instance(&inst, &strategy, iters, seed)?;
    let l_rate = run
        .l_used
        .unwrap_or_else(|| 2.0 * run.l_estimate.unwrap_or(1.0).max(0.5));
    let cert = certify(&inst, &run.trajectory, l_rate)?;

    fs::create_dir_all(out)?;
    let mut traj_file = fs::File::create(out.join("traj.jsonl"))?;
    run.trajectory.write_jsonl(&mut traj_file)?;
    let mut csv_file = fs::File::create(out.join("traj.csv"))?;
    run.trajectory.write_csv(&mut csv_file)?;
    fs::write(
        out.join("cert.json"),
        serde_json::to_string_pretty(&cert)?,
    )?;
    let mut doc = serde_json::to_value(InstanceDoc::from_instance(&inst))?;
    doc["l_rate"] = serde_json::json!(l_rate);
    doc["run_strategy"] = serde_json::json!(run.trajectory.strategy);
    doc["diameter"] = serde_json::json!(run.trajectory.diameter);
    fs::write(out.join("instance.json"), serde_json::to_string_pretty(&doc)?)?;

    let ok = cert.verdict == Verdict::Oscillating && cert.rate.pass;
    println!(
        "{}: verdict {:?}, rate checks {}, wrote {}",
        inst.id.name(),
        cert.verdict,
        if cert.rate.pass { "pass" } else { "FAIL" },
        out.display()
    );
    Ok(ok || inst.adversarial)
}

fn cmd_reference(args: &InstanceArgs, iters: usize, out: Option<&Path>) -> Result<()> {
    let inst = build_instance(args, iters)?;
    let points = reference_trajectory(&inst, iters)?;
    let rows = reference_rows(&points);
    let mut text = String::new();
    for row in &rows {
        text.push_str(&serde_json::to_string(row)?);
        text.push('\n');
    }
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_validate(args: &InstanceArgs) -> Result<bool> {
    let inst = build_instance(args, 0)?;
    if inst.adversarial {
        return Err(Error::Other(
            "misspecification demos have no sketch to validate".into(),
        ));
    }
    let report = validate_sketch(&inst.spec);
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(report.pass)
}

fn cmd_rates(dir: &Path) -> Result<bool> {
    let points = Trajectory::read_jsonl(std::io::BufReader::new(fs::File::open(
        dir.join("traj.jsonl"),
    )?))?;
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.join("instance.json"))?)?;
    let l = doc["l_rate"].as_f64().unwrap_or(1.0);
    let diam = doc["diameter"].as_f64().unwrap_or(1.0);
    let strategy = doc["run_strategy"].as_str().unwrap_or("open1").to_string();
    let traj = Trajectory {
        strategy,
        x0: points.first().map(|p| p.x).unwrap_or(crate::geom2d::Vec2::zero()),
        l_constant: Some(l),
        diameter: diam,
        points,
    };
    let report = check_rates(&traj, l, diam, 0.0);
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(report.pass)
}

fn cmd_report(dir: &Path, out: Option<&Path>) -> Result<()> {
    let doc_text = fs::read_to_string(dir.join("instance.json"))?;
    let doc: InstanceDoc = serde_json::from_str(&doc_text)?;
    let raw: serde_json::Value = serde_json::from_str(&doc_text)?;
    let points = Trajectory::read_jsonl(std::io::BufReader::new(fs::File::open(
        dir.join("traj.jsonl"),
    )?))?;
    let out_dir = out.unwrap_or(dir);
    fs::create_dir_all(out_dir)?;
    let svg = render_svg(&doc, &points);
    fs::write(out_dir.join("figure.svg"), svg)?;
    let strategy = match raw["run_strategy"].as_str().unwrap_or("open1") {
        "open1" => StepStrategy::Open1,
        "open2" => StepStrategy::Open2,
        "closed" => StepStrategy::Closed { l: raw["l_rate"].as_f64().unwrap_or(1.0) },
        _ => StepStrategy::LineSearch { tol: 1e-12 },
    };
    let csv = gap_bound_csv(
        &points,
        &strategy,
        raw["l_rate"].as_f64().unwrap_or(1.0),
        raw["diameter"].as_f64().unwrap_or(1.0),
        0.0,
    );
    fs::write(out_dir.join("gap_vs_bound.csv"), csv)?;
    println!("wrote {}", out_dir.join("figure.svg").display());
    Ok(())
}

/// Entry point; returns the process exit code.
pub fn main_with(cli: Cli) -> i32 {
    let outcome: Result<bool> = match cli.command {
        Command::Run { instance, iters, l, r_scale, seed, out, jobs } => {
            if instance.ce == CeArg::All {
                run_all(&instance, iters, &l, r_scale, seed, &out, jobs)
            } else {
                cmd_run_one(&instance, iters, &l, r_scale, seed, &out)
            }
        }
        Command::Reference { instance, iters, out } => {
            cmd_reference(&instance, iters, out.as_deref()).map(|_| true)
        }
        Command::Validate { instance } => cmd_validate(&instance),
        Command::Rates { dir } => cmd_rates(&dir),
        Command::Report { dir, out } => cmd_report(&dir, out.as_deref()).map(|_| true),
    };
    match outcome {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e @ (Error::StrategyMismatch { .. } | Error::Io(_))) => {
            eprintln!("error: {e}");
            2
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn run_all(
    args: &InstanceArgs,
    iters: usize,
    l: &str,
    r_scale: Option<f64>,
    seed: u64,
    out: &Path,
    jobs: usize,
) -> Result<bool> {
    let ces = [CeArg::Ce1, CeArg::Ce2, CeArg::Ce3, CeArg::Ce4];
    let jobs = jobs.max(1);
    let mut ok = true;
    let mut queue: Vec<usize> = (0..ces.len()).collect();
    while !queue.is_empty() {
        let batch: Vec<usize> = queue.drain(..queue.len().min(jobs)).collect();
        let results: Vec<Result<bool>> = std::thread::scope(|scope| {
            let handles: Vec<_> = batch
                .iter()
                .map(|&i| {
                    let mut sub = args.clone();
                    sub.ce = ces[i];
                    sub.strategy = None;
                    let l = l.to_string();
                    let dir = out.join(format!("ce{}", i + 1));
                    scope.spawn(move || cmd_run_one(&sub, iters, &l, r_scale, seed, &dir))
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("run thread")).collect()
        });
        for r in results {
            ok &= r?;
        }
    }
    Ok(ok)
}
