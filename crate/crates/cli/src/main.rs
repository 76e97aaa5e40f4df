//! `ifl` — induced forests in planar multigraphs.
//!
//! One binary, six batch commands:
//!
//! * `gen` writes an extremal-family instance (or a seeded random drawing),
//! * `solve` runs an exact solver and prints the certificate,
//! * `verify` compares one instance against every applicable lower bound,
//! * `reduce` applies a value-preserving transformation,
//! * `discharge` replays the charge redistribution with exact rationals,
//! * `report` drives a manifest of instances in parallel.
//!
//! Exit codes: 0 all checks pass, 1 some check fails, 2 configuration or
//! input error. `IFL_THREADS` caps the worker pool; output bytes do not
//! depend on the thread count.

use std::fmt::Write as _;
use std::fs;
use std::io::{Read as _, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use ifl_core::discharging::{run_discharging, ChargeState, DischargingAudit};
use ifl_core::generators::{generate, Family};
use ifl_core::io::{parse_instance, write_mgraph, write_pmgraph, Instance};
use ifl_core::reductions::{dedup, double, subdivide_parallel, trim_parallel, ReductionRecord};
use ifl_core::report::{
    default_manifest, parse_manifest, run_suite, verify_bounds, VerifyOptions,
};
use ifl_core::sampler::Sampler;
use ifl_core::solvers::{
    max_independent_set, max_induced_forest, max_induced_linear_forest, ForestCertificate,
};

#[derive(Parser)]
#[command(name = "ifl", version, about = "induced forests in planar multigraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated instance as an embedding file
    Gen(GenArgs),
    /// Solve one instance exactly and print the certificate
    Solve(SolveArgs),
    /// Check every applicable lower bound on one instance
    Verify(VerifyArgs),
    /// Apply a value-preserving transformation and write the result
    Reduce(ReduceArgs),
    /// Replay the charge redistribution over a plane instance
    Discharge(DischargeArgs),
    /// Verify a whole manifest and render the suite report
    Report(ReportArgs),
}

#[derive(Args)]
struct GenArgs {
    /// family code: k4, dk4, nk or mk
    #[arg(long, value_parser = family_code, required_unless_present = "seed",
          conflicts_with = "seed")]
    family: Option<Family>,
    /// family index, at least 1
    #[arg(long, default_value_t = 1, requires = "family")]
    k: usize,
    /// sample a random plane multigraph instead of a family instance
    #[arg(long)]
    seed: Option<u64>,
    /// output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// print the family's expected counts instead of the instance
    #[arg(long, requires = "family")]
    expect: bool,
}

#[derive(Args)]
struct SolveArgs {
    /// input file, `-` for stdin
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// which maximum to compute
    #[arg(long, value_enum, default_value_t = SolveKind::Forest)]
    kind: SolveKind,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolveKind {
    /// largest induced forest
    Forest,
    /// largest induced linear forest
    Linear,
    /// largest independent set
    Independent,
}

#[derive(Args)]
struct VerifyArgs {
    /// input file, `-` for stdin
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// candidate budget for the 2-face-free drawing search
    #[arg(long, default_value_t = VerifyOptions::default().embedding_budget)]
    budget: u64,
}

#[derive(Args)]
struct ReduceArgs {
    /// input file, `-` for stdin
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// which transformation to apply
    #[arg(long, value_enum)]
    kind: ReduceKind,
    /// output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReduceKind {
    /// keep one copy of every edge
    Dedup,
    /// cap every multiplicity at two
    Trim,
    /// double every edge of a simple graph
    Double,
    /// subdivide one copy of every doubled edge
    Subdivide,
}

#[derive(Args)]
struct DischargeArgs {
    /// input embedding file, `-` for stdin
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// include the full transfer log
    #[arg(long)]
    audit: bool,
}

#[derive(Args)]
struct ReportArgs {
    /// manifest file, `-` for stdin; the standard families when omitted
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
    /// report file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// candidate budget for the 2-face-free drawing search
    #[arg(long, default_value_t = VerifyOptions::default().embedding_budget)]
    budget: u64,
}

fn family_code(s: &str) -> std::result::Result<Family, String> {
    Family::from_code(s).ok_or_else(|| format!("unknown family `{s}` (use k4, dk4, nk or mk)"))
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run() -> Result<ExitCode> {
    if let Ok(raw) = std::env::var("IFL_THREADS") {
        let threads: usize = raw
            .parse()
            .map_err(|_| anyhow!("IFL_THREADS must be a positive integer, got `{raw}`"))?;
        if threads == 0 {
            bail!("IFL_THREADS must be a positive integer, got `0`");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("worker pool setup failed")?;
    }
    match Cli::parse().command {
        Command::Gen(args) => cmd_gen(args),
        Command::Solve(args) => cmd_solve(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Reduce(args) => cmd_reduce(args),
        Command::Discharge(args) => cmd_discharge(args),
        Command::Report(args) => cmd_report(args),
    }
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).context("cannot read stdin")?;
        Ok(text)
    } else {
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
    }
}

fn load_instance(path: &Path) -> Result<Instance> {
    parse_instance(&read_input(path)?)
        .with_context(|| format!("cannot parse {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("cannot write {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush()) {
                Ok(()) => Ok(()),
                // the reader closed the stream; end quietly like any pipeline stage
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(0),
                Err(e) => Err(e).context("cannot write to stdout"),
            }
        }
    }
}

fn cmd_gen(args: GenArgs) -> Result<ExitCode> {
    let pm = match (args.family, args.seed) {
        (Some(family), None) => {
            let inst = generate(family, args.k)?;
            if args.expect {
                let mut meta = String::new();
                let _ = writeln!(meta, "family {}", inst.family);
                let _ = writeln!(meta, "index {}", inst.index);
                let _ = writeln!(meta, "n {}", inst.expected_n);
                let _ = writeln!(meta, "m {}", inst.expected_m);
                let _ = writeln!(meta, "pairs {}", inst.expected_pairs);
                let _ = writeln!(meta, "value {}", inst.expected_forest_value);
                let _ = writeln!(meta, "two-faces {}", if inst.has_two_faces { "yes" } else { "no" });
                emit(args.out.as_deref(), &meta)?;
                return Ok(ExitCode::SUCCESS);
            }
            inst.pm
        }
        (None, Some(seed)) => Sampler::new(seed)
            .plane_multigraph(10, 1000)
            .ok_or_else(|| anyhow!("seed {seed} yielded no drawing; try another seed"))?,
        _ => unreachable!("clap enforces exactly one of --family/--seed"),
    };
    emit(args.out.as_deref(), &write_pmgraph(&pm))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_solve(args: SolveArgs) -> Result<ExitCode> {
    let inst = load_instance(&args.input)?;
    let cert: ForestCertificate = match args.kind {
        SolveKind::Forest => max_induced_forest(inst.graph()),
        SolveKind::Linear => max_induced_linear_forest(inst.graph()),
        SolveKind::Independent => max_independent_set(inst.graph()),
    };
    let ids: Vec<String> = cert.vertices.iter().map(|v| v.0.to_string()).collect();
    emit(None, &format!("value {}\ncertificate {}\n", cert.value, ids.join(" ")))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode> {
    let inst = load_instance(&args.input)?;
    let opts = VerifyOptions { embedding_budget: args.budget, ..VerifyOptions::default() };
    let mut report = verify_bounds(&inst, &opts);
    report.id = args.input.display().to_string();
    emit(None, &report.render())?;
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_reduce(args: ReduceArgs) -> Result<ExitCode> {
    let g = load_instance(&args.input)?.graph().clone();
    let (label, record): (&str, ReductionRecord) = match args.kind {
        ReduceKind::Dedup => ("dedup", dedup(&g)),
        ReduceKind::Trim => ("trim", trim_parallel(&g)),
        ReduceKind::Double => ("double", double(&g)?),
        ReduceKind::Subdivide => ("subdivide", subdivide_parallel(&g)?),
    };
    eprintln!(
        "{label}: n {} -> {}, m {} -> {}, acted on {}",
        record.input.n(),
        record.output.n(),
        record.input.m(),
        record.output.m(),
        record.k
    );
    emit(args.out.as_deref(), &write_mgraph(&record.output))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_discharge(args: DischargeArgs) -> Result<ExitCode> {
    let inst = load_instance(&args.input)?;
    let Some(pm) = inst.plane() else {
        bail!("discharging needs an embedding file (rot/outer directives), not a bare graph");
    };
    let audit = run_discharging(pm)?;
    emit(None, &render_audit(&audit, args.audit))?;
    Ok(ExitCode::SUCCESS)
}

fn render_audit(audit: &DischargingAudit, with_transfers: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "counts n={} m={} pairs={} components={} faces={}",
        audit.n, audit.m, audit.k, audit.p, audit.face_count
    );
    let _ = writeln!(out, "ledger-total {}", audit.ledger_total);
    push_state(&mut out, "initial", &audit.initial);
    push_state(&mut out, "after-stage-one", &audit.after_stage_one);
    push_state(&mut out, "after-stage-two", &audit.after_stage_two);
    let _ = writeln!(out, "cycles:");
    for (c, cat) in audit.forest.categories.iter().enumerate() {
        let parent = match audit.forest.parent[c] {
            Some(p) => p.to_string(),
            None => "none".to_string(),
        };
        let _ = writeln!(
            out,
            "  cycle {c} category {cat} parent {parent} weight {}",
            audit.after_stage_one.cycles[c]
        );
    }
    let _ = writeln!(out, "stage-one-cycle-total {}", audit.stage_one_cycle_total);
    if with_transfers {
        let _ = writeln!(out, "transfers:");
        for t in &audit.transfers {
            let _ = writeln!(out, "  {} {} -> {} amount {}", t.rule, t.from, t.to, t.amount);
        }
    }
    out
}

fn push_state(out: &mut String, label: &str, state: &ChargeState) {
    let _ = writeln!(out, "{label}:");
    for (i, q) in state.faces.iter().enumerate() {
        let _ = writeln!(out, "  face {i} {q}");
    }
    for (i, q) in state.edges.iter().enumerate() {
        let _ = writeln!(out, "  edge {i} {q}");
    }
    for (i, q) in state.cycles.iter().enumerate() {
        let _ = writeln!(out, "  cycle {i} {q}");
    }
    let _ = writeln!(out, "  pot {}", state.pot);
    let _ = writeln!(out, "  total {}", state.total());
}

fn cmd_report(args: ReportArgs) -> Result<ExitCode> {
    let (text, base_dir) = match &args.input {
        Some(path) if path != Path::new("-") => {
            let base = path.parent().filter(|p| !p.as_os_str().is_empty());
            (read_input(path)?, base.unwrap_or(Path::new(".")).to_path_buf())
        }
        Some(path) => (read_input(path)?, PathBuf::from(".")),
        None => (default_manifest(), PathBuf::from(".")),
    };
    let entries = parse_manifest(&text)?;
    let opts = VerifyOptions { embedding_budget: args.budget, ..VerifyOptions::default() };
    let outcome = run_suite(&entries, &opts, &base_dir);
    emit(args.out.as_deref(), &outcome.render())?;
    Ok(if outcome.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
