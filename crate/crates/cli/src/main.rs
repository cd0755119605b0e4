use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, ValueEnum};
use pmedian_core::bench::{emit_report, parse_instance, read_reference, read_text, run_benchmark, sidecar_path};
use pmedian_core::bench::{InstanceFormat, ReportStyle};
use pmedian_core::{build_hbp, build_ordering, GaConfig, Migration};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Dense,
    Orlib,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Report {
    Table,
    Structured,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Placement {
    /// Each block's best returns to slot 0 of the same block.
    SameBlock,
    /// All block bests are packed into the first block.
    SingleBlock,
}

/// Runs the p-median genetic algorithm over benchmark instances and reports
/// cost, approximation ratio, kernel calls and time per instance.
#[derive(Debug, Parser)]
#[command(name = "pmedian-bench", version)]
struct Args {
    /// Instance file; repeat for several instances.
    #[arg(long = "instance", required = true, value_name = "PATH")]
    instances: Vec<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Dense)]
    format: Format,

    /// Number of facilities to open, replacing the value in the file header.
    #[arg(long)]
    p: Option<usize>,

    /// Number of blocks.
    #[arg(long, default_value_t = 4)]
    nb: usize,

    /// Threads (chromosomes) per block, a power of two.
    #[arg(long, default_value_t = 32)]
    nt: usize,

    #[arg(long, default_value_t = 100)]
    evolve_limit: usize,

    /// Kernels without improvement before stopping.
    #[arg(long, default_value_t = 10)]
    saturation: usize,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Independent runs per instance; run r uses seed + r.
    #[arg(long, default_value_t = 1)]
    repeats: usize,

    /// Crossover rounds per kernel (default lg(nt)).
    #[arg(long)]
    crossover_iters: Option<usize>,

    /// Mutation attempts per thread per kernel (default lg(nt)).
    #[arg(long)]
    mutation_iters: Option<usize>,

    /// File holding the reference optimum. Only valid with a single instance;
    /// otherwise `<instance>.opt` is used when present.
    #[arg(long, value_name = "PATH")]
    reference: Option<PathBuf>,

    /// Write the report here instead of standard output.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Report::Table)]
    report: Report,

    /// Worker threads for block evolution; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    workers: usize,

    #[arg(long, value_enum, default_value_t = Placement::SameBlock)]
    migration: Placement,

    /// Write the reduced pseudo-Boolean polynomial of the (single) instance here.
    #[arg(long, value_name = "PATH")]
    export_hbp: Option<PathBuf>,
}

impl Args {
    fn config(&self) -> GaConfig {
        GaConfig {
            nb: self.nb,
            nt: self.nt,
            evolve_limit: self.evolve_limit,
            saturation: self.saturation,
            seed: self.seed,
            crossover_iters: self.crossover_iters,
            mutation_iters: self.mutation_iters,
            migration: match self.migration {
                Placement::SameBlock => Migration::SameBlock,
                Placement::SingleBlock => Migration::SingleBlock,
            },
            workers: self.workers,
        }
    }

    fn instance_format(&self) -> InstanceFormat {
        match self.format {
            Format::Dense => InstanceFormat::Dense,
            Format::Orlib => InstanceFormat::Orlib,
        }
    }
}

fn run(args: &Args) -> Result<()> {
    let single = args.instances.len() == 1;
    if args.reference.is_some() && !single {
        bail!("--reference needs exactly one --instance; use <instance>.opt sidecars instead");
    }
    if args.export_hbp.is_some() && !single {
        bail!("--export-hbp needs exactly one --instance");
    }
    let cfg = args.config();
    cfg.validate()?;
    let format = args.instance_format();

    if let Some(target) = &args.export_hbp {
        let path = &args.instances[0];
        let instance =
            parse_instance(&read_text(path)?, format, args.p).with_context(|| format!("reading {}", path.display()))?;
        let poly = build_hbp(&build_ordering(&instance)).reduce();
        fs::write(target, poly.to_string()).with_context(|| format!("writing {}", target.display()))?;
    }

    let mut records = Vec::with_capacity(args.instances.len());
    for path in &args.instances {
        let reference = match &args.reference {
            Some(r) => Some(read_reference(r)?),
            None => {
                let sidecar = sidecar_path(path);
                if sidecar.is_file() {
                    Some(read_reference(&sidecar)?)
                } else {
                    None
                }
            }
        };
        let record = run_benchmark(path, format, args.p, &cfg, args.repeats, reference)
            .with_context(|| format!("benchmarking {}", path.display()))?;
        records.push(record);
    }

    let style = match args.report {
        Report::Table => ReportStyle::Table,
        Report::Structured => ReportStyle::Structured,
    };
    let text = emit_report(&records, style);
    match &args.out {
        Some(out) => fs::write(out, text).with_context(|| format!("writing {}", out.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let mut message = String::new();
            for cause in e.chain().map(ToString::to_string) {
                if !message.ends_with(&cause) {
                    message = if message.is_empty() { cause } else { format!("{message}: {cause}") };
                }
            }
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}
