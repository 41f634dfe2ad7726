use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use torifan::catalog::{load_fan, Catalog};
use torifan::commands::{blowup_command, okounkov_command};
use torifan::error::{HarnessError, Result};
use torifan::sweep::sweep_ample_cone;
use torifan::verify::{gap_report, verify_sweeps};
use torifan_core::invariants::score;
use torifan_core::okounkov::FlagSpec;
use torifan_core::rational::{decimal, format_rational, parse_rational};
use torifan_core::toric::DivisorFile;
use torifan_core::{Rational, TDivisor, ToricVariety};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct Output {
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
}

#[derive(Args)]
struct DivisorArgs {
    /// JSON file `{"coeffs": ["1", "1/2", ...]}`, one coefficient per ray.
    #[arg(long, conflicts_with = "anticanonical")]
    divisor: Option<PathBuf>,
    /// Use -K (the default when no divisor is given).
    #[arg(long)]
    anticanonical: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a fan is smooth and complete and summarize it.
    Validate { fan: PathBuf },
    /// Seshadri constant, stability threshold and normalized volume of a class.
    Invariants {
        fan: PathBuf,
        #[command(flatten)]
        divisor: DivisorArgs,
    },
    /// Score every ample class on a grid.
    Sweep {
        fan: PathBuf,
        #[arg(long)]
        resolution: u32,
    },
    /// Volume profile along the blow-up of a torus-fixed point.
    Blowup {
        fan: PathBuf,
        #[arg(long)]
        cone: usize,
        #[command(flatten)]
        divisor: DivisorArgs,
        #[arg(long, default_value_t = 100)]
        samples: u32,
    },
    /// Newton-Okounkov body of a torus-invariant flag.
    Okounkov {
        fan: PathBuf,
        /// `<cone>` or `<cone>:<ray>,<ray>,...`
        #[arg(long)]
        flag: String,
        #[command(flatten)]
        divisor: DivisorArgs,
        /// Check the translation identity at this `t` (repeatable).
        #[arg(long = "check-translation")]
        check_translation: Vec<String>,
        #[arg(long, default_value_t = 20)]
        samples: u32,
    },
    /// Sweep every catalog entry and check the bound and its equality case.
    VerifyTheorem {
        /// Directory of fan files (default: $TORIFAN_CATALOG, then the bundled catalog).
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long, default_value_t = 8)]
        resolution: u32,
        /// Only entries of this dimension.
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Smallest gap to the bound among non-projective entries, per dimension.
    GapReport {
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long, default_value_t = 8)]
        resolution: u32,
        #[arg(long)]
        dim: Option<usize>,
    },
}

#[derive(Parser)]
#[command(
    name = "torifan",
    version,
    about = "Exact invariants of smooth toric Fano varieties"
)]
struct Cli {
    #[command(flatten)]
    output: Output,
    #[command(subcommand)]
    command: Command,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn variety(path: &Path) -> Result<Arc<ToricVariety>> {
    Ok(Arc::new(load_fan(path)?))
}

fn divisor(x: &Arc<ToricVariety>, args: &DivisorArgs) -> Result<TDivisor> {
    match &args.divisor {
        None => Ok(TDivisor::anticanonical(x)),
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| HarnessError::Io {
                path: path.clone(),
                source,
            })?;
            let file: DivisorFile =
                serde_json::from_str(&text).map_err(|e| HarnessError::Parse {
                    path: path.clone(),
                    line: e.line(),
                    column: e.column(),
                    message: e.to_string(),
                })?;
            Ok(TDivisor::from_file(x.clone(), &file)?)
        }
    }
}

fn catalog(dir: Option<&Path>, dim: Option<usize>) -> Result<Catalog> {
    let c = Catalog::resolve(dir)?;
    Ok(match dim {
        Some(n) => c.of_dim(n),
        None => c,
    })
}

struct Sink(Box<dyn Write>);

impl Sink {
    fn open(out: &Option<PathBuf>) -> Result<Self> {
        Ok(Sink(match out {
            Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|source| {
                HarnessError::Io {
                    path: p.clone(),
                    source,
                }
            })?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        }))
    }

    fn json<T: Serialize>(&mut self, value: &T) -> Result<()> {
        serde_json::to_writer_pretty(&mut self.0, value)?;
        writeln!(self.0).map_err(|source| HarnessError::Io {
            path: "<output>".into(),
            source,
        })?;
        self.flush()
    }

    fn flush(&mut self) -> Result<()> {
        self.0.flush().map_err(|source| HarnessError::Io {
            path: "<output>".into(),
            source,
        })
    }
}

#[derive(Serialize)]
struct FanSummary<'a> {
    name: &'a str,
    dim: usize,
    rays: usize,
    max_cones: usize,
    walls: usize,
    is_fano: bool,
    is_projective_space: bool,
}

fn run(cli: Cli) -> Result<()> {
    let Output { out, format } = cli.output;
    let mut sink = Sink::open(&out)?;
    match cli.command {
        Command::Validate { fan } => {
            let x = load_fan(&fan)?;
            sink.json(&FanSummary {
                name: x.name(),
                dim: x.dim(),
                rays: x.num_rays(),
                max_cones: x.cones().len(),
                walls: x.walls().len(),
                is_fano: x.is_fano(),
                is_projective_space: x.is_projective_space(),
            })
        }
        Command::Invariants { fan, divisor: d } => {
            let x = variety(&fan)?;
            let report = score(&divisor(&x, &d)?).map_err(|e| match e {
                torifan_core::Error::BoundViolated { .. } => HarnessError::Assertion(e.to_string()),
                e => e.into(),
            })?;
            if format == Some(Format::Csv) {
                let mut w = csv::Writer::from_writer(&mut sink.0);
                w.write_record([
                    "variety",
                    "divisor",
                    "vol",
                    "eps",
                    "delta",
                    "delta_witness",
                    "beta",
                    "score",
                    "decimal",
                    "delta_score",
                    "bound",
                ])?;
                w.write_record([
                    report.variety_name.clone(),
                    report
                        .divisor
                        .iter()
                        .map(format_rational)
                        .collect::<Vec<_>>()
                        .join(" "),
                    format_rational(&report.vol),
                    format_rational(&report.eps),
                    format_rational(&report.delta),
                    report.delta_witness.to_string(),
                    format_rational(&report.beta),
                    format_rational(&report.score),
                    decimal(&report.score),
                    format_rational(&report.delta_score),
                    format_rational(&report.bound),
                ])?;
                w.flush().map_err(csv::Error::from)?;
                drop(w);
                sink.flush()
            } else {
                sink.json(&report)
            }
        }
        Command::Sweep { fan, resolution } => {
            let x = variety(&fan)?;
            let s = sweep_ample_cone(&x, resolution)?;
            eprintln!(
                "{}: {} ample grid points in {} classes; max score {} at sample #{}; gap {}",
                s.variety_name,
                s.ample_points,
                s.samples.len(),
                format_rational(&s.max_score),
                s.argmax_sample().index,
                format_rational(&s.gap)
            );
            if format == Some(Format::Json) {
                return sink.json(&s);
            }
            let mut w = csv::Writer::from_writer(&mut sink.0);
            w.write_record([
                "index",
                "divisor",
                "multiplicity",
                "vol",
                "eps",
                "delta",
                "beta",
                "score",
                "decimal",
                "delta_score",
            ])?;
            for sample in &s.samples {
                let r = &sample.report;
                w.write_record([
                    sample.index.to_string(),
                    sample
                        .coeffs
                        .iter()
                        .map(format_rational)
                        .collect::<Vec<_>>()
                        .join(" "),
                    sample.multiplicity.to_string(),
                    format_rational(&r.vol),
                    format_rational(&r.eps),
                    format_rational(&r.delta),
                    format_rational(&r.beta),
                    format_rational(&r.score),
                    decimal(&r.score),
                    format_rational(&r.delta_score),
                ])?;
            }
            w.flush().map_err(csv::Error::from)?;
            drop(w);
            sink.flush()
        }
        Command::Blowup {
            fan,
            cone,
            divisor: d,
            samples,
        } => {
            let x = variety(&fan)?;
            let report = blowup_command(&divisor(&x, &d)?, cone, samples)?;
            if format == Some(Format::Json) {
                sink.json(&report)?;
            } else {
                report.write_csv(&mut sink.0)?;
                sink.flush()?;
            }
            report.verdict()
        }
        Command::Okounkov {
            fan,
            flag,
            divisor: d,
            check_translation,
            samples,
        } => {
            let x = variety(&fan)?;
            let flag = FlagSpec::parse(&x, &flag)?;
            let ts = check_translation
                .iter()
                .map(|t| parse_rational(t).map_err(HarnessError::from))
                .collect::<Result<Vec<Rational>>>()?;
            let report = okounkov_command(&divisor(&x, &d)?, &flag, &ts, samples)?;
            if format == Some(Format::Json) {
                sink.json(&report)?;
            } else {
                for line in report.summary() {
                    eprintln!("{line}");
                }
                report.write_csv(&mut sink.0)?;
                sink.flush()?;
            }
            report.verdict()
        }
        Command::VerifyTheorem {
            catalog: dir,
            resolution,
            dim,
        } => {
            let c = catalog(dir.as_deref(), dim)?;
            let sweeps = torifan::verify::sweep_catalog(&c, resolution)?;
            let report = verify_sweeps(resolution, &sweeps)?;
            if format == Some(Format::Json) {
                sink.json(&report)
            } else {
                report.write_csv(&mut sink.0)?;
                sink.flush()
            }
        }
        Command::GapReport {
            catalog: dir,
            resolution,
            dim,
        } => {
            let report = gap_report(&catalog(dir.as_deref(), dim)?, resolution)?;
            eprintln!("{}", report.label);
            if format == Some(Format::Json) {
                sink.json(&report)
            } else {
                report.write_csv(&mut sink.0)?;
                sink.flush()
            }
        }
    }
}
