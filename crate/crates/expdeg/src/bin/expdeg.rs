//! Thin command-line front end over the library. Each subcommand reads JSON
//! from a file or standard input and writes JSON (or SVG/DOT) to a file or
//! standard output.
//!
//! Exit codes: 0 on success, 1 when the computed answer is a domain-level
//! "false" or failure, 2 on malformed input.

use std::collections::BTreeSet;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;

use expdeg::codec::{decode, encode, Manifest};
use expdeg::fibres::{build_fibre, fibres_isomorphic, FibreDump};
use expdeg::limits::{
    audit_condition, stable_extensions, unique_limit, AuditBounds, LimitError, LimitFilter,
    PointConfiguration,
};
use expdeg::render::{dot_adjacency, render_subdivision_svg, RenderStyle};
use expdeg::smoothing::{smoothing_targets, SmoothingProblem};
use expdeg::stability::{EnumerationMode, StabilityCondition};
use expdeg::strata::{strata_equivalent, Stratum};
use expdeg::tropical::{check_unbroken_subdivision, Subdivision};

#[derive(Parser)]
#[command(name = "expdeg", version, about = "expanded degenerations of xyz = t")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads for audits (also EXPDEG_WORKERS).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Seed recorded in the manifest for reproducibility.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Print the invocation manifest to standard error.
    #[arg(long, global = true)]
    emit_manifest: bool,
}

#[derive(Args)]
struct Io {
    /// Input file (defaults to standard input).
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
    /// Output file (defaults to standard output).
    #[arg(long = "out", value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FilterArg {
    Lw,
    Sws,
}

impl From<FilterArg> for LimitFilter {
    fn from(f: FilterArg) -> Self {
        match f {
            FilterArg::Lw => LimitFilter::Lw,
            FilterArg::Sws => LimitFilter::Sws,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Minimal,
    Paired,
}

#[derive(Subcommand)]
enum Command {
    /// Check the unbroken condition of a pair {"n","A","B"} or of a
    /// subdivision {"h","cuts1","cuts2"}.
    CheckUnbroken(Io),
    /// Build the fibre over a stratum and dump it.
    Fibre(Io),
    /// Decide whether the fibres over two strata are isomorphic.
    Iso(Io),
    /// Decide stratum equivalence, with a witness chain.
    Equiv(Io),
    /// Enumerate stable associated pairs of a configuration.
    Limits {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_enum, default_value = "lw")]
        filter: FilterArg,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long)]
        max_n: Option<u32>,
    },
    /// The unique stable limit of a configuration under a condition.
    UniqueLimit {
        #[command(flatten)]
        io: Io,
        /// Built-in condition name; otherwise the input must embed one.
        #[arg(long)]
        condition: Option<String>,
        #[arg(long, value_enum, default_value = "lw")]
        filter: FilterArg,
        #[arg(long)]
        max_n: Option<u32>,
    },
    /// Audit a stability condition for almost-properness and tropical
    /// compatibility over all configurations within bounds.
    Audit {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        condition: Option<String>,
        #[arg(long, value_enum, default_value = "lw")]
        filter: FilterArg,
        #[arg(long, default_value_t = 4)]
        max_h: u64,
        #[arg(long, default_value_t = 2)]
        max_m: usize,
        #[arg(long)]
        max_n: Option<u32>,
        /// Also print the human-readable report to standard error.
        #[arg(long)]
        text: bool,
    },
    /// Smoothing targets of a bubble under edge slides.
    Smoothings(Io),
    /// Render a subdivision, fibre dump or stratum as SVG (or DOT).
    Render {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        no_labels: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let workers = cli
        .workers
        .or_else(|| {
            std::env::var("EXPDEG_WORKERS")
                .ok()
                .and_then(|s| s.parse().ok())
        })
        .unwrap_or(0);
    if workers > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global();
    }
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

/// Wrapper making "false" answers distinguishable from input errors.
enum Outcome {
    Pass(String),
    Fail(String),
}

fn run(cli: Cli) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let manifest = build_manifest(&cli);
    if cli.emit_manifest {
        eprint!("{}", encode(&manifest));
    }
    let outcome = match &cli.command {
        Command::CheckUnbroken(io) => check_unbroken(&read_input(io)?),
        Command::Fibre(io) => {
            let stratum: Stratum = decode(&read_input(io)?)?;
            Ok(Outcome::Pass(encode(&FibreDump::from(&build_fibre(
                &stratum,
            )))))
        }
        Command::Iso(io) => {
            let pair: StratumPair = decode(&read_input(io)?)?;
            let iso = fibres_isomorphic(&build_fibre(&pair.first), &build_fibre(&pair.second));
            let body = encode(&json!({ "isomorphic": iso }));
            Ok(if iso {
                Outcome::Pass(body)
            } else {
                Outcome::Fail(body)
            })
        }
        Command::Equiv(io) => {
            let pair: StratumPair = decode(&read_input(io)?)?;
            let witness = strata_equivalent(&pair.first, &pair.second)?;
            let body = encode(&witness);
            Ok(if witness.equivalent {
                Outcome::Pass(body)
            } else {
                Outcome::Fail(body)
            })
        }
        Command::Limits {
            io,
            filter,
            mode,
            max_n,
        } => {
            let cfg: PointConfiguration = decode(&read_input(io)?)?;
            let result = match mode {
                None => stable_extensions(&cfg, (*filter).into(), *max_n)?,
                Some(m) => {
                    let mode = match m {
                        ModeArg::Minimal => EnumerationMode::Minimal,
                        ModeArg::Paired => EnumerationMode::Paired,
                    };
                    expdeg::limits::stable_extensions_in_mode(&cfg, (*filter).into(), mode, *max_n)?
                }
            };
            Ok(Outcome::Pass(encode(&result)))
        }
        Command::UniqueLimit {
            io,
            condition,
            filter,
            max_n,
        } => {
            let input = read_input(io)?;
            let (cfg, cond) = configuration_and_condition(&input, condition.as_deref())?;
            match unique_limit(&cfg, &cond, (*filter).into(), *max_n) {
                Ok(pair) => Ok(Outcome::Pass(encode(&pair))),
                Err(LimitError::Other(e)) => Err(e.into()),
                Err(e @ LimitError::NoLimit) => {
                    Ok(Outcome::Fail(encode(&json!({ "error": e.to_string() }))))
                }
                Err(LimitError::MultipleLimits(count, witnesses)) => Ok(Outcome::Fail(encode(
                    &json!({ "error": "multiple limits", "count": count, "witnesses": witnesses }),
                ))),
            }
        }
        Command::Audit {
            io,
            condition,
            filter,
            max_h,
            max_m,
            max_n,
            text,
        } => {
            let cond = match condition.as_deref() {
                Some(name) => named_condition(name)?,
                None => decode(&read_input(io)?)?,
            };
            let report = audit_condition(
                &cond,
                AuditBounds {
                    max_h: *max_h,
                    max_m: *max_m,
                },
                (*filter).into(),
                *max_n,
            )?;
            if *text {
                eprint!("{}", report.to_text());
            }
            let body = encode(&report);
            Ok(if report.passed() {
                Outcome::Pass(body)
            } else {
                Outcome::Fail(body)
            })
        }
        Command::Smoothings(io) => {
            let problem: SmoothingProblem = decode(&read_input(io)?)?;
            Ok(Outcome::Pass(encode(&smoothing_targets(&problem)?)))
        }
        Command::Render { io, dot, no_labels } => {
            let input = read_input(io)?;
            let (subdivision, support) = renderable(&input)?;
            let body = if *dot {
                dot_adjacency(&subdivision, true)
            } else {
                render_subdivision_svg(
                    &subdivision,
                    support.as_ref(),
                    &RenderStyle { labels: !no_labels },
                )
            };
            Ok(Outcome::Pass(body))
        }
    }?;
    let (body, code) = match outcome {
        Outcome::Pass(body) => (body, ExitCode::SUCCESS),
        Outcome::Fail(body) => (body, ExitCode::from(1)),
    };
    write_output(&cli.command, &body)?;
    Ok(code)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StratumPair {
    first: Stratum,
    second: Stratum,
}

fn check_unbroken(input: &str) -> Result<Outcome, Box<dyn std::error::Error>> {
    // A pair document carries "n"; a subdivision carries "h".
    let probe: serde_json::Value = serde_json::from_str(input)?;
    let ok = if probe.get("n").is_some() {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct RawPair {
            n: u32,
            #[serde(rename = "A")]
            a: BTreeSet<u32>,
            #[serde(rename = "B")]
            b: BTreeSet<u32>,
        }
        let raw: RawPair = decode(input)?;
        expdeg::pairs::is_unbroken(&raw.a, &raw.b, raw.n)?
    } else {
        let sub: Subdivision = decode(input)?;
        sub.validate()?;
        check_unbroken_subdivision(&sub)
    };
    let body = encode(&json!({ "unbroken": ok }));
    Ok(if ok {
        Outcome::Pass(body)
    } else {
        Outcome::Fail(body)
    })
}

fn configuration_and_condition(
    input: &str,
    name: Option<&str>,
) -> Result<(PointConfiguration, StabilityCondition), Box<dyn std::error::Error>> {
    if let Some(name) = name {
        let cfg: PointConfiguration = decode(input)?;
        return Ok((cfg, named_condition(name)?));
    }
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Bundle {
        configuration: PointConfiguration,
        condition: StabilityCondition,
    }
    let bundle: Bundle = decode(input)?;
    Ok((bundle.configuration, bundle.condition))
}

fn named_condition(name: &str) -> Result<StabilityCondition, Box<dyn std::error::Error>> {
    StabilityCondition::by_name(name).ok_or_else(|| {
        format!(
            "unknown condition `{name}`; built-ins: {}",
            StabilityCondition::builtin_names().join(", ")
        )
        .into()
    })
}

fn renderable(
    input: &str,
) -> Result<(Subdivision, Option<expdeg::stability::SupportAssignment>), Box<dyn std::error::Error>>
{
    let probe: serde_json::Value = serde_json::from_str(input)?;
    if probe.get("pair").is_some() {
        let stratum: Stratum = decode(input)?;
        return Ok((expdeg::fibres::subdivision_of(&build_fibre(&stratum)), None));
    }
    if probe.get("subdivision").is_some() {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Scene {
            subdivision: Subdivision,
            #[serde(default)]
            support: Option<expdeg::stability::SupportAssignment>,
        }
        let scene: Scene = decode(input)?;
        return Ok((scene.subdivision, scene.support));
    }
    if probe.get("bubbles").is_some() {
        let dump: FibreDump = decode(input)?;
        return Ok((Subdivision::new(dump.h, dump.cuts1, dump.cuts2)?, None));
    }
    let sub: Subdivision = decode(input)?;
    sub.validate()?;
    Ok((sub, None))
}

fn io_of(command: &Command) -> &Io {
    match command {
        Command::CheckUnbroken(io)
        | Command::Fibre(io)
        | Command::Iso(io)
        | Command::Equiv(io)
        | Command::Smoothings(io) => io,
        Command::Limits { io, .. }
        | Command::UniqueLimit { io, .. }
        | Command::Audit { io, .. }
        | Command::Render { io, .. } => io,
    }
}

fn read_input(io: &Io) -> Result<String, Box<dyn std::error::Error>> {
    match &io.input {
        Some(path) => Ok(std::fs::read_to_string(path)?),
        None => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            Ok(buf)
        }
    }
}

fn write_output(command: &Command, body: &str) -> Result<(), Box<dyn std::error::Error>> {
    match &io_of(command).output {
        Some(path) => std::fs::write(path, body)?,
        None => print!("{body}"),
    }
    Ok(())
}

fn build_manifest(cli: &Cli) -> Manifest {
    let (name, io) = match &cli.command {
        Command::CheckUnbroken(io) => ("check-unbroken", io),
        Command::Fibre(io) => ("fibre", io),
        Command::Iso(io) => ("iso", io),
        Command::Equiv(io) => ("equiv", io),
        Command::Limits { io, .. } => ("limits", io),
        Command::UniqueLimit { io, .. } => ("unique-limit", io),
        Command::Audit { io, .. } => ("audit", io),
        Command::Smoothings(io) => ("smoothings", io),
        Command::Render { io, .. } => ("render", io),
    };
    let mut manifest = Manifest::new(name).input(
        io.input
            .as_ref()
            .map(|p| p.display().to_string())
            .unwrap_or_else(|| "-".into()),
    );
    manifest.seed = cli.seed;
    if let Some(w) = cli.workers {
        manifest = manifest.option("workers", w);
    }
    manifest
}
