//! `cremona`: seed curves, apply constructions, audit, replay meridians and
//! lift Zariski pairs. Documents are JSON on standard output; diagnostics go
//! to standard error.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use cremona::constructions::{apply, audit_self_intersection};
use cremona::curves::{seed_generic_lines, seed_pencil, seed_smooth};
use cremona::document::{
    from_json, to_json, AuditDocument, CurveDocument, MeridianReport, PairDocument, Reports,
};
use cremona::extensions::{Property, Tri};
use cremona::zariski::{enumerate_family, lift_pair, ZariskiPairRecord};
use cremona::{ConstructionSpec, CurveDatum, Error, GroupDescriptor, SingularityMultiset, SingularityType};

#[derive(Parser)]
#[command(name = "cremona", version, about = "Cremona transformations of plane-curve data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a seed curve document.
    Seed(SeedArgs),
    /// Apply a construction to a curve document.
    Apply(ApplyArgs),
    /// Lift a Zariski pair through a construction.
    Zariski(ZariskiArgs),
    /// Self-intersection audit of a construction.
    Audit(AuditArgs),
    /// Replay the elementary transformations of a construction.
    Meridians(MeridianArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum SeedKind {
    Smooth,
    Pencil,
    GenericLines,
    Custom,
}

#[derive(Args)]
struct SeedArgs {
    kind: SeedKind,
    /// Degree of a smooth curve.
    #[arg(long)]
    degree: Option<u64>,
    /// Number of lines of a pencil or arrangement.
    #[arg(long)]
    lines: Option<u64>,
    /// Component degrees of a custom curve, e.g. `6` or `2,2,1`.
    #[arg(long, value_delimiter = ',')]
    components: Vec<u64>,
    /// Singularity of a custom curve, e.g. `[2,2]`; `6*[2]` adds six.
    #[arg(long = "singularity")]
    singularities: Vec<String>,
    /// Group of a custom curve, e.g. `Z/6` or `Group(Z/2*Z/3)`.
    #[arg(long)]
    group: Option<String>,
    /// Asserted property of a custom curve's group, e.g. `cyclic=false`.
    #[arg(long = "assert")]
    assertions: Vec<String>,
}

#[derive(Args)]
struct ApplyArgs {
    /// Construction, e.g. `general(1,2)` or `mixed(2,1;1,2)`.
    spec: String,
    /// Curve document (standard input when omitted or `-`).
    #[arg(long, short)]
    input: Option<PathBuf>,
    /// Emit only the audit report.
    #[arg(long)]
    audit_only: bool,
    /// Add the meridian word table.
    #[arg(long)]
    meridians: bool,
}

#[derive(Args)]
struct ZariskiArgs {
    /// Curve document of the curve with cyclic group.
    #[arg(long)]
    left: PathBuf,
    /// Curve document of the curve with non-cyclic group.
    #[arg(long)]
    right: PathBuf,
    /// Construction to lift by.
    #[arg(long, conflicts_with = "enumerate", required_unless_present = "enumerate")]
    spec: Option<String>,
    /// Lift by every `general(...)` with at most this many lines and steps.
    #[arg(long)]
    enumerate: Option<u64>,
}

#[derive(Args)]
struct AuditArgs {
    /// Construction to audit.
    spec: String,
    /// Degree of the curve before the construction.
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    degree: Option<u64>,
    /// Take the degree from a curve document (`-` for standard input).
    #[arg(long, short)]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct MeridianArgs {
    /// Construction to replay.
    spec: String,
    /// Print the line-oriented trace instead of JSON.
    #[arg(long)]
    text: bool,
}

fn read_input(path: Option<&PathBuf>) -> Result<String, Error> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).map_err(|e| Error::Document(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Error::Document(format!("standard input: {e}")))?;
            Ok(s)
        }
    }
}

fn read_curve(path: Option<&PathBuf>) -> Result<CurveDatum, Error> {
    Ok(from_json::<CurveDocument>(&read_input(path)?)?.curve)
}

fn required(value: Option<u64>, flag: &str) -> Result<u64, Error> {
    value.ok_or_else(|| Error::InvalidArgument(format!("missing --{flag}")))
}

fn parse_singularity(text: &str) -> Result<(SingularityType, usize), Error> {
    match text.split_once('*') {
        Some((count, t)) => {
            let n = count
                .trim()
                .parse()
                .map_err(|_| Error::Parse {
                    what: "singularity count",
                    token: count.to_string(),
                })?;
            Ok((t.trim().parse()?, n))
        }
        None => Ok((text.trim().parse()?, 1)),
    }
}

fn parse_assertion(text: &str) -> Result<(Property, Tri), Error> {
    let (name, value) = text.split_once('=').ok_or_else(|| Error::Parse {
        what: "assertion (expected name=value)",
        token: text.to_string(),
    })?;
    Ok((name.trim().parse()?, value.trim().parse()?))
}

fn seed(args: &SeedArgs) -> Result<String, Error> {
    let curve = match args.kind {
        SeedKind::Smooth => seed_smooth(required(args.degree, "degree")?)?,
        SeedKind::Pencil => seed_pencil(required(args.lines, "lines")?)?,
        SeedKind::GenericLines => seed_generic_lines(required(args.lines, "lines")?)?,
        SeedKind::Custom => {
            let mut sings = SingularityMultiset::new();
            for s in &args.singularities {
                let (t, n) = parse_singularity(s)?;
                sings.insert_many(t, n);
            }
            let group: GroupDescriptor = args
                .group
                .as_deref()
                .ok_or_else(|| Error::InvalidArgument("missing --group".into()))?
                .parse()?;
            let asserted = args
                .assertions
                .iter()
                .map(|a| parse_assertion(a))
                .collect::<Result<Vec<_>, _>>()?;
            let degrees = args.components.iter().map(|&d| BigUint::from(d)).collect();
            CurveDatum::custom(degrees, sings, group, &asserted)?
        }
    };
    to_json(&CurveDocument::new(curve))
}

fn apply_cmd(args: &ApplyArgs) -> Result<String, Error> {
    let spec: ConstructionSpec = args.spec.parse()?;
    let curve = read_curve(args.input.as_ref())?;
    let audit = audit_self_intersection(&curve.degree(), &spec)?;
    if args.audit_only {
        return to_json(&AuditDocument::new(audit));
    }
    let out = apply(&curve, &spec)?;
    let meridians = if args.meridians {
        Some(MeridianReport::of_spec(&spec)?)
    } else {
        None
    };
    let doc = CurveDocument::new(out).with_reports(Reports {
        audit: Some(audit),
        meridians,
    });
    to_json(&doc)
}

fn zariski(args: &ZariskiArgs) -> Result<String, Error> {
    let left = read_curve(Some(&args.left))?;
    let right = read_curve(Some(&args.right))?;
    let pair = ZariskiPairRecord::seed(left, right);
    let pairs = match (&args.spec, args.enumerate) {
        (Some(spec), _) => vec![lift_pair(&pair, &spec.parse()?)?],
        (None, Some(bound)) => enumerate_family(&pair, bound)?,
        (None, None) => return Err(Error::InvalidArgument("give --spec or --enumerate".into())),
    };
    to_json(&PairDocument::new(pairs))
}

fn audit(args: &AuditArgs) -> Result<String, Error> {
    let spec: ConstructionSpec = args.spec.parse()?;
    let degree = match args.degree {
        Some(0) => return Err(Error::InvalidArgument("degree must be at least 1".into())),
        Some(d) => BigUint::from(d),
        None => read_curve(args.input.as_ref())?.degree(),
    };
    to_json(&AuditDocument::new(audit_self_intersection(&degree, &spec)?))
}

fn meridians(args: &MeridianArgs) -> Result<String, Error> {
    let report = MeridianReport::of_spec(&args.spec.parse()?)?;
    if args.text {
        Ok(report.to_text())
    } else {
        to_json(&report)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Seed(a) => seed(a),
        Command::Apply(a) => apply_cmd(a),
        Command::Zariski(a) => zariski(a),
        Command::Audit(a) => audit(a),
        Command::Meridians(a) => meridians(a),
    };
    match result {
        Ok(text) => {
            let mut out = io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::FAILURE;
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
