//! Command-line front end.
//!
//! Every subcommand writes one JSON document (or a CSV table) to the given
//! writer. Errors map to stable exit codes through [`exit_code`].

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::catalog;
use crate::error::{Error, Result};
use crate::exact::{format_rational, ln_abs, ln_rational, rational_to_f64, Rational, DEFAULT_PRECISION};
use crate::gram_io::{gram_to_strings, read_gram_file};
use crate::lift::{construct_v_with_precision, Family, LiftMode};
use crate::projection::{dual_gram, primal_gram, AxisVector, GramMatrix};
use crate::reduction::{
    center_density_with_cap, convergence_residual, prop1_search, refit_residual, DensityReport,
    DEFAULT_ENUM_CAP,
};
use crate::strut::{strut_frontier, strut_search, StrutReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_PRECISION: i32 = 3;
pub const EXIT_REFUSED: i32 = 4;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::AmbiguousFloor { .. } => EXIT_PRECISION,
        Error::EnumerationRefused { .. } | Error::SearchRefused { .. } => EXIT_REFUSED,
        _ => EXIT_INPUT,
    }
}

#[derive(Parser, Debug)]
#[command(name = "cubic-shadow", version, about = "Integer projections of Z^n approximating target lattices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Lift a target Gram matrix to an axis vector at scale w
    Lift(LiftArgs),
    /// Evaluate a closed-form vector family
    Family(FamilyArgs),
    /// Residual table over a list of scales
    Converge(ConvergeArgs),
    /// Minimum norm and packing density of a projection lattice
    Density(DensityArgs),
    /// Fat strut search or frontier
    Strut(StrutArgs),
    /// Exhaustive similarity check of (1, a, b) projections against a 2-D target
    Prop1(Prop1Args),
    /// List built-in lattices or print one Gram matrix
    Catalog(CatalogArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct TargetArgs {
    /// Built-in lattice name (see `catalog`)
    #[arg(long, conflicts_with = "gram_file")]
    pub lattice: Option<String>,
    /// JSON file {"dim": d, "entries": [[...]]}
    #[arg(long)]
    pub gram_file: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct FamilyParams {
    /// Family: dm, fcc, fcc-fast, e8, leech, 5_1
    #[arg(long)]
    pub name: Option<String>,
    #[arg(long)]
    pub t: Option<BigInt>,
    #[arg(long)]
    pub w: Option<BigInt>,
    /// Lattice dimension m for the dm family
    #[arg(long)]
    pub dim: Option<usize>,
}

#[derive(Args, Debug)]
pub struct LiftArgs {
    #[command(flatten)]
    pub target: TargetArgs,
    #[arg(long)]
    pub w: BigInt,
    #[arg(long, default_value = "dual")]
    pub mode: String,
    /// Starting precision in bits for irrational Cholesky entries
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    pub precision: u32,
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    #[command(flatten)]
    pub family: FamilyParams,
    /// Also emit the lifted dual Gram and the residual against the target
    #[arg(long)]
    pub with_gram: bool,
}

#[derive(Args, Debug)]
pub struct ConvergeArgs {
    #[command(flatten)]
    pub target: TargetArgs,
    #[command(flatten)]
    pub family: FamilyParams,
    /// Comma-separated increasing scales (t for dm and fcc, w otherwise)
    #[arg(long)]
    pub w_list: String,
    #[arg(long, default_value = "dual")]
    pub mode: String,
    /// Re-fit each residual over reduced bases and nearby scales
    #[arg(long)]
    pub use_reduction: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    pub precision: u32,
}

#[derive(Args, Debug)]
pub struct DensityArgs {
    /// Axis vector as comma-separated integers starting with 1
    #[arg(long, allow_hyphen_values = true)]
    pub v: Option<String>,
    #[command(flatten)]
    pub family: FamilyParams,
    /// Also report the dual lattice
    #[arg(long)]
    pub dual: bool,
    #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
    pub enum_cap: usize,
}

#[derive(Args, Debug)]
pub struct StrutArgs {
    /// Ambient dimension n
    #[arg(long)]
    pub dim: usize,
    #[arg(long, default_value = "1")]
    pub m_min: BigInt,
    #[arg(long)]
    pub m_max: BigInt,
    /// Report the best k candidates instead of the frontier
    #[arg(long)]
    pub top_k: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct Prop1Args {
    #[arg(long)]
    pub bound: u64,
    /// 2-D catalog lattice to compare against
    #[arg(long, default_value = "2Z+Z")]
    pub target: String,
}

#[derive(Args, Debug)]
pub struct CatalogArgs {
    #[arg(long)]
    pub lattice: Option<String>,
}

fn lookup_lattice(name: &str) -> Result<catalog::LatticeCatalogEntry> {
    catalog::lookup(name).or_else(|e| {
        catalog::NAMES
            .iter()
            .find(|n| n.eq_ignore_ascii_case(name))
            .map(|n| catalog::lookup(n))
            .unwrap_or(Err(e))
    })
}

fn load_target(t: &TargetArgs) -> Result<(String, GramMatrix)> {
    match (&t.lattice, &t.gram_file) {
        (Some(name), None) => {
            let e = lookup_lattice(name)?;
            Ok((e.name, e.gram))
        }
        (None, Some(path)) => Ok((path.display().to_string(), read_gram_file(path)?)),
        _ => Err(Error::precondition("give exactly one of --lattice or --gram-file")),
    }
}

fn family_from(p: &FamilyParams) -> Result<Option<Family>> {
    p.name.as_deref().map(|n| Family::from_name(n, p.dim, p.t.clone(), p.w.clone())).transpose()
}

fn parse_v(text: &str) -> Result<AxisVector> {
    let entries = text
        .split(',')
        .map(|s| s.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("bad integer {s:?} in --v"))))
        .collect::<Result<Vec<_>>>()?;
    AxisVector::from_entries(entries)
}

fn parse_w_list(text: &str) -> Result<Vec<BigInt>> {
    let ws = text
        .split(',')
        .map(|s| s.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("bad value {s:?} in --w-list"))))
        .collect::<Result<Vec<_>>>()?;
    if ws.is_empty() || ws.windows(2).any(|p| p[0] >= p[1]) {
        return Err(Error::precondition("--w-list must be nonempty and strictly increasing"));
    }
    Ok(ws)
}

fn rational_json(x: &Rational) -> Value {
    json!({ "exact": format_rational(x), "float": rational_to_f64(x) })
}

fn gram_json(g: &GramMatrix) -> Value {
    json!(gram_to_strings(g))
}

fn density_json(r: &DensityReport) -> Value {
    json!({
        "min_norm": format_rational(&r.min_norm),
        "det": format_rational(&r.det),
        "center_density": r.center_density,
        "packing_density": r.packing_density,
    })
}

fn write_json(out: &mut dyn Write, v: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(v).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(out, "{text}").map_err(|e| Error::Io(e.to_string()))
}

fn write_csv(out: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    w.flush().map_err(|e| Error::Io(e.to_string()))
}

/// Least-squares slope of `y` against `x`; `None` with fewer than two
/// distinct `x` values.
pub fn fit_slope(points: &[(f64, f64)]) -> Option<f64> {
    let n = points.len() as f64;
    if points.len() < 2 {
        return None;
    }
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

fn cmd_lift(a: &LiftArgs, out: &mut dyn Write) -> Result<()> {
    let (name, gram) = load_target(&a.target)?;
    let mode: LiftMode = a.mode.parse()?;
    let lift = construct_v_with_precision(&gram, &a.w, mode, a.precision)?;
    write_json(
        out,
        &json!({
            "lattice": name,
            "w": a.w.to_string(),
            "mode": a.mode,
            "v": lift.v.to_strings(),
            "M": lift.v.norm_sq().to_string(),
            "lifted_dual_gram": gram_json(&lift.dual_gram_lifted),
            "residual": format_rational(&lift.residual),
            "residual_float": rational_to_f64(&lift.residual),
            "c": format_rational(&lift.scale),
            "precision": lift.precision,
        }),
    )
}

fn cmd_family(a: &FamilyArgs, out: &mut dyn Write) -> Result<()> {
    let f = family_from(&a.family)?.ok_or_else(|| Error::precondition("family needs --name"))?;
    let v = f.vector()?;
    let mut doc = json!({
        "family": f.name(),
        "v": v.to_strings(),
        "M": v.norm_sq().to_string(),
    });
    if a.with_gram {
        doc["lifted_dual_gram"] = gram_json(&f.lifted_gram()?);
        doc["c"] = json!(format_rational(&f.scale()));
        doc["residual"] = rational_json(&f.residual()?);
    }
    write_json(out, &doc)
}

struct ConvergeRow {
    w: BigInt,
    norm: f64,
    residual: Rational,
    slope: Option<f64>,
}

fn cmd_converge(a: &ConvergeArgs, out: &mut dyn Write) -> Result<()> {
    let ws = parse_w_list(&a.w_list)?;
    let family = family_from(&FamilyParams { w: ws.first().cloned(), t: ws.first().cloned(), ..a.family.clone() })?;
    let mut rows: Vec<ConvergeRow> = Vec::new();
    let mut points = Vec::new();
    for w in &ws {
        let (v, residual) = match &family {
            Some(f) => {
                let f = f.with_parameter(w.clone());
                let v = f.vector()?;
                let r = if a.use_reduction {
                    refit_residual(&f.target(), &f.lifted_gram()?, &f.scale(), &f.lift_scale())?
                } else {
                    f.residual()?
                };
                (v, r)
            }
            None => {
                let (_, gram) = load_target(&a.target)?;
                let lift = construct_v_with_precision(&gram, w, a.mode.parse()?, a.precision)?;
                let r = convergence_residual(&lift, a.use_reduction)?;
                (lift.v, r)
            }
        };
        let m = v.norm_sq();
        let ln_norm = 0.5 * ln_abs(&m);
        let norm = rational_to_f64(&Rational::from_integer(m)).sqrt();
        if residual > Rational::from_integer(0.into()) {
            points.push((ln_norm, ln_rational(&residual)));
        }
        rows.push(ConvergeRow { w: w.clone(), norm, residual, slope: fit_slope(&points) });
    }
    let slope = rows.last().and_then(|r| r.slope);
    match a.format {
        Format::Json => write_json(
            out,
            &json!({
                "use_reduction": a.use_reduction,
                "rows": rows.iter().map(|r| json!({
                    "w": r.w.to_string(),
                    "norm": r.norm,
                    "residual": format_rational(&r.residual),
                    "residual_float": rational_to_f64(&r.residual),
                    "slope": r.slope,
                })).collect::<Vec<_>>(),
                "slope": slope,
            }),
        ),
        Format::Csv => write_csv(
            out,
            &["w", "norm", "residual", "residual_float", "slope"],
            &rows
                .iter()
                .map(|r| {
                    vec![
                        r.w.to_string(),
                        r.norm.to_string(),
                        format_rational(&r.residual),
                        rational_to_f64(&r.residual).to_string(),
                        r.slope.map(|s| s.to_string()).unwrap_or_default(),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
    }
}

fn cmd_density(a: &DensityArgs, out: &mut dyn Write) -> Result<()> {
    let v = match (&a.v, family_from(&a.family)?) {
        (Some(text), None) => parse_v(text)?,
        (None, Some(f)) => f.vector()?,
        _ => return Err(Error::precondition("give exactly one of --v or --name")),
    };
    let with_hint = |e: Error| {
        if let Error::EnumerationRefused { .. } = e {
            eprintln!("hint: check Gram-entry convergence with `converge` or `family --with-gram` instead");
        }
        e
    };
    let primal = center_density_with_cap(&primal_gram(&v), a.enum_cap).map_err(with_hint)?;
    let mut doc = json!({
        "v": v.to_strings(),
        "M": v.norm_sq().to_string(),
        "primal": density_json(&primal),
    });
    if a.dual {
        doc["dual"] = density_json(&center_density_with_cap(&dual_gram(&v), a.enum_cap).map_err(with_hint)?);
    }
    write_json(out, &doc)
}

fn strut_json(r: &StrutReport) -> Value {
    json!({
        "v": r.v.to_strings(),
        "M": r.m.to_string(),
        "min_norm_primal": format_rational(&r.min_norm_primal),
        "radius": r.radius,
        "center_density": r.center_density,
        "volume_proxy": r.volume_proxy,
    })
}

fn cmd_strut(a: &StrutArgs, out: &mut dyn Write) -> Result<()> {
    let (kind, reports) = match a.top_k {
        Some(k) => ("top_k", strut_search(a.dim, &a.m_min, &a.m_max, k, a.workers)?),
        None => ("frontier", strut_frontier(a.dim, &a.m_max, a.workers)?),
    };
    match a.format {
        Format::Json => write_json(
            out,
            &json!({
                "n": a.dim,
                "kind": kind,
                "rows": reports.iter().map(strut_json).collect::<Vec<_>>(),
            }),
        ),
        Format::Csv => write_csv(
            out,
            &["M", "v", "min_norm_primal", "radius", "center_density", "volume_proxy"],
            &reports
                .iter()
                .map(|r| {
                    vec![
                        r.m.to_string(),
                        r.v.to_strings().join(" "),
                        format_rational(&r.min_norm_primal),
                        r.radius.to_string(),
                        r.center_density.to_string(),
                        r.volume_proxy.to_string(),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
    }
}

fn cmd_prop1(a: &Prop1Args, out: &mut dyn Write) -> Result<()> {
    let target = lookup_lattice(&a.target)?;
    let r = prop1_search(a.bound, &target.gram)?;
    write_json(
        out,
        &json!({
            "target": target.name,
            "bound": r.bound,
            "checked": r.checked,
            "counterexamples": r.counterexamples.iter().map(|&(x, y)| json!([x, y])).collect::<Vec<_>>(),
        }),
    )
}

fn cmd_catalog(a: &CatalogArgs, out: &mut dyn Write) -> Result<()> {
    match &a.lattice {
        Some(name) => {
            let e = lookup_lattice(name)?;
            write_json(
                out,
                &json!({
                    "name": e.name,
                    "notes": e.notes,
                    "dim": e.gram.dim(),
                    "det": format_rational(&e.gram.det()),
                    "entries": gram_json(&e.gram),
                }),
            )
        }
        None => write_json(
            out,
            &json!(catalog::all_entries()
                .iter()
                .map(|e| json!({ "name": e.name, "dim": e.gram.dim(), "notes": e.notes }))
                .collect::<Vec<_>>()),
        ),
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Lift(a) => cmd_lift(a, out),
        Command::Family(a) => cmd_family(a, out),
        Command::Converge(a) => cmd_converge(a, out),
        Command::Density(a) => cmd_density(a, out),
        Command::Strut(a) => cmd_strut(a, out),
        Command::Prop1(a) => cmd_prop1(a, out),
        Command::Catalog(a) => cmd_catalog(a, out),
    }
}

/// Parse `args` (including the program name), run, and return the exit code.
/// Diagnostics go to stderr.
pub fn run<I, S>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
