//! Command-line front end.
//!
//! Group elements are written `xi,u_re,u_im` (radians); complex numbers
//! `re,im`. Every command is deterministic in its arguments. Floats are
//! printed in shortest round-trip form.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use crate::curves::{self, LengthConfig, StraightPath};
use crate::error::Error;
use crate::finsler::{self, sphere_directions, stratum_functional, TangentVector};
use crate::group::{AutElement, DiskPoint};
use crate::metric::{dist_closed, dist_oracle, OracleConfig};
use crate::randers::ellipse_boundary;
use crate::selftest::{run_selftest, SelftestConfig};

/// Directory used for relative `--out` paths when set.
pub const OUT_DIR_ENV: &str = "AUT_DISK_OUT_DIR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "aut-disk", version, about = "Sup-norm metric on the automorphism group of the unit disk")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format (defaults: csv for `ellipse` and `sweep`, json otherwise)
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,

    /// Write output to this file instead of stdout. Relative paths resolve
    /// against $AUT_DISK_OUT_DIR when it is set.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form distance with its case tag and intermediates
    Dist(PairArgs),
    /// Brute-force boundary maximization next to the closed form
    Oracle {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = 4096)]
        grid_size: usize,
        #[arg(long, default_value_t = 60)]
        refine_iters: usize,
    },
    /// Finsler norm of a tangent vector
    Norm(TangentArgs),
    /// Fundamental tensor, eigenvalues and kernel direction
    Tensor(TangentArgs),
    /// Points on the saturation ellipse of phi_u
    Ellipse {
        #[arg(long, value_parser = parse_complex)]
        u: Complex64,
        #[arg(long, default_value_t = 360)]
        n: usize,
    },
    /// Length of the coordinate-straight curve between two elements
    Curve {
        #[command(flatten)]
        pair: PairArgs,
        /// Extra full turns in xi
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        winding: i32,
        #[arg(long, default_value_t = 1e-6)]
        rel_tol: f64,
    },
    /// Shortest member of a seeded curve family into the saturated set
    Witness {
        #[arg(long, value_parser = parse_element)]
        base: AutElement,
        #[arg(long, value_parser = parse_element)]
        target: AutElement,
        #[arg(long, default_value_t = 100)]
        family_size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Keep xi = 0 along every curve (rotation angles of base/target are ignored)
        #[arg(long)]
        slice: bool,
    },
    /// Tabulated datasets
    Sweep {
        #[arg(long, value_enum)]
        kind: SweepKind,
        /// Grid resolution per axis (heatmap) or number of points
        #[arg(long, default_value_t = 50)]
        n: usize,
        /// Base element for the heatmap / norm profile
        #[arg(long, value_parser = parse_element, default_value = "0,0,0")]
        base: AutElement,
        /// Rotation angle of the heatmap targets
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        xi: f64,
        /// Zero of phi_u for the ellipse sweep
        #[arg(long, value_parser = parse_complex, default_value = "0.5,0")]
        u: Complex64,
        /// Refuse to emit more rows than this
        #[arg(long, default_value_t = 1_000_000)]
        max_rows: usize,
    },
    /// Reduced oracle, invariance and tensor suites
    Selftest {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[arg(long, value_parser = parse_element, allow_hyphen_values = true)]
    pub f: AutElement,
    #[arg(long, value_parser = parse_element, allow_hyphen_values = true)]
    pub g: AutElement,
}

#[derive(Debug, Args)]
pub struct TangentArgs {
    #[arg(long, value_parser = parse_element, allow_hyphen_values = true)]
    pub f: AutElement,
    #[arg(long, allow_hyphen_values = true)]
    pub s: f64,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub h: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepKind {
    DistanceHeatmap,
    Ellipse,
    NormProfile,
}

fn parse_floats<const N: usize>(s: &str) -> Result<[f64; N], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != N {
        return Err(format!("expected {N} comma-separated numbers, got {:?}", s));
    }
    let mut out = [0.0; N];
    for (o, p) in out.iter_mut().zip(&parts) {
        *o = p.parse::<f64>().map_err(|e| format!("{p:?}: {e}"))?;
        if !o.is_finite() {
            return Err(format!("{p:?} is not finite"));
        }
    }
    Ok(out)
}

/// Parses `xi,u_re,u_im`.
pub fn parse_element(s: &str) -> Result<AutElement, String> {
    let [xi, re, im] = parse_floats::<3>(s)?;
    AutElement::from_coords(xi, re, im).map_err(|e| e.to_string())
}

/// Parses `re,im`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let [re, im] = parse_floats::<2>(s)?;
    Ok(Complex64::new(re, im))
}

/// Rows of a CSV table; values are already formatted.
struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn render(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.join(","));
            out.push('\n');
        }
        out
    }
}

fn num(x: f64) -> String {
    // Debug keeps a trailing `.0` on integral values, like the JSON output
    format!("{x:?}")
}

enum Output {
    Json(serde_json::Value),
    Table(Table),
    Text(String),
}

struct Outcome {
    output: Output,
    code: i32,
}

fn ok(output: Output) -> Result<Outcome, Error> {
    Ok(Outcome { output, code: EXIT_OK })
}

fn to_value<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("serializable")
}

fn table_to_json(t: &Table) -> serde_json::Value {
    let rows: Vec<serde_json::Value> = t
        .rows
        .iter()
        .map(|r| {
            let obj: serde_json::Map<String, serde_json::Value> = t
                .header
                .iter()
                .zip(r)
                .map(|(k, v)| {
                    let val = v
                        .parse::<f64>()
                        .ok()
                        .and_then(serde_json::Number::from_f64)
                        .map(serde_json::Value::Number)
                        .unwrap_or_else(|| serde_json::Value::String(v.clone()));
                    (k.to_string(), val)
                })
                .collect();
            serde_json::Value::Object(obj)
        })
        .collect();
    serde_json::Value::Array(rows)
}

fn execute(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Dist(p) => {
            let d = dist_closed(&p.f, &p.g);
            ok(Output::Json(to_value(&d)))
        }
        Command::Oracle { pair, grid_size, refine_iters } => {
            let cfg = OracleConfig {
                grid_size: *grid_size,
                refine_iters: *refine_iters,
                ..OracleConfig::default()
            };
            cfg.validate()?;
            let closed = dist_closed(&pair.f, &pair.g).distance;
            let oracle = dist_oracle(&pair.f, &pair.g, &cfg);
            ok(Output::Json(json!({
                "distance_closed": closed,
                "distance_oracle": oracle,
                "abs_diff": (closed - oracle).abs(),
                "grid_size": grid_size,
                "refine_iters": refine_iters,
            })))
        }
        Command::Norm(t) => {
            let y = TangentVector::new(t.s, t.h);
            ok(Output::Json(json!({
                "norm": finsler::finsler_norm(&t.f, &y),
                "stratum": finsler::stratum_of(&t.f, &y),
                "stratum_functional": stratum_functional(t.f.u(), &y),
            })))
        }
        Command::Tensor(t) => {
            let y = TangentVector::new(t.s, t.h);
            let g = finsler::fundamental_tensor(&t.f, &y)?;
            let v = finsler::kernel_direction(&t.f, &y)?;
            let m = g.matrix;
            let rows: Vec<Vec<f64>> = (0..3).map(|i| (0..3).map(|j| m[(i, j)]).collect()).collect();
            ok(Output::Json(json!({
                "stratum": g.stratum,
                "matrix": rows,
                "eigenvalues": g.eigenvalues(),
                "kernel": [v[0], v[1], v[2]],
                "kernel_residual": (m * v).norm() / v.norm(),
            })))
        }
        Command::Ellipse { u, n } => {
            let u = DiskPoint::new(*u)?;
            ok(Output::Table(ellipse_table(u, *n)?))
        }
        Command::Curve { pair, winding, rel_tol } => {
            let path = StraightPath::between(&pair.f, &pair.g, *winding);
            let cfg = LengthConfig {
                rel_tol: *rel_tol,
                ..LengthConfig::default()
            };
            let length = curves::curve_length(&path, &cfg)?;
            let chord = dist_closed(&pair.f, &pair.g).distance;
            ok(Output::Json(json!({
                "length": length,
                "chord": chord,
                "excess": length - chord,
            })))
        }
        Command::Witness { base, target, family_size, seed, slice } => {
            let report = if *slice {
                curves::nongeodesic_witness_slice(base.u(), target.u(), *family_size, *seed)?
            } else {
                curves::nongeodesic_witness(base, target, *family_size, *seed)?
            };
            let code = if report.gap > 0.0 { EXIT_OK } else { EXIT_FAILURE };
            Ok(Outcome {
                output: Output::Json(to_value(&report)),
                code,
            })
        }
        Command::Sweep { kind, n, base, xi, u, max_rows } => {
            let rows = match kind {
                SweepKind::DistanceHeatmap => n.saturating_mul(*n),
                _ => *n,
            };
            if rows > *max_rows {
                return Err(Error::InvalidParameter(format!(
                    "sweep would emit {rows} rows, above --max-rows {max_rows}"
                )));
            }
            let table = match kind {
                SweepKind::DistanceHeatmap => heatmap_table(base, *xi, *n)?,
                SweepKind::Ellipse => ellipse_table(DiskPoint::new(*u)?, *n)?,
                SweepKind::NormProfile => norm_profile_table(base, *n)?,
            };
            ok(Output::Table(table))
        }
        Command::Selftest { samples, seed } => {
            let report = run_selftest(&SelftestConfig {
                samples: *samples,
                seed: *seed,
            });
            let code = if report.passed() { EXIT_OK } else { EXIT_FAILURE };
            let output = match cli.format {
                Some(Format::Json) => Output::Json(to_value(&report)),
                _ => Output::Text(report.table()),
            };
            Ok(Outcome { output, code })
        }
    }
}

fn ellipse_table(u: DiskPoint, n: usize) -> Result<Table, Error> {
    let pts = ellipse_boundary(u, n)?;
    Ok(Table {
        header: vec!["re", "im"],
        rows: pts.iter().map(|p| vec![num(p.re), num(p.im)]).collect(),
    })
}

/// Distance from `base` to `f_{xi, v}` for `v` on an `n x n` grid over
/// `[-0.99, 0.99]^2`; grid points outside the disk are skipped.
fn heatmap_table(base: &AutElement, xi: f64, n: usize) -> Result<Table, Error> {
    if n < 2 {
        return Err(Error::InvalidParameter("heatmap needs n >= 2".into()));
    }
    let extent = 0.99;
    let mut rows = Vec::new();
    for i in 0..n {
        let im = extent - 2.0 * extent * i as f64 / (n - 1) as f64;
        for j in 0..n {
            let re = -extent + 2.0 * extent * j as f64 / (n - 1) as f64;
            let Ok(v) = DiskPoint::from_parts(re, im) else { continue };
            let d = dist_closed(base, &AutElement::new(xi, v)?);
            rows.push(vec![num(re), num(im), num(d.distance), format!("{:?}", d.case)]);
        }
    }
    Ok(Table {
        header: vec!["u_re", "u_im", "distance", "case"],
        rows,
    })
}

fn norm_profile_table(base: &AutElement, n: usize) -> Result<Table, Error> {
    if n < 1 {
        return Err(Error::InvalidParameter("norm profile needs n >= 1".into()));
    }
    let rows = sphere_directions(n)
        .into_iter()
        .map(|y| {
            vec![
                num(y.s),
                num(y.h.re),
                num(y.h.im),
                num(finsler::finsler_norm(base, &y)),
                format!("{:?}", finsler::stratum_of(base, &y)),
            ]
        })
        .collect();
    Ok(Table {
        header: vec!["s", "h_re", "h_im", "norm", "stratum"],
        rows,
    })
}

fn default_format(cmd: &Command) -> Format {
    match cmd {
        Command::Ellipse { .. } | Command::Sweep { .. } => Format::Csv,
        _ => Format::Json,
    }
}

fn render(output: Output, format: Format) -> String {
    match (output, format) {
        (Output::Json(v), Format::Json) => format!("{v}\n"),
        (Output::Json(v), Format::Csv) => json_to_csv(&v),
        (Output::Table(t), Format::Csv) => t.render(),
        (Output::Table(t), Format::Json) => format!("{}\n", table_to_json(&t)),
        (Output::Text(s), _) => s,
    }
}

/// Flat objects become a one-row table; nested values are embedded as JSON.
fn json_to_csv(v: &serde_json::Value) -> String {
    let Some(obj) = v.as_object() else {
        return format!("{v}\n");
    };
    let cell = |x: &serde_json::Value| match x {
        serde_json::Value::String(s) => s.clone(),
        serde_json::Value::Number(n) => n.to_string(),
        other => format!("\"{}\"", other.to_string().replace('"', "\"\"")),
    };
    let header: Vec<&str> = obj.keys().map(String::as_str).collect();
    let row: Vec<String> = obj.values().map(cell).collect();
    format!("{}\n{}\n", header.join(","), row.join(","))
}

fn resolve_out(path: &PathBuf) -> PathBuf {
    if path.is_relative() {
        if let Some(dir) = std::env::var_os(OUT_DIR_ENV) {
            return PathBuf::from(dir).join(path);
        }
    }
    path.clone()
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let format = cli.format.unwrap_or_else(|| default_format(&cli.command));
    let text = render(outcome.output, format);
    match &cli.out {
        Some(path) => {
            let path = resolve_out(path);
            if let Err(e) = std::fs::write(&path, text) {
                let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                return EXIT_USAGE;
            }
        }
        None => {
            let _ = stdout.write_all(text.as_bytes());
        }
    }
    outcome.code
}
