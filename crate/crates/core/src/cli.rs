//! The `lcm` command line. [`run`] takes the argument list and output streams
//! so it can be driven from tests.

use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::LcmError;
use crate::hull::{compare, sample, uniform_grid};
use crate::majorant::{least_concave_majorant_traced, validate};
use crate::partition::{concave_increasing_set, group_by_convex_separators, refine, Cell};
use crate::piecewise::{PiecewiseCubic, PiecewiseJson};
use crate::spline::{clamped_spline, mesh_for_tolerance, SplineProblem};
use crate::tol::Tolerances;

#[derive(Debug, Parser)]
#[command(name = "lcm", version, about = "Least concave majorants of piecewise cubics")]
struct Cli {
    /// Worker threads for grid sampling.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Maximum, plateau and component intervals.
    Components {
        input: PathBuf,
        /// Log every march step to stderr as JSON lines.
        #[arg(long)]
        trace: bool,
    },
    /// The assembled majorant.
    Majorant {
        input: PathBuf,
        #[arg(long, default_value_t = 1001)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        out: Format,
    },
    /// The level function (derivative of the majorant).
    Level {
        input: PathBuf,
        #[arg(long, default_value_t = 1001)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        out: Format,
    },
    /// Cells of the refined partition.
    Partition { input: PathBuf },
    /// Clamped cubic spline through `{"nodes": [...], "values": [...]}`.
    Spline {
        input: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        clamp_left: f64,
        #[arg(long, allow_negative_numbers = true)]
        clamp_right: f64,
    },
    /// Mesh width and subinterval count for a derivative tolerance.
    Bound {
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        g4: f64,
        #[arg(long)]
        length: f64,
    },
    /// Compare against the grid hull oracle.
    Compare {
        input: PathBuf,
        #[arg(long, default_value_t = 10001)]
        grid: usize,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Lcm(#[from] LcmError),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Lcm(LcmError::Contract(_)) => 2,
            _ => 1,
        }
    }
}

/// Runs the command line; returns the process exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                1
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    let tol = Tolerances::from_env();
    match dispatch(&cli, &tol, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code()
        }
    }
}

fn dispatch(cli: &Cli, tol: &Tolerances, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Components { input, trace } => {
            let pw = load(input)?;
            let mut trace_err: Option<io::Error> = None;
            let mut log = |e: &crate::majorant::TraceEvent| {
                if *trace && trace_err.is_none() {
                    if let Err(e) = write_json(err, e) {
                        trace_err = Some(e);
                    }
                }
            };
            let res = least_concave_majorant_traced(&pw, tol, &mut log)?;
            #[derive(Serialize)]
            struct Out {
                #[serde(rename = "M")]
                m: f64,
                #[serde(rename = "C")]
                c: (f64, f64),
                components: Vec<(f64, f64)>,
            }
            emit(
                out,
                &Out {
                    m: res.max_structure.max_value,
                    c: res.max_structure.plateau,
                    components: res.components,
                },
            )
        }
        Command::Majorant {
            input,
            samples,
            out: fmt,
        }
        | Command::Level {
            input,
            samples,
            out: fmt,
        } => {
            let level_only = matches!(cli.command, Command::Level { .. });
            let pw = load(input)?;
            let res = least_concave_majorant_traced(&pw, tol, &mut |_| {})?;
            match fmt {
                Format::Json if level_only => emit(out, &res.level.to_json()),
                Format::Json => emit(out, &res.majorant.to_json()),
                Format::Csv => {
                    let (a, b) = pw.domain();
                    let mut xs = uniform_grid(a, b, *samples);
                    xs.extend(res.components.iter().flat_map(|&(lo, hi)| [lo, hi]));
                    xs.sort_by(f64::total_cmp);
                    xs.dedup();
                    let fs = sample(|x| pw.value(x), &xs, cli.threads);
                    let gs = sample(|x| res.majorant.value(x), &xs, cli.threads);
                    let ls = sample(|x| res.level.value(x), &xs, cli.threads);
                    let mut text = String::from("x,F,Fhat,level\n");
                    for i in 0..xs.len() {
                        text.push_str(&format!(
                            "{},{},{},{}\n",
                            fmt_g17(xs[i]),
                            fmt_g17(fs[i]),
                            fmt_g17(gs[i]),
                            fmt_g17(ls[i])
                        ));
                    }
                    out.write_all(text.as_bytes()).map_err(io_err)
                }
            }
        }
        Command::Partition { input } => {
            let pw = load(input)?;
            validate(&pw, tol)?;
            let (a, b) = pw.domain();
            let rp = refine(&pw, a, b, tol);
            let cis = group_by_convex_separators(&concave_increasing_set(&rp, tol), &rp);
            #[derive(Serialize)]
            struct Out<'a> {
                cells: &'a [Cell],
                concave_increasing: Vec<(f64, f64, usize)>,
            }
            emit(
                out,
                &Out {
                    cells: &rp.cells,
                    concave_increasing: cis.members.iter().map(|m| (m.lo, m.hi, m.group)).collect(),
                },
            )
        }
        Command::Spline {
            input,
            clamp_left,
            clamp_right,
        } => {
            #[derive(Deserialize)]
            #[serde(deny_unknown_fields)]
            struct Samples {
                nodes: Vec<f64>,
                values: Vec<f64>,
            }
            let s: Samples = read_json(input)?;
            let prob = SplineProblem::new(s.nodes, s.values, *clamp_left, *clamp_right, 0.0)?;
            emit(out, &clamped_spline(&prob)?.to_json())
        }
        Command::Bound { eps, g4, length } => {
            if !(*eps > 0.0 && *g4 > 0.0 && *length > 0.0) {
                return Err(LcmError::Input("--eps, --g4 and --length must be positive".into()).into());
            }
            let mesh = mesh_for_tolerance(*eps, *g4, *length);
            #[derive(Serialize)]
            struct Out {
                norm_h: f64,
                count: usize,
            }
            emit(
                out,
                &Out {
                    norm_h: mesh.norm_h,
                    count: mesh.count,
                },
            )
        }
        Command::Compare { input, grid } => {
            let pw = load(input)?;
            let res = least_concave_majorant_traced(&pw, tol, &mut |_| {})?;
            emit(out, &compare(&pw, &res, (*grid).max(2), cli.threads))
        }
    }
}

fn io_err(e: io::Error) -> CliError {
    CliError::Io(e.to_string())
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| LcmError::Input(format!("{}: {e}", path.display())).into())
}

fn load(path: &Path) -> Result<PiecewiseCubic, CliError> {
    let raw: PiecewiseJson = read_json(path)?;
    let pw = PiecewiseCubic::try_from(raw)?;
    pw.check_continuity(Tolerances::from_env().scale)?;
    Ok(pw)
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    write_json(out, value).map_err(io_err)
}

fn write_json<T: Serialize + ?Sized>(out: &mut dyn Write, value: &T) -> io::Result<()> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, G17);
    value.serialize(&mut ser).map_err(io::Error::other)?;
    buf.push(b'\n');
    out.write_all(&buf)
}

/// JSON formatter printing floats with 17 significant digits.
struct G17;

impl serde_json::ser::Formatter for G17 {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(fmt_g17(value).as_bytes())
    }
}

/// `%.17g`: 17 significant digits, trailing zeros trimmed, exponent form
/// outside `1e-5 <= |x| < 1e17`.
pub fn fmt_g17(x: f64) -> String {
    if !x.is_finite() {
        return "null".into();
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{x:.16e}");
    let (mant, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..17).contains(&exp) {
        let decimals = (16 - exp).max(0) as usize;
        let fixed = format!("{x:.decimals$}");
        trim_zeros(&fixed).to_string()
    } else {
        let m = trim_zeros(mant);
        format!("{m}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs())
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
