//! The `ghost` command-line tool.

pub mod table;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::approximant::{build_comb, DyadicInterval};
use crate::error::{Error, Result};
use crate::fourier::{coeff_limit, coeff_limit_2b, coeff_recursive, wiener_average};
use crate::ghost::{
    classify, density_at, fair_coin_bits, interval_measure, point_mass_total, ratio_sequence,
    to_f64, DEFAULT_WITNESS_SEED,
};
use crate::linrep::spectral_diagnostic;
use crate::sequence::{catalog_lookup, eval_f, eval_region, AffineParams, CaseLabel, Limits};
use table::{Cell, Format, Table};

#[derive(Debug, Parser)]
#[command(
    name = "ghost",
    version,
    about = "Ghost measures of affine 2-regular sequences"
)]
pub struct Cli {
    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    /// Named sequence, e.g. `gould_G` or `missing_digit(5,2)`.
    #[arg(long, conflicts_with = "params")]
    pub catalog: Option<String>,

    /// Inline coefficients `A0 A1 b0 b1 [f1]` (f1 defaults to 1).
    #[arg(long, num_args = 4..=5, value_names = ["A0", "A1", "B0", "B1", "F1"])]
    pub params: Option<Vec<u64>>,
}

impl ParamArgs {
    pub fn resolve(&self) -> Result<AffineParams> {
        match (&self.catalog, &self.params) {
            (Some(name), _) => Ok(catalog_lookup(name)?.params),
            (None, Some(v)) => {
                AffineParams::new(v[0], v[1], v[2], v[3], v.get(4).copied().unwrap_or(1))
            }
            (None, None) => Err(Error::Domain(
                "specify --catalog NAME or --params A0 A1 b0 b1 [f1]".into(),
            )),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,

    /// Write to this file instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FourierMode {
    /// `μ̂_N(t)` from the finite formula (needs `--N`).
    Recursive,
    /// `μ̂(t)` with truncated products.
    Limit,
    /// The case-2B closed form.
    Closed,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print f(n) or a whole fundamental region.
    Eval {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, conflicts_with = "region")]
        n: Option<u64>,
        /// Print f(2^N), …, f(2^{N+1} - 1).
        #[arg(long)]
        region: Option<u32>,
    },
    /// Print the case, the Lebesgue type and log2(ρ/ρ*).
    Classify {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Sample the distribution function F_N on a uniform grid.
    Cdf {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long = "N")]
        level: u32,
        #[arg(long, default_value_t = 1024)]
        grid: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Fourier coefficients over a range of t.
    Fourier {
        #[command(flatten)]
        params: ParamArgs,
        /// A single integer or an inclusive range `lo..hi`.
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long, value_enum, default_value = "limit")]
        mode: FourierMode,
        #[arg(long = "N")]
        level: Option<u32>,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Wiener averages W_1..W_N.
    Wiener {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long = "N")]
        level: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Density of μ (case 2B) at x = k/grid.
    Density {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 256)]
        grid: u32,
        #[arg(long, default_value_t = 40)]
        depth: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// μ(E) for dyadic intervals given by their leading bits.
    Interval {
        #[command(flatten)]
        params: ParamArgs,
        /// Bit strings such as `0110`; the empty string is the whole torus.
        #[arg(long, num_args = 1.., required = true, allow_hyphen_values = true)]
        bits: Vec<String>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Atom masses by position of the last one-bit (case 2D).
    Points {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 10)]
        nmax: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Case, Lebesgue type and ρ, ρ* over all (A0,A1,b0,b1) in {0..S}^4.
    JsrTable {
        #[arg(long, default_value_t = 5)]
        sweep: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// μ(E_j(x)) / λ(E_j(x)) for j = 1..len.
    Ratio {
        #[command(flatten)]
        params: ParamArgs,
        /// Digits of x; when absent, fair-coin strings are drawn.
        #[arg(long)]
        bits: Option<String>,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 64)]
        len: usize,
        #[arg(long, default_value_t = DEFAULT_WITNESS_SEED)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

/// Process exit status for an error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Domain(_) | Error::UnknownCatalog { .. } => 2,
        Error::ResourceCap { .. } => 3,
        Error::Io(_) => 4,
    }
}

/// Rendered output and where it should go.
#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub path: Option<PathBuf>,
}

impl Output {
    fn stdout(text: String) -> Self {
        Output { text, path: None }
    }

    fn table(table: Table, out: &OutputArgs) -> Self {
        Output {
            text: table.render(out.format),
            path: out.output.clone(),
        }
    }

    pub fn emit(&self) -> Result<()> {
        match &self.path {
            Some(p) => std::fs::write(p, &self.text).map_err(Error::from),
            None => {
                print!("{}", self.text);
                Ok(())
            }
        }
    }
}

fn format_log_ratio(v: f64) -> String {
    if v == v.round() {
        format!("{}", v as i64)
    } else {
        format!("{v:.5}")
    }
}

fn parse_t_range(s: &str) -> Result<(i64, i64)> {
    let bad = || Error::Domain(format!("invalid t `{s}`: expected an integer or `lo..hi`"));
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (
            lo.parse().map_err(|_| bad())?,
            hi.parse().map_err(|_| bad())?,
        ),
        None => {
            let t = s.parse().map_err(|_| bad())?;
            (t, t)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn exact(q: &BigRational) -> Cell {
    Cell::exact(q)
}

/// Runs one command and returns its output without writing it anywhere.
pub fn execute(command: &Command, limits: &Limits) -> Result<Output> {
    match command {
        Command::Eval { params, n, region } => {
            if *n == Some(0) {
                return Err(Error::Domain("n must be ≥ 1".into()));
            }
            let p = params.resolve()?;
            let text = match (n, region) {
                (Some(n), _) => eval_f(&p, *n)?.to_string(),
                (None, Some(level)) => eval_region(&p, *level, limits)?
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(","),
                (None, None) => return Err(Error::Domain("specify --n or --region".into())),
            };
            Ok(Output::stdout(text + "\n"))
        }
        Command::Classify { params } => {
            let p = params.resolve()?;
            let class = classify(&p);
            let mut line = class.to_string();
            if class.case != CaseLabel::Case2A {
                let d = spectral_diagnostic(&p)?;
                line.push_str(&format!(" log_ratio={}", format_log_ratio(d.log_ratio)));
            }
            Ok(Output::stdout(line + "\n"))
        }
        Command::Cdf {
            params,
            level,
            grid,
            out,
        } => {
            let comb = build_comb(&params.resolve()?, *level, limits)?;
            let mut t = Table::new(&["x", "F"]);
            for (x, f) in comb.cdf_series(*grid)? {
                t.push(vec![x.into(), f.into()]);
            }
            Ok(Output::table(t, out))
        }
        Command::Fourier {
            params,
            t,
            mode,
            level,
            tol,
            out,
        } => {
            let p = params.resolve()?;
            let (lo, hi) = parse_t_range(t)?;
            let mut table = Table::new(&["t", "re", "im", "abs", "tail_bound"]);
            for t in lo..=hi {
                let c = match mode {
                    FourierMode::Recursive => {
                        let n = level
                            .ok_or_else(|| Error::Domain("--mode recursive needs --N".into()))?;
                        limits.check_level(n)?;
                        let v = coeff_recursive(&p, n, t)?;
                        crate::fourier::CoeffValue {
                            value: v,
                            tail_bound: 0.0,
                            depth: n,
                        }
                    }
                    FourierMode::Limit => coeff_limit(&p, t, *tol)?,
                    FourierMode::Closed if t == 0 => coeff_limit(&p, 0, *tol)?,
                    FourierMode::Closed => coeff_limit_2b(&p, t)?,
                };
                table.push(vec![
                    Cell::exact(t),
                    c.value.re.into(),
                    c.value.im.into(),
                    c.value.norm().into(),
                    c.tail_bound.into(),
                ]);
            }
            Ok(Output::table(table, out))
        }
        Command::Wiener { params, level, out } => {
            let p = params.resolve()?;
            let mut table = Table::new(&["N", "W"]);
            for n in 0..=*level {
                table.push(vec![Cell::exact(n), wiener_average(&p, n, limits)?.into()]);
            }
            Ok(Output::table(table, out))
        }
        Command::Density {
            params,
            grid,
            depth,
            out,
        } => {
            let p = params.resolve()?;
            if *grid == 0 {
                return Err(Error::Domain("grid must be ≥ 1".into()));
            }
            let mut table = Table::new(&["x", "g", "tail_bound"]);
            for k in 0..*grid {
                let x = k as f64 / *grid as f64;
                let g = density_at(&p, x, *depth)?;
                table.push(vec![x.into(), g.value.into(), g.tail_bound.into()]);
            }
            Ok(Output::table(table, out))
        }
        Command::Interval { params, bits, out } => {
            let p = params.resolve()?;
            let mut table = Table::new(&["bits", "measure", "value"]);
            for b in bits {
                let iv = DyadicInterval::parse(b)?;
                let m = interval_measure(&p, &iv)?;
                table.push(vec![Cell::Text(b.clone()), exact(&m), to_f64(&m).into()]);
            }
            Ok(Output::table(table, out))
        }
        Command::Points { params, nmax, out } => {
            let p = params.resolve()?;
            let mut table = Table::new(&["n", "atoms", "partial", "tail", "partial_value"]);
            for n in 0..=*nmax {
                let total = point_mass_total(&p, n)?;
                let atoms = if n == 0 {
                    BigInt::from(1)
                } else {
                    BigInt::from(1) << (n - 1)
                };
                table.push(vec![
                    Cell::exact(n),
                    Cell::exact(atoms),
                    exact(&total.partial),
                    exact(&total.tail),
                    to_f64(&total.partial).into(),
                ]);
            }
            Ok(Output::table(table, out))
        }
        Command::JsrTable { sweep, out } => {
            let mut table = Table::new(&[
                "A0",
                "A1",
                "b0",
                "b1",
                "case",
                "lebesgue",
                "rho",
                "rho_star",
                "log_ratio",
            ]);
            for a0 in 0..=*sweep {
                for a1 in 0..=*sweep {
                    for b0 in 0..=*sweep {
                        for b1 in 0..=*sweep {
                            let Ok(p) = AffineParams::new(a0, a1, b0, b1, 1u64) else {
                                continue;
                            };
                            let class = classify(&p);
                            let d = spectral_diagnostic(&p)?;
                            let kind = class.to_string();
                            let kind = kind.split_once(' ').map_or("", |(_, k)| k).to_string();
                            table.push(vec![
                                Cell::exact(a0),
                                Cell::exact(a1),
                                Cell::exact(b0),
                                Cell::exact(b1),
                                Cell::Text(class.case.to_string()),
                                Cell::Text(kind),
                                Cell::exact(&d.rho),
                                Cell::exact(&d.rho_star),
                                d.log_ratio.into(),
                            ]);
                        }
                    }
                }
            }
            Ok(Output::table(table, out))
        }
        Command::Ratio {
            params,
            bits,
            count,
            len,
            seed,
            out,
        } => {
            let p = params.resolve()?;
            let strings = match bits {
                Some(b) => vec![DyadicInterval::parse(b)?.bits().to_vec()],
                None => fair_coin_bits(*seed, *count, *len),
            };
            let mut table = Table::new(&["string", "j", "ln_ratio", "ratio"]);
            for (s, x) in strings.iter().enumerate() {
                for r in ratio_sequence(&p, x)? {
                    table.push(vec![
                        Cell::exact(s),
                        Cell::exact(r.depth),
                        r.ln_ratio.into(),
                        r.ratio().into(),
                    ]);
                }
            }
            Ok(Output::table(table, out))
        }
    }
}

/// Parses arguments, runs the command and writes the output.
pub fn run(cli: &Cli) -> Result<()> {
    if let Some(n) = cli.threads {
        // a second initialisation in the same process is harmless
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    execute(&cli.command, &Limits::from_env())?.emit()
}
