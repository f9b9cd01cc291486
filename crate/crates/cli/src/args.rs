//! Command-line definitions and value parsers.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use hyperlattice::xlab::{linear_grid, MeanMode};
use hyperlattice::{QuadForm, UpperHalfPoint};

#[derive(Debug, Parser)]
#[command(name = "hyperlattice", version, about = "Hyperbolic lattice point counting experiments")]
pub struct Cli {
    /// Write CSV output here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Directory for persisted ball enumerations.
    #[arg(long, global = true, value_name = "DIR")]
    pub cache: Option<PathBuf>,
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true, value_name = "N", value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: Option<u16>,
    /// Run manifest path (default: <out>.manifest, or stderr without --out).
    #[arg(long, global = true, value_name = "FILE")]
    pub manifest: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classical count N(X; z, w) and its error against 3X.
    Classical(ClassicalArgs),
    /// Conjugacy-class count N(H, X; z) and its error series.
    Conj(ConjArgs),
    /// Radial mean value M_H(T).
    Meanvalue(MeanArgs),
    /// Average of the error over the closed geodesic.
    Geoavg(AvgArgs),
    /// Discrete and integrated averages at equally spaced geodesic points.
    Discavg(AvgArgs),
    /// Compare the closed-form Huber transform with direct integration.
    HuberCheck(HuberArgs),
    /// Certify the two sign inequalities on a grid of t.
    Signs(SignArgs),
    /// Check Hecke's relation between Eisenstein periods and ζ(Q, s).
    Hecke(HeckeArgs),
    /// Truncated Epstein zeta function with tail bound.
    Epstein(EpsteinArgs),
    /// Evaluate a truncated spectral expansion from a coefficient file.
    Spectral(SpectralArgs),
}

#[derive(Debug, Args)]
pub struct ClassArgs {
    /// Discriminant; selects the principal form.
    #[arg(long, value_parser = parse_disc, conflicts_with = "form", required_unless_present = "form")]
    pub disc: Option<QuadForm>,
    /// Explicit primitive indefinite form a,b,c.
    #[arg(long, value_parser = parse_form, allow_hyphen_values = true)]
    pub form: Option<QuadForm>,
    /// Power ν of the primitive hyperbolic element.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub nu: u32,
}

impl ClassArgs {
    pub fn quad_form(&self) -> QuadForm {
        self.form.or(self.disc).expect("clap enforces one of --disc/--form")
    }
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Largest X.
    #[arg(long, value_parser = parse_positive)]
    pub xmax: f64,
    /// Number of grid points.
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u32).range(1..))]
    pub grid: u32,
    /// Smallest X; without it the grid is X_k = k·xmax/grid.
    #[arg(long, value_parser = parse_positive)]
    pub xmin: Option<f64>,
}

impl GridArgs {
    pub fn points(&self) -> Vec<f64> {
        let n = self.grid as usize;
        match self.xmin {
            Some(lo) => linear_grid(lo, self.xmax, n),
            None => (1..=n).map(|k| self.xmax * k as f64 / n as f64).collect(),
        }
    }
}

#[derive(Debug, Args)]
pub struct ClassicalArgs {
    /// Center z as x,y.
    #[arg(long, default_value = "0,1", value_parser = parse_point, allow_hyphen_values = true)]
    pub z: UpperHalfPoint,
    /// Second point w as x,y (default: z).
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    pub w: Option<UpperHalfPoint>,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Algo {
    Coset,
    Filter,
    Both,
}

#[derive(Debug, Args)]
pub struct ConjArgs {
    #[command(flatten)]
    pub class: ClassArgs,
    #[arg(long, default_value = "0,1", value_parser = parse_point, allow_hyphen_values = true)]
    pub z: UpperHalfPoint,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long, value_enum, default_value_t = Algo::Coset)]
    pub algo: Algo,
}

#[derive(Debug, Args)]
pub struct MeanArgs {
    #[command(flatten)]
    pub class: ClassArgs,
    #[arg(long, default_value = "0,1", value_parser = parse_point, allow_hyphen_values = true)]
    pub z: UpperHalfPoint,
    /// Largest radial parameter T.
    #[arg(long, value_parser = parse_positive)]
    pub tmax: f64,
    /// Spacing of the reported T values.
    #[arg(long, default_value_t = 0.05, value_parser = parse_positive)]
    pub step: f64,
    /// exp: x = e^r; cosh: x = 2 cosh r.
    #[arg(long, default_value = "exp", value_parser = parse_mode)]
    pub mode: MeanMode,
}

#[derive(Debug, Args)]
pub struct AvgArgs {
    #[command(flatten)]
    pub class: ClassArgs,
    /// Number of geodesic points.
    #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u32).range(1..))]
    pub k: u32,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Debug, Args)]
pub struct HuberArgs {
    /// Spectral parameters t (comma separated, nonzero).
    #[arg(long, default_value = "0.5,1,2,5,10,30", value_delimiter = ',', value_parser = parse_f64)]
    pub t: Vec<f64>,
    /// Values of X >= 1 (comma separated, at most 1e4).
    #[arg(long, default_value = "2,10,100,1000", value_delimiter = ',', value_parser = parse_f64)]
    pub x: Vec<f64>,
    /// Largest accepted relative difference.
    #[arg(long, default_value_t = 1e-8, value_parser = parse_positive)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct SignArgs {
    #[arg(long, default_value_t = 100.0, value_parser = parse_positive)]
    pub tmax: f64,
    #[arg(long, default_value_t = 0.01, value_parser = parse_positive)]
    pub step: f64,
}

#[derive(Debug, Args)]
pub struct HeckeArgs {
    #[command(flatten)]
    pub class: ClassArgs,
    #[arg(long, default_value_t = 2.0, value_parser = parse_positive)]
    pub s: f64,
    #[arg(long, default_value_t = 1e-2, value_parser = parse_positive)]
    pub tol: f64,
    /// Eisenstein truncation c² + d² <= n².
    #[arg(long, default_value_t = 400)]
    pub n_eis: u32,
    /// Epstein zeta truncation.
    #[arg(long, default_value_t = 10_000)]
    pub n_zeta: u64,
    /// Quadrature nodes along the geodesic.
    #[arg(long, default_value_t = 64)]
    pub nodes: usize,
}

#[derive(Debug, Args)]
pub struct EpsteinArgs {
    #[command(flatten)]
    pub class: ClassArgs,
    /// Real part of s.
    #[arg(long, default_value_t = 2.0)]
    pub s: f64,
    /// Imaginary part of s.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub s_im: f64,
    /// Number of terms.
    #[arg(long, default_value_t = 10_000)]
    pub n: u64,
}

#[derive(Debug, Args)]
pub struct SpectralArgs {
    /// Whitespace-separated "t coeff" lines, '#' comments.
    #[arg(long, value_name = "FILE")]
    pub coeffs: PathBuf,
    #[command(flatten)]
    pub grid: GridArgs,
}

fn parse_f64(s: &str) -> Result<f64, String> {
    s.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| format!("not a finite number: {s:?}"))
}

fn parse_positive(s: &str) -> Result<f64, String> {
    let v = parse_f64(s)?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err(format!("must be positive, got {v}"))
    }
}

fn parse_point(s: &str) -> Result<UpperHalfPoint, String> {
    let (x, y) = s.split_once(',').ok_or_else(|| format!("expected x,y, got {s:?}"))?;
    UpperHalfPoint::new(parse_f64(x)?, parse_f64(y)?).map_err(|e| e.to_string())
}

fn parse_disc(s: &str) -> Result<QuadForm, String> {
    let d = s.trim().parse::<i64>().map_err(|e| format!("{s:?}: {e}"))?;
    QuadForm::principal(d).map_err(|e| e.to_string())
}

fn parse_form(s: &str) -> Result<QuadForm, String> {
    let v: Vec<i64> = s
        .split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    let [a, b, c] = v[..] else {
        return Err(format!("expected a,b,c, got {s:?}"));
    };
    QuadForm::new(a, b, c).map_err(|e| e.to_string())
}

fn parse_mode(s: &str) -> Result<MeanMode, String> {
    s.parse().map_err(|e: hyperlattice::Error| e.to_string())
}
