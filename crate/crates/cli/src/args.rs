use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use conebound::sampling::SampleScheme;
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "conebound", version, about = "Width bounds for maps into Euclidean cones, checked numerically")]
pub struct Cli {
    /// Suppress the human-readable summary on stderr.
    #[arg(long, global = true)]
    pub quiet: bool,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certify a width bound or check the auxiliary-function identities.
    #[command(subcommand)]
    Verify(Verify),
    /// Fit the minimal cone with a given vertex to a point cloud.
    FitCone(FitConeArgs),
    /// Decide whether a point is the vertex of a non-degenerate cone around a cloud.
    CornerTest(CornerArgs),
    /// Compute the constant A_η.
    AEta(AEtaArgs),
    /// Rotationally symmetric models and the paraboloid sharpness sweep.
    #[command(subcommand)]
    Models(Models),
    /// Extract a two-column series from a report as CSV.
    Plot(PlotArgs),
}

#[derive(Debug, Subcommand)]
pub enum Verify {
    Theorem1(Theorem1Args),
    Theorem2(Theorem2Args),
    ProofIdentities(ProofArgs),
}

#[derive(Debug, Subcommand)]
pub enum Models {
    /// Integrability of the volume quotient or the volume-growth integrand.
    Stochastic(StochasticArgs),
    /// cos²θ_d / d for the paraboloid family over a log grid of d.
    Sharpness(SharpnessArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricArg {
    Induced,
    Euclidean,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Radial,
    Uniform,
}

impl From<Scheme> for SampleScheme {
    fn from(s: Scheme) -> Self {
        match s {
            Scheme::Radial => SampleScheme::Radial,
            Scheme::Uniform => SampleScheme::Uniform,
        }
    }
}

/// A comma-separated coordinate list, parsed as one value.
pub type Coords = Vec<f64>;

pub fn parse_vector(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}")))
        .collect()
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        Ok(x) => Err(format!("{x} is not positive")),
        Err(e) => Err(e.to_string()),
    }
}

fn count(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("sample count must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FamilyArgs {
    /// paraboloid, flat-cone, sphere or plane.
    #[arg(long)]
    pub family: String,
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    /// Paraboloid offset.
    #[arg(long, default_value_t = 0.1, value_parser = positive)]
    pub d: f64,
    /// Half-width of the sampled chart box (outer radius for flat-cone).
    #[arg(long = "box", default_value_t = 10.0, value_parser = positive)]
    pub box_radius: f64,
    /// Sphere radius.
    #[arg(long, default_value_t = 1.0, value_parser = positive)]
    pub radius: f64,
    /// Height of the sphere center on the last axis (default 3 × radius).
    #[arg(long)]
    pub center_height: Option<f64>,
    #[arg(long, default_value_t = 10_000, value_parser = count)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Scheme::Radial)]
    pub scheme: Scheme,
    /// Cone vertex, comma separated (default: origin).
    #[arg(long, value_parser = parse_vector)]
    pub vertex: Option<Coords>,
    /// Cone axis, comma separated; without it the minimal cone is fitted.
    #[arg(long, value_parser = parse_vector)]
    pub axis: Option<Coords>,
    /// Fixed cone width in radians (requires --axis).
    #[arg(long, requires = "axis", value_parser = positive)]
    pub theta: Option<f64>,
    /// Output path (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct Theorem1Args {
    #[command(flatten)]
    #[serde(flatten)]
    pub family: FamilyArgs,
    #[arg(long, value_enum, default_value_t = MetricArg::Induced)]
    pub metric: MetricArg,
    /// Use A_m instead of A_1 (isometric immersions, induced metric only).
    #[arg(long)]
    pub isometric: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct Theorem2Args {
    #[command(flatten)]
    #[serde(flatten)]
    pub family: FamilyArgs,
    /// Curvature bound: sectional curvature ≤ chi² (default: from samples).
    #[arg(long)]
    pub chi: Option<f64>,
}

#[derive(Debug, Args, Serialize)]
pub struct ProofArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub family: FamilyArgs,
    #[arg(long, default_value_t = 0.5)]
    pub xi: f64,
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    /// cos θ of the cone used by the estimates (default: fitted cone).
    #[arg(long)]
    pub b: Option<f64>,
    /// Index of the anchor sample x_o (default: median of u).
    #[arg(long)]
    pub x_o: Option<usize>,
}

#[derive(Debug, Args, Serialize)]
pub struct FitConeArgs {
    /// CSV point cloud, one point per row.
    #[arg(long)]
    pub points: PathBuf,
    #[arg(long, value_parser = parse_vector)]
    pub vertex: Coords,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct CornerArgs {
    #[arg(long)]
    pub points: PathBuf,
    /// Candidate corner.
    #[arg(long, value_parser = parse_vector)]
    pub vertex: Coords,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct AEtaArgs {
    /// Single η, or a comma-separated sweep.
    #[arg(long, value_parser = parse_vector)]
    pub eta: Coords,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Criterion {
    /// Vol(B_r) / Vol(∂B_r).
    Model,
    /// r^{1-β} / ln Vol(B_r).
    Volume,
}

#[derive(Debug, Args, Serialize)]
pub struct StochasticArgs {
    /// rotational:euclidean, rotational:hyperbolic or rotational:superexp.
    #[arg(long)]
    pub model: String,
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    #[arg(long, value_enum, default_value_t = Criterion::Model)]
    pub criterion: Criterion,
    #[arg(long, default_value_t = 2.0)]
    pub beta: f64,
    #[arg(long, default_value_t = 1.0, value_parser = positive)]
    pub r_start: f64,
    #[arg(long, default_value_t = 1e6, value_parser = positive)]
    pub r_max: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct SharpnessArgs {
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    #[arg(long, default_value_t = 1e-4, value_parser = positive)]
    pub d_min: f64,
    #[arg(long, default_value_t = 1.0, value_parser = positive)]
    pub d_max: f64,
    #[arg(long, default_value_t = 17, value_parser = count)]
    pub points: usize,
    #[arg(long = "box", default_value_t = 10.0, value_parser = positive)]
    pub box_radius: f64,
    #[arg(long, default_value_t = 10_000, value_parser = count)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct PlotArgs {
    /// JSON report holding a `series` object.
    #[arg(long)]
    pub report: PathBuf,
    #[arg(long)]
    pub series: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
