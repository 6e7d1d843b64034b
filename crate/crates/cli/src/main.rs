//! Batch front end for the equilib library: build and certify radial
//! bodies, compute centroids and equilibrium censuses, run plane-body
//! verification batteries, sweep the moment over parameters, and export
//! meshes.
//!
//! Exit codes: 0 on success, 1 on verification failure, 2 on usage error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use equilib::bodies;
use equilib::equilibria;
use equilib::gomboc::{self, GombocParams, RadialBody};
use equilib::integrate::{self, QuadratureSpec};
use equilib::spaces::{Geometry, NormProfile, SpaceKind};
use equilib::GeomError;
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "equilib", version, about = "Equilibrium analysis of convex bodies in curved and normed plane/space geometries", max_term_width = 100)]
struct Cli {
    /// Optional key=value config file; explicit flags take precedence.
    #[arg(long, global = true)]
    config: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a weighted-blend radial body and dump its radial function as CSV.
    Build(BuildArgs),
    /// Run the full mono-monostatic certificate and print it as JSON.
    Certify(CertifyArgs),
    /// Compute the chart centroid of a body.
    Centroid(CentroidArgs),
    /// Locate and classify all equilibria of a body.
    Equilibria(EquilibriaArgs),
    /// Verify the four-equilibria lower bound on random plane convex bodies.
    Verify2d(Verify2dArgs),
    /// Sweep the first moment over a (c, d) grid and write CSV.
    Sweep(SweepArgs),
    /// Export the boundary surface as a watertight OBJ mesh.
    ExportMesh(ExportMeshArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SpaceArg {
    Euclidean,
    Spherical,
    Hyperbolic,
    Normed,
}

#[derive(Args)]
struct SpaceOpts {
    /// Plane/space geometry.
    #[arg(long, value_enum)]
    space: SpaceArg,
    /// Superellipsoid exponent for the normed geometry.
    #[arg(long, default_value_t = 4.0)]
    norm_p: f64,
    /// CSV file of sampled norm profile values (overrides --norm-p).
    #[arg(long)]
    norm_csv: Option<String>,
}

impl SpaceOpts {
    fn resolve(&self, dim: usize) -> Result<SpaceKind, GeomError> {
        Ok(match self.space {
            SpaceArg::Euclidean => SpaceKind::euclidean(dim),
            SpaceArg::Spherical => SpaceKind::spherical(dim),
            SpaceArg::Hyperbolic => SpaceKind::hyperbolic(dim),
            SpaceArg::Normed => {
                let profile = match &self.norm_csv {
                    Some(path) => NormProfile::from_csv(path)?,
                    None => NormProfile::superellipsoid(self.norm_p),
                };
                SpaceKind::normed(dim, profile)
            }
        })
    }
}

#[derive(Args)]
struct QuadOpts {
    /// Polar quadrature nodes.
    #[arg(long, default_value_t = 64)]
    n_theta: usize,
    /// Azimuthal quadrature nodes.
    #[arg(long, default_value_t = 128)]
    n_phi: usize,
    /// Radial quadrature nodes.
    #[arg(long, default_value_t = 32)]
    n_r: usize,
    /// Disable Richardson grid-doubling error estimates.
    #[arg(long)]
    no_richardson: bool,
    /// Parallel width for sweeps and batteries.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

impl QuadOpts {
    fn spec(&self) -> QuadratureSpec {
        QuadratureSpec {
            n_theta: self.n_theta,
            n_phi: self.n_phi,
            n_r: self.n_r,
            richardson: !self.no_richardson,
            jobs: self.jobs.max(1),
        }
    }
}

#[derive(Args)]
struct BuildArgs {
    #[command(flatten)]
    space: SpaceOpts,
    /// Meridian warp parameter.
    #[arg(long)]
    c: f64,
    /// Perturbation amplitude.
    #[arg(long)]
    d: f64,
    /// Base radius in the chart.
    #[arg(long, default_value_t = 1.0)]
    r: f64,
    /// Polar sample rows for the CSV dump.
    #[arg(long, default_value_t = 64)]
    n_theta: usize,
    /// Azimuthal sample columns for the CSV dump.
    #[arg(long, default_value_t = 128)]
    n_phi: usize,
    /// Output CSV path (theta,phi,radial).
    #[arg(long)]
    out: String,
}

#[derive(Args)]
struct CertifyArgs {
    #[command(flatten)]
    space: SpaceOpts,
    /// Base radius in the chart.
    #[arg(long, default_value_t = 1.0)]
    r: f64,
    /// Perturbation amplitude.
    #[arg(long)]
    d: f64,
    /// Ball-distance tolerance for the roundness condition.
    #[arg(long)]
    eps: f64,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum BodyArg {
    Ball,
    Gomboc,
}

#[derive(Args)]
struct CentroidArgs {
    #[command(flatten)]
    space: SpaceOpts,
    /// Body family to evaluate.
    #[arg(long, value_enum)]
    body: BodyArg,
    /// Base radius in the chart.
    #[arg(long, default_value_t = 1.0)]
    r: f64,
    /// Meridian warp parameter (gomboc body only).
    #[arg(long)]
    c: Option<f64>,
    /// Perturbation amplitude (gomboc body only).
    #[arg(long)]
    d: Option<f64>,
    #[command(flatten)]
    quad: QuadOpts,
}

#[derive(Args)]
struct EquilibriaArgs {
    #[command(flatten)]
    space: SpaceOpts,
    /// Meridian warp parameter.
    #[arg(long)]
    c: f64,
    /// Perturbation amplitude.
    #[arg(long)]
    d: f64,
    /// Base radius in the chart.
    #[arg(long, default_value_t = 1.0)]
    r: f64,
    /// Direction-sphere scan resolution.
    #[arg(long, default_value_t = 96)]
    grid: usize,
    /// Relative gradient tolerance for critical points.
    #[arg(long, default_value_t = 1e-7)]
    tol: f64,
    #[command(flatten)]
    quad: QuadOpts,
}

#[derive(Args)]
struct Verify2dArgs {
    #[command(flatten)]
    space: SpaceOpts,
    /// Number of random bodies.
    #[arg(long, default_value_t = 100)]
    n: u64,
    /// Base seed; body i uses seed + i.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Support-function scale of the generated bodies.
    #[arg(long, default_value_t = 0.3)]
    scale: f64,
    /// Highest support harmonic.
    #[arg(long, default_value_t = 6)]
    k_max: usize,
    /// Boundary scan resolution per body.
    #[arg(long, default_value_t = 4096)]
    grid: usize,
    /// Relative derivative tolerance for critical points.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    space: SpaceOpts,
    /// Base radius in the chart.
    #[arg(long, default_value_t = 1.0)]
    r: f64,
    /// Warp-parameter range start.
    #[arg(long)]
    c_min: f64,
    /// Warp-parameter range end.
    #[arg(long)]
    c_max: f64,
    /// Warp-parameter steps.
    #[arg(long, default_value_t = 10)]
    c_steps: usize,
    /// Amplitude range start.
    #[arg(long)]
    d_min: f64,
    /// Amplitude range end.
    #[arg(long)]
    d_max: f64,
    /// Amplitude steps.
    #[arg(long, default_value_t = 10)]
    d_steps: usize,
    /// Output CSV path.
    #[arg(long)]
    out: String,
    #[command(flatten)]
    quad: QuadOpts,
}

#[derive(Args)]
struct ExportMeshArgs {
    #[command(flatten)]
    space: SpaceOpts,
    /// Meridian warp parameter.
    #[arg(long)]
    c: f64,
    /// Perturbation amplitude.
    #[arg(long)]
    d: f64,
    /// Base radius in the chart.
    #[arg(long, default_value_t = 1.0)]
    r: f64,
    /// Latitude bands.
    #[arg(long, default_value_t = 128)]
    n_theta: usize,
    /// Longitude columns.
    #[arg(long, default_value_t = 256)]
    n_phi: usize,
    /// Write the embedded model surface instead of the chart surface.
    #[arg(long)]
    embedded: bool,
    /// Output OBJ path.
    #[arg(long)]
    out: String,
}

fn main() -> ExitCode {
    let argv = match argv_with_config() {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            // help/version requests are successes, everything else is usage
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Reads an optional `key = value` config file and appends any keys not
/// already present on the command line as `--key value` pairs, so explicit
/// flags always win.
fn argv_with_config() -> Result<Vec<String>, GeomError> {
    let mut argv: Vec<String> = std::env::args().collect();
    let path = match argv.iter().position(|a| a == "--config") {
        Some(i) => match argv.get(i + 1) {
            Some(p) => p.clone(),
            None => return Err(GeomError::InvalidParams("--config requires a path".into())),
        },
        None => return Ok(argv),
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| GeomError::Io(format!("{path}: {e}")))?;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            GeomError::InvalidParams(format!("{path}:{}: expected key = value", lineno + 1))
        })?;
        let flag = format!("--{}", key.trim().replace('_', "-"));
        if !argv.iter().any(|a| *a == flag) {
            argv.push(flag);
            let value = value.trim();
            if !value.is_empty() {
                argv.push(value.to_string());
            }
        }
    }
    Ok(argv)
}

fn run(cmd: Command) -> Result<ExitCode, GeomError> {
    match cmd {
        Command::Build(a) => cmd_build(a),
        Command::Certify(a) => cmd_certify(a),
        Command::Centroid(a) => cmd_centroid(a),
        Command::Equilibria(a) => cmd_equilibria(a),
        Command::Verify2d(a) => cmd_verify2d(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::ExportMesh(a) => cmd_export_mesh(a),
    }
}

fn gomboc_body(space: SpaceKind, c: f64, d: f64, r: f64) -> Result<RadialBody, GeomError> {
    let params = GombocParams::new(c, d, r, space)?;
    gomboc::build_body(&params)
}

fn cmd_build(a: BuildArgs) -> Result<ExitCode, GeomError> {
    let body = gomboc_body(a.space.resolve(3)?, a.c, a.d, a.r)?;
    bodies::dump_csv_3d(&body, a.n_theta, a.n_phi, &a.out)?;
    eprintln!("wrote {} ({}x{} radial samples)", a.out, a.n_theta + 1, a.n_phi);
    Ok(ExitCode::SUCCESS)
}

fn cmd_certify(a: CertifyArgs) -> Result<ExitCode, GeomError> {
    let space = a.space.resolve(3)?;
    if !(a.eps > 0.0) {
        return Err(GeomError::InvalidParams(format!("eps = {} must be positive", a.eps)));
    }
    // the certificate solves for the centering c itself; seed the family at
    // a nominal interior c for parameter validation
    let params = GombocParams::new(0.5, a.d, a.r, space)?;
    eprintln!("certifying {} R = {} d = {} eps = {}", params.space.geometry.name(), a.r, a.d, a.eps);
    let cert = equilibria::certify_mono_monostatic(&params, a.eps);
    println!("{}", serde_json::to_string_pretty(&cert).map_err(|e| GeomError::Io(e.to_string()))?);
    Ok(if cert.pass.all() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_centroid(a: CentroidArgs) -> Result<ExitCode, GeomError> {
    let space = a.space.resolve(3)?;
    let body = match a.body {
        BodyArg::Ball => {
            let r = a.r;
            if space.geometry == Geometry::Hyperbolic && r >= 1.0 {
                return Err(GeomError::InvalidParams(format!("ball radius {r} exceeds the chart")));
            }
            let profile = space.profile.clone();
            RadialBody::new(
                space,
                Arc::new(move |theta: f64, _phi: f64| match &profile {
                    Some(p) => r * p.value(theta),
                    None => r,
                }),
            )
        }
        BodyArg::Gomboc => {
            let (c, d) = match (a.c, a.d) {
                (Some(c), Some(d)) => (c, d),
                _ => {
                    return Err(GeomError::InvalidParams(
                        "--body gomboc requires --c and --d".into(),
                    ))
                }
            };
            gomboc_body(space, c, d, a.r)?
        }
    };
    let c = integrate::centroid(&body, &a.quad.spec())?;
    println!("{:.17e} {:.17e} {:.17e}", c.coords[0], c.coords[1], c.coords[2]);
    Ok(ExitCode::SUCCESS)
}

fn cmd_equilibria(a: EquilibriaArgs) -> Result<ExitCode, GeomError> {
    let space = a.space.resolve(3)?;
    let body = gomboc_body(space, a.c, a.d, a.r)?;
    let reference = integrate::centroid(&body, &a.quad.spec())?;
    eprintln!(
        "centroid ({:.3e}, {:.3e}, {:.3e}); scanning {}^2 directions",
        reference.coords[0], reference.coords[1], reference.coords[2], a.grid
    );
    let census = equilibria::find_equilibria(&body, &reference, a.grid, a.tol)?;
    println!("{}", serde_json::to_string_pretty(&census).map_err(|e| GeomError::Io(e.to_string()))?);
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify2d(a: Verify2dArgs) -> Result<ExitCode, GeomError> {
    let space = a.space.resolve(2)?;
    let mut failures = 0u64;
    let mut min_total = usize::MAX;
    for i in 0..a.n {
        let seed = a.seed + i;
        let body = bodies::random_convex_2d(&space, seed, a.scale, a.k_max)?;
        let census = equilibria::count_equilibria_2d(&body, a.grid, a.tol)?;
        let balanced = equilibria::poincare_hopf_check(&census, 2)?;
        let ok = census.total() >= 4 && balanced;
        min_total = min_total.min(census.total());
        if !ok {
            failures += 1;
            eprintln!(
                "seed {seed}: FAIL S = {} U = {} degenerate = {}",
                census.s, census.u, census.degenerate_count
            );
        } else if (i + 1) % 10 == 0 {
            eprintln!("{}/{} bodies verified", i + 1, a.n);
        }
    }
    println!(
        "{}",
        serde_json::json!({
            "space": space.geometry.name(),
            "bodies": a.n,
            "failures": failures,
            "min_equilibria": min_total,
        })
    );
    Ok(if failures == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n <= 1 {
        return vec![lo];
    }
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

fn cmd_sweep(a: SweepArgs) -> Result<ExitCode, GeomError> {
    let space = a.space.resolve(3)?;
    let cs = linspace(a.c_min, a.c_max, a.c_steps);
    let ds = linspace(a.d_min, a.d_max, a.d_steps);
    let f = std::fs::File::create(&a.out)
        .map_err(|e| GeomError::Io(format!("{}: {e}", a.out)))?;
    let mut w = std::io::BufWriter::new(f);
    let rows = integrate::sweep_csv(&mut w, &cs, &ds, a.r, &space, &a.quad.spec())?;
    eprintln!("wrote {} ({} rows)", a.out, rows.len());
    Ok(ExitCode::SUCCESS)
}

fn cmd_export_mesh(a: ExportMeshArgs) -> Result<ExitCode, GeomError> {
    let body = gomboc_body(a.space.resolve(3)?, a.c, a.d, a.r)?;
    if a.embedded {
        bodies::export_mesh_embedded(&body, a.n_theta, a.n_phi, &a.out)?;
    } else {
        bodies::export_mesh(&body, a.n_theta, a.n_phi, &a.out)?;
    }
    eprintln!("wrote {} ({} vertices)", a.out, 2 + (a.n_theta - 1) * a.n_phi);
    Ok(ExitCode::SUCCESS)
}
