use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::{json, Value};

use sparse_implicit::implicit::{implicitize, ImplicitizeConfig};
use sparse_implicit::interp::{self, matrix_csv, Mode, SamplingRecord, DEFAULT_TOLERANCE};
use sparse_implicit::poly::format_rational;
use sparse_implicit::predicates::{Membership, Ray, SurfaceHandle};
use sparse_implicit::support::{
    degree_bound_polytope, lattice_points, read_polytope, translate_positive, LatticePolytope,
    DEFAULT_CAP,
};
use sparse_implicit::{parse_map, Error, ParametricMap};

/// Largest total degree accepted when the support is derived from the map.
const DERIVED_DEGREE_LIMIT: u64 = 1 << 12;

#[derive(Parser)]
#[command(name = "spimp", version, about = "Sparse implicitization and matrix-based predicates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the implicit polynomial of a parameterization.
    Implicitize(ImplicitizeArgs),
    /// Decide whether points lie on the hypersurface.
    Member(MemberArgs),
    /// Decide whether two points lie on the same side of the hypersurface.
    Side(SideArgs),
    /// First intersection of a ray with the hypersurface.
    Ray(RayArgs),
    /// Sign grid over a window, for plotting curves.
    Plotdata(PlotArgs),
}

#[derive(Args)]
struct Input {
    /// Parameterization file, text or JSON.
    param: PathBuf,
    /// Polytope vertex file predicting the support.
    #[arg(long, conflicts_with = "degree_bound")]
    support: Option<PathBuf>,
    /// Use the simplex of this total degree as the predicted polytope.
    #[arg(long)]
    degree_bound: Option<u32>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Maximum number of candidate lattice points.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u128,
    /// Report errors as JSON on stdout.
    #[arg(long)]
    json: bool,
    /// Print elapsed times to stderr.
    #[arg(long)]
    timings: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Approximate,
}

#[derive(Args)]
struct ImplicitizeArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    mode: ModeArg,
    /// Relative singular-value threshold in approximate mode.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,
    /// Rows per column, as a rational such as 3/2.
    #[arg(long)]
    mu_factor: Option<String>,
    /// Skip the second-seed genericity check.
    #[arg(long)]
    no_validate: bool,
    /// Directory for polynomial.txt, polynomial.json and diagnostics.json.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write matrix.csv and sampling.json to the output directory.
    #[arg(long, requires = "out")]
    dump_matrix: bool,
}

#[derive(Args)]
struct MemberArgs {
    #[command(flatten)]
    input: Input,
    /// Query point, comma separated rationals.
    #[arg(short, long, allow_hyphen_values = true, required_unless_present = "batch")]
    q: Option<String>,
    /// File with one query point per line.
    #[arg(long, conflicts_with = "q")]
    batch: Option<PathBuf>,
}

#[derive(Args)]
struct SideArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long, allow_hyphen_values = true, required_unless_present = "batch", requires = "q2")]
    q1: Option<String>,
    #[arg(long, allow_hyphen_values = true, requires = "q1")]
    q2: Option<String>,
    /// File with two whitespace separated points per line.
    #[arg(long, conflicts_with_all = ["q1", "q2"])]
    batch: Option<PathBuf>,
}

#[derive(Args)]
struct RayArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long, allow_hyphen_values = true, required_unless_present = "batch", requires = "dir")]
    base: Option<String>,
    #[arg(long, allow_hyphen_values = true, requires = "base")]
    dir: Option<String>,
    /// Width of the isolating interval.
    #[arg(long, default_value = "1/1000000000")]
    tol: String,
    /// File with a base point and a direction per line.
    #[arg(long, conflicts_with_all = ["base", "dir"])]
    batch: Option<PathBuf>,
}

#[derive(Args)]
struct PlotArgs {
    #[command(flatten)]
    input: Input,
    /// xmin,xmax,ymin,ymax
    #[arg(long, allow_hyphen_values = true, default_value = "-2,2,-2,2")]
    window: String,
    /// Grid points per axis.
    #[arg(long, default_value_t = 50)]
    resolution: usize,
    /// CSV output file; stdout if absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

enum CliError {
    Core(Error),
    Io(PathBuf, std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn code(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.code(),
            CliError::Io(..) => "io",
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Core(e) => e.to_string(),
            CliError::Io(p, e) => format!("{}: {e}", p.display()),
        }
    }

    fn exit_code(&self) -> u8 {
        let CliError::Core(e) = self else {
            return 3;
        };
        match e {
            Error::Syntax { .. } => 10,
            Error::UnsupportedFunction(_) => 11,
            Error::MixedTrigonometric(_) => 12,
            Error::InvalidMap(_) => 13,
            Error::DenominatorZero(_) => 14,
            Error::ZeroPolynomial => 15,
            Error::DimensionMismatch { .. } => 16,
            Error::CapExceeded { .. } => 17,
            Error::PolytopeFormat(_) => 18,
            Error::SamplingExhausted(_) => 19,
            Error::InvalidArgument(_) => 20,
            Error::EmptyKernel => 21,
            Error::NonGenericSampling => 22,
            Error::ZeroCoordinate(_) => 23,
            Error::CoincidesWithSampleRow(_) => 24,
            Error::OnSurface => 25,
            Error::NotCorank1(_) => 26,
            Error::DegenerateRay => 27,
            Error::NotACurve(_) => 28,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn error_json(e: &CliError) -> Value {
    json!({"error": {"code": e.code(), "message": e.message()}})
}

fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn write_text(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn invalid(msg: String) -> CliError {
    CliError::Core(Error::InvalidArgument(msg))
}

fn parse_rational(s: &str) -> CliResult<BigRational> {
    let t = s.trim();
    BigRational::from_str(t)
        .ok()
        .filter(|r| !r.denom().eq(&BigInt::from(0)))
        .ok_or_else(|| invalid(format!("`{t}` is not a rational number")))
}

fn parse_point(s: &str) -> CliResult<Vec<BigRational>> {
    s.split(',').map(parse_rational).collect()
}

fn load_map(input: &Input) -> CliResult<ParametricMap> {
    Ok(parse_map(&read_text(&input.param)?)?)
}

fn load_polytope(input: &Input, map: &ParametricMap) -> CliResult<LatticePolytope> {
    if let Some(path) = &input.support {
        return read_polytope(path)
            .map_err(|e| CliError::Io(path.clone(), e))?
            .map_err(CliError::from);
    }
    if let Some(d) = input.degree_bound {
        return Ok(LatticePolytope::simplex(map.ambient_dim(), d));
    }
    Ok(degree_bound_polytope(map, DERIVED_DEGREE_LIMIT)?)
}

fn timed<T>(on: bool, label: &str, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    if on {
        eprintln!("timing: {label} {:.3} ms", start.elapsed().as_secs_f64() * 1e3);
    }
    out
}

fn run_implicitize(a: &ImplicitizeArgs) -> CliResult<()> {
    let map = load_map(&a.input)?;
    let q = load_polytope(&a.input, &map)?;
    let mode = match a.mode {
        ModeArg::Exact => Mode::Exact,
        ModeArg::Approximate => {
            if a.tol.is_nan() || a.tol <= 0.0 {
                return Err(invalid("tolerance must be positive".into()));
            }
            Mode::Approximate { tolerance: a.tol }
        }
    };
    let mu_factor = a.mu_factor.as_deref().map(parse_rational).transpose()?;
    let config = ImplicitizeConfig {
        mode,
        seed: a.input.seed,
        mu_factor,
        cap: a.input.cap,
        validate: !a.no_validate,
    };
    let result = timed(a.input.timings, "implicitize", || implicitize(&map, &q, &config))?;
    let text = result.polynomial.to_string();
    let poly_json = result.polynomial.to_json();
    let diag = serde_json::to_value(&result.diagnostics).expect("diagnostics serialize");

    if let Some(dir) = &a.out {
        fs::create_dir_all(dir).map_err(|e| CliError::Io(dir.clone(), e))?;
        write_text(&dir.join("polynomial.txt"), &format!("{text}\n"))?;
        write_text(&dir.join("polynomial.json"), &pretty(&poly_json))?;
        write_text(&dir.join("diagnostics.json"), &pretty(&diag))?;
        if a.dump_matrix {
            if !matches!(mode, Mode::Exact) {
                return Err(invalid("matrix dumps are only available in exact mode".into()));
            }
            let s = lattice_points(&translate_positive(&q), a.input.cap)?;
            let m = interp::build_matrix(&map, &s, result.diagnostics.mu, a.input.seed)?;
            write_text(&dir.join("matrix.csv"), &matrix_csv(m.exact_rows().expect("exact")))?;
            let record = serde_json::to_value(SamplingRecord::from_matrix(&m)).expect("serialize");
            write_text(&dir.join("sampling.json"), &pretty(&record))?;
        }
    }
    if a.input.json {
        println!(
            "{}",
            pretty(&json!({"polynomial": text, "terms": poly_json, "diagnostics": diag}))
        );
    } else {
        println!("{text}");
    }
    Ok(())
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn handle_for(input: &Input) -> CliResult<SurfaceHandle> {
    let map = load_map(input)?;
    let q = load_polytope(input, &map)?;
    Ok(timed(input.timings, "freeze", || {
        SurfaceHandle::from_polytope(&map, &q, input.seed, input.cap)
    })?)
}

fn handle_diagnostics(h: &SurfaceHandle, input: &Input) -> Value {
    json!({
        "support_size": h.frozen().support().len(),
        "corank": h.corank(),
        "seed": input.seed,
        "fallback_polynomial": h.fallback_poly().map(|p| p.to_string()),
    })
}

fn batch_lines(path: &Path) -> CliResult<Vec<String>> {
    Ok(read_text(path)?
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim().to_string())
        .filter(|l| !l.is_empty())
        .collect())
}

fn two_fields(line: &str) -> CliResult<(String, String)> {
    let f: Vec<&str> = line.split_whitespace().collect();
    match f.as_slice() {
        [a, b] => Ok((a.to_string(), b.to_string())),
        _ => Err(invalid(format!("expected two points in `{line}`"))),
    }
}

/// Evaluates `f` on every line in parallel, keeping input order; per-item
/// failures become error objects rather than aborting the batch.
fn run_batch<T: Sync>(items: &[T], f: impl Fn(&T) -> CliResult<Value> + Sync) -> Value {
    let out: Vec<Value> = items
        .par_iter()
        .map(|it| f(it).unwrap_or_else(|e| error_json(&e)))
        .collect();
    Value::Array(out)
}

fn member_verdict(h: &SurfaceHandle, q: &[BigRational]) -> CliResult<Value> {
    let r = h.membership_report(q)?;
    let verdict = match r.verdict {
        Membership::OnSurface => "on_surface",
        Membership::OffSurface => "off_surface",
    };
    Ok(json!({"result": verdict, "resampled_row": r.resampled_row}))
}

fn run_member(a: &MemberArgs) -> CliResult<()> {
    let h = handle_for(&a.input)?;
    let diag = handle_diagnostics(&h, &a.input);
    let out = if let Some(path) = &a.batch {
        let points = batch_lines(path)?
            .iter()
            .map(|l| parse_point(l))
            .collect::<CliResult<Vec<_>>>()?;
        let results = run_batch(&points, |q| member_verdict(&h, q));
        json!({"predicate": "member", "results": results, "diagnostics": diag})
    } else {
        let q = parse_point(a.q.as_deref().expect("clap enforces -q"))?;
        let v = member_verdict(&h, &q)?;
        json!({"predicate": "member", "result": v["result"], "resampled_row": v["resampled_row"], "diagnostics": diag})
    };
    print!("{}", pretty(&out));
    Ok(())
}

fn run_side(a: &SideArgs) -> CliResult<()> {
    let h = handle_for(&a.input)?;
    let diag = handle_diagnostics(&h, &a.input);
    let out = if let Some(path) = &a.batch {
        let pairs = batch_lines(path)?
            .iter()
            .map(|l| {
                let (x, y) = two_fields(l)?;
                Ok((parse_point(&x)?, parse_point(&y)?))
            })
            .collect::<CliResult<Vec<_>>>()?;
        let results = run_batch(&pairs, |(p, q)| Ok(json!({"result": h.sidedness(p, q)?})));
        json!({"predicate": "side", "results": results, "diagnostics": diag})
    } else {
        let p = parse_point(a.q1.as_deref().expect("clap enforces --q1"))?;
        let q = parse_point(a.q2.as_deref().expect("clap enforces --q2"))?;
        json!({"predicate": "side", "result": h.sidedness(&p, &q)?, "diagnostics": diag})
    };
    print!("{}", pretty(&out));
    Ok(())
}

fn ray_result(h: &SurfaceHandle, ray: &Ray, tol: &BigRational) -> CliResult<Value> {
    Ok(match h.ray_shoot(ray, tol)? {
        Some(hit) => hit.to_json(),
        None => Value::Null,
    })
}

fn run_ray(a: &RayArgs) -> CliResult<()> {
    let tol = parse_rational(&a.tol)?;
    let h = handle_for(&a.input)?;
    let diag = handle_diagnostics(&h, &a.input);
    let out = if let Some(path) = &a.batch {
        let rays = batch_lines(path)?
            .iter()
            .map(|l| {
                let (b, d) = two_fields(l)?;
                Ok(Ray::new(parse_point(&b)?, parse_point(&d)?)?)
            })
            .collect::<CliResult<Vec<_>>>()?;
        let results = run_batch(&rays, |r| Ok(json!({"result": ray_result(&h, r, &tol)?})));
        json!({"predicate": "ray", "results": results, "diagnostics": diag})
    } else {
        let base = parse_point(a.base.as_deref().expect("clap enforces --base"))?;
        let dir = parse_point(a.dir.as_deref().expect("clap enforces --dir"))?;
        let ray = Ray::new(base, dir)?;
        let r = timed(a.input.timings, "ray", || ray_result(&h, &ray, &tol))?;
        json!({"predicate": "ray", "result": r, "diagnostics": diag})
    };
    print!("{}", pretty(&out));
    Ok(())
}

fn grid(lo: &BigRational, hi: &BigRational, n: usize) -> Vec<BigRational> {
    if n == 1 {
        return vec![lo.clone()];
    }
    let step = (hi - lo) / BigRational::from_integer(BigInt::from(n - 1));
    (0..n)
        .map(|i| lo + &step * BigRational::from_integer(BigInt::from(i)))
        .collect()
}

fn run_plotdata(a: &PlotArgs) -> CliResult<()> {
    if a.resolution == 0 {
        return Err(invalid("resolution must be at least 1".into()));
    }
    let w = parse_point(&a.window)?;
    let [x0, x1, y0, y1] = w.as_slice() else {
        return Err(invalid("window must be xmin,xmax,ymin,ymax".into()));
    };
    if x0 > x1 || y0 > y1 {
        return Err(invalid("window bounds are reversed".into()));
    }
    let map = load_map(&a.input)?;
    if map.n() != 1 {
        return Err(Error::NotACurve(map.n()).into());
    }
    let q = load_polytope(&a.input, &map)?;
    let h = SurfaceHandle::from_polytope(&map, &q, a.input.seed, a.input.cap)?;
    let xs = grid(x0, x1, a.resolution);
    let ys = grid(y0, y1, a.resolution);
    let cells: Vec<(BigRational, BigRational)> = ys
        .iter()
        .flat_map(|y| xs.iter().map(move |x| (x.clone(), y.clone())))
        .filter(|(x, y)| *x != BigRational::from_integer(0.into()) && *y != BigRational::from_integer(0.into()))
        .collect();
    let rows: Vec<CliResult<String>> = timed(a.input.timings, "plotdata", || {
        cells
            .par_iter()
            .map(|(x, y)| {
                let p = [x.clone(), y.clone()];
                let s = match h.side_sign(&p) {
                    Ok(s) => s,
                    Err(Error::OnSurface) => 0,
                    Err(e) => return Err(e.into()),
                };
                Ok(format!("{},{},{s}\n", format_rational(x), format_rational(y)))
            })
            .collect()
    });
    let mut csv = String::from("x,y,sign\n");
    for r in rows {
        csv.push_str(&r?);
    }
    match &a.out {
        Some(p) => write_text(p, &csv),
        None => {
            print!("{csv}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (json_errors, result) = match &cli.command {
        Command::Implicitize(a) => (a.input.json, run_implicitize(a)),
        Command::Member(a) => (a.input.json, run_member(a)),
        Command::Side(a) => (a.input.json, run_side(a)),
        Command::Ray(a) => (a.input.json, run_ray(a)),
        Command::Plotdata(a) => (a.input.json, run_plotdata(a)),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if json_errors {
                print!("{}", pretty(&error_json(&e)));
            }
            eprintln!("error[{}]: {}", e.code(), e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
