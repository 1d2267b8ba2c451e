//! Command-line front end: load potential description files, run the transfer
//! or spectral engine, and emit deterministic CSV/JSON result files.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use resonance1d::absorber::{self, AbsorberSpec};
use resonance1d::potential::{parse_potential_file, Body, PotentialSpec};
use resonance1d::resonance::{self, classify, Class, ResonanceEntry, ResonanceSet};
use resonance1d::spectral::{self, FilterOptions, Mesh};
use resonance1d::transfer::{self, ComplexRect};
use resonance1d::util::{atomic_write, fmt_g17};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "resonance1d",
    version,
    about = "Resonances, bound and antibound states of compactly supported 1-D Schrödinger operators"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Poles of a piecewise-constant potential.
    Squarepot(PoleArgs),
    /// Poles of a cubic-spline potential (spectral engine).
    Splinepot(PoleArgs),
    /// Bound/antibound symmetry scan over a coupling grid.
    Scan(ScanArgs),
    /// Reflection coefficient and perturbed outgoing parameter of the
    /// absorbing layer, as CSV on stdout.
    Rho(RhoArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Transfer,
    Spectral,
}

#[derive(Args)]
struct PoleArgs {
    /// Potential description file (key=value format).
    #[arg(long)]
    potential: PathBuf,
    /// Output base path; `.json` / `.csv` extensions are added.
    #[arg(long)]
    out: PathBuf,
    /// Restrict output to one format (default: write both).
    #[arg(long, value_enum)]
    format: Option<OutFormat>,
    /// Search window `re_lo,re_hi,im_lo,im_hi`.
    #[arg(long, default_value = "-15,15,-4,4", allow_hyphen_values = true)]
    window: String,
    /// Collocation order per mesh cell.
    #[arg(long, default_value_t = 24)]
    order: usize,
    /// Relative tolerance of the 50% order-refinement match filter.
    #[arg(long, default_value_t = 1e-6)]
    match_tol: f64,
    #[arg(long, value_enum, default_value = "spectral")]
    engine: EngineArg,
    /// Initial subdivision of the window for the transfer-engine zero search.
    #[arg(long, default_value_t = 8)]
    grid_density: usize,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long)]
    potential: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum)]
    format: Option<OutFormat>,
    /// Step barrier `A,B,V1` composed onto the potential.
    #[arg(long, allow_hyphen_values = true)]
    barrier: Option<String>,
    #[arg(long, default_value_t = 1.0)]
    q_min: f64,
    #[arg(long, default_value_t = 10.0)]
    q_max: f64,
    #[arg(long, default_value_t = 10)]
    q_steps: usize,
    /// Pair only states with `k >= k0`.
    #[arg(long, default_value_t = resonance::DEFAULT_K0)]
    k0: f64,
    #[arg(long, value_enum, default_value = "transfer")]
    engine: EngineArg,
}

#[derive(Args)]
struct RhoArgs {
    /// Evaluation point `re,im` (repeatable).
    #[arg(long, required = true, allow_hyphen_values = true)]
    lambda: Vec<String>,
    /// Config file with `absorber.sigma`, `absorber.width`,
    /// `absorber.profile` keys; command-line flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Layer strength.
    #[arg(long)]
    sigma: Option<f64>,
    /// Layer width `M - L`.
    #[arg(long)]
    width: Option<f64>,
    /// Layer profile (only `quadratic` is implemented).
    #[arg(long)]
    profile: Option<String>,
}

enum CliError {
    Input(String),
    Compute(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Compute(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Compute(m) => m,
        }
    }
}

fn input_err<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

fn compute_err<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Compute(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Squarepot(a) => cmd_poles(a, true),
        Cmd::Splinepot(a) => cmd_poles(a, false),
        Cmd::Scan(a) => cmd_scan(a),
        Cmd::Rho(a) => cmd_rho(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn load_potential(path: &Path) -> Result<PotentialSpec, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse_potential_file(&text).map_err(input_err)
}

fn parse_window(s: &str) -> Result<ComplexRect, CliError> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Input(format!("bad window `{s}`: {e}")))?;
    if parts.len() != 4 || parts[0] >= parts[1] || parts[2] >= parts[3] {
        return Err(CliError::Input(format!(
            "window must be `re_lo,re_hi,im_lo,im_hi` with nonempty ranges, got `{s}`"
        )));
    }
    Ok(ComplexRect::new(parts[0], parts[1], parts[2], parts[3]))
}

/// Base path with any `.json` / `.csv` extension stripped.
fn out_base(path: &Path) -> PathBuf {
    match path.extension().and_then(|e| e.to_str()) {
        Some("json") | Some("csv") => path.with_extension(""),
        _ => path.to_path_buf(),
    }
}

fn write_outputs(
    base: &Path,
    format: Option<OutFormat>,
    json: Option<String>,
    csv: Option<String>,
) -> Result<(), CliError> {
    let want_json = !matches!(format, Some(OutFormat::Csv));
    let want_csv = !matches!(format, Some(OutFormat::Json));
    if want_json {
        if let Some(j) = json {
            atomic_write(&base.with_extension("json"), j.as_bytes()).map_err(compute_err)?;
        }
    }
    if want_csv {
        if let Some(c) = csv {
            atomic_write(&base.with_extension("csv"), c.as_bytes()).map_err(compute_err)?;
        }
    }
    Ok(())
}

fn cmd_poles(args: PoleArgs, want_square: bool) -> Result<(), CliError> {
    let p = load_potential(&args.potential)?;
    let is_square = matches!(p.body(), Body::PiecewiseConstant { .. });
    if want_square != is_square {
        return Err(CliError::Input(format!(
            "expected a {} potential file",
            if want_square {
                "squarepot"
            } else {
                "splinepot"
            }
        )));
    }
    let window = parse_window(&args.window)?;
    if args.order < 2 {
        return Err(CliError::Input(format!("order {} too small", args.order)));
    }

    let set = match args.engine {
        EngineArg::Transfer => {
            if !is_square {
                return Err(CliError::Input(
                    "the transfer engine requires a piecewise-constant potential".into(),
                ));
            }
            let zeros = transfer::find_resonances_secular(&p, window, args.grid_density)
                .map_err(compute_err)?;
            let mut entries = Vec::new();
            for z in zeros {
                let class = classify(z, resonance::DEFAULT_TOL_AXIS).unwrap_or(Class::Resonance);
                entries.push(ResonanceEntry {
                    re: z.re,
                    im: z.im,
                    class,
                    // Newton refinement target for the secular zeros.
                    accuracy: 1e-12 * (1.0 + z.norm()),
                });
            }
            ResonanceSet {
                engine: "transfer".into(),
                potential_hash: p.hash(),
                entries,
            }
        }
        EngineArg::Spectral => {
            let mesh = Mesh::for_potential(&p, args.order);
            let mut set = spectral::filtered_eigenvalues(
                &p,
                &mesh,
                spectral::BoundaryScheme::Outgoing,
                FilterOptions {
                    match_tol: args.match_tol,
                    ..Default::default()
                },
            )
            .map_err(compute_err)?;
            set.entries
                .retain(|e| window.contains(Complex64::new(e.re, e.im)));
            set
        }
    };

    write_outputs(
        &out_base(&args.out),
        args.format,
        Some(set.to_json()),
        Some(set.to_csv()),
    )
}

fn cmd_scan(args: ScanArgs) -> Result<(), CliError> {
    let p = load_potential(&args.potential)?;
    if args.q_steps < 2 {
        return Err(CliError::Input("q_steps must be at least 2".into()));
    }
    if !(args.q_min > 0.0 && args.q_max > args.q_min) {
        return Err(CliError::Input("need 0 < q_min < q_max".into()));
    }
    let barrier = match &args.barrier {
        None => None,
        Some(s) => {
            let parts: Vec<f64> = s
                .split(',')
                .map(|t| t.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|e| CliError::Input(format!("bad barrier `{s}`: {e}")))?;
            if parts.len() != 3 {
                return Err(CliError::Input(format!(
                    "barrier must be `A,B,V1`, got `{s}`"
                )));
            }
            Some((parts[0], parts[1], parts[2]))
        }
    };
    let grid: Vec<f64> = (0..args.q_steps)
        .map(|i| args.q_min + (args.q_max - args.q_min) * i as f64 / (args.q_steps - 1) as f64)
        .collect();
    let engine = match args.engine {
        EngineArg::Transfer => resonance::Engine::Transfer,
        EngineArg::Spectral => resonance::Engine::Spectral,
    };
    let scan = resonance::q_scan(&p, barrier, &grid, args.k0, engine).map_err(|e| match e {
        resonance::ResonanceError::InvalidConfig(_) | resonance::ResonanceError::Potential(_) => {
            input_err(e)
        }
        other => compute_err(other),
    })?;

    let mut json = String::from("{");
    match scan.fit {
        Some(f) => {
            json.push_str(&format!(
                "\"c_hat\":{},\"r2\":{},",
                fmt_g17(f.c_hat),
                fmt_g17(f.r2)
            ));
            json.push_str(&format!("\"symmetry\":{},", f.c_hat > 0.0 && f.r2 >= 0.5));
        }
        None => json.push_str("\"c_hat\":null,\"r2\":null,\"symmetry\":false,"),
    }
    json.push_str(&format!("\"k0\":{},\"q_grid\":[", fmt_g17(scan.k0)));
    for (i, q) in scan.q_values().iter().enumerate() {
        if i > 0 {
            json.push(',');
        }
        json.push_str(&fmt_g17(*q));
    }
    json.push_str("]}\n");

    write_outputs(
        &out_base(&args.out),
        args.format,
        Some(json),
        Some(scan.to_csv()),
    )
}

fn cmd_rho(args: RhoArgs) -> Result<(), CliError> {
    let mut sigma = absorber::DEFAULT_SIGMA;
    let mut width = absorber::DEFAULT_WIDTH;
    let mut profile = String::from("quadratic");
    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, val) = line.split_once('=').ok_or_else(|| {
                CliError::Input(format!("config line {}: expected key=value", lineno + 1))
            })?;
            let bad_num = |e: std::num::ParseFloatError| {
                CliError::Input(format!("config line {}: {e}", lineno + 1))
            };
            match key.trim() {
                "absorber.sigma" => sigma = val.trim().parse().map_err(bad_num)?,
                "absorber.width" => width = val.trim().parse().map_err(bad_num)?,
                "absorber.profile" => profile = val.trim().to_string(),
                other => {
                    return Err(CliError::Input(format!(
                        "config line {}: unknown key `{other}`",
                        lineno + 1
                    )))
                }
            }
        }
    }
    if let Some(s) = args.sigma {
        sigma = s;
    }
    if let Some(w) = args.width {
        width = w;
    }
    if let Some(p) = &args.profile {
        profile = p.clone();
    }
    if profile != "quadratic" {
        return Err(CliError::Input(format!(
            "unknown absorber profile `{profile}`"
        )));
    }
    if width <= 0.0 || sigma < 0.0 {
        return Err(CliError::Input("need width > 0 and sigma >= 0".into()));
    }
    let abs = AbsorberSpec::new(0.0, width, sigma);
    let mut out =
        String::from("re_lambda,im_lambda,re_rho,im_rho,abs_rho,re_lambda_hat,im_lambda_hat\n");
    for s in &args.lambda {
        let parts: Vec<f64> = s
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| CliError::Input(format!("bad lambda `{s}`: {e}")))?;
        let lam = match parts.len() {
            1 => Complex64::new(parts[0], 0.0),
            2 => Complex64::new(parts[0], parts[1]),
            _ => {
                return Err(CliError::Input(format!(
                    "lambda must be `re` or `re,im`, got `{s}`"
                )))
            }
        };
        if lam.norm() == 0.0 {
            return Err(CliError::Input("lambda must be nonzero".into()));
        }
        let data = absorber::reflection_data(&abs, lam).map_err(compute_err)?;
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            fmt_g17(lam.re),
            fmt_g17(lam.im),
            fmt_g17(data.rho.re),
            fmt_g17(data.rho.im),
            fmt_g17(data.rho.norm()),
            fmt_g17(data.lambda_hat.re),
            fmt_g17(data.lambda_hat.im)
        ));
    }
    print!("{out}");
    Ok(())
}
