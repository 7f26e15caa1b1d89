//! Command-line front end: single runs, stability scans, benchmark suites,
//! the large-Courant robustness demo, and stencil dumps. All numeric output
//! is CSV; a config echo is written next to every artifact.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use advect_core::bench::{
    instability_demo, run_rotation, run_translation, run_vortex, vortex_solution,
    write_results_csv, ErrorReport,
};
use advect_core::field::{CourantField1D, CourantField2D, VelocityField1D, VelocityField2D};
use advect_core::grid::{Grid1D, Grid2D};
use advect_core::kappa::boundary_kappa_override;
use advect_core::profile::{exact_rotation, rotation_velocity, vortex_velocity};
use advect_core::scheme1d::{advance_1d, assemble_1d};
use advect_core::scheme2d::{advance_2d, assemble_2d, StepDiag2D};
use advect_core::stability::{
    analyze_1d, analyze_2d, max_over_courant_box, write_region_csv, StabilityReport, SCAN_RES_1D,
    SCAN_RES_2D,
};
use advect_core::{
    BoundaryMode, Kappa1D, Kappa2D, Profile, ScalarField1D, ScalarField2D, Scheme1D, Scheme2D,
};

#[derive(Parser)]
#[command(name = "advect", version, about = "kappa-scheme advection toolbox")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one simulation and dump the final field plus per-step diagnostics
    Run(RunArgs),
    /// Von Neumann analysis of a constant-coefficient scheme
    Stability(StabilityArgs),
    /// Benchmark suites (rotation / translation / vortex)
    Bench(BenchArgs),
    /// Large-Courant vortex step: unstable semi-implicit vs bounded CTU
    DemoInstability(DemoArgs),
    /// Dump assembled stencil coefficients for inspection
    DumpStencil(DumpArgs),
}

/// `key=value` config file; command-line flags override file values.
fn load_config(path: &Path) -> Result<BTreeMap<String, String>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut map = BTreeMap::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("{}:{}: expected key=value", path.display(), ln + 1))?;
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(map)
}

/// Layered option lookup: flag beats config file beats default.
struct Settings {
    file: BTreeMap<String, String>,
    effective: std::cell::RefCell<BTreeMap<String, String>>,
}

impl Settings {
    fn new(config: Option<&PathBuf>) -> Result<Self, String> {
        let file = match config {
            Some(p) => load_config(p)?,
            None => BTreeMap::new(),
        };
        Ok(Settings { file, effective: Default::default() })
    }

    fn get<T: Clone + ToString, E: std::fmt::Display>(
        &self,
        key: &str,
        flag: &Option<T>,
        default: T,
        parse: impl Fn(&str) -> Result<T, E>,
    ) -> Result<T, String> {
        let v = if let Some(v) = flag {
            v.clone()
        } else if let Some(raw) = self.file.get(key) {
            parse(raw).map_err(|e| format!("config key {key}: {e}"))?
        } else {
            default
        };
        self.effective.borrow_mut().insert(key.to_string(), v.to_string());
        Ok(v)
    }

    /// Echo the effective configuration next to the outputs.
    fn write_echo(&self, out_dir: &Path, stem: &str) -> std::io::Result<()> {
        let mut f = BufWriter::new(File::create(out_dir.join(format!("{stem}.config")))?);
        for (k, v) in self.effective.borrow().iter() {
            writeln!(f, "{k} = {v}")?;
        }
        Ok(())
    }
}

fn parse_scheme_2d(s: &str) -> Result<Scheme2D, String> {
    Scheme2D::by_name(s).ok_or_else(|| format!("unknown 2D scheme '{s}'"))
}

fn parse_scheme_1d(s: &str) -> Result<Scheme1D, String> {
    Ok(match s {
        "explicit" => Scheme1D::Explicit,
        "implicit" => Scheme1D::Implicit,
        "si1d" | "si" => Scheme1D::SemiImplicit,
        "si1d_b" => Scheme1D::SemiImplicitB,
        _ => return Err(format!("unknown 1D scheme '{s}'")),
    })
}

fn parse_kappa_2d(s: &str) -> Result<Kappa2D, String> {
    if let Some(k) = Kappa2D::by_name(s) {
        return Ok(k);
    }
    let parts: Vec<&str> = s.split(',').collect();
    let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("kappa '{s}': {e}"));
    match parts.as_slice() {
        [a] => {
            let v = num(a)?;
            Ok(Kappa2D::Constant(v, v))
        }
        [a, b] => Ok(Kappa2D::Constant(num(a)?, num(b)?)),
        _ => Err(format!("kappa '{s}': expected strategy name or 1-2 numbers")),
    }
}

fn parse_kappa_1d(s: &str, scheme: Scheme1D) -> Result<Kappa1D, String> {
    Ok(match s {
        "sign" => Kappa1D::SignOfVelocity(1.0),
        // the third-order kappa formula depends on the time discretization
        "third" => Kappa1D::ThirdOrder(match scheme {
            Scheme1D::Explicit => advect_core::ThirdOrderVariant::Explicit,
            Scheme1D::Implicit => advect_core::ThirdOrderVariant::Implicit,
            Scheme1D::SemiImplicit | Scheme1D::SemiImplicitB => {
                advect_core::ThirdOrderVariant::Semi
            }
        }),
        _ => Kappa1D::Constant(
            s.parse::<f64>().map_err(|e| format!("kappa '{s}': {e}"))?,
        ),
    })
}

fn parse_floats(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("'{t}': {e}")))
        .collect()
}

fn parse_usizes(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|e| format!("'{t}': {e}")))
        .collect()
}

#[derive(Args)]
struct RunArgs {
    /// key=value config file; flags override file values
    #[arg(long)]
    config: Option<PathBuf>,
    /// 1 or 2 space dimensions
    #[arg(long)]
    dim: Option<usize>,
    /// explicit|implicit|si1d|si1d_b (1D); si2d|ctu_a|ctu_b (2D)
    #[arg(long)]
    scheme: Option<String>,
    /// kp|km|k0|k3 or numbers (2D); number|sign|third (1D)
    #[arg(long)]
    kappa: Option<String>,
    /// cubic|dist_euclid|dist_max|dist_max_abs|vortex_cone|quadratic_random|cubic_random
    #[arg(long)]
    profile: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// grid cells per axis
    #[arg(long)]
    m: Option<usize>,
    /// number of time steps
    #[arg(long)]
    n: Option<usize>,
    /// final time
    #[arg(long)]
    t_end: Option<f64>,
    /// rotation|vortex or constant components "v[,w]"
    #[arg(long)]
    velocity: Option<String>,
    /// max fast-sweeping sweeps per step
    #[arg(long)]
    sweeps: Option<usize>,
    /// ghost | noghost (noghost applies the boundary kappa override)
    #[arg(long)]
    boundary: Option<String>,
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// exit 1 if a non-finite value or overshoot beyond 0.5 appears
    #[arg(long)]
    fail_on_instability: bool,
}

fn cmd_run(a: &RunArgs) -> Result<ExitCode, String> {
    let s = Settings::new(a.config.as_ref())?;
    let dim = s.get("dim", &a.dim, 2, |v| v.parse::<usize>())?;
    let seed = s.get("seed", &a.seed, 0, |v| v.parse::<u64>())?;
    let m = s.get("m", &a.m, 40, |v| v.parse::<usize>())?;
    let n = s.get("n", &a.n, 100, |v| v.parse::<usize>())?;
    let t_end = s.get("t_end", &a.t_end, 1.0, |v| v.parse::<f64>())?;
    let sweeps = s.get("sweeps", &a.sweeps, 3, |v| v.parse::<usize>())?;
    let profile_name =
        s.get("profile", &a.profile, "cubic".to_string(), |v| Ok::<_, String>(v.to_string()))?;
    let profile = Profile::by_name(&profile_name, seed).map_err(|e| e.to_string())?;
    let velocity =
        s.get("velocity", &a.velocity, "rotation".to_string(), |v| Ok::<_, String>(v.to_string()))?;
    let tau = t_end / n as f64;
    std::fs::create_dir_all(&a.out).map_err(|e| e.to_string())?;

    let mut diagnostics: Vec<(usize, usize, f64, f64, f64)> = Vec::new();
    let mut unstable = false;

    if dim == 1 {
        let scheme_name =
            s.get("scheme", &a.scheme, "si1d".to_string(), |v| Ok::<_, String>(v.to_string()))?;
        let scheme = parse_scheme_1d(&scheme_name)?;
        let kappa_name =
            s.get("kappa", &a.kappa, "third".to_string(), |v| Ok::<_, String>(v.to_string()))?;
        let kappa = parse_kappa_1d(&kappa_name, scheme)?;
        let v0 = velocity.parse::<f64>().map_err(|_| {
            format!("1D runs need a constant velocity number, got '{velocity}'")
        })?;
        let grid = Arc::new(Grid1D::new(-1.0, 1.0, m).map_err(|e| e.to_string())?);
        let vel = VelocityField1D::constant(grid.clone(), v0);
        let courant = CourantField1D::new(&vel, tau);
        let u0 = ScalarField1D::from_fn(grid.clone(), |x| profile.eval(x, 0.0));
        let g = move |x: f64, t: f64| profile.eval(x - v0 * t, 0.0);
        let amp0 = u0.values.iter().fold(0.0f64, |acc, &v| acc.max(v.abs()));
        let u = advance_1d(&u0, &courant, tau, n, scheme, kappa, sweeps, &g, |_, d| {
            diagnostics.push((d.step, d.sweeps_used, d.final_residual, d.min, d.max));
            if !d.min.is_finite() || d.max.abs().max(d.min.abs()) > amp0 + 0.5 {
                unstable = true;
            }
        })
        .map_err(|e| e.to_string())?;
        let mut f = BufWriter::new(
            File::create(a.out.join("run_field.csv")).map_err(|e| e.to_string())?,
        );
        u.write_csv(&mut f).map_err(|e| e.to_string())?;
    } else if dim == 2 {
        let scheme_name =
            s.get("scheme", &a.scheme, "si2d".to_string(), |v| Ok::<_, String>(v.to_string()))?;
        let scheme = parse_scheme_2d(&scheme_name)?;
        let kappa_name =
            s.get("kappa", &a.kappa, "k3".to_string(), |v| Ok::<_, String>(v.to_string()))?;
        let kappa = parse_kappa_2d(&kappa_name)?;
        let boundary =
            s.get("boundary", &a.boundary, "ghost".to_string(), |v| Ok::<_, String>(v.to_string()))?;
        let (mode, kappa) = match boundary.as_str() {
            "ghost" => (BoundaryMode::GhostDirichlet, kappa),
            "noghost" => (BoundaryMode::NoGhost, boundary_kappa_override(kappa)),
            other => return Err(format!("unknown boundary mode '{other}'")),
        };
        let grid = Arc::new(Grid2D::new(-1.0, 1.0, m).map_err(|e| e.to_string())?);
        let (vel, g): (VelocityField2D, Box<dyn Fn(f64, f64, f64) -> f64>) =
            match velocity.as_str() {
                "rotation" => (
                    VelocityField2D::from_fn(grid.clone(), rotation_velocity),
                    Box::new(move |x, y, t| exact_rotation(&profile, t, x, y)),
                ),
                "vortex" => (
                    VelocityField2D::from_fn(grid.clone(), vortex_velocity),
                    Box::new(move |x, y, _| profile.eval(x, y)),
                ),
                spec => {
                    let c = parse_floats(spec)?;
                    if c.len() != 2 {
                        return Err(format!("velocity '{spec}': expected v,w"));
                    }
                    let (v0, w0) = (c[0], c[1]);
                    (
                        VelocityField2D::constant(grid.clone(), v0, w0),
                        Box::new(move |x, y, t| profile.eval(x - v0 * t, y - w0 * t)),
                    )
                }
            };
        let profile2 = Profile::by_name(&profile_name, seed).map_err(|e| e.to_string())?;
        let courant = CourantField2D::new(&vel, tau);
        let u0 = ScalarField2D::from_fn(grid.clone(), |x, y| profile2.eval(x, y));
        let amp0 = u0.max().abs().max(u0.min().abs());
        let u = advance_2d(
            &u0,
            &courant,
            tau,
            n,
            scheme,
            &kappa,
            mode,
            sweeps,
            g.as_ref(),
            |_, d: &StepDiag2D| {
                diagnostics.push((d.step, d.sweeps_used, d.final_residual, d.min, d.max));
                if !d.min.is_finite() || d.max.abs().max(d.min.abs()) > amp0 + 0.5 {
                    unstable = true;
                }
            },
        )
        .map_err(|e| e.to_string())?;
        let mut f = BufWriter::new(
            File::create(a.out.join("run_field.csv")).map_err(|e| e.to_string())?,
        );
        u.write_csv(&mut f).map_err(|e| e.to_string())?;
    } else {
        return Err(format!("dim must be 1 or 2, got {dim}"));
    }

    let mut f = BufWriter::new(
        File::create(a.out.join("run_diagnostics.csv")).map_err(|e| e.to_string())?,
    );
    writeln!(f, "step,sweeps_used,final_residual,min_U,max_U").map_err(|e| e.to_string())?;
    for (step, sw, res, lo, hi) in &diagnostics {
        writeln!(f, "{step},{sw},{res:.17e},{lo:.17e},{hi:.17e}").map_err(|e| e.to_string())?;
    }
    s.write_echo(&a.out, "run").map_err(|e| e.to_string())?;
    if unstable {
        eprintln!("instability detected");
        if a.fail_on_instability {
            return Ok(ExitCode::from(1));
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Args)]
struct StabilityArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    scheme: Option<String>,
    #[arg(long)]
    kappa: Option<String>,
    /// Courant numbers "c" (1D) or "c,d" (2D); may list several pairs
    /// separated by ';'
    #[arg(long)]
    courant: Option<String>,
    /// scan the whole box |C|,|D| <= LIMIT for the worst pair
    #[arg(long)]
    courant_box: Option<f64>,
    #[arg(long)]
    resolution: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// exit 1 if any sampled point is unstable
    #[arg(long)]
    fail_on_instability: bool,
}

fn cmd_stability(a: &StabilityArgs) -> Result<ExitCode, String> {
    let s = Settings::new(a.config.as_ref())?;
    let scheme_name =
        s.get("scheme", &a.scheme, "si2d".to_string(), |v| Ok::<_, String>(v.to_string()))?;
    let kappa_name =
        s.get("kappa", &a.kappa, "k0".to_string(), |v| Ok::<_, String>(v.to_string()))?;
    let courant =
        s.get("courant", &a.courant, "1,1".to_string(), |v| Ok::<_, String>(v.to_string()))?;

    let is_1d = parse_scheme_1d(&scheme_name).is_ok() && Scheme2D::by_name(&scheme_name).is_none();
    let mut reports: Vec<StabilityReport> = Vec::new();
    if let Some(limit) = a.courant_box {
        let scheme = parse_scheme_2d(&scheme_name)?;
        let kappa = parse_kappa_2d(&kappa_name)?;
        let res = s.get("resolution", &a.resolution, 128, |v| v.parse::<usize>())?;
        reports.push(max_over_courant_box(scheme, &kappa, limit, 1.0, res));
    } else if is_1d {
        let scheme = parse_scheme_1d(&scheme_name)?;
        let kappa = parse_kappa_1d(&kappa_name, scheme)?;
        let res = s.get("resolution", &a.resolution, SCAN_RES_1D, |v| v.parse::<usize>())?;
        for part in courant.split(';') {
            let c = parse_floats(part)?;
            if c.len() != 1 {
                return Err(format!("1D courant entry '{part}': expected one number"));
            }
            reports.push(analyze_1d(scheme, c[0], kappa, res, true));
        }
    } else {
        let scheme = parse_scheme_2d(&scheme_name)?;
        let kappa = parse_kappa_2d(&kappa_name)?;
        let res = s.get("resolution", &a.resolution, SCAN_RES_2D, |v| v.parse::<usize>())?;
        for part in courant.split(';') {
            let c = parse_floats(part)?;
            if c.len() != 2 {
                return Err(format!("2D courant entry '{part}': expected c,d"));
            }
            reports.push(analyze_2d(scheme, c[0], c[1], &kappa, res, true));
        }
    }
    for r in &reports {
        println!(
            "{} C={} D={}: max|S| = {:.12} at theta = ({:.6}, {:.6}) -> {}",
            r.scheme, r.c, r.d, r.max_abs_s, r.theta.0, r.theta.1, r.verdict()
        );
    }
    if let Some(out) = &a.out {
        if let Some(dir) = out.parent() {
            if !dir.as_os_str().is_empty() {
                std::fs::create_dir_all(dir).map_err(|e| e.to_string())?;
            }
        }
        let mut f = BufWriter::new(File::create(out).map_err(|e| e.to_string())?);
        write_region_csv(&reports, &mut f).map_err(|e| e.to_string())?;
        let dir = out.parent().map(Path::to_path_buf).unwrap_or_default();
        let stem = out.file_stem().and_then(|x| x.to_str()).unwrap_or("stability");
        s.write_echo(&dir, stem).map_err(|e| e.to_string())?;
    }
    if a.fail_on_instability && reports.iter().any(|r| !r.stable) {
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    /// rotation | translation | vortex
    #[arg(long)]
    suite: Option<String>,
    #[arg(long)]
    profile: Option<String>,
    /// "all" or comma list of scheme:kappa pairs, e.g. "si2d:k0,ctu_a:k3"
    #[arg(long)]
    schemes: Option<String>,
    /// comma list of grid sizes
    #[arg(long = "M", name = "M")]
    m: Option<String>,
    /// steps per unit rotation: n = factor * M / divisor encoded as "5/2" or "1/2"
    #[arg(long)]
    step_ratio: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    sweeps: Option<usize>,
    /// vortex reference grid (320 desk scale; 1280 matches the reference tables, slow)
    #[arg(long)]
    m_ref: Option<usize>,
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

fn bench_columns(spec: &str) -> Result<Vec<(Scheme2D, Kappa2D)>, String> {
    if spec == "all" {
        return Ok(vec![
            (Scheme2D::SemiImplicit, Kappa2D::Kp),
            (Scheme2D::SemiImplicit, Kappa2D::Km),
            (Scheme2D::SemiImplicit, Kappa2D::K0),
            (Scheme2D::SemiImplicit, Kappa2D::K3),
            (Scheme2D::CTU_A, Kappa2D::K3),
        ]);
    }
    spec.split(',')
        .map(|pair| {
            let (sch, kap) = pair
                .split_once(':')
                .ok_or_else(|| format!("scheme entry '{pair}': expected scheme:kappa"))?;
            Ok((parse_scheme_2d(sch.trim())?, parse_kappa_2d(kap.trim())?))
        })
        .collect()
}

fn cmd_bench(a: &BenchArgs) -> Result<ExitCode, String> {
    let s = Settings::new(a.config.as_ref())?;
    let suite =
        s.get("suite", &a.suite, "rotation".to_string(), |v| Ok::<_, String>(v.to_string()))?;
    let schemes =
        s.get("schemes", &a.schemes, "all".to_string(), |v| Ok::<_, String>(v.to_string()))?;
    let columns = bench_columns(&schemes)?;
    let ms = parse_usizes(&s.get("M", &a.m, "40,80".to_string(), |v| Ok::<_, String>(v.to_string()))?)?;
    let seed = s.get("seed", &a.seed, 0, |v| v.parse::<u64>())?;
    let sweeps = s.get("sweeps", &a.sweeps, 3, |v| v.parse::<usize>())?;
    std::fs::create_dir_all(&a.out).map_err(|e| e.to_string())?;

    let mut reports: Vec<ErrorReport> = Vec::new();
    match suite.as_str() {
        "rotation" => {
            let profile_name = s.get("profile", &a.profile, "cubic".to_string(), |v| {
                Ok::<_, String>(v.to_string())
            })?;
            let profile = Profile::by_name(&profile_name, seed).map_err(|e| e.to_string())?;
            let ratio = s.get("step_ratio", &a.step_ratio, "5/2".to_string(), |v| {
                Ok::<_, String>(v.to_string())
            })?;
            let (num, den) = ratio
                .split_once('/')
                .ok_or_else(|| format!("step_ratio '{ratio}': expected a/b"))?;
            let (num, den): (usize, usize) = (
                num.parse().map_err(|e| format!("step_ratio: {e}"))?,
                den.parse().map_err(|e| format!("step_ratio: {e}"))?,
            );
            for &(scheme, ref kappa) in &columns {
                for &m in &ms {
                    let n = num * m / den;
                    reports.push(
                        run_rotation(
                            &profile,
                            scheme,
                            kappa,
                            m,
                            n,
                            BoundaryMode::GhostDirichlet,
                            sweeps,
                        )
                        .map_err(|e| e.to_string())?,
                    );
                }
            }
        }
        "translation" => {
            let profile_name = s.get("profile", &a.profile, "quadratic_random".to_string(), |v| {
                Ok::<_, String>(v.to_string())
            })?;
            let profile = Profile::by_name(&profile_name, seed).map_err(|e| e.to_string())?;
            for &(scheme, ref kappa) in &columns {
                for &m in &ms {
                    let n = 5 * m / 2;
                    reports.push(
                        run_translation(&profile, scheme, kappa, m, n, (0.8, 0.9), 1.0, sweeps)
                            .map_err(|e| e.to_string())?,
                    );
                }
            }
        }
        "vortex" => {
            let m_ref = s.get("m_ref", &a.m_ref, 320, |v| v.parse::<usize>())?;
            if m_ref >= 1280 {
                eprintln!(
                    "warning: m_ref = {m_ref} uses a fine reference grid; expect a long run"
                );
            }
            for &(scheme, ref kappa) in &columns {
                let (reference, _, _) =
                    vortex_solution(scheme, kappa, m_ref, sweeps).map_err(|e| e.to_string())?;
                for &m in &ms {
                    reports.push(
                        run_vortex(scheme, kappa, m, &reference, sweeps)
                            .map_err(|e| e.to_string())?,
                    );
                }
            }
        }
        other => return Err(format!("unknown suite '{other}'")),
    }

    let path = a.out.join(format!("{suite}_results.csv"));
    let mut f = BufWriter::new(File::create(&path).map_err(|e| e.to_string())?);
    write_results_csv(&reports, &mut f).map_err(|e| e.to_string())?;
    s.write_echo(&a.out, &format!("{suite}_results")).map_err(|e| e.to_string())?;
    println!("wrote {}", path.display());
    Ok(ExitCode::SUCCESS)
}

#[derive(Args)]
struct DemoArgs {
    #[arg(long, default_value_t = 80)]
    m: usize,
    /// exit 1 when the demo triggers the instability flag (it should)
    #[arg(long)]
    fail_on_instability: bool,
}

fn cmd_demo(a: &DemoArgs) -> Result<ExitCode, String> {
    let r = instability_demo(a.m).map_err(|e| e.to_string())?;
    println!("grid M = {}, single step tau = {}, max Courant = {:.2}", r.m, r.tau_big, r.max_courant);
    println!(
        "si2d+k3, 1 sweep:   overshoot = {:+.4}  ({})",
        r.overshoot_si_one_sweep,
        if r.overshoot_si_one_sweep > 0.5 { "UNSTABLE" } else { "stable" }
    );
    println!(
        "si2d+k3, 3 sweeps:  overshoot = {:+.4}  ({})",
        r.overshoot_si,
        if r.overshoot_si > 0.5 { "UNSTABLE" } else { "stable" }
    );
    println!(
        "ctu_a+k3, same step: overshoot = {:+.4}  ({})",
        r.overshoot_ctu,
        if r.overshoot_ctu > 0.5 { "UNSTABLE" } else { "stable" }
    );
    println!(
        "si2d+k3, 16 steps:   overshoot = {:+.4}, deviation from fine reference {:.4} (ctu single step: {:.4})",
        r.overshoot_multi, r.e_multi, r.e_ctu
    );
    if a.fail_on_instability && r.overshoot_si > 0.5 {
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Args)]
struct DumpArgs {
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    scheme: Option<String>,
    #[arg(long)]
    kappa: Option<String>,
    #[arg(long, default_value_t = 10)]
    m: usize,
    /// rotation|vortex or constant "v[,w]"
    #[arg(long, default_value = "rotation")]
    velocity: String,
    #[arg(long, default_value_t = 0.01)]
    tau: f64,
    #[arg(long)]
    out: PathBuf,
}

fn cmd_dump(a: &DumpArgs) -> Result<ExitCode, String> {
    let dim = a.dim.unwrap_or(2);
    if let Some(dir) = a.out.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir).map_err(|e| e.to_string())?;
        }
    }
    let mut f = BufWriter::new(File::create(&a.out).map_err(|e| e.to_string())?);
    if dim == 1 {
        let scheme = parse_scheme_1d(a.scheme.as_deref().unwrap_or("si1d"))?;
        let kappa = parse_kappa_1d(a.kappa.as_deref().unwrap_or("0"), scheme)?;
        let v: f64 = a
            .velocity
            .parse()
            .map_err(|_| format!("1D velocity must be a number, got '{}'", a.velocity))?;
        let grid = Arc::new(Grid1D::new(-1.0, 1.0, a.m).map_err(|e| e.to_string())?);
        let vel = VelocityField1D::constant(grid, v);
        let stencil = assemble_1d(scheme, &CourantField1D::new(&vel, a.tau), kappa);
        stencil.dump_csv(&mut f).map_err(|e| e.to_string())?;
    } else {
        let scheme = parse_scheme_2d(a.scheme.as_deref().unwrap_or("si2d"))?;
        let kappa = parse_kappa_2d(a.kappa.as_deref().unwrap_or("k3"))?;
        let grid = Arc::new(Grid2D::new(-1.0, 1.0, a.m).map_err(|e| e.to_string())?);
        let vel = match a.velocity.as_str() {
            "rotation" => VelocityField2D::from_fn(grid.clone(), rotation_velocity),
            "vortex" => VelocityField2D::from_fn(grid.clone(), vortex_velocity),
            spec => {
                let c = parse_floats(spec)?;
                if c.len() != 2 {
                    return Err(format!("velocity '{spec}': expected v,w"));
                }
                VelocityField2D::constant(grid.clone(), c[0], c[1])
            }
        };
        let stencil = assemble_2d(scheme, &CourantField2D::new(&vel, a.tau), &kappa);
        stencil.dump_csv(&mut f).map_err(|e| e.to_string())?;
    }
    println!("wrote {}", a.out.display());
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(a) => cmd_run(a),
        Command::Stability(a) => cmd_stability(a),
        Command::Bench(a) => cmd_bench(a),
        Command::DemoInstability(a) => cmd_demo(a),
        Command::DumpStencil(a) => cmd_dump(a),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
