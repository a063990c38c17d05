//! Command-line front end: build states, compute tomograms, reconstruct
//! densities, compare expectation routes, run the verification suites, and
//! emit plot-ready files.
//!
//! Exit codes: 0 on success, 1 on usage or IO errors, 2 when a verification
//! suite reports a failing check.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64 as C64;
use serde_json::json;

use tomoscope::config::RunConfig;
use tomoscope::error::{Result, TomoError};
use tomoscope::io;
use tomoscope::radon::{density_from_tomogram, tomogram_from_density};
use tomoscope::states::{matrix_expectation, DensityMatrix, ModeParams, Observable};
use tomoscope::symbols::{
    dual_regular, dual_singular, expect_regular, expect_singular,
};
use tomoscope::tomops;
use tomoscope::verify;

#[derive(Parser)]
#[command(
    name = "tomoscope",
    about = "Quadrature tomograms, Wigner functions, and tomogram-space operators",
    long_about = "Builds harmonic-oscillator states, maps them to optical tomograms, \
reconstructs densities by filtered backprojection, compares expectation routes, \
and runs the numeric verification suites.\n\n\
Defaults (overridable via --config JSON): state fock:0, grid [-8, 8] with 512 \
points and 180 angles, ramp filter with no rolloff, output directory `out`, \
all expectation routes, route-agreement tolerance 1e-3.\n\n\
Set TOMOSCOPE_THREADS to cap internal parallelism."
)]
struct Cli {
    /// JSON config file; command-line flags override its fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct StateOpts {
    /// State spec: `fock:N` or `coherent:RE,IM`.
    #[arg(long)]
    state: Option<String>,
}

#[derive(Args)]
struct DirOpts {
    /// Output directory.
    #[arg(long)]
    dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print diagnostics of the configured state.
    State(StateOpts),
    /// Compute the state's tomogram and write it to the output directory.
    Tomogram {
        #[command(flatten)]
        state: StateOpts,
        #[command(flatten)]
        dir: DirOpts,
    },
    /// Read a tomogram back and reconstruct the density matrix.
    Reconstruct {
        #[command(flatten)]
        dir: DirOpts,
        /// Tomogram file (defaults to `<dir>/tomogram.txt`).
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Print an observable's expectation by every selected route.
    Expect {
        #[command(flatten)]
        state: StateOpts,
        /// Observable name: one, q, p, q2, p2, qp, N, a, adag.
        #[arg(long)]
        obs: String,
        /// Routes: all, matrix, tomops, dual-regular, dual-singular.
        #[arg(long, value_delimiter = ',')]
        routes: Vec<String>,
    },
    /// Run a verification suite; exits 2 if any check fails.
    Verify {
        /// Suite name: `all` or `quick`.
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Write plot-ready CSV and PGM heatmap files of the tomogram.
    Plot {
        #[command(flatten)]
        state: StateOpts,
        #[command(flatten)]
        dir: DirOpts,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are successes; everything else is a
            // usage error (exit 1 per the CLI contract).
            let is_info = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp
                    | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if is_info { ExitCode::SUCCESS } else { ExitCode::from(1) };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    init_threads()?;
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::from_json_file(path)?,
        None => RunConfig::default(),
    };
    match cli.command {
        Command::State(opts) => {
            apply_state(&mut cfg, opts);
            let rho = cfg.density()?;
            print_state(&cfg.state, &rho);
            Ok(ExitCode::SUCCESS)
        }
        Command::Tomogram { state, dir } => {
            apply_state(&mut cfg, state);
            let out = out_dir(&cfg, dir)?;
            let rho = cfg.density()?;
            let w = tomogram_from_density(&rho, &cfg.agrid()?, &ModeParams::default())?;
            io::write_tomogram(&out.join("tomogram.txt"), &w)?;
            let meta = json!({
                "state": cfg.state,
                "x_min": cfg.grid.x_min,
                "x_max": cfg.grid.x_max,
                "n": cfg.grid.n,
                "n_theta": cfg.grid.n_theta,
            });
            std::fs::write(
                out.join("tomogram.json"),
                serde_json::to_string_pretty(&meta)
                    .map_err(|e| TomoError::Parse(e.to_string()))?,
            )?;
            println!("wrote {}", out.join("tomogram.txt").display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Reconstruct { dir, input } => {
            let out = out_dir(&cfg, dir)?;
            let path = input.unwrap_or_else(|| out.join("tomogram.txt"));
            let w = io::read_tomogram(&path)?;
            let grid = w.xgrid();
            let (rho, residue) = density_from_tomogram(&w, &grid, &cfg.filter_spec())?;
            println!("reconstructed from {}", path.display());
            println!("trace            {:+.6e}", rho.trace().re);
            println!("purity           {:+.6e}", rho.purity());
            println!("negativity mass  {:+.6e}", residue);
            if let Ok(reference) = cfg.density() {
                if reference.grid() == grid {
                    let diff = rho.matrix() - reference.matrix();
                    let rel = frob(&diff) / frob(reference.matrix());
                    println!("frobenius error  {rel:+.6e} vs state {}", cfg.state);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Expect { state, obs, routes } => {
            apply_state(&mut cfg, state);
            if !routes.is_empty() {
                cfg.routes = routes;
            }
            let code = cmd_expect(&cfg, &obs)?;
            Ok(code)
        }
        Command::Verify { suite } => {
            let checks = verify::suite(&suite)?;
            let mut all_ok = true;
            for c in &checks {
                let status = if c.passed { "PASS" } else { "FAIL" };
                println!("[{status}] {} (margin {:.3})", c.name, c.margin);
                if !c.passed {
                    println!("       {}", c.detail);
                    all_ok = false;
                }
            }
            Ok(if all_ok { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Command::Plot { state, dir } => {
            apply_state(&mut cfg, state);
            let out = out_dir(&cfg, dir)?;
            let rho = cfg.density()?;
            let w = tomogram_from_density(&rho, &cfg.agrid()?, &ModeParams::default())?;
            io::write_csv(&out.join("tomogram.csv"), &w)?;
            io::write_pgm(&out.join("tomogram.pgm"), &out.join("tomogram.pgm.json"), &w)?;
            println!(
                "wrote {}, {} (+ sidecar)",
                out.join("tomogram.csv").display(),
                out.join("tomogram.pgm").display()
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn init_threads() -> Result<()> {
    if let Ok(v) = std::env::var("TOMOSCOPE_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| TomoError::Parse(format!("bad TOMOSCOPE_THREADS value `{v}`")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .map_err(|e| TomoError::InvalidArgument(e.to_string()))?;
    }
    Ok(())
}

fn apply_state(cfg: &mut RunConfig, opts: StateOpts) {
    if let Some(s) = opts.state {
        cfg.state = s;
    }
}

fn out_dir(cfg: &RunConfig, dir: DirOpts) -> Result<PathBuf> {
    let out = dir.dir.unwrap_or_else(|| PathBuf::from(&cfg.output_dir));
    std::fs::create_dir_all(&out)?;
    Ok(out)
}

fn frob(a: &ndarray::Array2<C64>) -> f64 {
    a.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

fn print_state(label: &str, rho: &DensityMatrix) {
    let g = rho.grid();
    println!("state            {label}");
    println!(
        "grid             [{}, {}] with {} points",
        g.x_min(),
        g.x_max(),
        g.len()
    );
    println!("trace            {:+.6e}", rho.trace().re);
    println!("purity           {:+.6e}", rho.purity());
    println!("hermiticity dev  {:+.6e}", rho.hermiticity_deviation());
}

fn cmd_expect(cfg: &RunConfig, obs_name: &str) -> Result<ExitCode> {
    let obs = Observable::parse(obs_name)?;
    let name = obs.name();
    let all = cfg.routes.iter().any(|r| r == "all");
    let wants = |r: &str| all || cfg.routes.iter().any(|x| x == r);

    let rho = cfg.density()?;
    let params = ModeParams::default();
    let w = tomogram_from_density(&rho, &cfg.agrid()?, &params)?;

    let mut values: Vec<(&str, C64)> = Vec::new();
    if wants("matrix") {
        values.push(("matrix", matrix_expectation(obs, &rho)));
    }
    if wants("tomops") {
        let op = tomogram_operator(obs, &params);
        values.push(("tomops", tomops::expectation(&op, &w)?));
    }
    if wants("dual-regular") {
        let sym = dual_regular(name, 1)?;
        values.push(("dual-regular", expect_regular(&sym, &w)?));
    }
    if wants("dual-singular") {
        // Only a subset of observables has a singular dual form.
        if let Ok(sym) = dual_singular(name) {
            values.push(("dual-singular", expect_singular(&sym, &w)));
        }
    }
    if values.is_empty() {
        return Err(TomoError::InvalidArgument(format!(
            "no known routes in {:?}",
            cfg.routes
        )));
    }

    println!("observable {name} on state {}", cfg.state);
    println!("{:<16} {:>24} {:>24}", "route", "re", "im");
    for (route, v) in &values {
        println!("{route:<16} {:>+24.16e} {:>+24.16e}", v.re, v.im);
    }
    let mut worst = 0.0_f64;
    for i in 0..values.len() {
        for j in (i + 1)..values.len() {
            let dev = (values[i].1 - values[j].1).norm();
            worst = worst.max(dev);
            println!(
                "|{} - {}| = {:.3e}",
                values[i].0, values[j].0, dev
            );
        }
    }
    println!("max pairwise deviation {worst:.3e} (tolerance {:.1e})",
        cfg.tolerances.route_agreement);
    Ok(ExitCode::SUCCESS)
}

fn tomogram_operator(obs: Observable, params: &ModeParams) -> tomops::TomogramOperator {
    match obs {
        Observable::One => tomops::TomogramOperator::identity(),
        Observable::Q => tomops::op_q(params),
        Observable::P => tomops::op_p(params),
        Observable::Q2 => tomops::op_q2(params),
        Observable::P2 => tomops::op_p2(params),
        Observable::QP => tomops::op_qp(params),
        Observable::N => tomops::op_n(),
        Observable::A => tomops::op_a(),
        Observable::Adag => tomops::op_adag(),
    }
}
