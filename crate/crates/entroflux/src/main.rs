use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use entroflux::cli::{bench, config::RunConfig, output};
use entroflux::fluxes::FluxCore;
use entroflux::solver::{run_case_1d, run_case_2d, AnyCase, RunOptions, StopRule};
use entroflux::verification::{cases, eoc};
use entroflux::Error;

#[derive(Parser)]
#[command(name = "entroflux", version, about = "Structure-preserving finite-volume Euler solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct CommonFlags {
    /// Core interface flux: central | ec1 | ec2 | eckep | llf | roe
    #[arg(long)]
    flux: Option<String>,
    /// Stabilization: none | es | hes
    #[arg(long)]
    scheme: Option<String>,
    #[arg(long)]
    nx: Option<usize>,
    #[arg(long)]
    ny: Option<usize>,
    #[arg(long)]
    cfl: Option<f64>,
    #[arg(long)]
    tfinal: Option<f64>,
    /// Sensor scaling factor
    #[arg(long)]
    q: Option<f64>,
    /// Sensor clip threshold
    #[arg(long)]
    eps: Option<f64>,
    /// Sensor profile: exponential | quadratic
    #[arg(long)]
    sensor_mode: Option<String>,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
    /// key=value config file; flags override its entries
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a registered case and write solution + diagnostics files
    Run {
        case: String,
        #[command(flatten)]
        flags: CommonFlags,
    },
    /// Density-wave convergence study over a resolution series
    Eoc {
        #[command(flatten)]
        flags: CommonFlags,
        /// Resolutions, e.g. 40,80,160,320
        #[arg(long, default_value = "40,80,160,320,640,1280", value_delimiter = ',')]
        sizes: Vec<usize>,
    },
    /// Flux micro-benchmark over identical random face sequences
    Bench {
        #[arg(long, default_value_t = 1_000_000)]
        iterations: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List registered cases
    ListCases,
}

fn build_config(flags: &CommonFlags) -> Result<RunConfig, Error> {
    let mut cfg = match &flags.config {
        Some(path) => RunConfig::parse(&std::fs::read_to_string(path)?)?,
        None => RunConfig::default(),
    };
    if let Some(v) = &flags.flux {
        cfg.apply("flux", v)?;
    }
    if let Some(v) = &flags.scheme {
        cfg.apply("scheme", v)?;
    }
    if let Some(v) = flags.nx {
        cfg.nx = Some(v);
    }
    if let Some(v) = flags.ny {
        cfg.ny = Some(v);
    }
    if let Some(v) = flags.cfl {
        cfg.cfl = v;
    }
    if let Some(v) = flags.tfinal {
        cfg.t_final = Some(v);
    }
    if let Some(v) = flags.q {
        cfg.sensor_q = v;
    }
    if let Some(v) = flags.eps {
        cfg.sensor_eps = v;
    }
    if let Some(v) = &flags.sensor_mode {
        cfg.apply("sensor_mode", v)?;
    }
    if let Some(v) = &flags.out {
        cfg.out_dir = v.clone();
    }
    if let Some(v) = flags.seed {
        cfg.seed = v;
    }
    Ok(cfg)
}

fn init_thread_pool() {
    if let Ok(threads) = std::env::var("ENTROFLUX_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build_global();
        }
    }
}

fn cmd_run(case_name: &str, flags: &CommonFlags) -> Result<(), Error> {
    let cfg = build_config(flags)?;
    let scheme = cfg.scheme()?;
    std::fs::create_dir_all(&cfg.out_dir)?;
    let opts = RunOptions {
        t_final_override: cfg.t_final,
        ..RunOptions::default()
    };

    match cases::find_case(case_name)? {
        AnyCase::OneD(case) => {
            let n = cfg.nx.unwrap_or(case.n_default);
            let run = run_case_1d(&case, n, &scheme, &opts)?;
            let sol = cfg.out_dir.join(format!("{case_name}.csv"));
            output::write_solution_1d(&sol, &run, case.gas)?;
            let diag = cfg.out_dir.join(format!("{case_name}_diagnostics.csv"));
            output::write_diagnostics(&diag, &run.diagnostics)?;
            eprintln!(
                "{case_name}: {} cells, {} steps to t = {:.6}; wrote {} and {}",
                n,
                run.steps,
                run.time,
                sol.display(),
                diag.display()
            );
        }
        AnyCase::TwoD(case) => {
            let grid = (
                cfg.nx.unwrap_or(case.desk_grid.0),
                cfg.ny.unwrap_or(case.desk_grid.1),
            );
            let run = run_case_2d(&case, grid, &scheme, &opts)?;
            let sol = cfg.out_dir.join(format!("{case_name}.vtk"));
            output::write_solution_2d(&sol, &run, case.gas)?;
            let diag = cfg.out_dir.join(format!("{case_name}_diagnostics.csv"));
            output::write_diagnostics(&diag, &run.diagnostics)?;
            let status = match case.stop {
                StopRule::Steady { .. } if run.steady_converged => "steady",
                StopRule::Steady { .. } => "budget",
                StopRule::TimeFinal(_) => "final time",
            };
            eprintln!(
                "{case_name}: {}x{} cells, {} steps to t = {:.6} ({status}); wrote {} and {}",
                grid.0,
                grid.1,
                run.steps,
                run.time,
                sol.display(),
                diag.display()
            );
        }
    }
    Ok(())
}

fn cmd_eoc(flags: &CommonFlags, sizes: &[usize]) -> Result<(), Error> {
    let cfg = build_config(flags)?;
    let flux = cfg.flux;
    if !matches!(flux, FluxCore::Ec1 | FluxCore::Ec2 | FluxCore::Eckep) {
        return Err(Error::Config(
            "eoc expects an entropy-conservative flux (ec1 | ec2 | eckep)".into(),
        ));
    }
    std::fs::create_dir_all(&cfg.out_dir)?;
    let t_final = cfg.t_final.unwrap_or(10.0);
    let rows = eoc::density_wave_eoc(flux, sizes, cfg.cfl, t_final, entroflux::gas::GasModel::AIR)?;
    let path = cfg.out_dir.join(format!("eoc_{}.csv", flux.name().to_lowercase()));
    output::write_eoc(&path, &rows)?;
    eprintln!("wrote {}", path.display());
    for r in &rows {
        println!(
            "N = {:>5}  L1 = {:.6e} ({})  L2 = {:.6e} ({})",
            r.n,
            r.l1,
            r.eoc_l1.map(|k| format!("{k:.3}")).unwrap_or_else(|| "--".into()),
            r.l2,
            r.eoc_l2.map(|k| format!("{k:.3}")).unwrap_or_else(|| "--".into()),
        );
    }
    Ok(())
}

fn cmd_bench(iterations: usize, seed: u64, out: Option<&PathBuf>) -> Result<(), Error> {
    let rows = bench::bench_fluxes(iterations, seed)?;
    let csv = bench::render_csv(&rows);
    print!("{csv}");
    if let Some(dir) = out {
        std::fs::create_dir_all(dir)?;
        let path = dir.join("bench.csv");
        std::fs::write(&path, csv)?;
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

fn cmd_list_cases() {
    for case in cases::case_registry() {
        match case {
            AnyCase::OneD(c) => println!(
                "{:<20} 1D  n = {:<6} t_final = {}",
                c.name, c.n_default, c.t_final
            ),
            AnyCase::TwoD(c) => {
                let stop = match c.stop {
                    StopRule::TimeFinal(t) => format!("t_final = {t}"),
                    StopRule::Steady { tol, .. } => format!("steady (tol {tol:.0e})"),
                };
                println!(
                    "{:<20} 2D  {}x{} (paper {}x{})  {stop}",
                    c.name, c.desk_grid.0, c.desk_grid.1, c.paper_grid.0, c.paper_grid.1
                );
            }
        }
    }
}

fn main() -> ExitCode {
    init_thread_pool();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run { case, flags } => cmd_run(case, flags),
        Command::Eoc { flags, sizes } => cmd_eoc(flags, sizes),
        Command::Bench {
            iterations,
            seed,
            out,
        } => cmd_bench(*iterations, *seed, out.as_ref()),
        Command::ListCases => {
            cmd_list_cases();
            Ok(())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
