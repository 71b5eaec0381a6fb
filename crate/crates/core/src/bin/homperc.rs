use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use homperc::analysis::{ec_zero_set, monte_carlo_ec};
use homperc::continuum::{lambda_from_radius, sample_grf_torus, sample_poisson_torus};
use homperc::harness::emit::write_aggregate_csv;
use homperc::harness::{
    aggregate, emit, read_trials, run_experiment, trials_file, ExperimentConfig, Format,
};
use homperc::model::DEFAULT_SIGMA2;
use homperc::site::{gen_cubical_complex, gen_perm_complex};
use homperc::{Error, Model, ModelSpec};

#[derive(Parser)]
#[command(
    name = "homperc",
    version,
    about = "Homological percolation experiments on the flat torus"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dump one complex (site models), point set (boolean) or field (grf).
    Gen {
        #[arg(long)]
        model: Model,
        #[arg(long)]
        dim: usize,
        /// m, intensity n, or grid size g.
        #[arg(long)]
        size: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        sigma2: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the interior zeros of the expected EC curve as JSON.
    EcZeros {
        #[arg(long)]
        model: Model,
        #[arg(long)]
        dim: usize,
        /// Only used by the Monte Carlo estimate (boolean, d=4), where it is
        /// the intensity n; closed-form zeros do not depend on it.
        #[arg(long)]
        size: Option<f64>,
        /// Trials of the Monte Carlo estimate.
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a Monte Carlo experiment from a JSON config.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        format: Option<Format>,
    },
    /// Recompute the aggregate table from a run's trials file.
    Stats {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::Config(_) | Error::UnsupportedDimension(_) | Error::SizeTooSmall { .. } => 2,
        Error::ZeroCountMismatch { .. } => 4,
        _ => 1,
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, Error> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(|e| Error::Io {
            path: parent.to_path_buf(),
            source: e,
        })?;
    }
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::Io {
            path: path.to_path_buf(),
            source: e,
        })
}

fn gen(
    model: Model,
    d: usize,
    size: f64,
    seed: u64,
    sigma2: Option<f64>,
    out: &Path,
) -> Result<(), Error> {
    let m = size as usize;
    let mut w = create(out)?;
    let io = |e| Error::Io {
        path: out.to_path_buf(),
        source: e,
    };
    match model {
        Model::Cubical => gen_cubical_complex(d, m, seed)?
            .write_dump(&mut w)
            .map_err(io)?,
        Model::Perm => gen_perm_complex(d, m, seed)?
            .write_dump(&mut w)
            .map_err(io)?,
        Model::Boolean => sample_poisson_torus(size, d, seed)?
            .write_csv(&mut w)
            .map_err(io)?,
        Model::Grf => sample_grf_torus(d, m, sigma2.unwrap_or(DEFAULT_SIGMA2), seed)?
            .write_csv(&mut w)
            .map_err(io)?,
    }
    w.flush().map_err(io)
}

fn run(
    config: &Path,
    trials: Option<usize>,
    seed: Option<u64>,
    out: Option<PathBuf>,
    format: Option<Format>,
) -> Result<u8, Error> {
    let mut cfg = ExperimentConfig::from_json_file(config)?;
    if let Some(t) = trials {
        cfg.trials = t;
    }
    if let Some(s) = seed {
        cfg.master_seed = s;
    }
    if let Some(o) = out {
        cfg.out_dir = o;
    }
    if let Some(f) = format {
        cfg.format = f;
    }
    let output = run_experiment(&cfg)?;
    for path in emit(&output, &cfg.out_dir, cfg.format)? {
        println!("{}", path.display());
    }
    if let Err(e) = &output.zeros {
        eprintln!("warning: {e}");
    }
    if let Err(e) = &output.stats {
        eprintln!("warning: {e}");
    }
    let invalid = output.invalid_trials();
    if invalid > 0 {
        eprintln!("warning: {invalid} of {} trials invalid", cfg.trials);
    }
    Ok(output.exit_code() as u8)
}

fn ec_zeros(
    model: Model,
    d: usize,
    size: Option<f64>,
    trials: usize,
    seed: u64,
) -> Result<u8, Error> {
    let zeros = match ec_zero_set(model, d) {
        Err(Error::UnsupportedDimension(_)) if model == Model::Boolean && d == 4 => {
            let n = size.ok_or_else(|| Error::Config("boolean d=4 zeros need --size".into()))?;
            let spec = ModelSpec::new(model, d, n);
            let lambda_max = lambda_from_radius(spec.cech_r_max(), n, d);
            let grid: Vec<f64> = (0..=400).map(|i| lambda_max * i as f64 / 400.0).collect();
            monte_carlo_ec(&spec, trials, seed, &grid)?.zero_set(model, d)
        }
        other => other,
    }?;
    println!(
        "{}",
        serde_json::to_string(&zeros).expect("zero set serializes")
    );
    Ok(0)
}

fn stats(dir: &Path) -> Result<u8, Error> {
    let path = trials_file(dir)?;
    let records = read_trials(&path)?;
    let stats = aggregate(&records)?;
    let stdout = std::io::stdout();
    write_aggregate_csv(stdout.lock(), &stats, Path::new("<stdout>"))?;
    Ok(0)
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen {
            model,
            dim,
            size,
            seed,
            sigma2,
            out,
        } => gen(model, dim, size, seed, sigma2, &out).map(|_| 0),
        Command::EcZeros {
            model,
            dim,
            size,
            trials,
            seed,
        } => ec_zeros(model, dim, size, trials, seed),
        Command::Run {
            config,
            trials,
            seed,
            out,
            format,
        } => run(&config, trials, seed, out, format),
        Command::Stats { input } => stats(&input),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}
