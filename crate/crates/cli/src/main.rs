use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use revisit_cli::config::{Inclination, InclinationKeyword};
use revisit_cli::{
    run_case, run_oracle, run_sweep, write_csv, CaseConfig, CliError, SensorConfig, SweepSpec,
};
use revisit_core::{FootprintShape, Parallelism};

#[derive(Parser)]
#[command(
    name = "revisit",
    version,
    about = "Revisit-time analysis over a target latitude"
)]
struct Cli {
    /// Run everything on the calling thread.
    #[arg(long, global = true)]
    serial: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyse a single case and print the report as JSON.
    Run(RunArgs),
    /// Run a parameter sweep and write one CSV row per cell.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunArgs {
    /// JSON case file; flags below override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    altitude_km: Option<f64>,
    #[arg(long, conflicts_with = "sso")]
    inclination_deg: Option<f64>,
    /// Use the sun-synchronous inclination for the altitude.
    #[arg(long)]
    sso: bool,
    #[arg(long, conflicts_with = "boresight_deg")]
    elevation_deg: Option<f64>,
    #[arg(long)]
    boresight_deg: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    latitude_deg: Option<f64>,
    /// Walker pattern t/p/f.
    #[arg(long)]
    walker: Option<String>,
    #[arg(long)]
    window_days: Option<f64>,
    #[arg(long)]
    grid_res_deg: Option<f64>,
    #[arg(long)]
    segment_samples: Option<usize>,
    /// Footprint outline used in the visibility test.
    #[arg(long, value_enum)]
    footprint: Option<ShapeArg>,
    /// Also run the propagation oracle and report both.
    #[arg(long)]
    oracle: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ShapeArg {
    Ellipse,
    SmallCircle,
}

impl From<ShapeArg> for FootprintShape {
    fn from(s: ShapeArg) -> Self {
        match s {
            ShapeArg::Ellipse => FootprintShape::Ellipse,
            ShapeArg::SmallCircle => FootprintShape::SmallCircle,
        }
    }
}

impl RunArgs {
    fn case(&self) -> Result<CaseConfig, CliError> {
        let mut cfg = match &self.config {
            Some(path) => CaseConfig::from_path(path)?,
            None => {
                let missing =
                    |what: &str| CliError::Config(format!("--{what} is required without --config"));
                let sensor = match (self.elevation_deg, self.boresight_deg) {
                    (Some(e), None) => SensorConfig::ElevationDeg(e),
                    (None, Some(b)) => SensorConfig::BoresightDeg(b),
                    _ => return Err(missing("elevation-deg or --boresight-deg")),
                };
                let inclination_deg = match (self.inclination_deg, self.sso) {
                    (Some(i), false) => Inclination::Degrees(i),
                    (None, true) => Inclination::Keyword(InclinationKeyword::Sso),
                    _ => return Err(missing("inclination-deg or --sso")),
                };
                CaseConfig {
                    altitude_km: Some(self.altitude_km.ok_or_else(|| missing("altitude-km"))?),
                    semi_major_axis_km: None,
                    eccentricity: 0.0,
                    inclination_deg,
                    raan_deg: 0.0,
                    arg_perigee_deg: 0.0,
                    true_anomaly_deg: 0.0,
                    sensor,
                    latitude_deg: self.latitude_deg.ok_or_else(|| missing("latitude-deg"))?,
                    walker: None,
                    planes: None,
                    window_days: 60.0,
                    grid_res_deg: 0.1,
                    segment_samples: 1000,
                    footprint: FootprintShape::Ellipse,
                }
            }
        };
        if let Some(h) = self.altitude_km {
            cfg.altitude_km = Some(h);
            cfg.semi_major_axis_km = None;
        }
        if let Some(i) = self.inclination_deg {
            cfg.inclination_deg = Inclination::Degrees(i);
        }
        if self.sso {
            cfg.inclination_deg = Inclination::Keyword(InclinationKeyword::Sso);
        }
        if let Some(e) = self.elevation_deg {
            cfg.sensor = SensorConfig::ElevationDeg(e);
        }
        if let Some(b) = self.boresight_deg {
            cfg.sensor = SensorConfig::BoresightDeg(b);
        }
        if let Some(l) = self.latitude_deg {
            cfg.latitude_deg = l;
        }
        if let Some(w) = &self.walker {
            cfg.walker = Some(w.clone());
            cfg.planes = None;
        }
        if let Some(d) = self.window_days {
            cfg.window_days = d;
        }
        if let Some(g) = self.grid_res_deg {
            cfg.grid_res_deg = g;
        }
        if let Some(n) = self.segment_samples {
            cfg.segment_samples = n;
        }
        if let Some(f) = self.footprint {
            cfg.footprint = f.into();
        }
        Ok(cfg)
    }
}

fn configure_threads() -> anyhow::Result<()> {
    #[cfg(feature = "parallel")]
    if let Ok(v) = std::env::var("REVISIT_THREADS") {
        let n: usize = v
            .parse()
            .with_context(|| format!("REVISIT_THREADS={v:?} is not a count"))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()?;
    }
    Ok(())
}

fn execute(cli: Cli) -> Result<bool, CliError> {
    let parallelism = if cli.serial {
        Parallelism::Sequential
    } else {
        Parallelism::Parallel
    };
    match cli.command {
        Command::Run(args) => {
            let cfg = args.case()?;
            let outcome = run_case(&cfg, parallelism)?;
            for w in &outcome.warnings {
                eprintln!("warning: {w}");
            }
            let mut doc = serde_json::json!({ "case": cfg, "result": outcome });
            if args.oracle {
                let oracle = run_oracle(&cfg, parallelism)?;
                doc["oracle"] = serde_json::to_value(&oracle).expect("report serializes");
            }
            let stdout = io::stdout();
            let mut out = stdout.lock();
            serde_json::to_writer_pretty(&mut out, &doc).map_err(io::Error::from)?;
            writeln!(out)?;
            Ok(true)
        }
        Command::Sweep { config, out } => {
            let spec = SweepSpec::from_path(&config)?;
            let rows = run_sweep(&spec, parallelism)?;
            match out {
                Some(path) => write_csv(&rows, BufWriter::new(File::create(path)?))?,
                None => write_csv(&rows, io::stdout().lock())?,
            }
            let failed = rows.iter().filter(|r| r.is_failure()).count();
            if failed > 0 {
                eprintln!(
                    "{failed} of {} cells failed; see the error column",
                    rows.len()
                );
            }
            Ok(failed == 0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // usage mistakes are configuration errors; --help and --version are not
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(1);
    }
    match execute(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
