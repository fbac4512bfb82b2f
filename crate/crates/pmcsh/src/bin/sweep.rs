//! Command-line front end for BER sweeps and controller traces.
//!
//! Exit codes: 0 success, 1 configuration error, 2 I/O error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use pmcsh::sweep::{load_params_over, parse_format, run_sweep, SweepMode, SweepSpec};
use pmcsh::{Error, Format, LinkParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Laser-power sweep: analytic + Monte Carlo BER per point.
    Power,
    /// Ideal BER vs Eb/N0 reference curves.
    Ideal,
    /// Polarization-controller convergence trace.
    Epc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Preset {
    /// Discrete modulators: km2 = 12 dB, km3 = 15 dB, lossless fiber.
    Fig4,
    /// Loss-compensated modulators: km2 = km3 = 7 dB, 5 dB fiber, 2 dB
    /// controller + hybrid.
    Fig5,
}

#[derive(Debug, Parser)]
#[command(
    name = "sweep",
    about = "BER sweeps for PAM4 vs PMC-SH coherent links",
    after_help = "Parameter files are flat key=value lines; keys: pt_dbm, responsivity, \
                  km1_db, km2_db, km3_db, kb_db, kp_db, fiber_db, nep_pw_per_sqrthz, \
                  baud_gbaud, df_factor. Values omitted fall back to the preset."
)]
struct Args {
    /// What to sweep.
    #[arg(long, value_enum, default_value_t = Mode::Power)]
    mode: Mode,

    /// Comma-separated link formats.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "pam4,pmcsh-qpsk,pmcsh-qam16"
    )]
    formats: Vec<String>,

    /// Sweep start (dBm for power mode, dB for ideal mode).
    #[arg(long, default_value_t = -10.0, allow_hyphen_values = true)]
    start: f64,

    /// Sweep stop, inclusive.
    #[arg(long, default_value_t = 16.0, allow_hyphen_values = true)]
    stop: f64,

    /// Sweep step.
    #[arg(long, default_value_t = 0.5)]
    step: f64,

    /// Monte Carlo symbols per sweep point.
    #[arg(long, default_value_t = 100_000)]
    symbols: u64,

    /// Master seed for all randomness.
    #[arg(long, default_value_t = 1)]
    seed: u64,

    /// Optional key=value parameter file layered over the preset.
    #[arg(long)]
    params: Option<PathBuf>,

    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,

    /// Optional SVG plot path.
    #[arg(long)]
    plot: Option<PathBuf>,

    /// Route PMC-SH Monte Carlo through a random polarization channel with
    /// the adaptive controller in the loop.
    #[arg(long)]
    pol: bool,

    /// Insertion-loss preset the parameter file overrides.
    #[arg(long, value_enum, default_value_t = Preset::Fig4)]
    preset: Preset,
}

fn build_spec(args: &Args) -> pmcsh::Result<SweepSpec> {
    let base = match args.preset {
        Preset::Fig4 => LinkParams::fig4_defaults(),
        Preset::Fig5 => LinkParams::fig5_defaults(),
    };
    let link = match &args.params {
        Some(path) => load_params_over(base, path)?,
        None => base,
    };
    let formats = args
        .formats
        .iter()
        .map(|s| parse_format(s))
        .collect::<pmcsh::Result<Vec<Format>>>()?;
    let mut spec = SweepSpec::power_defaults(link, args.out.clone());
    spec.mode = match args.mode {
        Mode::Power => SweepMode::Power,
        Mode::Ideal => SweepMode::Ideal,
        Mode::Epc => SweepMode::Epc,
    };
    spec.formats = formats;
    spec.start = args.start;
    spec.stop = args.stop;
    spec.step = args.step;
    spec.n_symbols = args.symbols;
    spec.seed = args.seed;
    spec.pol = args.pol;
    spec.plot_path = args.plot.clone();
    Ok(spec)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let spec = match build_spec(&args) {
        Ok(spec) => spec,
        Err(e) => return fail(e),
    };
    match run_sweep(&spec) {
        Ok(()) => {
            println!("wrote {}", spec.out_path.display());
            if let Some(plot) = &spec.plot_path {
                println!("wrote {}", plot.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => fail(e),
    }
}

fn fail(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code() as u8)
}
