//! Command-line front end for the channel simulator.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use mcm::config::RunConfig;
use mcm::output::{curve_csv, curve_svg, fmt_sig, sweep_csv};
use mcm::validate::run_checks;
use mcm::{
    angular_spread, compute_pas, estimate_aoa_pdf, estimate_aor_pdf, generate_paths,
    orientation_sweep, PasCurve, Scenario, WrappedAngle,
};

#[derive(Parser)]
#[command(name = "mcm", version, about = "Multi-elliptical channel model simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario and write pas.csv, aoa_pdf.csv and aor_pdf.csv.
    Simulate(SimulateArgs),
    /// Run a full simulation per (alpha, beta) grid cell and write sweep.csv.
    Sweep(SweepArgs),
    /// Run the built-in invariant checks.
    Validate(ValidateArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Scenario config file (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Output directory; created if missing.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Override the config seed.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Override the transmit boresight, degrees.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    /// Override the receive boresight, degrees.
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    /// Also write pas.svg.
    #[arg(long)]
    svg: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Transmit boresights, comma-separated degrees.
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    alpha: Vec<f64>,
    /// Receive boresights, comma-separated degrees.
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    beta: Vec<f64>,
}

#[derive(Args)]
struct ValidateArgs {
    /// Path to the TDL-B data file.
    #[arg(long)]
    tdl: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simulate(args) => cmd_simulate(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Validate(args) => cmd_validate(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn load(common: &CommonArgs) -> Result<(RunConfig, Scenario)> {
    let mut cfg = RunConfig::from_file(&common.config)?;
    if let Some(seed) = common.seed {
        cfg.seed = seed;
    }
    let pdp_path = cfg.resolve_pdp(&common.config);
    let scenario = cfg
        .build(&pdp_path)
        .with_context(|| format!("building scenario from {}", common.config.display()))?;
    Ok((cfg, scenario))
}

fn metadata(cfg: &RunConfig, extra: &[(String, String)]) -> Vec<(String, String)> {
    let mut md = vec![
        ("tool".to_string(), format!("mcm {}", mcm::VERSION)),
        ("config".to_string(), cfg.echo()),
        ("seed".to_string(), cfg.seed.to_string()),
    ];
    md.extend(extra.iter().cloned());
    md
}

fn write(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn cmd_simulate(args: SimulateArgs) -> Result<ExitCode> {
    let (mut cfg, mut scenario) = load(&args.common)?;
    if let Some(alpha) = args.alpha {
        cfg.alpha_deg = alpha;
        scenario.tx = mcm::AntennaPattern::gaussian(
            WrappedAngle::from_degrees(alpha)?,
            cfg.hpbw_tx_deg.to_radians(),
        )?;
    }
    if let Some(beta) = args.beta {
        cfg.beta_deg = beta;
        scenario.rx = mcm::AntennaPattern::gaussian(
            WrappedAngle::from_degrees(beta)?,
            cfg.hpbw_rx_deg.to_radians(),
        )?;
    }

    let paths = generate_paths(&scenario)?;
    let aoa = estimate_aoa_pdf(&scenario, &paths)?;
    let aor = estimate_aor_pdf(&scenario, &paths)?;
    let pas = compute_pas(&scenario, &aor)?;
    let spread = angular_spread(&pas)?;

    let extra = vec![
        (
            "total_input_power".to_string(),
            fmt_sig(paths.total_power_in()),
        ),
        (
            "total_output_power".to_string(),
            fmt_sig(paths.total_power_out()),
        ),
        (
            "angular_spread_deg".to_string(),
            fmt_sig(spread.to_degrees()),
        ),
        ("direct_path_mass".to_string(), fmt_sig(aoa.direct_mass)),
    ];
    let md = metadata(&cfg, &extra);

    std::fs::create_dir_all(&args.common.out)
        .with_context(|| format!("creating {}", args.common.out.display()))?;
    let out = &args.common.out;
    write(&out.join("pas.csv"), &with_kind(&pas, "pas", &md))?;
    write(&out.join("aoa_pdf.csv"), &with_kind(&aoa, "aoa_pdf", &md))?;
    write(&out.join("aor_pdf.csv"), &with_kind(&aor, "aor_pdf", &md))?;
    if args.svg {
        write(&out.join("pas.svg"), &curve_svg(&pas, "power angle spectrum"))?;
    }
    println!(
        "wrote {} (output power {}, angular spread {} deg)",
        out.display(),
        fmt_sig(paths.total_power_out()),
        fmt_sig(spread.to_degrees())
    );
    Ok(ExitCode::SUCCESS)
}

fn with_kind(curve: &PasCurve, kind: &str, md: &[(String, String)]) -> String {
    let mut md = md.to_vec();
    md.insert(0, ("kind".to_string(), kind.to_string()));
    curve_csv(curve, &md)
}

fn cmd_sweep(args: SweepArgs) -> Result<ExitCode> {
    let (cfg, scenario) = load(&args.common)?;
    let alphas: Vec<WrappedAngle> = args
        .alpha
        .iter()
        .map(|&d| WrappedAngle::from_degrees(d))
        .collect::<mcm::Result<_>>()?;
    let betas: Vec<WrappedAngle> = args
        .beta
        .iter()
        .map(|&d| WrappedAngle::from_degrees(d))
        .collect::<mcm::Result<_>>()?;
    let cells = orientation_sweep(&scenario, &alphas, &betas)?;
    let md = metadata(&cfg, &[]);
    std::fs::create_dir_all(&args.common.out)
        .with_context(|| format!("creating {}", args.common.out.display()))?;
    let path = args.common.out.join("sweep.csv");
    write(&path, &sweep_csv(&cells, &md))?;
    println!("wrote {} ({} cells)", path.display(), cells.len());
    Ok(ExitCode::SUCCESS)
}

fn cmd_validate(args: ValidateArgs) -> Result<ExitCode> {
    let tdl = match args.tdl {
        Some(path) => path,
        None => find_tdl()?,
    };
    let checks = run_checks(&tdl);
    let mut failed = 0;
    for c in &checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        println!("{status}  {:<28} {}", c.name, c.detail);
        if !c.passed {
            failed += 1;
        }
    }
    println!("{} checks, {} failed", checks.len(), failed);
    if failed > 0 {
        bail!("{failed} validation check(s) failed");
    }
    Ok(ExitCode::SUCCESS)
}

fn find_tdl() -> Result<PathBuf> {
    let candidates = [
        "data/tdl_b.csv",
        "crates/mcm/data/tdl_b.csv",
        concat!(env!("CARGO_MANIFEST_DIR"), "/data/tdl_b.csv"),
    ];
    for c in candidates {
        let p = PathBuf::from(c);
        if p.exists() {
            return Ok(p);
        }
    }
    bail!("cannot locate data/tdl_b.csv; pass --tdl PATH")
}
