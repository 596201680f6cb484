mod config;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dxl_core::checks::{run_suite, Suite};
use dxl_core::densities::{
    exciton_geometry, POSITRONIUM_APEX_DEG, POSITRONIUM_BOND_LONG_A0, POSITRONIUM_BOND_SHORT_A0, ROUNDED_HOLE_BOND,
};
use dxl_core::figures::{figure, format_float, Curve, DEFAULT_MAX_ORDER};
use dxl_core::grid::{radial_grid, Spacing};
use dxl_core::parallel::map_grid;
use dxl_core::quantity::Quantity;
use dxl_core::Error;
use serde_json::json;

use config::RunConfig;

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;

#[derive(Parser)]
#[command(name = "dxl", version, about = "Exchange hole and exchange electron of the Dirac sea")]
struct Cli {
    /// Plain-text `key = value` run configuration
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate a quantity on a radial grid as CSV
    Tabulate(TabulateArgs),
    /// Run a verification suite
    Check {
        /// specfun, spinor, fourier, sumrules, fields, threebody or all
        #[arg(long)]
        suite: String,
        /// Write the report as JSON
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Write the CSV data of a figure (2, 3, 5, 6 or 7)
    Figure {
        #[arg(long)]
        id: u32,
        /// Highest partial-sum order for figure 3
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
        max_order: u32,
        #[arg(long, value_name = "DIR", default_value = ".")]
        out_dir: PathBuf,
    },
    /// Print the exchange-exciton triangle and the positronium comparison
    Geometry,
}

#[derive(Args)]
struct TabulateArgs {
    /// Quantity key, e.g. shell_hole, field_electron, force:hole:reference
    #[arg(long)]
    quantity: String,
    #[arg(long)]
    rmin: f64,
    #[arg(long)]
    rmax: f64,
    #[arg(long)]
    points: usize,
    #[arg(long, default_value = "log")]
    spacing: String,
    /// Order for hole_n / electron_n kinds and partial sums
    #[arg(long)]
    n: Option<u32>,
    /// Fermi momentum in units of m_e (overrides the config file)
    #[arg(long = "pF", value_name = "X")]
    p_fermi: Option<f64>,
    /// Output file (stdout when omitted)
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Numerical(String),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Domain(_) => Failure::Usage(e.to_string()),
            _ => Failure::Numerical(e.to_string()),
        }
    }
}

fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn tabulate(args: TabulateArgs, mut cfg: RunConfig) -> Result<(), Failure> {
    if let Some(p) = args.p_fermi {
        cfg.constants.p_fermi = p;
    }
    cfg.validate().map_err(Failure::Usage)?;
    let spacing: Spacing = args.spacing.parse()?;
    let quantity = Quantity::parse(&args.quantity, args.n)?;
    let grid = radial_grid(args.rmin, args.rmax, args.points, spacing)?;
    let values = map_grid(&grid, |r| quantity.eval(r, &cfg.constants, &cfg.quadrature))?;
    let csv = Curve { file_name: String::new(), column: args.quantity, r: grid, values }.to_csv(cfg.output_precision);
    match args.out {
        Some(path) => write_text(&path, &csv),
        None => std::io::stdout().write_all(csv.as_bytes()).map_err(|e| Failure::Usage(e.to_string())),
    }
}

fn check(suite: &str, json_path: Option<PathBuf>) -> Result<(), Failure> {
    let suite: Suite = suite.parse()?;
    let report = run_suite(suite)?;
    for c in &report.checks {
        println!(
            "{} {} computed={} expected={} tolerance={}",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            format_float(c.computed, 17),
            format_float(c.expected, 17),
            format_float(c.tolerance, 17)
        );
    }
    let failed = report.checks.iter().filter(|c| !c.pass).count();
    println!("{}: {} checks, {failed} failed", report.suite, report.checks.len());
    for n in &report.notes {
        eprintln!("note: {n}");
    }
    if let Some(path) = json_path {
        let text = serde_json::to_string_pretty(&report).map_err(|e| Failure::Usage(e.to_string()))?;
        write_text(&path, &(text + "\n"))?;
    }
    if report.all_pass {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn figure_cmd(id: u32, max_order: u32, out_dir: &Path, cfg: &RunConfig) -> Result<(), Failure> {
    cfg.validate().map_err(Failure::Usage)?;
    let curves = figure(id, max_order, &cfg.constants, &cfg.quadrature)?;
    fs::create_dir_all(out_dir).map_err(|e| Failure::Usage(format!("cannot create {}: {e}", out_dir.display())))?;
    for c in &curves {
        let path = out_dir.join(&c.file_name);
        write_text(&path, &c.to_csv(cfg.output_precision))?;
        println!("{}", path.display());
    }
    Ok(())
}

fn geometry(cfg: &RunConfig) -> Result<(), Failure> {
    cfg.validate().map_err(Failure::Usage)?;
    let g = exciton_geometry(&cfg.constants)?;
    let p = |v: f64| format_float(v, cfg.output_precision);
    println!("exchange exciton (lambda_C)");
    println!("  reference electron - hole   {}", p(g.bond_short));
    println!("  exchange electron - hole    {}", p(g.bond_short));
    println!("  electron - electron         {}", p(g.bond_long));
    println!("  apex angle at hole (deg)    {}", p(g.apex_angle_deg));
    println!("positronium ion (a_0)");
    println!("  electron - positron         {POSITRONIUM_BOND_SHORT_A0}");
    println!("  electron - electron         {POSITRONIUM_BOND_LONG_A0}");
    println!("  apex angle at positron (deg) {POSITRONIUM_APEX_DEG}");
    println!("bond ratio ({POSITRONIUM_BOND_SHORT_A0} a_0 / {ROUNDED_HOLE_BOND} lambda_C)  {}", p(g.positronium_ratio));
    let doc = json!({
        "bond_short": g.bond_short,
        "bond_long": g.bond_long,
        "apex_angle_deg": g.apex_angle_deg,
        "positronium": {
            "bond_short_a0": POSITRONIUM_BOND_SHORT_A0,
            "bond_long_a0": POSITRONIUM_BOND_LONG_A0,
            "apex_angle_deg": POSITRONIUM_APEX_DEG,
        },
        "positronium_ratio": g.positronium_ratio,
    });
    println!("{doc}");
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let cfg = match &cli.config {
        Some(path) => RunConfig::load(path).map_err(Failure::Usage)?,
        None => RunConfig::default(),
    };
    match cli.command {
        Command::Tabulate(args) => tabulate(args, cfg),
        Command::Check { suite, json } => check(&suite, json),
        Command::Figure { id, max_order, out_dir } => figure_cmd(id, max_order, &out_dir, &cfg),
        Command::Geometry => geometry(&cfg),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(EXIT_CHECK_FAILED),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Numerical(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_NUMERICAL)
        }
    }
}
