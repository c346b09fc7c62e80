use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use jacobi_asymptotics::scan::{
    kcompare, run_order, run_scan, run_selftest, write_scan_csv, OrderConfig, OrderTarget,
    ScanConfig, WindowPolicy, DEFAULT_EPS_LADDER, DEFAULT_KCOMPARE_EPS,
};
use jacobi_asymptotics::ApproxKind;

#[derive(Parser)]
#[command(
    name = "jacobi-asym",
    version,
    about = "Error scans of sn and K asymptotics against an AGM oracle"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scan an sn approximation over a uniform t-grid and write CSV rows.
    Scan(ScanArgs),
    /// Compare the K formulas on an eps grid.
    Kcompare(KcompareArgs),
    /// Fit the convergence order over an eps ladder.
    Order(OrderArgs),
    /// Run the invariant suite at eps = 0.1 and 0.01.
    Selftest,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long)]
    eps: f64,
    #[arg(long, default_value = "composite")]
    approx: ApproxKind,
    #[arg(long)]
    order: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    tmin: f64,
    #[arg(long, allow_hyphen_values = true)]
    tmax: f64,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// Output path, `-` for stdout.
    #[arg(long, default_value = "-")]
    out: PathBuf,
}

#[derive(Args)]
struct KcompareArgs {
    #[arg(long, value_delimiter = ',')]
    eps_list: Option<Vec<f64>>,
    #[arg(long, default_value = "-")]
    out: PathBuf,
}

#[derive(Args)]
struct OrderArgs {
    /// An sn approximation tag, or k-asym, k-handbook, k-mu.
    #[arg(long)]
    approx: OrderTarget,
    #[arg(long, value_delimiter = ',')]
    eps_list: Option<Vec<f64>>,
    #[arg(long, default_value = "fixed")]
    window: WindowPolicy,
    #[arg(long)]
    order: Option<u32>,
    #[arg(long, default_value_t = 400)]
    samples: usize,
}

enum Failure {
    Usage(String),
    Io(String),
    SelfTest,
}

impl From<jacobi_asymptotics::Error> for Failure {
    fn from(e: jacobi_asymptotics::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn open_out(path: &Path) -> Result<Box<dyn Write>, Failure> {
    if path.as_os_str() == "-" {
        return Ok(Box::new(BufWriter::new(io::stdout().lock())));
    }
    File::create(path)
        .map(|f| Box::new(BufWriter::new(f)) as Box<dyn Write>)
        .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))
}

fn io_err(path: &Path) -> impl Fn(io::Error) -> Failure + '_ {
    move |e| Failure::Io(format!("cannot write {}: {e}", path.display()))
}

/// Summaries go to stderr when the CSV itself is streamed to stdout.
fn summary(path: &Path, line: &str) {
    if path.as_os_str() == "-" {
        eprintln!("{line}");
    } else {
        println!("{line}");
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Scan(a) => {
            let config = ScanConfig {
                eps: a.eps,
                kind: a.approx,
                order: a.order.unwrap_or_else(|| a.approx.default_order()),
                t_min: a.tmin,
                t_max: a.tmax,
                samples: a.samples,
            };
            config.validate()?;
            let report = run_scan(&config)?;
            let out = open_out(&a.out)?;
            write_scan_csv(&report.rows, out).map_err(io_err(&a.out))?;
            summary(&a.out, &report.summary());
        }
        Command::Kcompare(a) => {
            let grid = a.eps_list.unwrap_or_else(|| DEFAULT_KCOMPARE_EPS.to_vec());
            let report = kcompare(&grid)?;
            let out = open_out(&a.out)?;
            report.write_csv(out).map_err(io_err(&a.out))?;
            summary(&a.out, &report.summary());
        }
        Command::Order(a) => {
            let order = a.order.unwrap_or(match a.approx {
                OrderTarget::Sn(kind) => kind.default_order(),
                _ => 4,
            });
            let config = OrderConfig {
                target: a.approx,
                eps_list: a.eps_list.unwrap_or_else(|| DEFAULT_EPS_LADDER.to_vec()),
                window: a.window,
                order,
                samples: a.samples,
            };
            let fit = run_order(&config)?;
            print!("{}", fit.render(&config.target));
        }
        Command::Selftest => {
            let report = run_selftest()?;
            print!("{}", report.render());
            if !report.all_passed() {
                for l in report.failures() {
                    eprintln!("failed: {}", l.name);
                }
                return Err(Failure::SelfTest);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::SelfTest) => ExitCode::from(3),
    }
}
