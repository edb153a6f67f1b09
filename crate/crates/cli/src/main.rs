//! `farey-mmd`: Farey sequences, their kernel MMDs against the uniform
//! measure, exact discrepancy statistics and empirical decay rates.
//!
//! Exit status is 0 on success, 2 for usage or input errors and 3 when a
//! Farey order exceeds the supported range.

mod error;
mod format;
mod plot;
mod table;

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use farey_mmd::analysis::{rate_fit_quantity, rate_scale};
use farey_mmd::{default_fit_window, farey_mmd, farey_sequence, normalized_curve, rate_fit, CurvePoint, Kernel, KernelSpec};

use crate::error::CliError;
use crate::format::{aligned, real};

#[derive(Parser)]
#[command(name = "farey-mmd", version, about = "Maximum mean discrepancies of Farey sequences")]
struct Cli {
    /// Worker threads: a positive count, or `auto` for one per core
    #[arg(long, global = true, value_name = "K|auto", default_value = "auto", value_parser = parse_threads)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the Farey sequence F_n as exact fractions
    Farey {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Squared MMD and MMD of F_n for each kernel
    Mmd {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        kernels: Kernels,
        #[command(flatten)]
        out: Output,
    },
    /// MMD, normalised MMD and exact statistics for every n up to n-max
    Table {
        #[arg(long, default_value_t = 250)]
        n_max: u32,
        /// First order in the table
        #[arg(long, default_value_t = 2)]
        n_lo: u32,
        #[command(flatten)]
        kernels: Kernels,
        #[command(flatten)]
        out: Output,
    },
    /// Least-squares slope of log MMD(F_n) against log n
    Rates {
        #[arg(long, default_value_t = 250)]
        n_max: u32,
        /// Start of the fit window [default: max(50, n-max/5)]
        #[arg(long)]
        n_lo: Option<u32>,
        #[command(flatten)]
        kernels: Kernels,
        /// Fit a planted n^(-3/2) curve instead of computing MMDs
        #[arg(long)]
        selftest: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Render table CSV as an SVG chart of the normalised curves
    Plot {
        /// Table CSV to read [default: standard input]
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct Kernels {
    /// Kernel as <id>[:lambda]; ids are brownian, matern12, matern32,
    /// matern52, ibm<m> and expxy. Repeatable.
    #[arg(long = "kernel", value_name = "ID[:LAMBDA]", value_parser = parse_kernel)]
    list: Vec<KernelSpec>,
}

#[derive(Args)]
struct Output {
    /// Write here instead of standard output
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Svg,
    Text,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Svg => "svg",
            Format::Text => "text",
        }
    }
}

fn parse_threads(s: &str) -> Result<usize, String> {
    if s == "auto" {
        return Ok(0);
    }
    match s.parse::<usize>() {
        Ok(k) if k > 0 => Ok(k),
        _ => Err(format!("expected a positive integer or `auto`, got {s:?}")),
    }
}

fn parse_kernel(s: &str) -> Result<KernelSpec, String> {
    s.parse::<KernelSpec>().map_err(|e| e.to_string())
}

/// The requested format if the command supports it, else its default.
fn pick(format: Option<Format>, allowed: &[Format], command: &str) -> Result<Format, CliError> {
    match format {
        None => Ok(allowed[0]),
        Some(f) if allowed.contains(&f) => Ok(f),
        Some(f) => Err(CliError::Input(format!("`{command}` does not support --format {}", f.name()))),
    }
}

fn require_kernels(kernels: &Kernels) -> Result<&[KernelSpec], CliError> {
    if kernels.list.is_empty() {
        return Err(CliError::Input("at least one --kernel is required".into()));
    }
    Ok(&kernels.list)
}

fn cmd_farey(n: u32, format: Format) -> Result<String, CliError> {
    let seq = farey_sequence(n)?;
    Ok(match format {
        Format::Csv => {
            let mut out = String::from("index,num,den\n");
            for (i, r) in seq.points().iter().enumerate() {
                out += &format!("{},{},{}\n", i + 1, r.num(), r.den());
            }
            out
        }
        _ => {
            let terms: Vec<String> = seq.points().iter().map(|r| r.to_string()).collect();
            terms.join(",") + "\n"
        }
    })
}

fn cmd_mmd(n: u32, kernels: &[KernelSpec], format: Format) -> Result<String, CliError> {
    let seq = farey_sequence(n)?;
    let header = ["n", "N", "kernel", "lambda", "method", "mmd_squared", "mmd"];
    let mut rows = Vec::new();
    for spec in table::sort_kernels(kernels) {
        let r = farey_mmd(&Kernel::new(spec)?, &seq)?;
        rows.push(vec![
            n.to_string(),
            seq.len().to_string(),
            spec.id(),
            spec.lambda().map(real).unwrap_or_default(),
            r.method.to_string(),
            real(r.mmd_squared),
            real(r.mmd),
        ]);
    }
    Ok(render_rows(&header, &rows, format))
}

fn render_rows(header: &[&str], rows: &[Vec<String>], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = header.join(",") + "\n";
            for row in rows {
                out += &(row.join(",") + "\n");
            }
            out
        }
        _ => aligned(header, rows),
    }
}

fn cmd_table(n_lo: u32, n_max: u32, kernels: &[KernelSpec], format: Format) -> Result<String, CliError> {
    let rows = table::rows(n_lo, n_max, kernels)?;
    match format {
        Format::Csv => table::to_csv(&rows),
        Format::Svg => Ok(plot::render(&plot::series_from_rows(&rows))),
        Format::Text => {
            let cells: Vec<Vec<String>> = rows.iter().map(table::Row::cells).collect();
            Ok(aligned(&table::HEADER.split(',').collect::<Vec<_>>(), &cells))
        }
    }
}

const RATE_HEADER: [&str; 8] = ["kernel", "lambda", "n_lo", "n_hi", "points", "slope", "intercept", "residual_l2"];

fn cmd_rates(
    n_lo: Option<u32>,
    n_max: u32,
    kernels: &[KernelSpec],
    selftest: bool,
    format: Format,
) -> Result<String, CliError> {
    let (lo, hi) = match n_lo {
        Some(lo) => (lo, n_max),
        None => default_fit_window(n_max),
    };
    if selftest {
        let curve: Vec<CurvePoint> = (2..=n_max.max(4))
            .map(|n| {
                let value = f64::from(n).powf(-1.5);
                CurvePoint { n, len: 0, value, normalized: value * rate_scale(n) }
            })
            .collect();
        let fit = rate_fit_quantity(&curve, lo, hi.max(4), "planted n^(-3/2)")?;
        return Ok(format!(
            "selftest {}: slope {:.6} intercept {:.3e} residual {:.3e} over n in [{}, {}]\n",
            fit.quantity, fit.slope, fit.intercept, fit.residual_l2, fit.n_lo, fit.n_hi
        ));
    }
    let mut rows = Vec::new();
    for spec in table::sort_kernels(kernels) {
        let curve = normalized_curve(&spec, n_max)?;
        let fit = rate_fit(&curve, lo, hi)?;
        rows.push(vec![
            spec.id(),
            spec.lambda().map(real).unwrap_or_default(),
            fit.n_lo.to_string(),
            fit.n_hi.to_string(),
            fit.points.to_string(),
            real(fit.slope),
            real(fit.intercept),
            real(fit.residual_l2),
        ]);
    }
    Ok(render_rows(&RATE_HEADER, &rows, format))
}

fn cmd_plot(input: Option<&PathBuf>) -> Result<String, CliError> {
    let text = match input {
        Some(path) => fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?,
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| CliError::Input(format!("standard input: {e}")))?;
            s
        }
    };
    Ok(plot::render(&plot::series_from_csv(&text)?))
}

fn run(command: &Command) -> Result<(String, Option<&PathBuf>), CliError> {
    use Format::*;
    Ok(match command {
        Command::Farey { n, out } => (cmd_farey(*n, pick(out.format, &[Text, Csv], "farey")?)?, out.output.as_ref()),
        Command::Mmd { n, kernels, out } => {
            let format = pick(out.format, &[Text, Csv], "mmd")?;
            (cmd_mmd(*n, require_kernels(kernels)?, format)?, out.output.as_ref())
        }
        Command::Table { n_max, n_lo, kernels, out } => {
            let format = pick(out.format, &[Csv, Svg, Text], "table")?;
            (cmd_table(*n_lo, *n_max, require_kernels(kernels)?, format)?, out.output.as_ref())
        }
        Command::Rates { n_max, n_lo, kernels, selftest, out } => {
            let format = pick(out.format, &[Text, Csv], "rates")?;
            let kernels = if *selftest { &kernels.list[..] } else { require_kernels(kernels)? };
            (cmd_rates(*n_lo, *n_max, kernels, *selftest, format)?, out.output.as_ref())
        }
        Command::Plot { input, out } => {
            pick(out.format, &[Svg], "plot")?;
            (cmd_plot(input.as_ref())?, out.output.as_ref())
        }
    })
}

fn emit(text: &str, path: Option<&PathBuf>) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Output(format!("{}: {e}", p.display()))),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(stdout.flush()?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: cannot start worker threads: {e}");
            return ExitCode::from(2);
        }
    };
    let result = pool.install(|| run(&cli.command)).and_then(|(text, path)| emit(&text, path));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
