use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use pconf_cli::{rank_table, run_suite, Format, HarnessError, IntRange, SignArg, Suite, SuiteConfig};

#[derive(Debug, Parser)]
#[command(name = "pconf", version, about = "Exact verification suites for configuration-space cohomology")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a verification suite over a (g, n) grid.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        /// Genus range, `a..b` inclusive.
        #[arg(long = "g", default_value = "2..3")]
        g: IntRange,
        /// Point-count range, `a..b` inclusive.
        #[arg(long = "n", default_value = "2..3")]
        n: IntRange,
        /// Random samples per (g, n) for the sampled suites.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value = "minus")]
        relation_sign: SignArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Lift the g ≤ 5, n ≤ 6 caps.
        #[arg(long)]
        unsafe_large: bool,
    },
    /// Tabulate computed cup-image ranks against the closed form.
    Table {
        #[arg(long = "g", default_value = "2..3")]
        g: IntRange,
        #[arg(long = "n", default_value = "2..4")]
        n: IntRange,
        #[arg(long)]
        unsafe_large: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            let usage = matches!(e.downcast_ref::<HarnessError>(), Some(HarnessError::Config(_)));
            ExitCode::from(if usage { 2 } else { 1 })
        }
    }
}

fn execute(command: Command) -> anyhow::Result<bool> {
    match command {
        Command::Verify {
            suite,
            g,
            n,
            samples,
            seed,
            relation_sign,
            format,
            out,
            unsafe_large,
        } => {
            let cfg = SuiteConfig {
                suite,
                g_range: g,
                n_range: n,
                samples,
                seed,
                relation_sign,
                format,
                unsafe_large,
            };
            let report = run_suite(&cfg)?;
            let body = report.render();
            match out {
                Some(path) => {
                    fs::write(&path, &body).with_context(|| format!("writing {}", path.display()))?;
                }
                None => print!("{body}"),
            }
            if format == Format::Json {
                eprintln!(
                    "{}/{} checks passed in {:.2?}",
                    report.summary.passed, report.summary.total, report.wall_time
                );
            }
            for f in report.failures() {
                eprintln!("FAILED {}: expected {}, got {}", f.id, f.expected, f.actual);
            }
            Ok(report.passed())
        }
        Command::Table { g, n, unsafe_large } => {
            print!("{}", rank_table(g, n, unsafe_large)?);
            Ok(true)
        }
    }
}
