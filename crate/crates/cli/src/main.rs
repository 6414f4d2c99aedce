use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use pschur::Status;
use pschur_cli::{
    compute_cartan, count_status, dims_table, export_cartan, parse_range, run_suite, write_cartan,
    write_records, Format, RunConfig, Suite,
};

#[derive(Parser)]
#[command(
    name = "pschur",
    version,
    about = "Exact checks for Schur, Levi and parabolic Schur algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite over an (n, r) grid.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value = "1..2", value_parser = parse_range)]
        n: std::ops::RangeInclusive<usize>,
        #[arg(long, default_value = "1..3", value_parser = parse_range)]
        r: std::ops::RangeInclusive<usize>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Largest tensor dimension (n+1)^r to attempt.
        #[arg(long, default_value_t = 256)]
        budget: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "json")]
        format: Format,
        /// Fill in elapsed_ms (makes output nondeterministic).
        #[arg(long)]
        timings: bool,
    },
    /// Export the Cartan matrix of the parabolic Schur algebra.
    Cartan {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "csv")]
        format: Format,
    },
    /// Print the dimension table of the parabolic Schur algebra.
    Dims {
        #[arg(long, value_parser = parse_range)]
        n: std::ops::RangeInclusive<usize>,
        #[arg(long, value_parser = parse_range)]
        r: std::ops::RangeInclusive<usize>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Verify {
            suite,
            n,
            r,
            seed,
            budget,
            out,
            format,
            timings,
        } => {
            let cfg = RunConfig {
                suite,
                n,
                r,
                seed,
                budget,
                timings,
            };
            let records = run_suite(&cfg);
            match out {
                Some(path) => {
                    let file = std::fs::File::create(&path)
                        .map_err(|e| anyhow::anyhow!("creating {}: {e}", path.display()))?;
                    write_records(&records, format, std::io::BufWriter::new(file))?;
                }
                None => write_records(&records, format, std::io::stdout().lock())?,
            }
            let failures = count_status(&records, Status::Fail);
            eprintln!(
                "{} records: {} pass, {} fail, {} mismatch, {} reported, {} skipped",
                records.len(),
                count_status(&records, Status::Pass),
                failures,
                count_status(&records, Status::Mismatch),
                count_status(&records, Status::Reported),
                count_status(&records, Status::Skipped),
            );
            Ok(failures == 0)
        }
        Command::Cartan {
            n,
            r,
            seed,
            out,
            format,
        } => {
            match out {
                Some(path) => {
                    export_cartan(n, r, seed, &path, format)?;
                }
                None => write_cartan(
                    &compute_cartan(n, r, seed)?,
                    format,
                    std::io::stdout().lock(),
                )?,
            }
            Ok(true)
        }
        Command::Dims { n, r, seed } => {
            let mut stdout = std::io::stdout().lock();
            writeln!(stdout, "n\tr\tcheck\tcomputed\texpected\tstatus")?;
            for n in n {
                for r in r.clone() {
                    for row in dims_table(n, r, seed)? {
                        writeln!(stdout, "{n}\t{r}\t{}", row.join("\t"))?;
                    }
                }
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
