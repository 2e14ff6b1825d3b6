use clap::{Args, Parser, Subcommand};
use hetdiv_cli::{
    cmd_compare, cmd_coverage, cmd_moments, cmd_reproduce, cmd_simulate, write_comparison_csv, CliError, GridSpec,
    Overrides, Result, Scenario, FIGURES,
};
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "hetdiv", version, about = "Coverage of multi-antenna HetNets: analytic curves, simulation, figure recipes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analytic coverage curves.
    Coverage(Common),
    /// Monte Carlo coverage curves and interference moments.
    Simulate {
        #[command(flatten)]
        common: Common,
        /// Join with the analytic curves and report per-point z-scores.
        #[arg(long)]
        compare: bool,
    },
    /// Empirical interference moments; `--iterations` sets the sample count.
    Moments(Common),
    /// Writes the CSV files of a figure recipe into `--out` (a directory).
    Reproduce {
        /// One of fig2a, fig2b, fig3a, fig3b, fig4a, fig4b, fig5a, fig6a, fig6b, fig8.
        figure: String,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

#[derive(Args)]
struct Common {
    /// Scenario file, or a bundled scenario name (table2, equal_alpha).
    #[arg(long)]
    scenario: String,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Comma-separated scheme names.
    #[arg(long, value_delimiter = ',')]
    scheme: Option<Vec<String>>,
    /// Threshold grid in dB, START:STOP:COUNT.
    #[arg(long)]
    grid: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    iterations: Option<u64>,
    /// Per-tier thresholds that keep the information rate fixed.
    #[arg(long)]
    rate_loss: bool,
}

impl Common {
    fn scenario(&self) -> Result<Scenario> {
        let base = Scenario::load(&self.scenario)?;
        let o = Overrides {
            schemes: self.scheme.clone(),
            grid: self.grid.as_deref().map(GridSpec::parse).transpose()?,
            seed: self.seed,
            iterations: self.iterations,
            rate_loss: self.rate_loss,
        };
        o.apply(&base)
    }

    fn output(&self) -> Result<Box<dyn Write>> {
        Ok(match &self.out {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(io::stdout().lock()),
        })
    }
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Coverage(c) => {
            let table = cmd_coverage(&c.scenario()?)?;
            table.write_csv(c.output()?)
        }
        Command::Simulate { common, compare } => {
            let sc = common.scenario()?;
            if compare {
                let (meta, rows) = cmd_compare(&sc)?;
                write_comparison_csv(&meta, &rows, common.output()?)
            } else {
                let (table, moments) = cmd_simulate(&sc)?;
                table.write_csv(common.output()?)?;
                if let Some(m) = moments {
                    eprintln!(
                        "interference moments: variance {:.4} (se {:.4}), correlation {}",
                        m.variance,
                        m.variance_se,
                        m.correlation.map_or("n/a".into(), |r| format!("{r:.4}"))
                    );
                }
                Ok(())
            }
        }
        Command::Moments(c) => cmd_moments(&c.scenario()?)?.write_csv(c.output()?),
        Command::Reproduce { figure, out } => {
            if !FIGURES.contains(&figure.as_str()) {
                return Err(CliError::Config(format!(
                    "unknown figure '{figure}' (expected one of {})",
                    FIGURES.join(", ")
                )));
            }
            std::fs::create_dir_all(&out)?;
            for p in cmd_reproduce(&figure, &out)? {
                eprintln!("wrote {}", p.display());
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
