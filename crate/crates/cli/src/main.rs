use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ibis_cli::config::{OutputFormat, RunConfig};
use ibis_cli::report::{self, Source};
use ibis_cli::suite::{run_suite, Suite};

#[derive(Parser)]
#[command(name = "ibis", version, about = "Irredundant bases of permutation groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Base size, irredundant base spectrum and IBIS verdict.
    Analyze(Target),
    /// List the built-in group catalog.
    Catalog(Common),
    /// Check whether a group is CT (commuting is transitive).
    Ct(Target),
    /// Run the claim suite.
    Verify {
        #[arg(long, default_value = "small")]
        suite: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Target {
    /// Group file in the text format.
    #[arg(long, conflicts_with = "catalog", required_unless_present = "catalog")]
    group: Option<String>,
    /// Catalog name, e.g. `psl2:8` or `diag:alt:5:2:twist`.
    #[arg(long)]
    catalog: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    json: bool,
    /// Search node cap.
    #[arg(long)]
    nodes: Option<u64>,
    /// Wall-clock cap in seconds.
    #[arg(long)]
    time: Option<u64>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    degree_cap: Option<u64>,
    #[arg(long)]
    enumeration_cap: Option<u64>,
}

impl Common {
    fn config(&self) -> Result<RunConfig, String> {
        let mut c = RunConfig::default();
        if let Some(n) = self.nodes {
            c.node_cap = n;
        }
        if let Some(t) = self.time {
            c.time_cap_seconds = t;
        }
        if let Some(w) = self.workers {
            c.workers = w;
        }
        if let Some(d) = self.degree_cap {
            c.degree_cap = d;
        }
        if let Some(e) = self.enumeration_cap {
            c.enumeration_cap = e;
        }
        if self.json {
            c.output_format = OutputFormat::Json;
        }
        c.validate()?;
        Ok(c)
    }
}

impl Target {
    fn source(&self) -> Source {
        match (&self.group, &self.catalog) {
            (Some(path), _) => Source::File(path.clone()),
            (None, Some(name)) => Source::Catalog(name.clone()),
            (None, None) => unreachable!("clap requires one of --group, --catalog"),
        }
    }
}

fn emit<T: serde::Serialize>(value: &T, config: &RunConfig) {
    match config.output_format {
        OutputFormat::Json => print!("{}", report::to_json(value)),
        OutputFormat::Text => print!("{}", report::to_text(value)),
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Analyze(t) => {
            let config = t.common.config()?;
            let r = report::analyze(&t.source(), &config).map_err(|e| e.to_string())?;
            emit(&r, &config);
            Ok(if r.capped { 2 } else { 0 })
        }
        Command::Ct(t) => {
            let config = t.common.config()?;
            let r = report::ct(&t.source(), &config).map_err(|e| e.to_string())?;
            emit(&r, &config);
            Ok(0)
        }
        Command::Catalog(c) => {
            let config = c.config()?;
            let lines = report::catalog_listing();
            match config.output_format {
                OutputFormat::Json => print!("{}", report::to_json(&lines)),
                OutputFormat::Text => print!("{}", report::catalog_text(&lines)),
            }
            Ok(0)
        }
        Command::Verify { suite, common } => {
            let config = common.config()?;
            let suite = match suite.as_str() {
                "small" => Suite::Small,
                "full" => Suite::Full,
                other => return Err(format!("unknown suite `{other}`; expected small or full")),
            };
            let result = run_suite(suite, &config);
            match config.output_format {
                OutputFormat::Json => print!("{}", report::to_json(&result)),
                OutputFormat::Text => print!("{}", result.table()),
            }
            Ok(result.exit_code() as u8)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
