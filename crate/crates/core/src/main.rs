use std::process::ExitCode;

use clap::Parser;
use formal_poisson::report::{run, Check, OutputFormat, RunConfig};
use formal_poisson::scalar::Q;

/// Exact checks of the formal linearization of the dual Poisson-Lie group.
#[derive(Parser, Debug)]
#[command(name = "formal-poisson", version)]
struct Cli {
    /// builtin algebra (sl2, abelian1, abelian2, abelian3) or a JSON file
    #[arg(long, default_value = "sl2")]
    algebra: String,
    /// truncation degree N
    #[arg(long, default_value_t = 4)]
    degree: usize,
    /// ν for the fm check, as p/q; repeatable
    #[arg(long = "nu", value_parser = parse_q)]
    nu: Vec<Q>,
    /// comma-separated subset of cyb,cdybe,solve,pushforward,gauge,fm,lemma1
    #[arg(long, value_delimiter = ',', default_value = "cyb,cdybe,solve,pushforward,gauge,fm,lemma1")]
    checks: Vec<Check>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// text or json
    #[arg(long, default_value = "text")]
    output: OutputFormat,
    /// include the solver's per-degree trace
    #[arg(long)]
    trace: bool,
    /// include wall-clock timings (makes output nondeterministic)
    #[arg(long)]
    timings: bool,
}

fn parse_q(s: &str) -> Result<Q, String> {
    if s.contains('.') {
        return Err(format!("`{s}` is not a rational p/q"));
    }
    s.parse::<Q>().map_err(|_| format!("`{s}` is not a rational p/q"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut nu = cli.nu;
    if nu.is_empty() {
        nu = vec![Q::new(1.into(), 2.into()), Q::from_integer(1.into()), Q::from_integer(2.into())];
    }
    let config = RunConfig {
        algebra: cli.algebra,
        degree: cli.degree,
        nu_values: nu,
        checks: cli.checks,
        seed: cli.seed,
        output: cli.output,
        trace: cli.trace,
        timings: cli.timings,
    };
    match run(&config) {
        Ok(cert) => {
            match config.output {
                OutputFormat::Text => print!("{}", cert.to_text()),
                OutputFormat::Json => print!("{}", cert.to_json()),
            }
            ExitCode::from(cert.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
