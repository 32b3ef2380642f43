use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;
use danielewski::cli::{run_command_str, Options, Status, COMMANDS};
use danielewski::json::parse_field_str;

/// Exact computations on Danielewski surfaces. Reads one JSON document per
/// input file (`-` for stdin) and prints one JSON envelope per input.
#[derive(Parser, Debug)]
#[command(name = "danielewski-lab", version)]
struct Args {
    /// One of the supported commands, see `--help`.
    #[arg(value_parser = clap::builder::PossibleValuesParser::new(COMMANDS))]
    command: String,

    /// Input files; none means stdin.
    inputs: Vec<PathBuf>,

    /// Default field when an input has no "field" key: Q or Fp:<p>.
    #[arg(long, default_value = "Q")]
    field: String,

    /// Truncation order for power series.
    #[arg(long, default_value_t = 8)]
    order: u32,

    /// Accept comb data outside the normalized shape, with warnings.
    #[arg(long)]
    permissive_comb: bool,

    /// Seed for self-test.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    #[arg(long)]
    pretty: bool,
}

fn read_input(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn main() -> Result<ExitCode> {
    let args = Args::parse();
    let opts = Options {
        field: parse_field_str(&args.field).with_context(|| format!("--field {}", args.field))?,
        order: args.order,
        permissive_comb: args.permissive_comb,
        seed: args.seed,
    };
    let mut inputs = args.inputs.clone();
    if inputs.is_empty() {
        if args.command == "self-test" {
            inputs.push(PathBuf::new());
        } else {
            inputs.push(PathBuf::from("-"));
        }
    }
    let texts: Vec<String> = inputs
        .iter()
        .map(|p| if p.as_os_str().is_empty() { Ok("{}".to_string()) } else { read_input(p) })
        .collect::<Result<_>>()?;

    let outcomes = std::thread::scope(|scope| {
        let handles: Vec<_> = texts
            .iter()
            .map(|t| scope.spawn(|| run_command_str(&args.command, t, &opts)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect::<Vec<_>>()
    });

    let mut worst = Status::Ok;
    for o in &outcomes {
        let text = if args.pretty {
            serde_json::to_string_pretty(&o.envelope)?
        } else {
            serde_json::to_string(&o.envelope)?
        };
        println!("{text}");
        worst = match (worst, o.status) {
            (Status::Malformed, _) | (_, Status::Malformed) => Status::Malformed,
            (Status::Rejected, _) | (_, Status::Rejected) => Status::Rejected,
            _ => Status::Ok,
        };
    }
    Ok(ExitCode::from(worst as u8))
}
