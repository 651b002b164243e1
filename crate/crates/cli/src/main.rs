//! `mixhom`: exit 0 when every verdict holds, 1 when one fails, 2 on usage
//! or input errors.

mod args;
mod commands;
mod input;
mod report;

use std::io::Write;
use std::process::ExitCode;

use anyhow::Result;
use clap::Parser;

use args::{Cli, Command, FormatArg};
use report::Envelope;

fn run(cli: Cli) -> Result<(String, u8)> {
    let (envelope, format, trusted_only): (Envelope, FormatArg, bool) = match cli.command {
        Command::Examples { format } => (commands::examples(), format, false),
        Command::Build(common) => {
            let input = input::resolve(&common.source)?;
            if common.format == FormatArg::Json {
                return Ok((commands::build(&input), 0));
            }
            let e = Envelope {
                command: "build".into(),
                input: Some(input.summary),
                holds: None,
                result: serde_json::Value::Null,
            };
            (e, common.format, common.trusted_only)
        }
        Command::Homology { common, direction } => {
            let input = input::resolve(&common.source)?;
            (commands::homology(&input, direction)?, common.format, common.trusted_only)
        }
        Command::MixedHomology { common, cob, grading } => {
            let input = input::resolve(&common.source)?;
            let e = commands::mixed(&input, cob, grading, common.max_degree)?;
            (e, common.format, common.trusted_only)
        }
        Command::Skyscraper { common, cob } => {
            let input = input::resolve(&common.source)?;
            (commands::skyscraper(&input, cob)?, common.format, common.trusted_only)
        }
        Command::Verify { check, common } => {
            let input = input::resolve(&common.source)?;
            let e = commands::verify(check, &input, common.max_degree)?;
            (e, common.format, common.trusted_only)
        }
    };
    Ok((envelope.render(format, trusted_only), envelope.exit_code()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((text, code)) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
