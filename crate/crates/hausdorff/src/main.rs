use std::process::ExitCode;

use clap::Parser;
use hausdorff::output::emit;
use hausdorff::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (out, verdict) = cli.execute();
    let result = out.and_then(|bytes| emit(&bytes, cli.output.as_deref()));
    match result.err().or(verdict) {
        None => ExitCode::SUCCESS,
        Some(e) => {
            eprintln!("hausdorff: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
