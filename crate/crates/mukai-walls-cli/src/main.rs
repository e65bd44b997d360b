use clap::Parser;
use mukai_walls_cli::{emit, run, Cli};
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| emit(&out).map(|()| out.exit_code));
    match result {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            println!("{}", serde_json::to_string_pretty(&failure.record()).expect("error record prints"));
            ExitCode::from(failure.exit_code())
        }
    }
}
