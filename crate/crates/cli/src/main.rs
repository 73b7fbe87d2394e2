use std::process::ExitCode;

use clap::Parser;

mod run;

fn main() -> ExitCode {
    let cli = run::Cli::parse();
    match run::run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            // classify the failure for the exit code contract
            let code = match err.downcast_ref::<formspectra::Error>() {
                Some(formspectra::Error::Resource(_)) => 4,
                Some(formspectra::Error::Parse { .. })
                | Some(formspectra::Error::Invalid(_))
                | Some(formspectra::Error::Io(_)) => 3,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}
