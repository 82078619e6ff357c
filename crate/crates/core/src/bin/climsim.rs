use std::process::ExitCode;

fn main() -> ExitCode {
    climate_market::cli::main()
}
