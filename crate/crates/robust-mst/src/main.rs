use std::process::ExitCode;

fn main() -> ExitCode {
    robust_mst::cli::main()
}
