fn main() -> std::process::ExitCode {
    trianglebar::cli::run(std::env::args_os())
}
