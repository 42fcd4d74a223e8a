fn main() {
    std::process::exit(lie_duflo::cli::run(std::env::args_os()));
}
