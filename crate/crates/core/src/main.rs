fn main() {
    std::process::exit(gpk_core::cli::run(std::env::args_os()));
}
