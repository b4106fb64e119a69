fn main() {
    std::process::exit(dops_core::cli::run(std::env::args_os()));
}
