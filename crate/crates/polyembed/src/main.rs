fn main() {
    std::process::exit(polyembed::cli::run_from(std::env::args_os()));
}
