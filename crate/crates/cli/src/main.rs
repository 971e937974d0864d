fn main() {
    std::process::exit(eulerian_cli::run_from(std::env::args_os()));
}
