fn main() {
    std::process::exit(cotopo_cli::run(std::env::args_os()));
}
