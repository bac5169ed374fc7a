fn main() {
    std::process::exit(jetclass::cli::run(std::env::args_os()));
}
