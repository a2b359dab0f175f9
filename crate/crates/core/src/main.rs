fn main() {
    std::process::exit(bloch_lab::cli::run(std::env::args_os()));
}
