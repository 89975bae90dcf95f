fn main() {
    std::process::exit(nullrange::cli::run(std::env::args_os()));
}
