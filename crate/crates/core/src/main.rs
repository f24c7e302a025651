fn main() {
    std::process::exit(tempograph::cli::run(std::env::args_os()));
}
