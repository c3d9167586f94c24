fn main() {
    std::process::exit(vosa::cli::run(std::env::args_os()));
}
