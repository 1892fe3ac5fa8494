fn main() {
    std::process::exit(realdirac::cli::run(std::env::args_os()));
}
