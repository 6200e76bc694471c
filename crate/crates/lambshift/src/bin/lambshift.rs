fn main() {
    std::process::exit(lambshift::cli::run(std::env::args_os()));
}
