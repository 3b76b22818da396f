fn main() {
    std::process::exit(tabeval_cli::run(std::env::args_os()));
}
