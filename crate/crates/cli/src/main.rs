fn main() {
    std::process::exit(cospec_cli::run(std::env::args_os()));
}
