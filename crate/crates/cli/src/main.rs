fn main() {
    std::process::exit(fxxz_cli::run(std::env::args_os()));
}
