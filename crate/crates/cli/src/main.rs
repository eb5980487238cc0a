fn main() {
    std::process::exit(muub_cli::run(std::env::args_os()));
}
