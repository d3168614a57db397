fn main() {
    std::process::exit(superelliptic_cli::run(std::env::args_os()));
}
