fn main() {
    std::process::exit(monoball::cli::run(std::env::args_os()));
}
