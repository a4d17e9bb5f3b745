fn main() {
    std::process::exit(focklab_cli::run(std::env::args()));
}
