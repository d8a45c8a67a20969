fn main() {
    std::process::exit(noonloss_cli::run(std::env::args().collect()));
}
