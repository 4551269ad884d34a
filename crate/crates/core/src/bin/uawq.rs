fn main() {
    std::process::exit(uawq::cli::run(std::env::args_os()));
}
