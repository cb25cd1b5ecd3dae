fn main() {
    std::process::exit(ltv::cli::run(std::env::args_os()));
}
