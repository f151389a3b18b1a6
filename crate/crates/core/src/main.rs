fn main() {
    std::process::exit(siltgeo::cli::run(std::env::args_os()));
}
