fn main() {
    std::process::exit(octoheat::cli::run(std::env::args_os()));
}
