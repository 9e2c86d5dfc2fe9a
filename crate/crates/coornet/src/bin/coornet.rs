fn main() {
    std::process::exit(coornet::cli::run(std::env::args_os()));
}
