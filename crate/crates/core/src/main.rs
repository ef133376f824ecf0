fn main() {
    std::process::exit(primitive_forge::cli::run(std::env::args_os()));
}
