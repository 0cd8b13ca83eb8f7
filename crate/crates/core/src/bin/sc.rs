fn main() {
    std::process::exit(hodge_complex::cli::run(std::env::args_os()));
}
