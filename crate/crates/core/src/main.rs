fn main() {
    std::process::exit(hocolim::cli::main_with(std::env::args_os()));
}
