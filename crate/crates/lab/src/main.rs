fn main() {
    std::process::exit(rickart_lab::cli::run(std::env::args_os()));
}
