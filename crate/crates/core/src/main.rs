fn main() {
    std::process::exit(bouncer::cli::main_with_args(std::env::args_os()));
}
