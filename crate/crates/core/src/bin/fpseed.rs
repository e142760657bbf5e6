fn main() {
    std::process::exit(fpseed::runner::main_with_args(std::env::args_os()));
}
