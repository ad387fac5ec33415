fn main() {
    std::process::exit(switchthermo::cli::main_with_args(std::env::args_os()));
}
