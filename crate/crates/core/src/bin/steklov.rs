use std::process::exit;

fn main() {
    exit(steklov::cli::main_with_args(std::env::args_os()));
}
