fn main() { std::process::exit(xqdiag::cli::run(std::env::args_os())) }
