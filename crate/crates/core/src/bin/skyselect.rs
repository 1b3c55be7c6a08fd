fn main() { std::process::exit(skyselect::cli::run(std::env::args_os().collect::<Vec<_>>())) }
