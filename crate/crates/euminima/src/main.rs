fn main() { std::process::exit(euminima::cli::run()); }
