fn main() { std::process::exit(braidtrace::cli::run()); }
