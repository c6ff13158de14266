fn main() {
    std::process::exit(moncat::cli::run(std::env::args_os()));
}
