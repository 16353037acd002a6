fn main() {
    std::process::exit(gauduchon_lab::cli::run(std::env::args_os()));
}
